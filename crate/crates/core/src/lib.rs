//! Free Dirac field in a reducible representation: one 16-dimensional Fock
//! space per wave vector, with k-integrals appearing only in expectation values.

pub mod constants;
pub mod error;
pub mod fock;
pub mod gamma;
pub mod sampling;
pub mod spinor;

pub use constants::{PhysicalConstants, WaveVector};
pub use error::{DiracError, Result};
pub use fock::{FockMatrix, FockVector, ModeIndex, ModeSet};
pub use gamma::{GammaSet, Mat4, Spinor};
pub use spinor::{PolarizationSpinor, SpinorBasis};
pub mod conjugation;
pub mod current;
pub mod field;

pub use field::{DiracField, SpacetimePoint};
pub mod expectation;
pub mod quadrature;
pub mod state;
pub mod verify;

pub use expectation::{CorrelationMatrix, CurrentDensity, ExampleReport, ExpectationEngine};
pub use quadrature::QuadratureSpec;
pub use state::{GeneralState, PhaseFn, RhoProfile, RhoState, StateFamily};
pub use verify::{Check, VerificationReport, Verifier, VerifyConfig};
