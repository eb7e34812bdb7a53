//! Wave-vector dependent state families psi_k in the per-k Fock space.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::constants::WaveVector;
use crate::error::{DiracError, Result};
use crate::fock::{basis_state, vacuum, FockVector, ModeIndex, ModeSet};
use crate::quadrature::QuadratureSpec;

/// Occupation profile rho(|k|) with values in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RhoProfile {
    /// sech^2(a |k|)
    Sech2 { a: f64 },
    /// exp(-(a |k|)^2)
    Gaussian { a: f64 },
    /// 1 for |k| < kmax, 0 beyond.
    Step { kmax: f64 },
    /// Linear interpolation between knots; 0 beyond the last knot.
    Tabulated { k: Vec<f64>, rho: Vec<f64> },
}

impl RhoProfile {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(DiracError::InvalidProfile(m));
        match self {
            Self::Sech2 { a } | Self::Gaussian { a } => {
                if !(a.is_finite() && *a > 0.0) {
                    return bad(format!("length scale a must be finite and positive, got {a}"));
                }
            }
            Self::Step { kmax } => {
                if !(kmax.is_finite() && *kmax > 0.0) {
                    return bad(format!("kmax must be finite and positive, got {kmax}"));
                }
            }
            Self::Tabulated { k, rho } => {
                if k.len() < 2 || k.len() != rho.len() {
                    return bad("tabulated profile needs at least two (k, rho) pairs of equal length".into());
                }
                if k[0] < 0.0 || k.iter().any(|v| !v.is_finite()) {
                    return bad("tabulated k values must be finite and non-negative".into());
                }
                if k.windows(2).any(|w| w[1] <= w[0]) {
                    return bad("tabulated k values must be strictly increasing".into());
                }
                if rho.iter().any(|r| !(0.0..=1.0).contains(r)) {
                    return bad("tabulated rho values must lie in [0, 1]".into());
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, k: f64) -> f64 {
        match self {
            Self::Sech2 { a } => {
                let c = (a * k).cosh();
                1.0 / (c * c)
            }
            Self::Gaussian { a } => (-(a * k).powi(2)).exp(),
            Self::Step { kmax } => {
                if k < *kmax {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Tabulated { k: ks, rho } => {
                if k <= ks[0] {
                    return rho[0];
                }
                if k > ks[ks.len() - 1] {
                    return 0.0;
                }
                let i = ks.partition_point(|v| *v < k).max(1);
                let t = (k - ks[i - 1]) / (ks[i] - ks[i - 1]);
                rho[i - 1] + t * (rho[i] - rho[i - 1])
            }
        }
    }

    /// Radial integration limit in k for cutoff `r_max` in profile units.
    pub fn cutoff(&self, r_max: f64) -> f64 {
        match self {
            Self::Sech2 { a } | Self::Gaussian { a } => r_max / a,
            Self::Step { kmax } => *kmax,
            Self::Tabulated { k, .. } => k[k.len() - 1],
        }
    }

    /// Points where the profile is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::Step { kmax } => vec![*kmax],
            Self::Tabulated { k, .. } => k.clone(),
            _ => Vec::new(),
        }
    }

    /// Whether the cutoff moves with `r_max`, i.e. the support is unbounded.
    pub fn has_tail(&self) -> bool {
        matches!(self, Self::Sech2 { .. } | Self::Gaussian { .. })
    }
}

/// Phase function chi(k) = constant + gradient.k + radial |k|.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct PhaseFn {
    pub constant: f64,
    pub gradient: [f64; 3],
    pub radial: f64,
}

impl PhaseFn {
    pub fn constant(c: f64) -> Self {
        Self {
            constant: c,
            ..Default::default()
        }
    }

    pub fn eval(&self, k: &WaveVector) -> f64 {
        self.constant + k.dot(&self.gradient) + self.radial * k.norm()
    }
}

/// psi_k = e^{i chi} sqrt(1 - rho) |0> + e^{i xi} sqrt(rho) |{mode}>.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoState {
    pub mode: ModeIndex,
    pub profile: RhoProfile,
    #[serde(default)]
    pub chi: PhaseFn,
    #[serde(default)]
    pub xi: PhaseFn,
}

impl RhoState {
    pub fn new(mode: ModeIndex, profile: RhoProfile) -> Self {
        Self {
            mode,
            profile,
            chi: PhaseFn::default(),
            xi: PhaseFn::default(),
        }
    }

    /// Spin-up electron with rho = sech^2(a |k|).
    pub fn sech2_spin_up(a: f64) -> Self {
        Self::new(ModeIndex::ELECTRON[0], RhoProfile::Sech2 { a })
    }

    pub fn rho(&self, k: &WaveVector) -> f64 {
        self.profile.value(k.norm())
    }

    pub fn amplitudes(&self, k: &WaveVector) -> FockVector {
        let rho = self.rho(k);
        let mut v = vacuum().scale(C64::from_polar((1.0 - rho).sqrt(), self.chi.eval(k)));
        v.add_scaled(
            C64::from_polar(rho.sqrt(), self.xi.eval(k)),
            &basis_state(ModeSet::from_modes(&[self.mode])),
        );
        v
    }
}

type AmplitudeFn = dyn Fn(&WaveVector) -> FockVector + Send + Sync;

/// Arbitrary amplitudes z^Lambda_k supported in |k| <= cutoff.
#[derive(Clone)]
pub struct GeneralState {
    cutoff: f64,
    breaks: Vec<f64>,
    amplitudes: Arc<AmplitudeFn>,
}

impl fmt::Debug for GeneralState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralState")
            .field("cutoff", &self.cutoff)
            .field("breaks", &self.breaks)
            .finish_non_exhaustive()
    }
}

impl GeneralState {
    pub fn new(
        cutoff: f64,
        amplitudes: impl Fn(&WaveVector) -> FockVector + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(DiracError::InvalidProfile(format!(
                "cutoff must be finite and positive, got {cutoff}"
            )));
        }
        Ok(Self {
            cutoff,
            breaks: Vec::new(),
            amplitudes: Arc::new(amplitudes),
        })
    }

    pub fn with_breakpoints(mut self, breaks: Vec<f64>) -> Self {
        self.breaks = breaks;
        self
    }
}

/// State family: either the two-component rho form or general amplitudes.
#[derive(Debug, Clone)]
pub enum StateFamily {
    Rho(RhoState),
    General(GeneralState),
}

impl From<RhoState> for StateFamily {
    fn from(s: RhoState) -> Self {
        Self::Rho(s)
    }
}

impl From<GeneralState> for StateFamily {
    fn from(s: GeneralState) -> Self {
        Self::General(s)
    }
}

/// Tolerance on sum |z|^2 = 1.
pub const NORM_TOL: f64 = 1e-12;

impl StateFamily {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Rho(s) => s.profile.validate(),
            Self::General(_) => Ok(()),
        }
    }

    pub fn as_rho(&self) -> Option<&RhoState> {
        match self {
            Self::Rho(s) => Some(s),
            Self::General(_) => None,
        }
    }

    pub fn amplitudes(&self, k: &WaveVector) -> FockVector {
        match self {
            Self::Rho(s) => s.amplitudes(k),
            Self::General(g) => (g.amplitudes)(k),
        }
    }

    /// Amplitudes at k, rejecting unnormalized vectors.
    pub fn checked_amplitudes(&self, k: &WaveVector) -> Result<FockVector> {
        let v = self.amplitudes(k);
        let norm_sq = v.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL || !norm_sq.is_finite() {
            return Err(DiracError::NotNormalized { k: k.0, norm_sq });
        }
        Ok(v)
    }

    /// Radius of the k-ball integrated over.
    pub fn k_cutoff(&self, spec: &QuadratureSpec) -> f64 {
        match self {
            Self::Rho(s) => s.profile.cutoff(spec.r_max),
            Self::General(g) => g.cutoff,
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::Rho(s) => s.profile.breakpoints(),
            Self::General(g) => g.breaks.clone(),
        }
    }
}
