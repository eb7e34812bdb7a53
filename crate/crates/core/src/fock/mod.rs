//! Per-wave-vector Fock space of four fermionic modes.
//!
//! Basis index `n` is an occupation bitmask: bit `s-1` set means mode `s` is
//! occupied. Mode operators are built by a Jordan-Wigner sign string with mode 1
//! as the innermost tensor factor.

mod larmor;
mod matrix;

use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

pub use larmor::{larmor_evolution_check, larmor_polarization};
pub use matrix::{FockMatrix, FockVector, DIM};

use crate::constants::{PhysicalConstants, WaveVector};
use crate::error::{DiracError, Result};

/// Mode label s in 1..=4. Modes 1, 2 are electron modes, 3, 4 positron modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct ModeIndex(u8);

impl ModeIndex {
    pub const ALL: [ModeIndex; 4] = [ModeIndex(1), ModeIndex(2), ModeIndex(3), ModeIndex(4)];
    pub const ELECTRON: [ModeIndex; 2] = [ModeIndex(1), ModeIndex(2)];
    pub const POSITRON: [ModeIndex; 2] = [ModeIndex(3), ModeIndex(4)];

    pub fn new(s: usize) -> Result<Self> {
        if (1..=4).contains(&s) {
            Ok(Self(s as u8))
        } else {
            Err(DiracError::ModeOutOfRange(s))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Occupation bit of this mode in a basis index.
    pub fn bit(self) -> usize {
        1 << (self.0 - 1)
    }

    pub fn is_electron(self) -> bool {
        self.0 <= 2
    }

    /// Charge of one quantum in units of q: +1 for electron modes, -1 for positron modes.
    pub fn charge_sign(self) -> f64 {
        if self.is_electron() {
            1.0
        } else {
            -1.0
        }
    }
}

impl TryFrom<usize> for ModeIndex {
    type Error = DiracError;
    fn try_from(s: usize) -> Result<Self> {
        Self::new(s)
    }
}

impl From<ModeIndex> for usize {
    fn from(m: ModeIndex) -> usize {
        m.get()
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Subset of occupied modes; its bitmask is the basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ModeSet(u8);

impl ModeSet {
    pub const EMPTY: Self = Self(0);

    pub fn from_modes(modes: &[ModeIndex]) -> Self {
        Self(modes.iter().fold(0, |acc, m| acc | m.bit() as u8))
    }

    pub fn from_index(n: usize) -> Self {
        assert!(n < DIM);
        Self(n as u8)
    }

    pub fn all() -> impl Iterator<Item = ModeSet> {
        (0..DIM).map(Self::from_index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, m: ModeIndex) -> bool {
        self.index() & m.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn modes(self) -> impl Iterator<Item = ModeIndex> {
        ModeIndex::ALL.into_iter().filter(move |&m| self.contains(m))
    }

    /// n1 + n2 - n3 - n4
    pub fn charge_number(self) -> i32 {
        self.modes().map(|m| m.charge_sign() as i32).sum()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

type Mat2 = [[C64; 2]; 2];

const SIGMA3: Mat2 = [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]];
const SIGMA_PLUS: Mat2 = [[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(0.0, 0.0), C64::new(0.0, 0.0)]];
const ID2: Mat2 = [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]];

/// Tensor product of four single-mode factors; `factors[m]` acts on mode m+1.
fn kron4(factors: [Mat2; 4]) -> FockMatrix {
    FockMatrix::from_fn(|i, j| {
        (0..4).fold(c(1.0, 0.0), |acc, m| {
            acc * factors[m][(i >> m) & 1][(j >> m) & 1]
        })
    })
}

/// Annihilator a_s = sigma3 x ... x sigma3 x sigma_plus x 1 x ... (sigma3 on modes < s).
pub fn mode_annihilator(s: ModeIndex) -> FockMatrix {
    let idx = s.get() - 1;
    let mut factors = [ID2; 4];
    for f in factors.iter_mut().take(idx) {
        *f = SIGMA3;
    }
    factors[idx] = SIGMA_PLUS;
    kron4(factors)
}

pub fn mode_creator(s: ModeIndex) -> FockMatrix {
    mode_annihilator(s).adjoint()
}

/// The four annihilators and their adjoints, built once.
#[derive(Clone, Debug)]
pub struct ModeOperators {
    annihilators: [FockMatrix; 4],
    creators: [FockMatrix; 4],
}

impl ModeOperators {
    pub fn new() -> Self {
        let annihilators = ModeIndex::ALL.map(mode_annihilator);
        let creators = annihilators.clone().map(|a| a.adjoint());
        Self {
            annihilators,
            creators,
        }
    }

    pub fn annihilator(&self, s: ModeIndex) -> &FockMatrix {
        &self.annihilators[s.get() - 1]
    }

    pub fn creator(&self, s: ModeIndex) -> &FockMatrix {
        &self.creators[s.get() - 1]
    }
}

impl Default for ModeOperators {
    fn default() -> Self {
        Self::new()
    }
}

/// Jordan-Wigner sign (-1)^(number of occupied modes below s).
fn string_sign(n: usize, s: ModeIndex) -> f64 {
    if (n & (s.bit() - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// a_s applied to a vector via bit operations (same result as the matrix).
pub fn annihilate(s: ModeIndex, v: &FockVector) -> FockVector {
    let mut out = FockVector::ZERO;
    let b = s.bit();
    for n in 0..DIM {
        if n & b != 0 {
            out[n ^ b] = v[n] * string_sign(n, s);
        }
    }
    out
}

/// a_s^dagger applied to a vector via bit operations.
pub fn create(s: ModeIndex, v: &FockVector) -> FockVector {
    let mut out = FockVector::ZERO;
    let b = s.bit();
    for n in 0..DIM {
        if n & b == 0 {
            out[n | b] = v[n] * string_sign(n, s);
        }
    }
    out
}

pub fn vacuum() -> FockVector {
    FockVector::unit(0)
}

/// |Lambda> = [a4^dag]^{n4} [a3^dag]^{n3} [a2^dag]^{n2} [a1^dag]^{n1} |0>.
pub fn basis_state(set: ModeSet) -> FockVector {
    let mut v = vacuum();
    for s in set.modes() {
        v = create(s, &v);
    }
    v
}

/// N_s = a_s^dag a_s.
pub fn number_operator(s: ModeIndex) -> FockMatrix {
    &mode_creator(s) * &mode_annihilator(s)
}

/// Sum of the four number operators.
pub fn total_number_operator() -> FockMatrix {
    let mut n = FockMatrix::zeros();
    for s in ModeIndex::ALL {
        n += &number_operator(s);
    }
    n
}

/// H_k = hbar omega(k) sum_s N_s.
pub fn hamiltonian(k: &WaveVector, consts: &PhysicalConstants) -> FockMatrix {
    &total_number_operator() * consts.mode_energy(k)
}

/// Q = q (N1 + N2 - N3 - N4).
pub fn charge_operator(consts: &PhysicalConstants) -> FockMatrix {
    let mut q = FockMatrix::zeros();
    for s in ModeIndex::ALL {
        q.add_scaled(c(consts.q * s.charge_sign(), 0.0), &number_operator(s));
    }
    q
}

/// (k0, omega) with k0 = sqrt(kappa^2 + |k|^2) and omega = c k0.
pub fn dispersion(k: &WaveVector, consts: &PhysicalConstants) -> (f64, f64) {
    let k0 = crate::constants::dispersion(k, consts.kappa);
    (k0, consts.c * k0)
}
