use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};

/// Physical constants. Internally the library works with hbar = c = 1, where
/// `kappa` (inverse reduced Compton length) and `ell` (state normalization
/// length) are the only scales; `hbar`, `c` and `q` enter dimensionful outputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub kappa: f64,
    pub q: f64,
    pub ell: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            kappa: 1.0,
            q: 1.0,
            ell: 1.0,
        }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, c: f64, kappa: f64, q: f64, ell: f64) -> Result<Self> {
        let consts = Self {
            hbar,
            c,
            kappa,
            q,
            ell,
        };
        consts.validate()?;
        Ok(consts)
    }

    /// hbar = c = q = ell = 1 with the given kappa.
    pub fn natural(kappa: f64) -> Result<Self> {
        Self::new(1.0, 1.0, kappa, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("hbar", self.hbar),
            ("c", self.c),
            ("kappa", self.kappa),
            ("q", self.q),
            ("ell", self.ell),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(DiracError::InvalidConstant { name, value });
            }
        }
        Ok(())
    }

    /// Rest energy m c^2 = hbar c kappa.
    pub fn rest_energy(&self) -> f64 {
        self.hbar * self.c * self.kappa
    }

    /// Mode energy hbar omega(k) = hbar c k0.
    pub fn mode_energy(&self, k: &WaveVector) -> f64 {
        self.hbar * self.c * dispersion(k, self.kappa)
    }
}

/// Spatial wave vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WaveVector(pub [f64; 3]);

impl WaveVector {
    pub const ZERO: Self = Self([0.0; 3]);

    pub fn new(k1: f64, k2: f64, k3: f64) -> Self {
        Self([k1, k2, k3])
    }

    pub fn checked(k: [f64; 3]) -> Result<Self> {
        if k.iter().all(|v| v.is_finite()) {
            Ok(Self(k))
        } else {
            Err(DiracError::InvalidWaveVector)
        }
    }

    pub fn norm(&self) -> f64 {
        let [a, b, c] = self.0;
        a.hypot(b).hypot(c)
    }

    pub fn dot(&self, other: &[f64; 3]) -> f64 {
        self.0[0] * other[0] + self.0[1] * other[1] + self.0[2] * other[2]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.map(|v| v * s))
    }
}

impl Index<usize> for WaveVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Neg for WaveVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|v| -v))
    }
}

impl Add for WaveVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for WaveVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Mul<f64> for WaveVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scaled(s)
    }
}

/// Positive-energy dispersion k0 = sqrt(kappa^2 + |k|^2).
pub fn dispersion(k: &WaveVector, kappa: f64) -> f64 {
    kappa.hypot(k.norm())
}

/// Contravariant on-shell four-wave-vector (k0, k1, k2, k3).
pub fn on_shell(k: &WaveVector, kappa: f64) -> [f64; 4] {
    [dispersion(k, kappa), k.0[0], k.0[1], k.0[2]]
}

/// Lower the index with the metric diag(+,-,-,-).
pub fn lower(v: [f64; 4]) -> [f64; 4] {
    [v[0], -v[1], -v[2], -v[3]]
}

/// Minkowski metric diag(+1,-1,-1,-1).
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu, nu) {
        (0, 0) => 1.0,
        (a, b) if a == b => -1.0,
        _ => 0.0,
    }
}
