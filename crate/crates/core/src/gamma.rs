//! Gamma matrices in the standard (Dirac) representation, metric (+,-,-,-).

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::constants::metric;

/// Four complex spinor components.
pub type Spinor = [C64; 4];

const Z: C64 = C64::new(0.0, 0.0);
const O: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[C64; 4]; 4]);

impl Mat4 {
    pub const ZERO: Self = Self([[Z; 4]; 4]);

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { O } else { Z })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v[j]).sum())
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0;
        let mut inv = Self::identity().0;
        for col in 0..4 {
            let piv = (col..4).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
            if a[piv][col].norm() == 0.0 {
                return None;
            }
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col];
            for j in 0..4 {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for row in 0..4 {
                if row != col {
                    let f = a[row][col];
                    for j in 0..4 {
                        a[row][j] -= f * a[col][j];
                        inv[row][j] -= f * inv[col][j];
                    }
                }
            }
        }
        Some(Self(inv))
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Mul<C64> for Mat4 {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for Mat4 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }
}

impl Add for Mat4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl Sub for Mat4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for Mat4 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-O)
    }
}

/// <a|b> = sum_r conj(a_r) b_r
pub fn spinor_inner(a: &Spinor, b: &Spinor) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn spinor_max_diff(a: &Spinor, b: &Spinor) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The four gamma matrices and the charge-conjugation matrix C = i gamma^2 gamma^0.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    gamma: [Mat4; 4],
    charge_conjugation: Mat4,
    gamma0_gamma: [Mat4; 4],
}

fn pauli(alpha: usize) -> [[C64; 2]; 2] {
    match alpha {
        1 => [[Z, O], [O, Z]],
        2 => [[Z, -I], [I, Z]],
        3 => [[O, Z], [Z, -O]],
        _ => unreachable!("Pauli index {alpha}"),
    }
}

impl GammaSet {
    /// gamma^0 = diag(1, 1, -1, -1), gamma^alpha = [[0, -sigma_alpha], [sigma_alpha, 0]].
    pub fn standard() -> Self {
        let g0 = Mat4::from_fn(|i, j| match (i == j, i < 2) {
            (true, true) => O,
            (true, false) => -O,
            _ => Z,
        });
        let spatial = |alpha: usize| {
            let s = pauli(alpha);
            Mat4::from_fn(|i, j| match (i < 2, j < 2) {
                (true, false) => -s[i][j - 2],
                (false, true) => s[i - 2][j],
                _ => Z,
            })
        };
        Self::from_gammas([g0, spatial(1), spatial(2), spatial(3)])
    }

    /// Standard set with `eps` added to entry (0,3) of gamma^1; breaks the algebra on purpose.
    pub fn perturbed(eps: f64) -> Self {
        let mut g = Self::standard().gamma;
        g[1][(0, 3)] += C64::new(eps, 0.0);
        Self::from_gammas(g)
    }

    fn from_gammas(gamma: [Mat4; 4]) -> Self {
        let charge_conjugation = (gamma[2] * gamma[0]) * I;
        let gamma0_gamma = gamma.map(|g| gamma[0] * g);
        Self {
            gamma,
            charge_conjugation,
            gamma0_gamma,
        }
    }

    pub fn gamma(&self, mu: usize) -> &Mat4 {
        &self.gamma[mu]
    }

    pub fn gammas(&self) -> &[Mat4; 4] {
        &self.gamma
    }

    /// gamma^0 gamma^mu, the kernel of the bilinears <a|gamma^0 gamma^mu b>.
    pub fn gamma0_gamma(&self, mu: usize) -> &Mat4 {
        &self.gamma0_gamma[mu]
    }

    pub fn charge_conjugation(&self) -> &Mat4 {
        &self.charge_conjugation
    }

    pub fn metric(&self, mu: usize, nu: usize) -> f64 {
        metric(mu, nu)
    }

    /// k-slash = sum_mu k_mu gamma^mu for covariant components k_mu.
    pub fn slash(&self, k_cov: [f64; 4]) -> Mat4 {
        (0..4).fold(Mat4::ZERO, |acc, mu| acc + self.gamma[mu] * k_cov[mu])
    }

    /// Max entry of {gamma^mu, gamma^nu} - 2 g^{mu nu} over all pairs.
    pub fn clifford_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let ac = self.gamma[mu].anticommutator(&self.gamma[nu]);
                let target = Mat4::identity() * (2.0 * metric(mu, nu));
                worst = worst.max((ac - target).max_abs());
            }
        }
        worst
    }

    /// Max entry of (gamma^mu)^dag gamma^0 - gamma^0 gamma^mu, together with
    /// gamma^0 (gamma^mu)^dag - gamma^mu gamma^0.
    pub fn hermiticity_residual(&self) -> f64 {
        let g0 = self.gamma[0];
        let mut worst: f64 = 0.0;
        for g in &self.gamma {
            worst = worst.max((g.adjoint() * g0 - g0 * *g).max_abs());
            worst = worst.max((g0 * g.adjoint() - *g * g0).max_abs());
        }
        worst
    }

    /// Max entry of C gamma^mu C^{-1} + (gamma^mu)^T.
    pub fn conjugation_residual(&self) -> f64 {
        let c = self.charge_conjugation;
        let c_inv = c.inverse().expect("C is invertible");
        self.gamma
            .iter()
            .map(|g| (c * *g * c_inv + g.transpose()).max_abs())
            .fold(0.0, f64::max)
    }

    /// Max over C^{-1} - C^dag, C^T - C^dag, C^dag + C.
    pub fn conjugation_unitarity_residual(&self) -> f64 {
        let c = self.charge_conjugation;
        let c_inv = c.inverse().expect("C is invertible");
        [
            (c_inv - c.adjoint()).max_abs(),
            (c.transpose() - c.adjoint()).max_abs(),
            (c.adjoint() + c).max_abs(),
            (c * c.adjoint() - Mat4::identity()).max_abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl Default for GammaSet {
    fn default() -> Self {
        Self::standard()
    }
}
