use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Dimension of the per-wave-vector Fock space (four fermionic modes).
pub const DIM: usize = 16;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense 16x16 complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct FockMatrix(Box<[C64; DIM * DIM]>);

/// Vector of 16 complex amplitudes in the occupation basis.
#[derive(Clone, Copy, PartialEq)]
pub struct FockVector(pub [C64; DIM]);

impl FockMatrix {
    pub fn zeros() -> Self {
        Self(Box::new([ZERO; DIM * DIM]))
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..DIM {
            for j in 0..DIM {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diagonal(d: &[f64; DIM]) -> Self {
        let mut m = Self::zeros();
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    pub fn entries(&self) -> &[C64; DIM * DIM] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        let mut m = self.clone();
        m.0.iter_mut().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> C64 {
        (0..DIM).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = self.clone();
        m.0.iter_mut().for_each(|z| *z *= s);
        m
    }

    /// self += s * other
    pub fn add_scaled(&mut self, s: C64, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += s * b;
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let svd = self.to_nalgebra().svd(false, false);
        svd.singular_values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = [ZERO; DIM];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.0[i * DIM..(i + 1) * DIM];
            *o = row.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
        }
        FockVector(out)
    }

    /// <a| self |b>
    pub fn matrix_element(&self, a: &FockVector, b: &FockVector) -> C64 {
        a.inner(&self.apply(b))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self - &self.adjoint()).max_abs()
    }

    pub fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_fn(DIM, DIM, |i, j| self[(i, j)])
    }

    pub fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        assert_eq!(m.shape(), (DIM, DIM));
        Self::from_fn(|i, j| m[(i, j)])
    }

    /// Eigenvalues (ascending) of the Hermitian part of the matrix.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.to_nalgebra() + self.to_nalgebra().adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// exp(-i t H) for Hermitian H, by spectral decomposition.
    pub fn unitary_evolution(h: &Self, t: f64) -> Self {
        let eig = h.to_nalgebra().symmetric_eigen();
        let v = &eig.eigenvectors;
        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| C64::from_polar(1.0, -e * t)));
        Self::from_nalgebra(&(v * phases * v.adjoint()))
    }
}

impl Index<(usize, usize)> for FockMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i * DIM + j]
    }
}

impl IndexMut<(usize, usize)> for FockMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i * DIM + j]
    }
}

impl Mul for &FockMatrix {
    type Output = FockMatrix;
    fn mul(self, rhs: &FockMatrix) -> FockMatrix {
        let mut out = FockMatrix::zeros();
        for i in 0..DIM {
            let orow = &mut out.0[i * DIM..(i + 1) * DIM];
            for k in 0..DIM {
                let a = self.0[i * DIM + k];
                if a == ZERO {
                    continue;
                }
                let brow = &rhs.0[k * DIM..(k + 1) * DIM];
                for (o, b) in orow.iter_mut().zip(brow.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Mul<C64> for &FockMatrix {
    type Output = FockMatrix;
    fn mul(self, s: C64) -> FockMatrix {
        self.scale(s)
    }
}

impl Mul<f64> for &FockMatrix {
    type Output = FockMatrix;
    fn mul(self, s: f64) -> FockMatrix {
        self.scale(C64::new(s, 0.0))
    }
}

impl Add for &FockMatrix {
    type Output = FockMatrix;
    fn add(self, rhs: &FockMatrix) -> FockMatrix {
        let mut m = self.clone();
        m += rhs;
        m
    }
}

impl Sub for &FockMatrix {
    type Output = FockMatrix;
    fn sub(self, rhs: &FockMatrix) -> FockMatrix {
        let mut m = self.clone();
        m -= rhs;
        m
    }
}

impl Neg for &FockMatrix {
    type Output = FockMatrix;
    fn neg(self) -> FockMatrix {
        self.scale(-ONE)
    }
}

impl AddAssign<&FockMatrix> for FockMatrix {
    fn add_assign(&mut self, rhs: &FockMatrix) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&FockMatrix> for FockMatrix {
    fn sub_assign(&mut self, rhs: &FockMatrix) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a -= b;
        }
    }
}

impl fmt::Debug for FockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FockMatrix [")?;
        for i in 0..DIM {
            let row: Vec<String> = (0..DIM)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.3}{:+.3}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl FockVector {
    pub const ZERO: Self = Self([ZERO; DIM]);

    pub fn unit(i: usize) -> Self {
        let mut v = Self::ZERO;
        v.0[i] = ONE;
        v
    }

    /// <self|other>, antilinear in self.
    pub fn inner(&self, other: &Self) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// self += s * other
    pub fn add_scaled(&mut self, s: C64, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += s * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Index<usize> for FockVector {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FockVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.0[i]
    }
}

impl Add for FockVector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_scaled(ONE, &rhs);
        self
    }
}

impl Sub for FockVector {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(-ONE, &rhs);
        self
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
