//! Fock-space charge-conjugation unitary C-hat, solved from the intertwining
//! relation C-hat psi_r C-hat^{-1} = sum_r' C_{r r'} psi^a_r'.
//!
//! Writing A = psi_{r,k}(0) and B = sum_r' C_{r r'} psi^a_{r',k}(0), the unknown X
//! satisfies X A - B X = 0. A unitary solution also satisfies X A^dag - B^dag X = 0
//! (take the adjoint and use X^{-1} = X^dag); these conjugate rows are stacked as
//! well, since the first family alone leaves a large null space.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::constants::WaveVector;
use crate::error::{DiracError, Result};
use crate::field::{DiracField, FieldComponents, SpacetimePoint};
use crate::fock::{FockMatrix, DIM};
use crate::gamma::Mat4;

const N2: usize = DIM * DIM;

/// Relative eigenvalue threshold of the Gram matrix below which a direction
/// counts as null (singular value ratio 1e-6).
const NULL_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct ChargeConjugationSolution {
    pub operator: FockMatrix,
    /// Null-space dimension of the primary relations alone.
    pub primary_null_dimension: usize,
    /// Null-space dimension after adding the conjugate relations.
    pub filtered_null_dimension: usize,
    /// Smallest non-null singular value of the filtered system, relative to the largest.
    pub spectral_gap: f64,
    /// Worst intertwining residual over the validation points.
    pub validation_residual: f64,
    /// Worst residual of C-hat psi^a C-hat^{-1} + sum C psi.
    pub adjoint_residual: f64,
    /// || C-hat^dag C-hat - I ||
    pub unitarity_residual: f64,
    /// Conjugated Dirac operator residual.
    pub dirac_residual: f64,
}

/// sum_r' C_{r r'} psi^a_r'
fn conjugated_adjoint(c: &Mat4, psia: &FieldComponents) -> FieldComponents {
    DiracField::mix(c, psia)
}

fn kron(a: &FockMatrix, b: &FockMatrix, out: &mut DMatrix<C64>, sign: f64) {
    // (a (x) b)[(i1*16+i2),(j1*16+j2)] = a[i1,j1] b[i2,j2] with column-major
    // vec(X): index = row + 16 col, so a acts on the column index.
    for i1 in 0..DIM {
        for j1 in 0..DIM {
            let av = a[(i1, j1)] * sign;
            if av == C64::new(0.0, 0.0) {
                continue;
            }
            for i2 in 0..DIM {
                for j2 in 0..DIM {
                    let bv = b[(i2, j2)];
                    if bv != C64::new(0.0, 0.0) {
                        out[(i1 * DIM + i2, j1 * DIM + j2)] += av * bv;
                    }
                }
            }
        }
    }
}

/// Adds M^dag M for M = A^T (x) I - I (x) B, i.e. the rows of vec(X A - B X) = 0.
fn accumulate_gram(gram: &mut DMatrix<C64>, a: &FockMatrix, b: &FockMatrix) {
    let id = FockMatrix::identity();
    let abar = a.conj();
    let at = a.transpose();
    // (A-bar A^T) (x) I - A-bar (x) B - A^T (x) B^dag + I (x) B^dag B
    kron(&(&abar * &at), &id, gram, 1.0);
    kron(&abar, b, gram, -1.0);
    kron(&at, &b.adjoint(), gram, -1.0);
    kron(&id, &(&b.adjoint() * b), gram, 1.0);
}

fn intertwining_blocks(field: &DiracField, k: &WaveVector, x: &SpacetimePoint) -> Vec<(FockMatrix, FockMatrix)> {
    let c = *field.gammas().charge_conjugation();
    let psi = field.psi(k, x);
    let psia = field.adjoint_of(&psi);
    let rhs = conjugated_adjoint(&c, &psia);
    psi.into_iter().zip(rhs).collect()
}

fn null_space(gram: &DMatrix<C64>) -> (Vec<nalgebra::DVector<C64>>, f64) {
    let eig = gram.clone().symmetric_eigen();
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut null = Vec::new();
    let mut gap = f64::INFINITY;
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l <= NULL_THRESHOLD * lmax {
            null.push(eig.eigenvectors.column(i).into_owned());
        } else {
            gap = gap.min((l / lmax).sqrt());
        }
    }
    (null, gap)
}

fn from_vec(v: &nalgebra::DVector<C64>) -> FockMatrix {
    FockMatrix::from_fn(|i, j| v[i + DIM * j])
}

/// Scales to tr(X^dag X) = 16 and rotates the first largest-modulus entry to the positive real axis.
fn normalize(x: &FockMatrix) -> FockMatrix {
    let scale = (DIM as f64).sqrt() / x.frobenius_norm();
    let max = x.max_abs();
    let pivot = x
        .entries()
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-9))
        .copied()
        .expect("non-empty matrix");
    let phase = pivot.conj() / pivot.norm();
    x.scale(phase * scale)
}

fn intertwining_residual(field: &DiracField, op: &FockMatrix, k: &WaveVector, x: &SpacetimePoint) -> f64 {
    intertwining_blocks(field, k, x)
        .iter()
        .map(|(a, b)| (&(op * a) - &(b * op)).max_abs())
        .fold(0.0, f64::max)
}

/// C-hat psi^a_r C-hat^dag + sum_r' C_{r r'} psi_r'
fn adjoint_relation_residual(field: &DiracField, op: &FockMatrix, k: &WaveVector, x: &SpacetimePoint) -> f64 {
    let c = *field.gammas().charge_conjugation();
    let psi = field.psi(k, x);
    let psia = field.adjoint_of(&psi);
    let cpsi = DiracField::mix(&c, &psi);
    let opd = op.adjoint();
    psia.iter()
        .zip(cpsi.iter())
        .map(|(pa, cp)| (&(&(op * pa) * &opd) + cp).max_abs())
        .fold(0.0, f64::max)
}

/// C-hat (i gamma.d - kappa) psi C-hat^dag against (i gamma.d - kappa) (C psi^a),
/// together with the size of the latter.
fn conjugated_dirac_residual(field: &DiracField, op: &FockMatrix, k: &WaveVector, x: &SpacetimePoint) -> f64 {
    let i = C64::new(0.0, 1.0);
    let c = *field.gammas().charge_conjugation();
    let kappa = C64::new(field.kappa(), 0.0);
    let apply_dirac = |f: &FieldComponents, d: &dyn Fn(usize) -> FieldComponents| -> FieldComponents {
        let mut out: FieldComponents = std::array::from_fn(|r| f[r].scale(-kappa));
        for mu in 0..4 {
            let t = DiracField::mix(field.gammas().gamma(mu), &d(mu));
            for (o, tt) in out.iter_mut().zip(t.iter()) {
                o.add_scaled(i, tt);
            }
        }
        out
    };
    let psi = field.psi(k, x);
    let dpsi = apply_dirac(&psi, &|mu| field.psi_derivative(mu, k, x));
    let cpsia = DiracField::mix(&c, &field.adjoint_of(&psi));
    let dcpsia = apply_dirac(&cpsia, &|mu| DiracField::mix(&c, &field.adjoint_of(&field.psi_derivative(mu, k, x))));
    let opd = op.adjoint();
    let mut worst: f64 = 0.0;
    for (a, b) in dpsi.iter().zip(dcpsia.iter()) {
        worst = worst.max((&(&(op * a) * &opd) - b).max_abs());
        worst = worst.max(b.max_abs());
    }
    worst
}

/// Solves for a k-independent C-hat from the sample wave vectors and validates
/// it on held-out wave vectors and points.
pub fn fock_charge_conjugation(
    field: &DiracField,
    sample_ks: &[WaveVector],
    validation: &[(WaveVector, SpacetimePoint)],
) -> Result<ChargeConjugationSolution> {
    if sample_ks.len() < 2 {
        return Err(DiracError::InvalidQuadrature(
            "charge conjugation solve needs at least two sample wave vectors".into(),
        ));
    }
    let mut primary = DMatrix::<C64>::zeros(N2, N2);
    let mut conjugate = DMatrix::<C64>::zeros(N2, N2);
    for k in sample_ks {
        for (a, b) in intertwining_blocks(field, k, &SpacetimePoint::ORIGIN) {
            accumulate_gram(&mut primary, &a, &b);
            accumulate_gram(&mut conjugate, &a.adjoint(), &b.adjoint());
        }
    }
    let (primary_null, _) = null_space(&primary);
    let total = &primary + &conjugate;
    let (null, gap) = null_space(&total);
    match null.len() {
        0 => {
            let eig = total.symmetric_eigen();
            let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
            let lmin = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
            return Err(DiracError::NoSolution {
                smallest: (lmin.max(0.0) / lmax).sqrt(),
            });
        }
        1 => {}
        n => return Err(DiracError::Ambiguous { dimension: n }),
    }
    let operator = normalize(&from_vec(&null[0]));
    let unitarity_residual = (&(&operator.adjoint() * &operator) - &FockMatrix::identity()).max_abs();
    let mut validation_residual: f64 = 0.0;
    let mut adjoint_residual: f64 = 0.0;
    let mut dirac_residual: f64 = 0.0;
    for (k, x) in validation {
        validation_residual = validation_residual.max(intertwining_residual(field, &operator, k, x));
        adjoint_residual = adjoint_residual.max(adjoint_relation_residual(field, &operator, k, x));
        dirac_residual = dirac_residual.max(conjugated_dirac_residual(field, &operator, k, x));
    }
    Ok(ChargeConjugationSolution {
        operator,
        primary_null_dimension: primary_null.len(),
        filtered_null_dimension: 1,
        spectral_gap: gap,
        validation_residual,
        adjoint_residual,
        unitarity_residual,
        dirac_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_gram_matches_explicit_rows() {
        // Compare the Kronecker-assembled Gram matrix against M^dag M built from
        // explicit vectorized rows, for a pair of small random-like operators.
        let a = FockMatrix::from_fn(|i, j| C64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64));
        let b = FockMatrix::from_fn(|i, j| C64::new(((i * 5 + j) % 4) as f64 - 1.5, ((3 * i + j) % 7) as f64 * 0.1));
        let mut gram = DMatrix::<C64>::zeros(N2, N2);
        accumulate_gram(&mut gram, &a, &b);
        // M e_{(p,q)} = vec(E_pq A - B E_pq)
        let mut m = DMatrix::<C64>::zeros(N2, N2);
        for q in 0..DIM {
            for p in 0..DIM {
                let mut e = FockMatrix::zeros();
                e[(p, q)] = C64::new(1.0, 0.0);
                let col = &(&e * &a) - &(&b * &e);
                for j in 0..DIM {
                    for i in 0..DIM {
                        m[(i + DIM * j, p + DIM * q)] = col[(i, j)];
                    }
                }
            }
        }
        let explicit = m.adjoint() * &m;
        let diff = (&gram - &explicit).map(|z| z.norm()).max();
        assert!(diff < 1e-10, "{diff}");
    }

    #[test]
    fn solves_unique_unitary() {
        let field = DiracField::standard(1.0);
        let ks = [WaveVector::new(0.3, -0.4, 0.9), WaveVector::new(-1.7, 0.2, 0.5)];
        let validation = [
            (WaveVector::new(2.0, 1.0, -3.0), SpacetimePoint::new(0.4, [1.0, -0.5, 0.2])),
            (WaveVector::new(-0.01, 0.02, 0.0), SpacetimePoint::new(-1.0, [0.0, 2.0, 0.1])),
        ];
        let sol = fock_charge_conjugation(&field, &ks, &validation).unwrap();
        assert!(sol.primary_null_dimension > 1);
        assert!(sol.validation_residual <= 1e-8);
        assert!(sol.adjoint_residual <= 1e-8);
        assert!(sol.unitarity_residual <= 1e-10);
        assert!(sol.dirac_residual <= 1e-8);
        assert!(sol.spectral_gap > 1e-3);
    }

    #[test]
    fn needs_two_samples() {
        let field = DiracField::standard(1.0);
        assert!(fock_charge_conjugation(&field, &[WaveVector::ZERO], &[]).is_err());
    }
}
