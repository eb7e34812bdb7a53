//! Current operators R^mu_{k,k'}(x), J^mu_{k,k'}(x) and the normal-ordered split of J.

use num_complex::Complex64 as C64;

use crate::constants::{PhysicalConstants, WaveVector};
use crate::error::{DiracError, Result};
use crate::field::{DiracField, SpacetimePoint};
use crate::fock::{charge_operator, FockMatrix, ModeIndex, ModeSet};
use crate::gamma::Mat4;

const I: C64 = C64::new(0.0, 1.0);

fn check_mu(mu: usize) -> Result<()> {
    if mu < 4 {
        Ok(())
    } else {
        Err(DiracError::LorentzIndexOutOfRange(mu))
    }
}

/// sum_{r r'} left_r M_{r r'} right_r'
fn sandwich(left: &[FockMatrix; 4], m: &Mat4, right: &[FockMatrix; 4]) -> FockMatrix {
    let mut out = FockMatrix::zeros();
    for r in 0..4 {
        for rp in 0..4 {
            let c = m[(r, rp)];
            if c != C64::new(0.0, 0.0) {
                out.add_scaled(c, &(&left[r] * &right[rp]));
            }
        }
    }
    out
}

/// R^mu_{k,k'}(x) = sum psi^a_{r,k}(x) gamma^mu_{r r'} psi_{r',k'}(x)
pub fn r_current(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> Result<FockMatrix> {
    check_mu(mu)?;
    let psia = field.psi_adjoint(k, x);
    let psi = field.psi(kp, x);
    Ok(sandwich(&psia, field.gammas().gamma(mu), &psi))
}

/// J^mu_{k,k'}(x) = 1/2 sum gamma^mu_{r r'} psi^a_{r,k} psi_{r',k'} - 1/2 sum gamma^mu_{r' r} psi_{r,k} psi^a_{r',k'}
pub fn j_current(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> Result<FockMatrix> {
    check_mu(mu)?;
    let g = field.gammas().gamma(mu);
    let first = sandwich(&field.psi_adjoint(k, x), g, &field.psi(kp, x));
    let second = sandwich(&field.psi(k, x), &g.transpose(), &field.psi_adjoint(kp, x));
    Ok(&(&first - &second) * 0.5)
}

/// Same current with the second term written through C gamma^mu C^{-1} in place of -(gamma^mu)^T.
pub fn j_current_via_c_matrix(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> Result<FockMatrix> {
    check_mu(mu)?;
    let g = field.gammas().gamma(mu);
    let c = *field.gammas().charge_conjugation();
    let cgc = c * *g * c.adjoint();
    let first = sandwich(&field.psi_adjoint(k, x), g, &field.psi(kp, x));
    let second = sandwich(&field.psi(k, x), &cgc, &field.psi_adjoint(kp, x));
    Ok(&(&first + &second) * 0.5)
}

/// 1/2 (R - C-hat R C-hat^{-1}) for a given Fock-space charge conjugation.
pub fn j_current_from_conjugation(
    field: &DiracField,
    c_hat: &FockMatrix,
    mu: usize,
    k: &WaveVector,
    kp: &WaveVector,
    x: &SpacetimePoint,
) -> Result<FockMatrix> {
    let r = r_current(field, mu, k, kp, x)?;
    let conj = &(c_hat * &r) * &c_hat.adjoint();
    Ok(&(&r - &conj) * 0.5)
}

/// One normal-ordered term coef * e^{i (sk k + skp k').x} * op.
struct PhasedTerm {
    coef: C64,
    op: FockMatrix,
    sign_k: f64,
    sign_kp: f64,
}

/// Normal-ordered current as a list of phased terms, so derivatives are exact.
struct TermSum {
    terms: Vec<PhasedTerm>,
    kcov: [f64; 4],
    kpcov: [f64; 4],
}

impl TermSum {
    fn phase(&self, field: &DiracField, t: &PhasedTerm, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> C64 {
        C64::from_polar(1.0, t.sign_k * field.phase(k, x) + t.sign_kp * field.phase(kp, x))
    }

    fn evaluate(&self, field: &DiracField, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint, deriv: Option<usize>) -> FockMatrix {
        let mut out = FockMatrix::zeros();
        for t in &self.terms {
            let mut c = t.coef * self.phase(field, t, k, kp, x);
            if let Some(nu) = deriv {
                c *= I * (t.sign_k * self.kcov[nu] + t.sign_kp * self.kpcov[nu]);
            }
            out.add_scaled(c, &t.op);
        }
        out
    }
}

/// phi(-)_{s,k} phi(+)_{t,k'} = e^{i(k - k').x} a_s^dag a_t, etc.
fn diag_terms(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector) -> TermSum {
    let sp = field.spinors();
    let (w, wp) = (sp.spinors(k), sp.spinors(kp));
    let m = field.modes();
    let mut terms = Vec::new();
    // (k, k') and its image with k <-> k'; the image swaps the momentum labels.
    for (wa, wb, sk, skp) in [(&w, &wp, 1.0, -1.0), (&wp, &w, -1.0, 1.0)] {
        for s in ModeIndex::ELECTRON {
            for t in ModeIndex::ELECTRON {
                let b = sp.bilinear(&wa[s.get() - 1], mu, &wb[t.get() - 1]);
                terms.push(PhasedTerm {
                    coef: b * 0.5,
                    op: m.creator(s) * m.annihilator(t),
                    sign_k: sk,
                    sign_kp: skp,
                });
            }
        }
        for s in ModeIndex::POSITRON {
            for t in ModeIndex::POSITRON {
                // -1/2 <v(s)(k')|G v(t)(k)> phi(-)_{t,k} phi(+)_{s,k'}
                let b = sp.bilinear(&wb[s.get() - 1], mu, &wa[t.get() - 1]);
                terms.push(PhasedTerm {
                    coef: -b * 0.5,
                    op: m.creator(t) * m.annihilator(s),
                    sign_k: sk,
                    sign_kp: skp,
                });
            }
        }
    }
    TermSum {
        terms,
        kcov: field.covariant(k),
        kpcov: field.covariant(kp),
    }
}

fn off_terms(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector) -> TermSum {
    let sp = field.spinors();
    let (w, wp) = (sp.spinors(k), sp.spinors(kp));
    let m = field.modes();
    let mut terms = Vec::new();
    // phi(-) phi(-) carries e^{i(k + k').x} and phi(+) phi(+) carries e^{-i(k + k').x},
    // for the term and its k <-> k' image alike.
    for (wa, wb) in [(&w, &wp), (&wp, &w)] {
        for s in ModeIndex::ELECTRON {
            for t in ModeIndex::POSITRON {
                let b = sp.bilinear(&wa[s.get() - 1], mu, &wb[t.get() - 1]);
                terms.push(PhasedTerm {
                    coef: b * 0.5,
                    op: m.creator(s) * m.creator(t),
                    sign_k: 1.0,
                    sign_kp: 1.0,
                });
            }
        }
        for s in ModeIndex::POSITRON {
            for t in ModeIndex::ELECTRON {
                let b = sp.bilinear(&wa[s.get() - 1], mu, &wb[t.get() - 1]);
                terms.push(PhasedTerm {
                    coef: b * 0.5,
                    op: m.annihilator(s) * m.annihilator(t),
                    sign_k: -1.0,
                    sign_kp: -1.0,
                });
            }
        }
    }
    TermSum {
        terms,
        kcov: field.covariant(k),
        kpcov: field.covariant(kp),
    }
}

/// Number-conserving part of J (u-u and v-v bilinears, creators left of annihilators).
pub fn j_diag(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> Result<FockMatrix> {
    check_mu(mu)?;
    Ok(diag_terms(field, mu, k, kp).evaluate(field, k, kp, x, None))
}

/// Pair-creation and pair-annihilation part of J.
pub fn j_off(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> Result<FockMatrix> {
    check_mu(mu)?;
    Ok(off_terms(field, mu, k, kp).evaluate(field, k, kp, x, None))
}

/// Analytic divergence d_mu J^mu of the diagonal and off-diagonal parts.
pub fn divergences(field: &DiracField, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> (FockMatrix, FockMatrix) {
    let mut d = FockMatrix::zeros();
    let mut o = FockMatrix::zeros();
    for mu in 0..4 {
        d += &diag_terms(field, mu, k, kp).evaluate(field, k, kp, x, Some(mu));
        o += &off_terms(field, mu, k, kp).evaluate(field, k, kp, x, Some(mu));
    }
    (d, o)
}

/// Max entry of sum_mu k_mu J_diag^mu - k'_mu J_diag^mu and of sum_mu (k + k')_mu J_off^mu.
pub fn contraction_residuals(field: &DiracField, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> (f64, f64) {
    let (kc, kpc) = (field.covariant(k), field.covariant(kp));
    let mut diag = FockMatrix::zeros();
    let mut off = FockMatrix::zeros();
    for mu in 0..4 {
        let jd = diag_terms(field, mu, k, kp).evaluate(field, k, kp, x, None);
        let jo = off_terms(field, mu, k, kp).evaluate(field, k, kp, x, None);
        diag.add_scaled(C64::new(kc[mu] - kpc[mu], 0.0), &jd);
        off.add_scaled(C64::new(kc[mu] + kpc[mu], 0.0), &jo);
    }
    (diag.max_abs(), off.max_abs())
}

/// Max entry of J - (J_diag + J_off).
pub fn current_equivalence_residual(field: &DiracField, mu: usize, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> Result<f64> {
    let j = j_current(field, mu, k, kp, x)?;
    let split = &j_diag(field, mu, k, kp, x)? + &j_off(field, mu, k, kp, x)?;
    Ok((&j - &split).max_abs())
}

/// Checks that <L|J^0_{k,k}(x)|L> = n1 + n2 - n3 - n4 for every basis state at every point.
pub fn integrated_charge_check(field: &DiracField, k: &WaveVector, points: &[SpacetimePoint]) -> f64 {
    let mut worst: f64 = 0.0;
    for x in points {
        let j0 = j_current(field, 0, k, k, x).expect("mu = 0");
        for set in ModeSet::all() {
            let v = crate::fock::basis_state(set);
            let val = j0.matrix_element(&v, &v);
            worst = worst.max((val - C64::new(set.charge_number() as f64, 0.0)).norm());
        }
    }
    worst
}

/// Max entry of [J^mu_{k,k'}(x), Q] over mu.
pub fn charge_commutator_residual(field: &DiracField, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint, consts: &PhysicalConstants) -> f64 {
    let q = charge_operator(consts);
    (0..4)
        .map(|mu| j_current(field, mu, k, kp, x).expect("mu < 4").commutator(&q).max_abs())
        .fold(0.0, f64::max)
}

/// Max entry of (R^mu_{k,k'})^dag - R^mu_{k',k} over mu.
pub fn r_hermiticity_residual(field: &DiracField, k: &WaveVector, kp: &WaveVector, x: &SpacetimePoint) -> f64 {
    (0..4)
        .map(|mu| {
            let a = r_current(field, mu, k, kp, x).expect("mu < 4").adjoint();
            let b = r_current(field, mu, kp, k, x).expect("mu < 4");
            (&a - &b).max_abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis_state, total_number_operator, vacuum};
    use crate::sampling::KSampler;

    fn setup() -> (DiracField, KSampler) {
        (DiracField::standard(1.0), KSampler::new(21, 1.0, 1e-3, 1e3, true))
    }

    fn pt(s: &mut KSampler) -> SpacetimePoint {
        SpacetimePoint::from_array(s.point(2.0))
    }

    #[test]
    fn rejects_bad_lorentz_index() {
        let f = DiracField::standard(1.0);
        assert!(j_current(&f, 4, &WaveVector::ZERO, &WaveVector::ZERO, &SpacetimePoint::ORIGIN).is_err());
    }

    #[test]
    fn equivalence_of_current_forms() {
        let (f, mut s) = setup();
        for i in 0..40 {
            let (k, kp, x) = (s.sample(), s.sample(), pt(&mut s));
            let mu = i % 4;
            assert!(current_equivalence_residual(&f, mu, &k, &kp, &x).unwrap() <= 1e-12);
            let alt = j_current_via_c_matrix(&f, mu, &k, &kp, &x).unwrap();
            let j = j_current(&f, mu, &k, &kp, &x).unwrap();
            assert!((&alt - &j).max_abs() <= 1e-13);
        }
    }

    #[test]
    fn r_current_properties() {
        let (f, mut s) = setup();
        for _ in 0..20 {
            let (k, kp, x) = (s.sample(), s.sample(), pt(&mut s));
            assert!(r_hermiticity_residual(&f, &k, &kp, &x) <= 1e-13);
            let r0 = r_current(&f, 0, &k, &k, &x).unwrap();
            for set in ModeSet::all() {
                let v = basis_state(set);
                assert!(r0.matrix_element(&v, &v).re >= -1e-14);
            }
            let psi = f.psi(&k, &x);
            let mut density = FockMatrix::zeros();
            for p in psi.iter() {
                density += &(&p.adjoint() * p);
            }
            let r0kk = r_current(&f, 0, &k, &kp, &x).unwrap();
            let psik = f.psi(&k, &x);
            let psikp = f.psi(&kp, &x);
            let mut density_kkp = FockMatrix::zeros();
            for (a, b) in psik.iter().zip(psikp.iter()) {
                density_kkp += &(&a.adjoint() * b);
            }
            assert!((&r0 - &density).max_abs() <= 1e-14);
            assert!((&r0kk - &density_kkp).max_abs() <= 1e-14);
        }
    }

    #[test]
    fn diag_commutes_with_number_and_off_changes_it() {
        let (f, mut s) = setup();
        let n = total_number_operator();
        for _ in 0..10 {
            let (k, kp, x) = (s.sample(), s.sample(), pt(&mut s));
            for mu in 0..4 {
                let jd = j_diag(&f, mu, &k, &kp, &x).unwrap();
                assert!(jd.commutator(&n).max_abs() <= 1e-13);
                let jo = j_off(&f, mu, &k, &kp, &x).unwrap();
                for set in ModeSet::all() {
                    let v = basis_state(set);
                    assert!(jo.matrix_element(&v, &v).norm() <= 1e-15);
                }
            }
        }
    }

    #[test]
    fn contraction_and_divergence() {
        let f = DiracField::standard(1.0);
        let mut s = KSampler::new(5, 1.0, 1e-2, 1e1, true);
        for _ in 0..20 {
            let (k, kp, x) = (s.sample(), s.sample(), pt(&mut s));
            let (d, o) = contraction_residuals(&f, &k, &kp, &x);
            assert!(d <= 1e-13 && o <= 1e-13, "{d:e} {o:e}");
            let (dd, od) = divergences(&f, &k, &kp, &x);
            assert!(dd.max_abs() <= 1e-13 && od.max_abs() <= 1e-13);
        }
    }

    #[test]
    fn vacuum_and_single_electron_density() {
        let f = DiracField::standard(1.0);
        let k = WaveVector::new(0.4, -0.3, 1.2);
        let x = SpacetimePoint::new(0.7, [0.1, 0.2, -0.4]);
        let j0 = j_current(&f, 0, &k, &k, &x).unwrap();
        assert!(j0.matrix_element(&vacuum(), &vacuum()).norm() < 1e-15);
        let one = basis_state(ModeSet::from_index(1));
        assert!((j0.matrix_element(&one, &one) - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn integrated_charge_values() {
        let (f, mut s) = setup();
        let pts: Vec<SpacetimePoint> = (0..4).map(|_| pt(&mut s)).collect();
        for _ in 0..5 {
            assert!(integrated_charge_check(&f, &s.sample(), &pts) <= 1e-12);
        }
    }

    #[test]
    fn current_commutes_with_charge() {
        let (f, mut s) = setup();
        let consts = PhysicalConstants::natural(1.0).unwrap();
        for _ in 0..10 {
            let (k, kp, x) = (s.sample(), s.sample(), pt(&mut s));
            assert!(charge_commutator_residual(&f, &k, &kp, &x, &consts) <= 1e-13);
        }
    }
}
