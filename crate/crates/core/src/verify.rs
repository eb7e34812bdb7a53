//! Named residual checks over random wave vectors and spacetime points.

use serde::{Deserialize, Serialize};

use crate::conjugation::fock_charge_conjugation;
use crate::constants::{PhysicalConstants, WaveVector};
use crate::current::{
    charge_commutator_residual, contraction_residuals, current_equivalence_residual, integrated_charge_check,
    r_hermiticity_residual,
};
use crate::expectation::ExpectationEngine;
use crate::field::{DiracField, SpacetimePoint};
use crate::fock::{charge_operator, larmor_evolution_check, ModeIndex, ModeOperators};
use crate::gamma::GammaSet;
use crate::quadrature::QuadratureSpec;
use crate::sampling::KSampler;
use crate::spinor::SpinorBasis;

/// One identity and its worst residual over the samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub paper_tag: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, tag: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            paper_tag: tag.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            detail: None,
        }
    }

    pub fn failed(name: &str, tag: &str, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            paper_tag: tag.into(),
            residual: f64::INFINITY,
            tolerance,
            pass: false,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random wave vectors for the spinor and gamma identities.
    pub algebra_samples: usize,
    /// Random (k, k', x, y) tuples for operator identities.
    pub operator_samples: usize,
    /// |k| / kappa drawn log-uniformly from this range.
    pub k_ratio_range: [f64; 2],
    /// Spacetime components drawn uniformly from [-extent, extent].
    pub point_extent: f64,
    pub conjugation_samples: usize,
    pub conjugation_validation: usize,
    /// Added to one entry of gamma^1 to test that the suite detects faults.
    pub perturbation: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            algebra_samples: 1000,
            operator_samples: 100,
            k_ratio_range: [1e-3, 1e3],
            point_extent: 1.0,
            conjugation_samples: 3,
            conjugation_validation: 8,
            perturbation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub kappa: f64,
    pub perturbation: Option<f64>,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn new(seed: u64, kappa: f64, perturbation: Option<f64>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Self {
            seed,
            kappa,
            perturbation,
            checks,
            passed,
            failed,
            all_pass: failed == 0,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Algebraic identities hold to this level in double precision.
pub const ALGEBRA_TOL: f64 = 1e-12;
pub const CHARGE_COMMUTATOR_TOL: f64 = 1e-13;
pub const CONJUGATION_TOL: f64 = 1e-8;

pub struct Verifier {
    consts: PhysicalConstants,
    config: VerifyConfig,
    field: DiracField,
}

impl Verifier {
    pub fn new(consts: PhysicalConstants, config: VerifyConfig) -> crate::Result<Self> {
        consts.validate()?;
        let [lo, hi] = config.k_ratio_range;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(crate::DiracError::InvalidQuadrature(format!(
                "k ratio range must satisfy 0 < lo < hi, got [{lo}, {hi}]"
            )));
        }
        let gammas = match config.perturbation {
            Some(eps) => GammaSet::perturbed(eps),
            None => GammaSet::standard(),
        };
        let field = DiracField::new(SpinorBasis::new(gammas, consts.kappa));
        Ok(Self { consts, config, field })
    }

    pub fn field(&self) -> &DiracField {
        &self.field
    }

    /// Each suite draws from its own stream so that changing one sample count
    /// does not shift the samples of another.
    fn sampler(&self, stream: u64) -> KSampler {
        let [lo, hi] = self.config.k_ratio_range;
        KSampler::new(
            self.config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ stream,
            self.consts.kappa,
            lo,
            hi,
            true,
        )
    }

    fn point(&self, s: &mut KSampler) -> SpacetimePoint {
        SpacetimePoint::from_array(s.point(self.config.point_extent))
    }

    /// Fock CARs, gamma and C algebra, spinor identities.
    pub fn algebra_checks(&self) -> Vec<Check> {
        let modes = ModeOperators::new();
        let mut car: f64 = 0.0;
        for s in ModeIndex::ALL {
            for t in ModeIndex::ALL {
                let delta = if s == t { 1.0 } else { 0.0 };
                let ac = modes.annihilator(s).anticommutator(modes.creator(t));
                car = car.max((&ac - &(&crate::FockMatrix::identity() * delta)).max_abs());
                car = car.max(modes.annihilator(s).anticommutator(modes.annihilator(t)).max_abs());
            }
        }
        let g = self.field.gammas();
        let mut checks = vec![
            Check::new("car_anticommutators", "mode anticommutation relations", car, ALGEBRA_TOL),
            Check::new("clifford_algebra", "gamma anticommutators", g.clifford_residual(), ALGEBRA_TOL),
            Check::new("gamma_hermiticity", "gamma0 gamma gamma0 = gamma dagger", g.hermiticity_residual(), ALGEBRA_TOL),
            Check::new("charge_conjugation_matrix", "C gamma C^-1 = -gamma^T", g.conjugation_residual(), ALGEBRA_TOL),
            Check::new(
                "charge_conjugation_unitarity",
                "C unitary",
                g.conjugation_unitarity_residual(),
                ALGEBRA_TOL,
            ),
        ];
        let sp = self.field.spinors();
        let mut rng = self.sampler(1);
        let (mut eig, mut ortho, mut bil, mut refl) = (0f64, 0f64, 0f64, 0f64);
        let mut suite: Vec<(&'static str, f64)> = Vec::new();
        for _ in 0..self.config.algebra_samples {
            let k = rng.sample();
            let kp = rng.sample();
            eig = eig.max(sp.eigen_residual(&k));
            ortho = ortho.max(sp.orthonormality_residual(&k));
            bil = bil.max(sp.current_bilinear_residual(&k));
            refl = refl.max(sp.reflected_overlap_residual(&k));
            for (name, r) in sp.identity_suite(&k, &kp) {
                match suite.iter_mut().find(|(n, _)| *n == name) {
                    Some(entry) => entry.1 = entry.1.max(r),
                    None => suite.push((name, r)),
                }
            }
        }
        checks.push(Check::new("spinor_mass_shell", "polarization spinors solve the momentum-space Dirac equation", eig, ALGEBRA_TOL));
        checks.push(Check::new("spinor_orthonormality", "spinor orthonormality", ortho, ALGEBRA_TOL));
        checks.push(Check::new("spinor_current_bilinears", "u and v current bilinears", bil, ALGEBRA_TOL));
        checks.push(Check::new("reflected_spinor_overlaps", "u(k) orthogonal to v(-k)", refl, ALGEBRA_TOL));
        for (name, r) in suite {
            checks.push(Check::new(name, "spinor exchange identities", r, ALGEBRA_TOL));
        }
        checks
    }

    /// Field-operator identities per (k, k', x, y).
    pub fn operator_checks(&self) -> Vec<Check> {
        let f = &self.field;
        let c = &self.consts;
        let mut rng = self.sampler(2);
        let mut worst = [0f64; 13];
        for _ in 0..self.config.operator_samples {
            let k = rng.sample();
            let kp = rng.sample();
            let x = self.point(&mut rng);
            let y = self.point(&mut rng);
            let ac = f.anticommutator_residuals(&k, &kp, &x, &y);
            let (diag, off) = contraction_residuals(f, &k, &kp, &x);
            let vals = [
                f.dirac_residual(&k, &x),
                f.adjoint_residual(&k, &x),
                ModeIndex::ALL.iter().map(|s| f.heisenberg_residual(*s, &k, &x, c)).fold(0.0, f64::max),
                ModeIndex::ALL.iter().map(|s| f.inverse_relation_residual(*s, &k, &x)).fold(0.0, f64::max),
                ac[0],
                ac[1],
                ac[2],
                f.phi_anticommutator_residual(&k, &kp, &x, &y),
                f.charge_commutator_residual(&k, &x, c),
                f.phase_covariance_residual(&k, &x, c),
                r_hermiticity_residual(f, &k, &kp, &x),
                diag,
                off,
            ];
            for (w, v) in worst.iter_mut().zip(vals) {
                *w = w.max(v);
            }
        }
        let names = [
            ("dirac_equation", "field operator solves the Dirac equation"),
            ("adjoint_equation", "adjoint field solves the adjoint equation"),
            ("heisenberg_evolution", "time derivative equals commutator with H_k"),
            ("inverse_relations", "mode operators recovered from the field"),
            ("field_anticommutator_vanishing", "{psi, psi} = 0"),
            ("field_anticommutator_equal_point", "{psi_r, psi_r'^dagger} = delta at equal arguments"),
            ("field_anticommutator_general", "{psi_r(k,x), psi_r'(k',y)^dagger} phase formula"),
            ("mode_field_anticommutators", "positive/negative frequency parts"),
            ("field_charge_commutator", "[psi, Q] = q psi"),
            ("phase_covariance", "time translation by exp(-i H_k t)"),
            ("r_current_swap", "R(k,k') dagger = R(k',k)"),
            ("contraction_diag", "divergence of the diagonal current"),
            ("contraction_off", "divergence of the off-diagonal current"),
        ];
        names
            .iter()
            .zip(worst)
            .map(|((n, t), r)| Check::new(n, t, r, ALGEBRA_TOL))
            .collect()
    }

    /// Current equivalence, charge structure and the two-level precession.
    pub fn current_checks(&self) -> Vec<Check> {
        let f = &self.field;
        let mut rng = self.sampler(3);
        let (mut equiv, mut comm, mut integ) = (0f64, 0f64, 0f64);
        for _ in 0..self.config.operator_samples {
            let k = rng.sample();
            let kp = rng.sample();
            let x = self.point(&mut rng);
            let mu = rng.index(4);
            equiv = equiv.max(current_equivalence_residual(f, mu, &k, &kp, &x).expect("mu < 4"));
            comm = comm.max(charge_commutator_residual(f, &k, &kp, &x, &self.consts));
            integ = integ.max(integrated_charge_check(f, &k, &[x]));
        }
        let mut spectrum = charge_operator(&self.consts).hermitian_eigenvalues();
        spectrum.sort_by(f64::total_cmp);
        let q = self.consts.q;
        let expected = [-2.0, -1.0, -1.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 2.0];
        let spec_res = spectrum
            .iter()
            .zip(expected)
            .map(|(a, b)| (a - b * q).abs())
            .fold(0.0, f64::max);
        let mut larmor: f64 = 0.0;
        for _ in 0..20 {
            let omega = rng.uniform(0.1, 10.0);
            let t = rng.uniform(-3.0, 3.0);
            larmor = larmor.max(larmor_evolution_check(omega, t));
        }
        vec![
            Check::new("current_equivalence", "bilinear current equals diagonal plus off-diagonal parts", equiv, ALGEBRA_TOL),
            Check::new("current_charge_commutator", "[J, Q] = 0", comm, CHARGE_COMMUTATOR_TOL),
            Check::new("integrated_charge", "diagonal J^0 counts charge", integ, ALGEBRA_TOL),
            Check::new("charge_spectrum", "Q eigenvalues -2q..2q with multiplicities 1,4,6,4,1", spec_res, ALGEBRA_TOL),
            Check::new("larmor_evolution", "two-level precession", larmor, ALGEBRA_TOL),
        ]
    }

    /// Solves for the Fock-space charge conjugation and validates it.
    pub fn conjugation_checks(&self) -> Vec<Check> {
        let mut rng = self.sampler(4);
        let ks: Vec<WaveVector> = (0..self.config.conjugation_samples).map(|_| rng.sample()).collect();
        let validation: Vec<(WaveVector, SpacetimePoint)> = (0..self.config.conjugation_validation)
            .map(|_| {
                let k = rng.sample();
                (k, self.point(&mut rng))
            })
            .collect();
        let names = [
            ("fock_conjugation_unique", "unique k-independent solution"),
            ("fock_conjugation_intertwining", "C-hat psi C-hat^-1 = C psi-adjoint on held-out k"),
            ("fock_conjugation_adjoint", "C-hat psi-adjoint C-hat^-1 = -C psi"),
            ("fock_conjugation_unitarity", "C-hat unitary"),
            ("fock_conjugation_dirac", "conjugated field solves the Dirac equation"),
        ];
        match fock_charge_conjugation(&self.field, &ks, &validation) {
            Ok(sol) => {
                let mut unique = Check::new(
                    names[0].0,
                    names[0].1,
                    (sol.filtered_null_dimension as f64 - 1.0).abs(),
                    0.0,
                );
                unique.detail = Some(format!(
                    "null space dimension {} ({} before conjugate relations), spectral gap {:.3e}",
                    sol.filtered_null_dimension, sol.primary_null_dimension, sol.spectral_gap
                ));
                vec![
                    unique,
                    Check::new(names[1].0, names[1].1, sol.validation_residual, CONJUGATION_TOL),
                    Check::new(names[2].0, names[2].1, sol.adjoint_residual, CONJUGATION_TOL),
                    Check::new(names[3].0, names[3].1, sol.unitarity_residual, CONJUGATION_TOL),
                    Check::new(names[4].0, names[4].1, sol.dirac_residual, CONJUGATION_TOL),
                ]
            }
            Err(e) => names
                .iter()
                .map(|(n, t)| Check::failed(n, t, CONJUGATION_TOL, e.to_string()))
                .collect(),
        }
    }

    /// Closed-form charge of the polarized electron example at a = 1.
    pub fn example_checks(&self) -> Vec<Check> {
        let tag = "total charge q pi^3 l^3 / (3 a^3)";
        match ExpectationEngine::new(self.consts, QuadratureSpec::default()).and_then(|e| e.example_report(1.0)) {
            Ok(r) => vec![Check::new("example_charge", tag, r.charge_rel_error, 1e-8)],
            Err(e) => vec![Check::failed("example_charge", tag, 1e-8, e.to_string())],
        }
    }

    pub fn run(&self) -> VerificationReport {
        let mut checks = self.algebra_checks();
        checks.extend(self.operator_checks());
        checks.extend(self.current_checks());
        checks.extend(self.conjugation_checks());
        checks.extend(self.example_checks());
        VerificationReport::new(self.config.seed, self.consts.kappa, self.config.perturbation, checks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(perturbation: Option<f64>) -> VerifyConfig {
        VerifyConfig {
            algebra_samples: 50,
            operator_samples: 5,
            perturbation,
            ..Default::default()
        }
    }

    #[test]
    fn report_counts_are_consistent() {
        let v = Verifier::new(PhysicalConstants::natural(1.0).unwrap(), quick(None)).unwrap();
        let r = v.run();
        assert!(r.checks.len() >= 25);
        assert_eq!(r.passed + r.failed, r.checks.len());
        assert_eq!(r.all_pass, r.checks.iter().all(|c| c.pass));
        for c in &r.checks {
            assert_eq!(c.pass, c.residual <= c.tolerance, "{}", c.name);
        }
    }

    #[test]
    fn perturbed_gammas_break_the_algebra() {
        let v = Verifier::new(PhysicalConstants::natural(1.0).unwrap(), quick(Some(1e-6))).unwrap();
        let r = v.run();
        assert!(!r.check("clifford_algebra").unwrap().pass);
        assert!(!r.all_pass);
    }

    #[test]
    fn bad_range_is_rejected() {
        let cfg = VerifyConfig {
            k_ratio_range: [1.0, 0.5],
            ..Default::default()
        };
        assert!(Verifier::new(PhysicalConstants::natural(1.0).unwrap(), cfg).is_err());
    }
}
