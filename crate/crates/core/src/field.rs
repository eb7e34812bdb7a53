//! Spacetime-dependent field operators on the per-k Fock space.
//!
//! Phases use k_nu x^nu = k0 x0 - k.x (metric +,-,-,-); phi_plus carries
//! e^{-i k.x} and annihilates, phi_minus is its adjoint.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::constants::{lower, on_shell, PhysicalConstants, WaveVector};
use crate::error::{DiracError, Result};
use crate::fock::{hamiltonian, FockMatrix, ModeIndex, ModeOperators};
use crate::gamma::{GammaSet, Mat4, Spinor};
use crate::spinor::SpinorBasis;

const I: C64 = C64::new(0.0, 1.0);

/// Spacetime point (x0 = c t, spatial x).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub x0: f64,
    pub x: [f64; 3],
}

impl SpacetimePoint {
    pub const ORIGIN: Self = Self {
        x0: 0.0,
        x: [0.0; 3],
    };

    pub fn new(x0: f64, x: [f64; 3]) -> Self {
        Self { x0, x }
    }

    pub fn checked(x0: f64, x: [f64; 3]) -> Result<Self> {
        if x0.is_finite() && x.iter().all(|v| v.is_finite()) {
            Ok(Self { x0, x })
        } else {
            Err(DiracError::InvalidPoint)
        }
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], [v[1], v[2], v[3]])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x0, self.x[0], self.x[1], self.x[2]]
    }
}

/// The four components of a spinor-valued operator, indexed r - 1.
pub type FieldComponents = [FockMatrix; 4];

/// Field operators for fixed kappa and gamma set.
#[derive(Debug, Clone)]
pub struct DiracField {
    spinors: SpinorBasis,
    modes: ModeOperators,
}

impl DiracField {
    pub fn new(spinors: SpinorBasis) -> Self {
        Self {
            spinors,
            modes: ModeOperators::new(),
        }
    }

    pub fn standard(kappa: f64) -> Self {
        Self::new(SpinorBasis::standard(kappa))
    }

    pub fn spinors(&self) -> &SpinorBasis {
        &self.spinors
    }

    pub fn gammas(&self) -> &GammaSet {
        self.spinors.gammas()
    }

    pub fn kappa(&self) -> f64 {
        self.spinors.kappa()
    }

    pub fn modes(&self) -> &ModeOperators {
        &self.modes
    }

    /// Covariant on-shell components k_mu = (k0, -k).
    pub fn covariant(&self, k: &WaveVector) -> [f64; 4] {
        lower(on_shell(k, self.kappa()))
    }

    /// k_nu x^nu
    pub fn phase(&self, k: &WaveVector, x: &SpacetimePoint) -> f64 {
        self.spinors.k0(k) * x.x0 - k.dot(&x.x)
    }

    pub fn phi_plus(&self, s: ModeIndex, k: &WaveVector, x: &SpacetimePoint) -> FockMatrix {
        self.modes
            .annihilator(s)
            .scale(C64::from_polar(1.0, -self.phase(k, x)))
    }

    pub fn phi_minus(&self, s: ModeIndex, k: &WaveVector, x: &SpacetimePoint) -> FockMatrix {
        self.modes
            .creator(s)
            .scale(C64::from_polar(1.0, self.phase(k, x)))
    }

    /// Sum over modes of w_r(s) * phi(s) * factor(s), where phi is phi_plus for
    /// electron modes and phi_minus for positron modes.
    fn combine(
        &self,
        k: &WaveVector,
        x: &SpacetimePoint,
        factor: impl Fn(ModeIndex) -> C64,
    ) -> FieldComponents {
        let w = self.spinors.spinors(k);
        let e = C64::from_polar(1.0, -self.phase(k, x));
        let mut out: FieldComponents = std::array::from_fn(|_| FockMatrix::zeros());
        for s in ModeIndex::ALL {
            let (op, ph) = if s.is_electron() {
                (self.modes.annihilator(s), e)
            } else {
                (self.modes.creator(s), e.conj())
            };
            let f = factor(s) * ph;
            for (r, o) in out.iter_mut().enumerate() {
                let coef = w[s.get() - 1][r] * f;
                if coef != C64::new(0.0, 0.0) {
                    o.add_scaled(coef, op);
                }
            }
        }
        out
    }

    /// psi_{r,k}(x) for r = 1..4.
    pub fn psi(&self, k: &WaveVector, x: &SpacetimePoint) -> FieldComponents {
        self.combine(k, x, |_| C64::new(1.0, 0.0))
    }

    pub fn psi_component(&self, r: usize, k: &WaveVector, x: &SpacetimePoint) -> Result<FockMatrix> {
        if !(1..=4).contains(&r) {
            return Err(DiracError::SpinorIndexOutOfRange(r));
        }
        Ok(self.psi(k, x)[r - 1].clone())
    }

    /// d/dx^mu psi_{r,k}(x), using d phi(+/-) = -/+ i k_mu phi(+/-).
    pub fn psi_derivative(&self, mu: usize, k: &WaveVector, x: &SpacetimePoint) -> FieldComponents {
        let kmu = self.covariant(k)[mu];
        self.combine(k, x, |s| {
            if s.is_electron() {
                -I * kmu
            } else {
                I * kmu
            }
        })
    }

    /// psi^a_r = sum_r' psi_r'^dagger gamma0_{r' r}.
    pub fn psi_adjoint(&self, k: &WaveVector, x: &SpacetimePoint) -> FieldComponents {
        self.adjoint_of(&self.psi(k, x))
    }

    pub fn adjoint_of(&self, psi: &FieldComponents) -> FieldComponents {
        let g0 = self.gammas().gamma(0);
        let daggers: Vec<FockMatrix> = psi.iter().map(|p| p.adjoint()).collect();
        std::array::from_fn(|r| {
            let mut m = FockMatrix::zeros();
            for (rp, d) in daggers.iter().enumerate() {
                let g = g0[(rp, r)];
                if g != C64::new(0.0, 0.0) {
                    m.add_scaled(g, d);
                }
            }
            m
        })
    }

    /// Applies a 4x4 matrix to the spinor index: out_r = sum_r' m_{r r'} f_r'.
    pub fn mix(m: &Mat4, f: &FieldComponents) -> FieldComponents {
        std::array::from_fn(|r| {
            let mut out = FockMatrix::zeros();
            for (rp, op) in f.iter().enumerate() {
                let c = m[(r, rp)];
                if c != C64::new(0.0, 0.0) {
                    out.add_scaled(c, op);
                }
            }
            out
        })
    }

    /// Row-vector action: out_r = sum_r' f_r' m_{r' r}.
    pub fn mix_right(f: &FieldComponents, m: &Mat4) -> FieldComponents {
        Self::mix(&m.transpose(), f)
    }

    /// max_r || i gamma^mu d_mu psi - kappa psi ||_op
    pub fn dirac_residual(&self, k: &WaveVector, x: &SpacetimePoint) -> f64 {
        let psi = self.psi(k, x);
        let mut lhs: FieldComponents = std::array::from_fn(|r| psi[r].scale(C64::new(-self.kappa(), 0.0)));
        for mu in 0..4 {
            let d = self.psi_derivative(mu, k, x);
            let term = Self::mix(self.gammas().gamma(mu), &d);
            for (l, t) in lhs.iter_mut().zip(term.iter()) {
                l.add_scaled(I, t);
            }
        }
        lhs.iter().map(|m| m.operator_norm()).fold(0.0, f64::max)
    }

    /// max_r || -i d_mu psi^a gamma^mu - kappa psi^a ||_op
    pub fn adjoint_residual(&self, k: &WaveVector, x: &SpacetimePoint) -> f64 {
        let psia = self.psi_adjoint(k, x);
        let mut lhs: FieldComponents = std::array::from_fn(|r| psia[r].scale(C64::new(-self.kappa(), 0.0)));
        for mu in 0..4 {
            let d = self.adjoint_of(&self.psi_derivative(mu, k, x));
            let term = Self::mix_right(&d, self.gammas().gamma(mu));
            for (l, t) in lhs.iter_mut().zip(term.iter()) {
                l.add_scaled(-I, t);
            }
        }
        lhs.iter().map(|m| m.operator_norm()).fold(0.0, f64::max)
    }

    /// || sum_r conj(w_r(s)(-k)) psi_r - (kappa/k0) phi(s) ||_op
    pub fn inverse_relation_residual(&self, s: ModeIndex, k: &WaveVector, x: &SpacetimePoint) -> f64 {
        let psi = self.psi(k, x);
        let wm: Spinor = self.spinors.spinor(s, &-*k).components;
        let mut lhs = FockMatrix::zeros();
        for (r, p) in psi.iter().enumerate() {
            lhs.add_scaled(wm[r].conj(), p);
        }
        let ratio = self.kappa() / self.spinors.k0(k);
        let phi = if s.is_electron() {
            self.phi_plus(s, k, x)
        } else {
            self.phi_minus(s, k, x)
        };
        lhs.add_scaled(C64::new(-ratio, 0.0), &phi);
        lhs.operator_norm()
    }

    /// max over phi_plus and phi_minus of || i hbar c d0 phi - [phi, H_k] ||_op.
    pub fn heisenberg_residual(
        &self,
        s: ModeIndex,
        k: &WaveVector,
        x: &SpacetimePoint,
        consts: &PhysicalConstants,
    ) -> f64 {
        let h = hamiltonian(k, consts);
        let k0 = self.spinors.k0(k);
        let hbar_c = consts.hbar * consts.c;
        let plus = self.phi_plus(s, k, x);
        let minus = self.phi_minus(s, k, x);
        // d0 phi(+) = -i k0 phi(+), d0 phi(-) = +i k0 phi(-)
        let lhs_plus = plus.scale(I * hbar_c * (-I * k0));
        let lhs_minus = minus.scale(I * hbar_c * (I * k0));
        let rp = (&lhs_plus - &plus.commutator(&h)).operator_norm();
        let rm = (&lhs_minus - &minus.commutator(&h)).operator_norm();
        rp.max(rm)
    }

    /// Max entry of the three anticommutator relations of psi: {psi, psi} = 0,
    /// {psi_r, psi_r'^dag} at equal arguments = delta, and the general formula.
    pub fn anticommutator_residuals(
        &self,
        k: &WaveVector,
        kp: &WaveVector,
        x: &SpacetimePoint,
        y: &SpacetimePoint,
    ) -> [f64; 3] {
        let a = self.psi(k, x);
        let b = self.psi(kp, y);
        let wa = self.spinors.spinors(k);
        let wb = self.spinors.spinors(kp);
        let phase = self.phase(k, x) - self.phase(kp, y);
        let (em, ep) = (C64::from_polar(1.0, -phase), C64::from_polar(1.0, phase));
        let id = FockMatrix::identity();
        let mut zero: f64 = 0.0;
        let mut equal: f64 = 0.0;
        let mut general: f64 = 0.0;
        for r in 0..4 {
            for rp in 0..4 {
                zero = zero.max(a[r].anticommutator(&b[rp]).max_abs());
                let same = a[r].anticommutator(&a[rp].adjoint());
                let delta = if r == rp { 1.0 } else { 0.0 };
                equal = equal.max((&same - &(&id * delta)).max_abs());
                let mut expect = C64::new(0.0, 0.0);
                for s in 0..2 {
                    expect += wb[s][rp].conj() * wa[s][r] * em;
                }
                for s in 2..4 {
                    expect += wb[s][rp].conj() * wa[s][r] * ep;
                }
                let ac = a[r].anticommutator(&b[rp].adjoint());
                general = general.max((&ac - &(&id * expect)).max_abs());
            }
        }
        [zero, equal, general]
    }

    /// {phi(+)_{s,k}(x), phi(-)_{t,k'}(y)} = delta_st e^{-i k.x} e^{i k'.y} and
    /// {phi(+), phi(+)} = 0; max entry residual.
    pub fn phi_anticommutator_residual(
        &self,
        k: &WaveVector,
        kp: &WaveVector,
        x: &SpacetimePoint,
        y: &SpacetimePoint,
    ) -> f64 {
        let id = FockMatrix::identity();
        let ph = C64::from_polar(1.0, -self.phase(k, x) + self.phase(kp, y));
        let mut worst: f64 = 0.0;
        for s in ModeIndex::ALL {
            let p = self.phi_plus(s, k, x);
            for t in ModeIndex::ALL {
                let m = self.phi_minus(t, kp, y);
                let expect = if s == t { &id * ph } else { FockMatrix::zeros() };
                worst = worst.max((&p.anticommutator(&m) - &expect).max_abs());
                worst = worst.max(p.anticommutator(&self.phi_plus(t, kp, y)).max_abs());
            }
        }
        worst
    }

    /// [psi, Q] = q psi and [psi^dag, Q] = -q psi^dag; max entry residual.
    pub fn charge_commutator_residual(
        &self,
        k: &WaveVector,
        x: &SpacetimePoint,
        consts: &PhysicalConstants,
    ) -> f64 {
        let q = crate::fock::charge_operator(consts);
        let mut worst: f64 = 0.0;
        for p in self.psi(k, x).iter() {
            worst = worst.max((&p.commutator(&q) - &(p * consts.q)).max_abs());
            let d = p.adjoint();
            worst = worst.max((&d.commutator(&q) + &(&d * consts.q)).max_abs());
        }
        worst
    }

    /// psi at (x0, x) against U^dag psi(0, x) U with U = exp(-i H_k x0 / (hbar c)).
    pub fn phase_covariance_residual(
        &self,
        k: &WaveVector,
        x: &SpacetimePoint,
        consts: &PhysicalConstants,
    ) -> f64 {
        let h = hamiltonian(k, consts);
        let u = FockMatrix::unitary_evolution(&h, x.x0 / (consts.hbar * consts.c));
        let at_zero = self.psi(k, &SpacetimePoint::new(0.0, x.x));
        let direct = self.psi(k, x);
        at_zero
            .iter()
            .zip(direct.iter())
            .map(|(p0, p)| (&(&u.adjoint() * &(p0 * &u)) - p).max_abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::mode_annihilator;
    use crate::sampling::KSampler;

    fn point(v: [f64; 4]) -> SpacetimePoint {
        SpacetimePoint::from_array(v)
    }

    #[test]
    fn phi_plus_at_origin_is_annihilator() {
        let f = DiracField::standard(1.0);
        let k = WaveVector::new(0.3, 0.1, -2.0);
        for s in ModeIndex::ALL {
            assert_eq!(f.phi_plus(s, &k, &SpacetimePoint::ORIGIN), mode_annihilator(s));
            let sq = &f.phi_plus(s, &k, &point([0.3, 1.0, 2.0, 3.0])) * &f.phi_plus(s, &k, &SpacetimePoint::ORIGIN);
            assert_eq!(sq.max_abs(), 0.0);
        }
    }

    #[test]
    fn psi_adjoint_at_rest_origin() {
        let f = DiracField::standard(1.0);
        let pa = f.psi_adjoint(&WaveVector::ZERO, &SpacetimePoint::ORIGIN);
        let a1 = ModeIndex::new(1).unwrap();
        assert!((&pa[0] - &mode_annihilator(a1).adjoint()).max_abs() < 1e-16);
    }

    #[test]
    fn psi_norm_bounded() {
        let f = DiracField::standard(1.0);
        let mut s = KSampler::new(2, 1.0, 1e-3, 1e3, true);
        for _ in 0..20 {
            let k = s.sample();
            let x = point(s.point(3.0));
            for p in f.psi(&k, &x).iter() {
                assert!(p.operator_norm() <= 2.0 + 1e-12);
            }
        }
    }

    #[test]
    fn dirac_and_adjoint_residuals() {
        let f = DiracField::standard(1.5);
        let mut s = KSampler::new(4, 1.5, 0.0, 10.0, false);
        assert!(f.dirac_residual(&WaveVector::ZERO, &point([0.3, 0.1, 0.2, 0.3])) < 1e-15);
        for _ in 0..30 {
            let k = s.sample();
            let x = point(s.point(5.0));
            assert!(f.dirac_residual(&k, &x) <= 1e-13 * f.kappa(), "{k:?}");
            assert!(f.adjoint_residual(&k, &x) <= 1e-13 * f.kappa(), "{k:?}");
        }
    }

    #[test]
    fn inverse_relations() {
        let f = DiracField::standard(0.8);
        let mut s = KSampler::new(8, 0.8, 1e-3, 1e3, true);
        for mode in ModeIndex::ALL {
            assert!(f.inverse_relation_residual(mode, &WaveVector::ZERO, &SpacetimePoint::ORIGIN) < 1e-16);
        }
        for _ in 0..30 {
            let k = s.sample();
            let x = point(s.point(2.0));
            for mode in ModeIndex::ALL {
                assert!(f.inverse_relation_residual(mode, &k, &x) <= 1e-12);
            }
        }
    }

    #[test]
    fn heisenberg_equation() {
        let consts = PhysicalConstants::new(1.1, 0.9, 1.3, 1.0, 1.0).unwrap();
        let f = DiracField::standard(consts.kappa);
        let mut s = KSampler::new(9, consts.kappa, 1e-2, 1e2, true);
        for _ in 0..20 {
            let k = s.sample();
            let x = point(s.point(2.0));
            let hw = consts.mode_energy(&k);
            for mode in ModeIndex::ALL {
                assert!(f.heisenberg_residual(mode, &k, &x, &consts) <= 1e-12 * hw);
            }
        }
        // k = 0: [phi(+), H] = hbar c kappa phi(+)
        let s1 = ModeIndex::new(1).unwrap();
        let p = f.phi_plus(s1, &WaveVector::ZERO, &SpacetimePoint::ORIGIN);
        let comm = p.commutator(&hamiltonian(&WaveVector::ZERO, &consts));
        assert!((&comm - &(&p * consts.rest_energy())).max_abs() < 1e-15);
    }

    #[test]
    fn anticommutators() {
        let f = DiracField::standard(1.0);
        let mut s = KSampler::new(10, 1.0, 1e-3, 1e3, true);
        for _ in 0..20 {
            let (k, kp) = (s.sample(), s.sample());
            let (x, y) = (point(s.point(2.0)), point(s.point(2.0)));
            let [zero, _, general] = f.anticommutator_residuals(&k, &kp, &x, &y);
            assert!(zero <= 1e-13 && general <= 1e-13, "{zero:e} {general:e}");
            let r = f.phi_anticommutator_residual(&k, &kp, &x, &y);
            assert!(r <= 1e-13, "{r:e}");
        }
    }

    #[test]
    fn equal_argument_anticommutator_is_delta_only_at_rest() {
        // {psi_r, psi_r'^dag} at equal (k, x) is sum_s w_r(s) conj(w_r'(s)) over the
        // four spinors at k, which is the identity only when u(k) and v(k) are
        // orthogonal; for k != 0 they are not.
        let f = DiracField::standard(1.0);
        let x = point([0.2, -0.1, 0.4, 0.3]);
        let [_, at_rest, _] = f.anticommutator_residuals(&WaveVector::ZERO, &WaveVector::ZERO, &x, &x);
        assert!(at_rest < 1e-15);
        let k = WaveVector::new(0.0, 0.0, 1.0);
        let [_, moving, general] = f.anticommutator_residuals(&k, &k, &x, &x);
        assert!(general < 1e-15);
        // |<u1(k)|v3(k)>| = 2 N^2 k3 (k0 + kappa) = k3 / k0
        let k0 = 2f64.sqrt();
        assert!((moving - 1.0 / k0).abs() < 1e-12, "{moving}");
    }

    #[test]
    fn charge_commutator_and_phase_covariance() {
        let consts = PhysicalConstants::new(1.0, 1.0, 1.0, 0.7, 1.0).unwrap();
        let f = DiracField::standard(1.0);
        let mut s = KSampler::new(12, 1.0, 1e-2, 1e2, true);
        for _ in 0..10 {
            let k = s.sample();
            let x = point(s.point(3.0));
            assert!(f.charge_commutator_residual(&k, &x, &consts) <= 1e-14);
            assert!(f.phase_covariance_residual(&k, &x, &consts) <= 1e-12 * (1.0 + f.spinors().k0(&k) * x.x0.abs()));
        }
    }

    #[test]
    fn rejects_bad_indices() {
        let f = DiracField::standard(1.0);
        assert!(f.psi_component(0, &WaveVector::ZERO, &SpacetimePoint::ORIGIN).is_err());
        assert!(SpacetimePoint::checked(f64::INFINITY, [0.0; 3]).is_err());
    }
}
