//! k-integrated expectation values: classical spinor fields, energies, charge,
//! the two-point function G^a, the r-current and the electric current.
//!
//! Everything is computed in units hbar = c = 1 with kappa, a, l as inverse
//! lengths/lengths; hbar, c and q are reapplied to dimensionful outputs.
//!
//! Double k-integrals of the form <psi_k| A_k B_k' psi_k'> factorize into
//! inner products of Fock-valued single integrals, e.g.
//! Phi_r(x) = int dk w(k) psi_{r,k}(x) psi_k, so G^a costs O(n) nodes, not O(n^2).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::constants::{lower, on_shell, PhysicalConstants, WaveVector};
use crate::error::{DiracError, Result};
use crate::fock::{annihilate, create, FockVector, ModeIndex, DIM};
use crate::gamma::{Mat4, Spinor};
use crate::quadrature::{QuadratureSpec, RadialRule, SphericalRule};
use crate::spinor::SpinorBasis;
use crate::state::{RhoProfile, RhoState, StateFamily};
use crate::SpacetimePoint;

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// G^a_{r', r}(x, x'); entry (r'-1, r-1) of the wrapped matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix(pub Mat4);

impl CorrelationMatrix {
    /// 1-based access G_{r', r}.
    pub fn entry(&self, rp: usize, r: usize) -> C64 {
        self.0[(rp - 1, r - 1)]
    }

    pub fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }
}

/// r^mu(x) as computed; imaginary parts are rounding noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentDensity {
    pub components: [C64; 4],
}

impl CurrentDensity {
    pub fn real(&self) -> [f64; 4] {
        self.components.map(|z| z.re)
    }

    pub fn max_imag(&self) -> f64 {
        self.components.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Residuals of the two Dirac relations satisfied by G^a.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPointResiduals {
    /// i kappa G + d'_mu (gamma^mu G)
    pub primed: f64,
    /// i kappa G - d_mu (G gamma^mu)
    pub unprimed: f64,
}

/// The polarized electron with rho = sech^2(a|k|).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub a: f64,
    pub kappa: f64,
    pub ell: f64,
    pub energy: f64,
    pub classical_energy: f64,
    pub charge: f64,
    /// E / (m c^2 Q / q)
    pub ratio: f64,
    /// int r^2 sqrt((kappa a)^2 + r^2) sech^2 r dr
    pub i_e: f64,
    /// same with tanh^2 r sech^2 r
    pub i_ecl: f64,
    /// int r^2 sech^2 r dr
    pub i_q: f64,
    /// q pi^3 l^3 / (3 a^3)
    pub charge_closed_form: f64,
    pub charge_rel_error: f64,
}

/// Fock-valued field images at one point: phi[r] = int w psi_r psi_k and
/// dphi[mu][r] its derivative along x^mu.
#[derive(Debug, Clone)]
pub struct FieldImages {
    pub phi: [FockVector; 4],
    pub dphi: [[FockVector; 4]; 4],
}

impl FieldImages {
    fn zero() -> Self {
        Self {
            phi: [FockVector::ZERO; 4],
            dphi: [[FockVector::ZERO; 4]; 4],
        }
    }

    fn max_abs(&self) -> f64 {
        self.phi.iter().map(|v| v.max_abs()).fold(0.0, f64::max)
    }
}

/// Which operator the images are taken with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ImageKind {
    /// psi_{r,k}(x) with the w(k) weight of the classical field.
    Field,
    /// psi_{r,k}(x), no weight.
    FieldBare,
    /// psi^dagger_{r,k}(x), no weight.
    AdjointBare,
}

#[derive(Debug, Clone)]
pub struct ExpectationEngine {
    consts: PhysicalConstants,
    spinors: SpinorBasis,
    spec: QuadratureSpec,
}

impl ExpectationEngine {
    pub fn new(consts: PhysicalConstants, spec: QuadratureSpec) -> Result<Self> {
        consts.validate()?;
        spec.validate()?;
        Ok(Self {
            consts,
            spinors: SpinorBasis::standard(consts.kappa),
            spec,
        })
    }

    pub fn consts(&self) -> &PhysicalConstants {
        &self.consts
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Uses a different gamma representation (e.g. a perturbed one).
    pub fn with_spinors(mut self, spinors: SpinorBasis) -> Self {
        self.spinors = spinors;
        self
    }

    /// l^{5/2} c^{1/2} / sqrt((2 pi)^3 2 omega); c cancels against omega = c k0.
    fn weight(&self, k0: f64) -> f64 {
        self.consts.ell.powf(2.5) / ((2.0 * PI).powi(3) * 2.0 * k0).sqrt()
    }

    /// f(k) = l^{3/2} sqrt(rho (1 - rho)) e^{-i (chi - xi)}
    pub fn classical_amplitude(&self, state: &RhoState, k: &WaveVector) -> C64 {
        let rho = state.rho(k);
        C64::from_polar(
            self.consts.ell.powf(1.5) * (rho * (1.0 - rho)).max(0.0).sqrt(),
            -(state.chi.eval(k) - state.xi.eval(k)),
        )
    }

    fn for_each_node(
        &self,
        state: &StateFamily,
        x: &SpacetimePoint,
        spec: &QuadratureSpec,
        mut f: impl FnMut(&WaveVector, f64, &FockVector),
    ) -> Result<()> {
        state.validate()?;
        let radial = spec.radial_rule(state.k_cutoff(spec), &state.breakpoints())?;
        let rule = SphericalRule::new(spec, radial, Some(x.x))?;
        let mut failure = None;
        rule.for_each(|k, w| {
            if failure.is_some() {
                return;
            }
            match state.checked_amplitudes(&k) {
                Ok(v) => f(&k, w, &v),
                Err(e) => failure = Some(e),
            }
        });
        failure.map_or(Ok(()), Err)
    }

    /// Per-node data: covariant k, plane wave e^{-i k.x}, spinors.
    fn node_data(&self, k: &WaveVector, x: &SpacetimePoint) -> ([f64; 4], C64, [Spinor; 4]) {
        let kcov = lower(on_shell(k, self.consts.kappa));
        let phase = kcov[0] * x.x0 + kcov[1] * x.x[0] + kcov[2] * x.x[1] + kcov[3] * x.x[2];
        (kcov, C64::from_polar(1.0, -phase), self.spinors.spinors(k))
    }

    fn images(
        &self,
        state: &StateFamily,
        x: &SpacetimePoint,
        spec: &QuadratureSpec,
        kind: ImageKind,
    ) -> Result<FieldImages> {
        // The vacuum part of the integrand does not decay below the cutoff, so
        // the sums are strongly oscillatory; compensated summation keeps the
        // rounding of phi and its derivatives at the level of the result.
        let mut out = FieldImages::zero();
        let mut comp = FieldImages::zero();
        let mut nz: Vec<(usize, C64)> = Vec::with_capacity(DIM);
        self.for_each_node(state, x, spec, |k, w, psi| {
            let (kcov, e, sp) = self.node_data(k, x);
            let wk = match kind {
                ImageKind::Field => w * self.weight(kcov[0]),
                _ => w,
            };
            for s in ModeIndex::ALL {
                // psi_r contains a_s e^{-ikx} (electron) or a_s^dag e^{ikx}
                // (positron); psi_r^dagger the adjoints with conjugated spinors.
                let lowers = s.is_electron() == (kind != ImageKind::AdjointBare);
                let img = if lowers { annihilate(s, psi) } else { create(s, psi) };
                nz.clear();
                nz.extend(img.0.iter().enumerate().filter(|(_, z)| **z != ZERO).map(|(i, z)| (i, *z)));
                if nz.is_empty() {
                    continue;
                }
                let (wave, dsign) = if lowers { (e, -I) } else { (e.conj(), I) };
                for r in 0..4 {
                    let spin = sp[s.get() - 1][r];
                    let coef = wk * wave * if kind == ImageKind::AdjointBare { spin.conj() } else { spin };
                    if coef == ZERO {
                        continue;
                    }
                    for &(i, z) in &nz {
                        neumaier(&mut out.phi[r][i], &mut comp.phi[r][i], coef * z);
                    }
                    for mu in 0..4 {
                        let c = coef * dsign * kcov[mu];
                        for &(i, z) in &nz {
                            neumaier(&mut out.dphi[mu][r][i], &mut comp.dphi[mu][r][i], c * z);
                        }
                    }
                }
            }
        })?;
        for r in 0..4 {
            for i in 0..DIM {
                out.phi[r][i] += comp.phi[r][i];
                for mu in 0..4 {
                    out.dphi[mu][r][i] += comp.dphi[mu][r][i];
                }
            }
        }
        Ok(out)
    }

    /// Runs `f` at the configured and the refined quadrature and checks that
    /// the values agree; returns the refined result.
    fn converged<T>(
        &self,
        quantity: &str,
        f: impl Fn(&QuadratureSpec) -> Result<T>,
        delta: impl Fn(&T, &T) -> (f64, f64),
    ) -> Result<T> {
        let coarse = f(&self.spec)?;
        let fine = f(&self.spec.refined())?;
        let (d, scale) = delta(&coarse, &fine);
        let tolerance = self.spec.tolerance_for(scale);
        if !(d <= tolerance) {
            return Err(DiracError::QuadratureNotConverged {
                quantity: quantity.into(),
                delta: d,
                tolerance,
            });
        }
        Ok(fine)
    }

    fn classical_at(
        &self,
        state: &StateFamily,
        x: &SpacetimePoint,
        spec: &QuadratureSpec,
    ) -> Result<([C64; 4], [[C64; 4]; 4])> {
        let mut phi = [ZERO; 4];
        let mut dphi = [[ZERO; 4]; 4];
        self.for_each_node(state, x, spec, |k, w, psi| {
            let (kcov, e, sp) = self.node_data(k, x);
            let wk = w * self.weight(kcov[0]);
            for s in ModeIndex::ALL {
                let img = if s.is_electron() { annihilate(s, psi) } else { create(s, psi) };
                let amp = psi.inner(&img);
                if amp == ZERO {
                    continue;
                }
                let (wave, dsign) = if s.is_electron() { (e, -I) } else { (e.conj(), I) };
                let f = amp * wave * wk;
                for r in 0..4 {
                    let c = sp[s.get() - 1][r] * f;
                    phi[r] += c;
                    for mu in 0..4 {
                        dphi[mu][r] += c * dsign * kcov[mu];
                    }
                }
            }
        })?;
        Ok((phi, dphi))
    }

    fn classical_converged(&self, state: &StateFamily, x: &SpacetimePoint) -> Result<([C64; 4], [[C64; 4]; 4])> {
        self.converged(
            "classical spinor",
            |spec| self.classical_at(state, x, spec),
            |a, b| {
                let d = (0..4).map(|r| (a.0[r] - b.0[r]).norm()).fold(0.0, f64::max);
                let s = b.0.iter().map(|z| z.norm()).fold(0.0, f64::max);
                (d, s)
            },
        )
    }

    /// phi_r(x), r = 1..4.
    pub fn classical_spinor(&self, state: &StateFamily, x: &SpacetimePoint) -> Result<[C64; 4]> {
        Ok(self.classical_converged(state, x)?.0)
    }

    /// max_r |i gamma^mu d_mu phi - kappa phi|_r
    pub fn classical_dirac_residual(&self, state: &StateFamily, x: &SpacetimePoint) -> Result<f64> {
        let (phi, dphi) = self.classical_converged(state, x)?;
        let g = self.spinors.gammas();
        let mut worst: f64 = 0.0;
        for r in 0..4 {
            let mut v = -phi[r] * self.consts.kappa;
            for (mu, d) in dphi.iter().enumerate() {
                let gm = g.gamma(mu);
                for rp in 0..4 {
                    v += I * gm[(r, rp)] * d[rp];
                }
            }
            worst = worst.max(v.norm());
        }
        Ok(worst)
    }

    /// Radial integral int_0^{K} f(k) dk with the cutoff-doubling check.
    fn radial_integral(&self, profile: &RhoProfile, quantity: &str, f: impl Fn(f64) -> f64) -> Result<f64> {
        profile.validate()?;
        let eval = |spec: &QuadratureSpec| -> Result<f64> {
            let mut breaks = profile.breakpoints();
            breaks.extend(mass_breaks(self.consts.kappa));
            let rule = spec.radial_rule(profile.cutoff(spec.r_max), &breaks)?;
            Ok(rule.integrate(&f))
        };
        let base = eval(&self.spec)?;
        let doubled = eval(&self.spec.extended())?;
        check_stable(quantity, base, doubled, &self.spec)?;
        Ok(base)
    }

    /// E = l^3 int dk hbar omega rho
    pub fn quantum_energy(&self, state: &RhoState) -> Result<f64> {
        let kappa = self.consts.kappa;
        let i = self.radial_integral(&state.profile, "quantum energy", |k| {
            k * k * (kappa * kappa + k * k).sqrt() * state.profile.value(k)
        })?;
        Ok(4.0 * PI * self.consts.hbar * self.consts.c * self.consts.ell.powi(3) * i)
    }

    /// E_cl = l^3 int dk hbar omega rho (1 - rho)
    pub fn classical_energy(&self, state: &RhoState) -> Result<f64> {
        let kappa = self.consts.kappa;
        let i = self.radial_integral(&state.profile, "classical energy", |k| {
            let rho = state.profile.value(k);
            k * k * (kappa * kappa + k * k).sqrt() * rho * (1.0 - rho)
        })?;
        Ok(4.0 * PI * self.consts.hbar * self.consts.c * self.consts.ell.powi(3) * i)
    }

    /// Q = l^3 int dk <psi_k|Q psi_k>
    pub fn total_charge(&self, state: &StateFamily) -> Result<f64> {
        let scale = self.consts.q * self.consts.ell.powi(3);
        match state {
            StateFamily::Rho(s) => {
                let i = self.radial_integral(&s.profile, "total charge", |k| k * k * s.profile.value(k))?;
                Ok(scale * s.mode.charge_sign() * 4.0 * PI * i)
            }
            StateFamily::General(_) => {
                let eval = |spec: &QuadratureSpec| -> Result<f64> {
                    let mut total = 0.0;
                    self.for_each_node(state, &SpacetimePoint::ORIGIN, spec, |_, w, psi| {
                        let n: f64 = psi
                            .0
                            .iter()
                            .enumerate()
                            .map(|(i, z)| z.norm_sqr() * crate::fock::ModeSet::from_index(i).charge_number() as f64)
                            .sum();
                        total += w * n;
                    })?;
                    Ok(total)
                };
                let base = eval(&self.spec)?;
                check_stable("total charge", base, eval(&self.spec.extended())?, &self.spec)?;
                Ok(scale * base)
            }
        }
    }

    fn gram(a: &FieldImages, b: &FieldImages) -> Mat4 {
        Mat4::from_fn(|i, j| a.phi[i].inner(&b.phi[j]))
    }

    /// G_{r' r} = sum_{r''} gamma0_{r'' r} <A_{r''}|B_{r'}>
    fn correlation_from(&self, a: &[FockVector; 4], b: &[FockVector; 4]) -> Mat4 {
        let g0 = self.spinors.gammas().gamma(0);
        Mat4::from_fn(|rp, r| (0..4).map(|s| g0[(s, r)] * a[s].inner(&b[rp])).sum())
    }

    /// G^a(x, x') with bra family `a` at x and ket family `b` at x'.
    pub fn two_point(
        &self,
        a: &StateFamily,
        b: &StateFamily,
        x: &SpacetimePoint,
        xp: &SpacetimePoint,
    ) -> Result<CorrelationMatrix> {
        self.converged(
            "two-point function",
            |spec| self.two_point_at(a, b, x, xp, spec),
            |c, f| ((c.0 - f.0).max_abs(), f.max_abs()),
        )
    }

    /// Single quadrature level, no convergence check.
    pub fn two_point_at(
        &self,
        a: &StateFamily,
        b: &StateFamily,
        x: &SpacetimePoint,
        xp: &SpacetimePoint,
        spec: &QuadratureSpec,
    ) -> Result<CorrelationMatrix> {
        let ia = self.images(a, x, spec, ImageKind::Field)?;
        let ib = self.images(b, xp, spec, ImageKind::Field)?;
        Ok(CorrelationMatrix(self.correlation_from(&ia.phi, &ib.phi)))
    }

    /// Residuals of i kappa G = -d'_mu gamma^mu G and i kappa G = d_mu G gamma^mu.
    pub fn two_point_residuals(
        &self,
        a: &StateFamily,
        b: &StateFamily,
        x: &SpacetimePoint,
        xp: &SpacetimePoint,
    ) -> Result<TwoPointResiduals> {
        let (ia, ib) = self.converged(
            "two-point function",
            |spec| Ok((self.images(a, x, spec, ImageKind::Field)?, self.images(b, xp, spec, ImageKind::Field)?)),
            |c, f| {
                let d = (self.correlation_from(&c.0.phi, &c.1.phi) - self.correlation_from(&f.0.phi, &f.1.phi)).max_abs();
                (d, self.correlation_from(&f.0.phi, &f.1.phi).max_abs())
            },
        )?;
        let g = self.spinors.gammas();
        let kappa = self.consts.kappa;
        let g_mat = self.correlation_from(&ia.phi, &ib.phi);
        let mut primed = g_mat * (I * kappa);
        let mut unprimed = g_mat * (I * kappa);
        for mu in 0..4 {
            let d_ket = self.correlation_from(&ia.phi, &ib.dphi[mu]);
            let d_bra = self.correlation_from(&ia.dphi[mu], &ib.phi);
            primed = primed + *g.gamma(mu) * d_ket;
            unprimed = unprimed - d_bra * *g.gamma(mu);
        }
        Ok(TwoPointResiduals {
            primed: primed.max_abs(),
            unprimed: unprimed.max_abs(),
        })
    }

    fn r_from(&self, img: &FieldImages) -> [C64; 4] {
        let g = self.spinors.gammas();
        let gram = Self::gram(img, img);
        std::array::from_fn(|mu| {
            let m = g.gamma0_gamma(mu);
            let mut acc = ZERO;
            for r in 0..4 {
                for rp in 0..4 {
                    acc += m[(r, rp)] * gram[(r, rp)];
                }
            }
            acc
        })
    }

    fn r_images(&self, state: &StateFamily, x: &SpacetimePoint) -> Result<FieldImages> {
        self.converged(
            "r-current",
            |spec| self.images(state, x, spec, ImageKind::Field),
            |c, f| {
                let (rc, rf) = (self.r_from(c), self.r_from(f));
                let d = (0..4).map(|m| (rc[m] - rf[m]).norm()).fold(0.0, f64::max);
                (d, rf.iter().map(|z| z.norm()).fold(f.max_abs().powi(2), f64::max))
            },
        )
    }

    /// r^mu(x) = Tr gamma^mu G^a(x, x).
    pub fn r_density(&self, state: &StateFamily, x: &SpacetimePoint) -> Result<CurrentDensity> {
        let img = self.r_images(state, x)?;
        Ok(CurrentDensity {
            components: self.r_from(&img),
        })
    }

    /// |d_mu r^mu(x)|
    pub fn continuity_residual(&self, state: &StateFamily, x: &SpacetimePoint) -> Result<f64> {
        let img = self.r_images(state, x)?;
        let g = self.spinors.gammas();
        let mut div = ZERO;
        for mu in 0..4 {
            let m = g.gamma0_gamma(mu);
            for r in 0..4 {
                for rp in 0..4 {
                    let c = m[(r, rp)];
                    if c == ZERO {
                        continue;
                    }
                    div += c * (img.dphi[mu][r].inner(&img.phi[rp]) + img.phi[r].inner(&img.dphi[mu][rp]));
                }
            }
        }
        Ok(div.norm())
    }

    /// int dk <bra_k| [j^mu(x) ket]_k> with
    /// [j psi]_k = q c / (2 pi)^3 int dk' J_{k,k'}(x) psi_k'.
    pub fn current_expectation(
        &self,
        bra: &StateFamily,
        ket: &StateFamily,
        mu: usize,
        x: &SpacetimePoint,
    ) -> Result<C64> {
        if mu > 3 {
            return Err(DiracError::LorentzIndexOutOfRange(mu));
        }
        self.converged(
            "current expectation",
            |spec| self.current_expectation_at(bra, ket, mu, x, spec),
            |c, f| ((c - f).norm(), f.norm()),
        )
    }

    /// Single quadrature level, no convergence check.
    pub fn current_expectation_at(
        &self,
        bra: &StateFamily,
        ket: &StateFamily,
        mu: usize,
        x: &SpacetimePoint,
        spec: &QuadratureSpec,
    ) -> Result<C64> {
        // J = 1/2 sum gamma^mu_{r r'} psi^a_r psi_r' - 1/2 sum gamma^mu_{r' r} psi_r psi^a_r'
        let m = self.spinors.gammas().gamma0_gamma(mu);
        let fb = self.images(bra, x, spec, ImageKind::FieldBare)?;
        let fk = self.images(ket, x, spec, ImageKind::FieldBare)?;
        let ab = self.images(bra, x, spec, ImageKind::AdjointBare)?;
        let ak = self.images(ket, x, spec, ImageKind::AdjointBare)?;
        let mut acc = ZERO;
        for r in 0..4 {
            for rp in 0..4 {
                let c = m[(r, rp)];
                if c == ZERO {
                    continue;
                }
                acc += c * fb.phi[r].inner(&fk.phi[rp]);
                acc -= c * ab.phi[rp].inner(&ak.phi[r]);
            }
        }
        Ok(acc * (0.5 * self.consts.q * self.consts.c / (2.0 * PI).powi(3)))
    }

    /// |conj(<a|j b>) - <b|j a>|
    pub fn reality_residual(&self, a: &StateFamily, b: &StateFamily, mu: usize, x: &SpacetimePoint) -> Result<f64> {
        let ab = self.current_expectation(a, b, mu, x)?;
        let ba = self.current_expectation(b, a, mu, x)?;
        Ok((ab.conj() - ba).norm())
    }

    /// Energies and charge of the spin-up electron with rho = sech^2(a|k|),
    /// chi = xi = 0, from the dimensionless integrals in r = a|k|.
    pub fn example_report(&self, a: f64) -> Result<ExampleReport> {
        if !(a.is_finite() && a > 0.0) {
            return Err(DiracError::InvalidProfile(format!("a must be finite and positive, got {a}")));
        }
        let ka = self.consts.kappa * a;
        let integrals = |spec: &QuadratureSpec| -> Result<[f64; 3]> {
            let rule = spec.radial_rule(spec.r_max, &mass_breaks(ka))?;
            Ok(example_integrals(&rule, ka))
        };
        let base = integrals(&self.spec)?;
        let doubled = integrals(&self.spec.extended())?;
        for (name, (b, d)) in ["I_E", "I_Ecl", "I_Q"].iter().zip(base.iter().zip(&doubled)) {
            check_stable(name, *b, *d, &self.spec)?;
        }
        let [i_e, i_ecl, i_q] = base;
        let PhysicalConstants { hbar, c, q, ell, .. } = self.consts;
        let l3 = ell.powi(3);
        let energy = 4.0 * PI * hbar * c * l3 / a.powi(4) * i_e;
        let classical_energy = 4.0 * PI * hbar * c * l3 / a.powi(4) * i_ecl;
        let charge = 4.0 * PI * q * l3 / a.powi(3) * i_q;
        let charge_closed_form = q * PI.powi(3) * l3 / (3.0 * a.powi(3));
        Ok(ExampleReport {
            a,
            kappa: self.consts.kappa,
            ell,
            energy,
            classical_energy,
            charge,
            ratio: energy / (self.consts.rest_energy() * charge / q),
            i_e,
            i_ecl,
            i_q,
            charge_closed_form,
            charge_rel_error: ((charge - charge_closed_form) / charge_closed_form).abs(),
        })
    }
}

/// Compensated summation, real and imaginary parts separately.
fn neumaier(sum: &mut C64, comp: &mut C64, v: C64) {
    fn step(s: &mut f64, c: &mut f64, v: f64) {
        let t = *s + v;
        *c += if s.abs() >= v.abs() { (*s - t) + v } else { (v - t) + *s };
        *s = t;
    }
    step(&mut sum.re, &mut comp.re, v.re);
    step(&mut sum.im, &mut comp.im, v.im);
}

/// sqrt(m^2 + k^2) has branch points at k = +/- i m; grading the panels
/// geometrically around |k| ~ m keeps Gauss-Legendre at full accuracy.
fn mass_breaks(m: f64) -> Vec<f64> {
    (-4..=2).map(|j| m * 2f64.powi(j)).collect()
}

fn example_integrals(rule: &RadialRule, ka: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        let sech2 = 1.0 / r.cosh().powi(2);
        let tanh2 = r.tanh().powi(2);
        let base = w * r * r * sech2;
        let root = ka.hypot(r);
        out[0] += base * root;
        out[1] += base * root * tanh2;
        out[2] += base;
    }
    out
}

fn check_stable(quantity: &str, base: f64, doubled: f64, spec: &QuadratureSpec) -> Result<()> {
    let delta = (base - doubled).abs();
    let tolerance = spec.tolerance_for(doubled);
    if delta <= tolerance {
        Ok(())
    } else {
        Err(DiracError::Diverged {
            quantity: quantity.into(),
            delta,
            tolerance,
        })
    }
}
