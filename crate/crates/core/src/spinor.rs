//! Momentum-dependent polarization spinors u(s)(k), v(s)(k) and their bilinear identities.

use num_complex::Complex64 as C64;

use crate::constants::{dispersion, lower, on_shell, WaveVector};
use crate::fock::ModeIndex;
use crate::gamma::{spinor_inner, spinor_max_diff, GammaSet, Mat4, Spinor};

const Z: C64 = C64::new(0.0, 0.0);
const O: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorKind {
    /// Positive mass shell, k-slash u = +kappa u.
    U,
    /// Negative mass shell, k-slash v = -kappa v.
    V,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationSpinor {
    pub components: Spinor,
    pub kind: SpinorKind,
    pub mode: ModeIndex,
    pub k: WaveVector,
}

impl PolarizationSpinor {
    pub fn norm(&self) -> f64 {
        spinor_inner(&self.components, &self.components).re.sqrt()
    }
}

/// Rest-frame spinors (u0(1), u0(2), v0(3), v0(4)).
///
/// The phase of v0(4) is -e4. With this choice C conj(u(1)(k)) = v(4)(-k)
/// holds alongside C conj(u(2)(k)) = v(3)(-k); with +e4 the first relation
/// picks up a sign.
pub fn rest_frame_basis() -> [Spinor; 4] {
    [[O, Z, Z, Z], [Z, O, Z, Z], [Z, Z, O, Z], [Z, Z, Z, -O]]
}

/// Builds spinors for a fixed mass parameter kappa and gamma set.
#[derive(Debug, Clone)]
pub struct SpinorBasis {
    gammas: GammaSet,
    kappa: f64,
}

impl SpinorBasis {
    pub fn new(gammas: GammaSet, kappa: f64) -> Self {
        Self { gammas, kappa }
    }

    pub fn standard(kappa: f64) -> Self {
        Self::new(GammaSet::standard(), kappa)
    }

    pub fn gammas(&self) -> &GammaSet {
        &self.gammas
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn k0(&self, k: &WaveVector) -> f64 {
        dispersion(k, self.kappa)
    }

    /// k-slash for the on-shell momentum with spatial part k.
    pub fn slash(&self, k: &WaveVector) -> Mat4 {
        self.gammas.slash(lower(on_shell(k, self.kappa)))
    }

    /// u(s)(k) for s = 1, 2 and v(s)(k) for s = 3, 4.
    pub fn spinor(&self, s: ModeIndex, k: &WaveVector) -> PolarizationSpinor {
        let k0 = self.k0(k);
        let norm = 1.0 / (2.0 * k0 * (k0 + self.kappa)).sqrt();
        let slash = self.slash(k);
        let (kind, sign) = if s.is_electron() {
            (SpinorKind::U, 1.0)
        } else {
            (SpinorKind::V, -1.0)
        };
        let op = slash * sign + Mat4::identity() * self.kappa;
        let rest = rest_frame_basis()[s.get() - 1];
        let components = op.apply(&rest).map(|z| z * norm);
        PolarizationSpinor {
            components,
            kind,
            mode: s,
            k: *k,
        }
    }

    /// All four spinors at k, indexed by mode - 1.
    pub fn spinors(&self, k: &WaveVector) -> [Spinor; 4] {
        let k0 = self.k0(k);
        let norm = 1.0 / (2.0 * k0 * (k0 + self.kappa)).sqrt();
        let slash = self.slash(k);
        let rest = rest_frame_basis();
        ModeIndex::ALL.map(|s| {
            let sign = if s.is_electron() { 1.0 } else { -1.0 };
            let b = slash.apply(&rest[s.get() - 1]);
            let r = &rest[s.get() - 1];
            std::array::from_fn(|i| (b[i] * sign + r[i] * self.kappa) * norm)
        })
    }

    pub fn u(&self, s: usize, k: &WaveVector) -> Spinor {
        assert!(s == 1 || s == 2, "u spinor label {s}");
        self.spinor(ModeIndex::new(s).unwrap(), k).components
    }

    pub fn v(&self, s: usize, k: &WaveVector) -> Spinor {
        assert!(s == 3 || s == 4, "v spinor label {s}");
        self.spinor(ModeIndex::new(s).unwrap(), k).components
    }

    /// <a| gamma^0 gamma^mu |b>
    pub fn bilinear(&self, a: &Spinor, mu: usize, b: &Spinor) -> C64 {
        spinor_inner(a, &self.gammas.gamma0_gamma(mu).apply(b))
    }

    /// C conj(w)
    pub fn charge_conjugate(&self, w: &Spinor) -> Spinor {
        self.gammas.charge_conjugation().apply(&w.map(|z| z.conj()))
    }

    /// max over s of || k-slash w - (+/-) kappa w ||
    pub fn eigen_residual(&self, k: &WaveVector) -> f64 {
        let slash = self.slash(k);
        ModeIndex::ALL
            .into_iter()
            .map(|s| {
                let w = self.spinor(s, k).components;
                let sign = if s.is_electron() { 1.0 } else { -1.0 };
                let target = w.map(|z| z * (sign * self.kappa));
                spinor_max_diff(&slash.apply(&w), &target)
            })
            .fold(0.0, f64::max)
    }

    /// Orthonormality blocks: u-u, v-v at equal k and u(k) against v(-k).
    pub fn orthonormality_residual(&self, k: &WaveVector) -> f64 {
        let w = self.spinors(k);
        let wm = self.spinors(&-*k);
        let mut worst: f64 = 0.0;
        for block in [[0usize, 1], [2, 3]] {
            for &i in &block {
                for &j in &block {
                    let expect = if i == j { O } else { Z };
                    worst = worst.max((spinor_inner(&w[i], &w[j]) - expect).norm());
                }
            }
        }
        for i in 0..2 {
            for j in 2..4 {
                worst = worst.max(spinor_inner(&w[i], &wm[j]).norm());
            }
        }
        worst
    }

    /// <w(s)(k)|gamma^0 gamma^mu w(s')(k)> = (k^mu / k0) delta within the u and v blocks.
    pub fn current_bilinear_residual(&self, k: &WaveVector) -> f64 {
        let w = self.spinors(k);
        let kmu = on_shell(k, self.kappa);
        let mut worst: f64 = 0.0;
        for block in [[0usize, 1], [2, 3]] {
            for &i in &block {
                for &j in &block {
                    for (mu, &kc) in kmu.iter().enumerate() {
                        let expect = if i == j { kc / kmu[0] } else { 0.0 };
                        let b = self.bilinear(&w[i], mu, &w[j]);
                        worst = worst.max((b - C64::new(expect, 0.0)).norm());
                    }
                }
            }
        }
        worst
    }

    /// <w(s)(-k)|w(t)(k)> = (kappa/k0) delta_st within the u and v blocks.
    pub fn reflected_overlap_residual(&self, k: &WaveVector) -> f64 {
        let w = self.spinors(k);
        let wm = self.spinors(&-*k);
        let ratio = self.kappa / self.k0(k);
        let mut worst: f64 = 0.0;
        for block in [[0usize, 1], [2, 3]] {
            for &i in &block {
                for &j in &block {
                    let expect = if i == j { ratio } else { 0.0 };
                    worst = worst.max((spinor_inner(&wm[i], &w[j]) - C64::new(expect, 0.0)).norm());
                }
            }
        }
        worst
    }

    /// Named residuals of the parity, charge-conjugation and two-momentum bilinear relations.
    pub fn identity_suite(&self, k: &WaveVector, kp: &WaveVector) -> Vec<(&'static str, f64)> {
        let w = self.spinors(k);
        let wm = self.spinors(&-*k);
        let wp = self.spinors(kp);
        let g0 = self.gammas.gamma(0);
        let (u1, u2, v3, v4) = (0, 1, 2, 3);

        let mut parity_u: f64 = 0.0;
        let mut parity_v: f64 = 0.0;
        for i in 0..2 {
            parity_u = parity_u.max(spinor_max_diff(&g0.apply(&w[i]), &wm[i]));
        }
        for i in 2..4 {
            parity_v = parity_v.max(spinor_max_diff(&g0.apply(&w[i]), &wm[i].map(|z| -z)));
        }
        let conj_u1 = spinor_max_diff(&self.charge_conjugate(&w[u1]), &wm[v4]);
        let conj_u2 = spinor_max_diff(&self.charge_conjugate(&w[u2]), &wm[v3]);

        // <a(k)|G b(k')> = <c(k')|G d(k)> for all mu
        let pair = |a: usize, b: usize, c: usize, d: usize| -> f64 {
            (0..4)
                .map(|mu| (self.bilinear(&w[a], mu, &wp[b]) - self.bilinear(&wp[c], mu, &w[d])).norm())
                .fold(0.0, f64::max)
        };
        let vv_uu = pair(v4, v4, u1, u1)
            .max(pair(v4, v3, u2, u1))
            .max(pair(v3, v4, u1, u2))
            .max(pair(v3, v3, u2, u2));
        let uv = pair(u1, v4, u1, v4)
            .max(pair(u2, v4, u1, v3))
            .max(pair(u1, v3, u2, v4))
            .max(pair(u2, v3, u2, v3));

        // sum_t <v(t)(k')|G v(t)(k)> = sum_s <u(s)(k)|G u(s)(k')>
        let scalar_cancel = (0..4)
            .map(|mu| {
                let vsum: C64 = (2..4).map(|t| self.bilinear(&wp[t], mu, &w[t])).sum();
                let usum: C64 = (0..2).map(|s| self.bilinear(&w[s], mu, &wp[s])).sum();
                (vsum - usum).norm()
            })
            .fold(0.0, f64::max);

        vec![
            ("gamma0_parity_u", parity_u),
            ("gamma0_parity_v", parity_v),
            ("charge_conjugate_u1_v4", conj_u1),
            ("charge_conjugate_u2_v3", conj_u2),
            ("vv_uu_exchange", vv_uu),
            ("uv_exchange", uv),
            ("vv_uu_scalar_cancellation", scalar_cancel),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::KSampler;

    fn basis() -> SpinorBasis {
        SpinorBasis::standard(1.3)
    }

    #[test]
    fn rest_frame_eigenvalues() {
        let g = GammaSet::standard();
        let r = rest_frame_basis();
        for (i, w) in r.iter().enumerate() {
            let sign = if i < 2 { 1.0 } else { -1.0 };
            assert_eq!(spinor_max_diff(&g.gamma(0).apply(w), &w.map(|z| z * sign)), 0.0);
            for (j, x) in r.iter().enumerate() {
                let expect = if i == j { O } else { Z };
                assert_eq!(spinor_inner(w, x), expect);
            }
        }
    }

    #[test]
    fn spinors_at_rest_are_rest_frame_basis() {
        let b = basis();
        let r = rest_frame_basis();
        for (i, w) in b.spinors(&WaveVector::ZERO).iter().enumerate() {
            assert!(spinor_max_diff(w, &r[i]) < 1e-16);
        }
    }

    #[test]
    fn u1_explicit_components() {
        // N (k0 + kappa, 0, -k3, -(k1 + i k2))
        let b = basis();
        let k = WaveVector::new(0.4, -0.7, 1.1);
        let k0 = b.k0(&k);
        let n = 1.0 / (2.0 * k0 * (k0 + b.kappa())).sqrt();
        let expect = [
            C64::new(n * (k0 + b.kappa()), 0.0),
            Z,
            C64::new(-n * k[2], 0.0),
            C64::new(-n * k[0], -n * k[1]),
        ];
        assert!(spinor_max_diff(&b.u(1, &k), &expect) < 1e-15);
    }

    #[test]
    fn eigen_relations_and_norms_on_random_k() {
        let b = basis();
        let mut sampler = KSampler::new(7, b.kappa(), 0.0, 10.0, false);
        for _ in 0..1000 {
            let k = sampler.sample();
            assert!(b.eigen_residual(&k) <= 1e-13 * b.k0(&k).max(1.0));
            for s in ModeIndex::ALL {
                assert!((b.spinor(s, &k).norm() - 1.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn orthogonality_and_bilinears_log_range() {
        let b = basis();
        let mut sampler = KSampler::new(11, b.kappa(), 1e-3, 1e3, true);
        for _ in 0..1000 {
            let k = sampler.sample();
            assert!(b.orthonormality_residual(&k) <= 1e-12);
            assert!(b.current_bilinear_residual(&k) <= 1e-12);
            assert!(b.reflected_overlap_residual(&k) <= 1e-12);
        }
    }

    #[test]
    fn identity_suite_log_range() {
        let b = basis();
        let mut sampler = KSampler::new(3, b.kappa(), 1e-3, 1e3, true);
        for _ in 0..1000 {
            let (k, kp) = (sampler.sample(), sampler.sample());
            for (name, r) in b.identity_suite(&k, &kp) {
                assert!(r <= 1e-12, "{name}: {r:e} at k={k:?} k'={kp:?}");
            }
        }
    }

    #[test]
    fn identity_suite_exact_at_rest() {
        let b = basis();
        for (name, r) in b.identity_suite(&WaveVector::ZERO, &WaveVector::ZERO) {
            assert!(r < 1e-16, "{name}");
        }
    }

    #[test]
    fn rest_phase_of_v4_is_fixed_by_conjugation() {
        // The relation fixes the sign of v4; the opposite phase misses by 2|v4|.
        let b = basis();
        let k = WaveVector::new(0.3, 0.5, -0.2);
        let cu1 = b.charge_conjugate(&b.u(1, &k));
        let flipped = b.v(4, &-k).map(|z| -z);
        assert!(spinor_max_diff(&cu1, &b.v(4, &-k)) < 1e-15);
        assert!(spinor_max_diff(&cu1, &flipped) > 0.5);
    }

    #[test]
    fn bilinear_examples() {
        let b = basis();
        let k = WaveVector::new(2.0, -1.0, 0.5);
        let v3 = b.v(3, &k);
        assert!((b.bilinear(&v3, 0, &v3) - O).norm() < 1e-15);
        assert!(b.bilinear(&b.u(1, &k), 0, &b.u(2, &k)).norm() < 1e-15);
        let w = b.u(2, &k);
        assert!((b.bilinear(&w, 0, &w) - spinor_inner(&w, &w)).norm() < 1e-15);
    }

    #[test]
    fn batched_spinors_match_single_construction() {
        let b = SpinorBasis::standard(1.3);
        let k = WaveVector::new(0.4, -2.0, 0.7);
        let all = b.spinors(&k);
        for s in ModeIndex::ALL {
            assert!(spinor_max_diff(&all[s.get() - 1], &b.spinor(s, &k).components) < 1e-15);
        }
    }
}
