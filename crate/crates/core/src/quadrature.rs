//! Composite Gauss-Legendre rules for radial integrals and a spherical product
//! rule for full k-space integrals.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::constants::WaveVector;
use crate::error::{DiracError, Result};

/// Quadrature settings. `r_max` is the radial cutoff in units of the profile
/// length scale (for sech2 and gaussian profiles k_max = r_max / a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes per radial panel.
    pub radial_nodes: usize,
    pub radial_panels: usize,
    pub r_max: f64,
    /// Gauss-Legendre nodes in cos(theta).
    pub polar_nodes: usize,
    /// Trapezoid nodes in the azimuth.
    pub azimuthal_nodes: usize,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_nodes: 24,
            radial_panels: 10,
            r_max: 40.0,
            polar_nodes: 64,
            azimuthal_nodes: 12,
            abs_tol: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(DiracError::InvalidQuadrature(msg));
        if self.radial_nodes == 0 || self.radial_panels == 0 {
            return bad("radial rule needs at least one node and one panel".into());
        }
        if self.polar_nodes == 0 || self.azimuthal_nodes == 0 {
            return bad("angular rule needs at least one node per direction".into());
        }
        if !(self.r_max.is_finite() && self.r_max > 0.0) {
            return bad(format!("r_max must be finite and positive, got {}", self.r_max));
        }
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return bad(format!("abs_tol must be finite and positive, got {}", self.abs_tol));
        }
        Ok(())
    }

    /// Same cutoff with roughly 1.5x the nodes in every direction.
    pub fn refined(&self) -> Self {
        let up = |n: usize| n + n.div_ceil(2);
        Self {
            radial_nodes: up(self.radial_nodes),
            polar_nodes: up(self.polar_nodes),
            azimuthal_nodes: up(self.azimuthal_nodes),
            ..*self
        }
    }

    /// Doubled cutoff and doubled radial node count.
    pub fn extended(&self) -> Self {
        Self {
            radial_panels: 2 * self.radial_panels,
            r_max: 2.0 * self.r_max,
            ..*self
        }
    }

    /// Tolerance for comparing two estimates of a quantity of size `value`.
    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol * value.abs().max(1.0)
    }

    /// Composite rule on [0, upper] with `radial_panels` equal panels, further
    /// split at any `breaks` inside the interval.
    pub fn radial_rule(&self, upper: f64, breaks: &[f64]) -> Result<RadialRule> {
        self.validate()?;
        if !(upper.is_finite() && upper > 0.0) {
            return Err(DiracError::InvalidQuadrature(format!(
                "radial upper limit must be finite and positive, got {upper}"
            )));
        }
        let mut edges: Vec<f64> = (0..=self.radial_panels)
            .map(|i| upper * i as f64 / self.radial_panels as f64)
            .collect();
        edges.extend(breaks.iter().copied().filter(|b| *b > 0.0 && *b < upper));
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * upper);
        Ok(RadialRule::composite(&edges, self.radial_nodes))
    }
}

fn legendre(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n).expect("node count checked by validate");
    GaussLegendre::new(n).as_node_weight_pairs().to_vec()
}

/// Nodes and positive weights on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RadialRule {
    /// Gauss-Legendre with `n` nodes on each [edges[i], edges[i+1]].
    pub fn composite(edges: &[f64], n: usize) -> Self {
        let base = legendre(n);
        let mut nodes = Vec::with_capacity(n * edges.len());
        let mut weights = Vec::with_capacity(n * edges.len());
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for &(t, wt) in &base {
                nodes.push(mid + half * t);
                weights.push(half * wt);
            }
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * f(r))
            .sum()
    }
}

/// Product rule over a ball in k-space: radial rule x Gauss-Legendre in
/// cos(theta) x trapezoid in phi. The polar axis can be aligned with a given
/// direction so that plane waves e^{i k.x} only oscillate in theta.
#[derive(Debug, Clone)]
pub struct SphericalRule {
    radial: RadialRule,
    polar: Vec<(f64, f64)>,
    azimuthal: usize,
    frame: [[f64; 3]; 3],
}

impl SphericalRule {
    pub fn new(spec: &QuadratureSpec, radial: RadialRule, axis: Option<[f64; 3]>) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            radial,
            polar: legendre(spec.polar_nodes),
            azimuthal: spec.azimuthal_nodes,
            frame: frame_along(axis),
        })
    }

    pub fn node_count(&self) -> usize {
        self.radial.len() * self.polar.len() * self.azimuthal
    }

    /// Calls `f(k, weight)` for every node; weights include the k^2 Jacobian.
    pub fn for_each(&self, mut f: impl FnMut(WaveVector, f64)) {
        let dphi = std::f64::consts::TAU / self.azimuthal as f64;
        let [e1, e2, e3] = self.frame;
        for (&r, &wr) in self.radial.nodes.iter().zip(&self.radial.weights) {
            for &(ct, wt) in &self.polar {
                let st = (1.0 - ct * ct).max(0.0).sqrt();
                for j in 0..self.azimuthal {
                    let phi = dphi * j as f64;
                    let (sp, cp) = phi.sin_cos();
                    let (a, b, c) = (r * st * cp, r * st * sp, r * ct);
                    let k = WaveVector::new(
                        a * e1[0] + b * e2[0] + c * e3[0],
                        a * e1[1] + b * e2[1] + c * e3[1],
                        a * e1[2] + b * e2[2] + c * e3[2],
                    );
                    f(k, wr * r * r * wt * dphi);
                }
            }
        }
    }
}

/// Right-handed orthonormal frame whose third vector points along `axis`.
fn frame_along(axis: Option<[f64; 3]>) -> [[f64; 3]; 3] {
    let identity = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let Some(a) = axis else {
        return identity;
    };
    let n = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return identity;
    }
    let e3 = a.map(|c| c / n);
    let helper = if e3[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let d = helper[0] * e3[0] + helper[1] * e3[1] + helper[2] * e3[2];
    let mut e1 = [helper[0] - d * e3[0], helper[1] - d * e3[1], helper[2] - d * e3[2]];
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = e1.map(|c| c / n1);
    let e2 = [
        e3[1] * e1[2] - e3[2] * e1[1],
        e3[2] * e1[0] - e3[0] * e1[2],
        e3[0] * e1[1] - e3[1] * e1[0],
    ];
    [e1, e2, e3]
}
