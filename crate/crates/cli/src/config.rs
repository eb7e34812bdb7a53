use std::path::{Path, PathBuf};

use fockdirac::{PhysicalConstants, QuadratureSpec, RhoState, SpacetimePoint, VerifyConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Sample counts for `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleCounts {
    pub algebra: usize,
    pub operator: usize,
    pub k_ratio_range: [f64; 2],
    pub point_extent: f64,
    pub conjugation: usize,
    pub conjugation_validation: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        let v = VerifyConfig::default();
        Self {
            algebra: v.algebra_samples,
            operator: v.operator_samples,
            k_ratio_range: v.k_ratio_range,
            point_extent: v.point_extent,
            conjugation: v.conjugation_samples,
            conjugation_validation: v.conjugation_validation,
        }
    }
}

/// One grid axis: `n` evenly spaced values from `min` to `max` (just `min` when n = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Axis {
    pub fn fixed(v: f64) -> Self {
        Self { min: v, max: v, n: 1 }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.min + step * i as f64).collect()
    }
}

/// Spacetime grid for `sample-field`; rows run with x3 fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub x0: Axis,
    pub x1: Axis,
    pub x2: Axis,
    pub x3: Axis,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            x0: Axis::fixed(0.0),
            x1: Axis { min: -1.0, max: 1.0, n: 10 },
            x2: Axis { min: -1.0, max: 1.0, n: 10 },
            x3: Axis::fixed(0.0),
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, a) in [("x0", self.x0), ("x1", self.x1), ("x2", self.x2), ("x3", self.x3)] {
            if a.n == 0 || !a.min.is_finite() || !a.max.is_finite() {
                return Err(CliError::Config(format!(
                    "grid axis {name} needs n >= 1 and finite bounds"
                )));
            }
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<SpacetimePoint> {
        let mut out = Vec::new();
        for t in self.x0.values() {
            for a in self.x1.values() {
                for b in self.x2.values() {
                    for c in self.x3.values() {
                        out.push(SpacetimePoint::new(t, [a, b, c]));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    /// Length scale of the sech^2 example.
    pub a: f64,
    pub quadrature: QuadratureSpec,
    pub seed: u64,
    pub samples: SampleCounts,
    pub perturbation: Option<f64>,
    /// State for `sample-field`; the spin-up sech^2(a|k|) electron if absent.
    pub state: Option<RhoState>,
    pub grid: GridSpec,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            a: 1.0,
            quadrature: QuadratureSpec::default(),
            seed: 1,
            samples: SampleCounts::default(),
            perturbation: None,
            state: None,
            grid: GridSpec::default(),
            output: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.constants.validate()?;
        self.quadrature.validate()?;
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(CliError::Config(format!("a must be finite and positive, got {}", self.a)));
        }
        if let Some(eps) = self.perturbation {
            if !eps.is_finite() {
                return Err(CliError::Config("perturbation must be finite".into()));
            }
        }
        if let Some(s) = &self.state {
            s.profile.validate()?;
        }
        self.grid.validate()
    }

    pub fn state(&self) -> RhoState {
        self.state.clone().unwrap_or_else(|| RhoState::sech2_spin_up(self.a))
    }

    pub fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            seed: self.seed,
            algebra_samples: self.samples.algebra,
            operator_samples: self.samples.operator,
            k_ratio_range: self.samples.k_ratio_range,
            point_extent: self.samples.point_extent,
            conjugation_samples: self.samples.conjugation,
            conjugation_validation: self.samples.conjugation_validation,
            perturbation: self.perturbation,
        }
    }
}
