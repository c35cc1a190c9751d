//! Run configuration shared by the CLI and the pipeline drivers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::piecewise::PiecewiseFn;

/// Time specification: a rational multiple of the problem's revival scale,
/// or a raw real time.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "lowercase")]
pub enum TimeSpec {
    Rational { p: u64, q: u64, side: Option<SideSpec> },
    Real(f64),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Left,
    Right,
}

fn default_modes() -> u32 {
    600
}
fn default_hilbert_modes() -> usize {
    1 << 13
}
fn default_grid() -> usize {
    512
}
fn default_delta() -> f64 {
    1e-2
}
fn default_threshold() -> f64 {
    5e-3
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    /// Problem name in the registry: "airy" or "dislocation".
    pub problem: String,
    /// Dislocation point; required for the dislocation problem.
    #[serde(default)]
    pub b: Option<f64>,
    pub u0: PiecewiseFn,
    pub time: TimeSpec,
    /// Eigenfunction / series truncation.
    #[serde(default = "default_modes")]
    pub modes: u32,
    /// Hilbert synthesis truncation.
    #[serde(default = "default_hilbert_modes")]
    pub hilbert_modes: usize,
    /// Output grid size.
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// Singularity exclusion radius (relative to the evaluation interval).
    #[serde(default = "default_delta")]
    pub delta: f64,
    /// `compare` exits 0 only when `sup_err` stays below this.
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("bad config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid < 16 {
            return Err(Error::Config(format!("grid size {} < 16", self.grid)));
        }
        if !(self.delta > 0.0) {
            return Err(Error::Config(format!("delta must be positive, got {}", self.delta)));
        }
        if self.modes == 0 {
            return Err(Error::Config("modes must be >= 1".into()));
        }
        match self.problem.as_str() {
            "airy" => {}
            "dislocation" => {
                let b = self
                    .b
                    .ok_or_else(|| Error::Config("dislocation problem needs b".into()))?;
                // extreme b makes the interface decay rate degenerate and the
                // needed mode counts explode; rejected rather than clamped
                if !(0.05 < b && b < 0.95) {
                    return Err(Error::Config(format!(
                        "b = {b} outside the supported range (0.05, 0.95)"
                    )));
                }
            }
            other => {
                return Err(Error::Config(format!("unknown problem '{other}'")));
            }
        }
        if let TimeSpec::Rational { p, q, .. } = self.time {
            if p == 0 || q == 0 {
                return Err(Error::Config("rational time needs p >= 1 and q >= 1".into()));
            }
        }
        Ok(())
    }

    /// Interior evaluation grid `x_i = (i + 1/2) / m * length`, never hitting
    /// the endpoints.
    pub fn grid_points(&self, length: f64) -> Vec<f64> {
        (0..self.grid)
            .map(|i| (i as f64 + 0.5) / self.grid as f64 * length)
            .collect()
    }
}
