//! Process descriptions: the four subordinate-Brownian-motion families from
//! the examples, the truncated stable process and the 1-d counterexample
//! process, together with the config-file format that ships them.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessKind {
    /// psi(xi) = |xi|^alpha; subordinate BM with phi(lambda) = lambda^{alpha/2}.
    Stable { alpha: f64 },
    /// phi(lambda) = sqrt(lambda + m^2) - m.
    Relativistic { m: f64 },
    /// phi(lambda) = log(1 + lambda^{beta/2}).
    GeometricStable { beta: f64 },
    /// phi(lambda) = lambda / log(1 + lambda) - 1.
    ConjugateVarianceGamma,
    /// Levy density A r^{-d-alpha} on (0,1], c1 e^{-c2 r} beyond, C^1 at 1.
    TruncatedStable { alpha: f64 },
    /// 1-d Levy density A|x|^{-1-alpha} on (0,1], A(1-(|x|-1)^gamma) on (1,2].
    Counterexample { alpha: f64, gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { r_min: 1e-6, r_max: 1e6, points: 512 }
    }
}

impl GridSpec {
    pub fn log_points(&self) -> Vec<f64> {
        log_spaced(self.r_min, self.r_max, self.points)
    }
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub id: String,
    #[serde(flatten)]
    pub kind: ProcessKind,
    pub dimension: u32,
    #[serde(default)]
    pub grid: GridSpec,
    /// Declared flags; unimodality holds for every shipped kind.
    #[serde(default)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Flags {
    #[serde(default)]
    pub transient: Option<bool>,
}

/// Raw TOML shape: kind + parameters table.
#[derive(Deserialize)]
struct RawSpec {
    id: Option<String>,
    kind: String,
    dimension: u32,
    #[serde(default)]
    parameters: toml::value::Table,
    #[serde(default)]
    grid: Option<GridSpec>,
    #[serde(default)]
    flags: Option<Flags>,
}

fn param(table: &toml::value::Table, key: &str) -> Result<f64> {
    table
        .get(key)
        .and_then(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
        .ok_or_else(|| Error::Config(format!("missing numeric parameter `{key}`")))
}

impl ProcessSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawSpec =
            toml::from_str(text).map_err(|e| Error::Config(format!("spec parse error: {e}")))?;
        let kind = match raw.kind.as_str() {
            "stable" => ProcessKind::Stable { alpha: param(&raw.parameters, "alpha")? },
            "relativistic" => ProcessKind::Relativistic { m: param(&raw.parameters, "m")? },
            "geometric_stable" => {
                ProcessKind::GeometricStable { beta: param(&raw.parameters, "beta")? }
            }
            "conjugate_variance_gamma" => ProcessKind::ConjugateVarianceGamma,
            "truncated_stable" => {
                ProcessKind::TruncatedStable { alpha: param(&raw.parameters, "alpha")? }
            }
            "counterexample" => ProcessKind::Counterexample {
                alpha: param(&raw.parameters, "alpha")?,
                gamma: param(&raw.parameters, "gamma")?,
            },
            other => return Err(Error::Config(format!("unknown process kind `{other}`"))),
        };
        let spec = ProcessSpec {
            id: raw.id.unwrap_or_else(|| raw.kind.clone()),
            kind,
            dimension: raw.dimension,
            grid: raw.grid.unwrap_or_default(),
            flags: raw.flags.unwrap_or_default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_toml_file(path: &std::path::Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 || self.dimension > 3 {
            return Err(Error::Config(format!(
                "dimension must be 1, 2 or 3, got {}",
                self.dimension
            )));
        }
        match self.kind {
            ProcessKind::Stable { alpha } | ProcessKind::TruncatedStable { alpha } => {
                if !(alpha > 0.0 && alpha < 2.0) {
                    return Err(Error::Config(format!(
                        "alpha must lie in (0, 2), got {alpha}"
                    )));
                }
            }
            ProcessKind::Relativistic { m } => {
                if m <= 0.0 {
                    return Err(Error::Config(format!("mass m must be positive, got {m}")));
                }
            }
            ProcessKind::GeometricStable { beta } => {
                if !(beta > 0.0 && beta <= 2.0) {
                    return Err(Error::Config(format!(
                        "beta must lie in (0, 2], got {beta}"
                    )));
                }
            }
            ProcessKind::ConjugateVarianceGamma => {}
            ProcessKind::Counterexample { alpha, gamma } => {
                if self.dimension != 1 {
                    return Err(Error::Config("counterexample process is 1-dimensional".into()));
                }
                if !(alpha > 0.0 && alpha < 0.5) {
                    return Err(Error::Config(format!("alpha must lie in (0, 1/2), got {alpha}")));
                }
                if !(gamma > 0.5 && gamma < 1.0) {
                    return Err(Error::Config(format!("gamma must lie in (1/2, 1), got {gamma}")));
                }
                if alpha + gamma >= 1.0 {
                    return Err(Error::Config(format!(
                        "alpha + gamma must be < 1, got {}",
                        alpha + gamma
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether the process is a subordinate Brownian motion with a known
    /// Laplace exponent (the sampling route requires this).
    pub fn is_subordinate_bm(&self) -> bool {
        matches!(
            self.kind,
            ProcessKind::Stable { .. }
                | ProcessKind::Relativistic { .. }
                | ProcessKind::GeometricStable { .. }
                | ProcessKind::ConjugateVarianceGamma
        )
    }

    pub fn transient(&self) -> bool {
        self.flags.transient.unwrap_or(self.dimension >= 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAUCHY: &str = r#"
id = "cauchy"
kind = "stable"
dimension = 1
[parameters]
alpha = 1.0
"#;

    #[test]
    fn parses_valid_spec() {
        let s = ProcessSpec::from_toml_str(CAUCHY).unwrap();
        assert_eq!(s.kind, ProcessKind::Stable { alpha: 1.0 });
        assert_eq!(s.dimension, 1);
        assert_eq!(s.grid.points, 512);
        assert!(s.is_subordinate_bm());
        assert!(!s.transient());
    }

    #[test]
    fn rejects_alpha_out_of_range() {
        let bad = CAUCHY.replace("1.0", "2.5");
        assert!(matches!(ProcessSpec::from_toml_str(&bad), Err(Error::Config(_))));
        let boundary = CAUCHY.replace("1.0", "2.0");
        assert!(ProcessSpec::from_toml_str(&boundary).is_err(), "pure-jump scope excludes alpha = 2");
    }

    #[test]
    fn rejects_infeasible_counterexample() {
        let txt = r#"
kind = "counterexample"
dimension = 1
[parameters]
alpha = 0.3
gamma = 0.8
"#;
        // alpha + gamma >= 1
        assert!(ProcessSpec::from_toml_str(txt).is_err());
    }

    #[test]
    fn grid_override() {
        let txt = format!("{CAUCHY}\n[grid]\nr_min = 1e-4\nr_max = 1e4\npoints = 128\n");
        let s = ProcessSpec::from_toml_str(&txt).unwrap();
        assert_eq!(s.grid.points, 128);
        let g = s.grid.log_points();
        assert_eq!(g.len(), 128);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
