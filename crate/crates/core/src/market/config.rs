use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CostDistribution, CostSpec, DemandCurve, DemandSpec, MarketEnvironment};
use crate::error::{Error, Result};

/// Grid sizes and tolerances used by the solver pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSettings {
    pub grid: usize,
    pub cbar_grid: usize,
    pub assumption_grid: usize,
    pub price_grid: usize,
    pub oracle_n: usize,
    pub oracle_iters: usize,
    pub gate_tol: f64,
    pub cbar_tol: f64,
    pub quad_tol: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            grid: 1025,
            cbar_grid: 129,
            assumption_grid: 2049,
            price_grid: 4096,
            oracle_n: 100,
            oracle_iters: 400,
            gate_tol: 1e-9,
            cbar_tol: 1e-8,
            quad_tol: 1e-9,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        let bounded = |field: &str, v: usize, lo: usize, hi: usize| {
            if (lo..=hi).contains(&v) {
                Ok(())
            } else {
                Err(Error::invalid(field, format!("must lie in [{lo}, {hi}], got {v}")))
            }
        };
        bounded("solver.grid", self.grid, 64, 1 << 20)?;
        bounded("solver.cbar_grid", self.cbar_grid, 3, 1 << 16)?;
        bounded("solver.assumption_grid", self.assumption_grid, 16, 1 << 22)?;
        bounded("solver.price_grid", self.price_grid, 1024, 1 << 22)?;
        bounded("solver.oracle_n", self.oracle_n, 4, 200)?;
        bounded("solver.oracle_iters", self.oracle_iters, 1, 1 << 20)?;
        for (field, v) in [
            ("solver.gate_tol", self.gate_tol),
            ("solver.cbar_tol", self.cbar_tol),
            ("solver.quad_tol", self.quad_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// On-disk environment description (TOML).
///
/// ```toml
/// alpha = 0.0
/// k = 0.0
///
/// [demand]
/// family = "linear"
/// a = 1.0
/// b = 1.0
///
/// [cost]
/// family = "uniform"
///
/// [solver]
/// grid = 1025
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentFile {
    pub alpha: f64,
    #[serde(default)]
    pub k: f64,
    pub demand: DemandSpec,
    pub cost: CostSpec,
    #[serde(default)]
    pub solver: SolverSettings,
}

impl EnvironmentFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.solver.validate()?;
        Ok(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn environment(&self) -> Result<MarketEnvironment> {
        MarketEnvironment::new(
            DemandCurve::new(self.demand.clone())?,
            CostDistribution::new(self.cost.clone())?,
            self.alpha,
            self.k,
        )
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = r#"
alpha = 1.0
k = 0.0

[demand]
family = "linear"
a = 1.0
b = 1.0

[cost]
family = "uniform"
"#;

    #[test]
    fn parses_minimal_file() {
        let f = EnvironmentFile::from_toml_str(GOLDEN).unwrap();
        let env = f.environment().unwrap();
        assert_eq!(env.alpha, 1.0);
        assert_eq!(f.solver, SolverSettings::default());
    }

    #[test]
    fn round_trips() {
        let text = r#"
alpha = 0.1
[demand]
family = "truncated-constant-elastic"
theta = 1.0
eta = 2.0
v_bar = 3.0
[cost]
family = "truncated-normal"
mean = 0.5
variance = 0.01
[solver]
grid = 513
"#;
        let f = EnvironmentFile::from_toml_str(text).unwrap();
        let again = EnvironmentFile::from_toml_str(&f.to_toml_string().unwrap()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.solver.grid, 513);
    }

    #[test]
    fn errors_name_the_field() {
        let bad_alpha = GOLDEN.replace("alpha = 1.0", "alpha = 1.5");
        let err = EnvironmentFile::from_toml_str(&bad_alpha).unwrap().environment().unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");

        let typo = GOLDEN.replace("b = 1.0", "bb = 1.0");
        let err = EnvironmentFile::from_toml_str(&typo).unwrap_err();
        assert!(err.to_string().contains("bb"), "{err}");

        let grid = format!("{GOLDEN}\n[solver]\ngrid = 3\n");
        let err = EnvironmentFile::from_toml_str(&grid).unwrap_err();
        assert!(err.to_string().contains("solver.grid"), "{err}");
    }
}
