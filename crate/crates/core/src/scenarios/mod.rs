//! The verification scenarios. Each one quantizes a set of classical
//! relations, computes residuals and issues a verdict.

mod cylinder;
mod groenewold;
mod prequant;
mod quant;
mod report;
mod rplus;
mod sphere;
mod torus;

pub use cylinder::{
    derived_rules, relation_sides, run_cylinder, run_cylinder_capped, stated_rules, POSITION_CAP,
};
pub use groenewold::{
    anticommutator_residual, cubic_quantization, cubic_residual, cubic_sides, run_groenewold,
    run_groenewold_with, MIN_TRUNCATION,
};
pub use prequant::{
    prequantization_residuals, torus_embed, verify_prequantization, verify_prequantizer,
    PairResidual, Prequantizer, Preset,
};
pub use quant::{Operator, QuantMap};
pub use report::{verdict_of, Check, Residual, ScenarioReport, Source, Verdict};
pub use rplus::run_rplus;
pub use sphere::{
    casimir, match_casimir_pattern, quantized_relation_one, quantized_relation_two, relation_one,
    relation_two, run_sphere, run_sphere_with, sphere_quantization, PatternMatch, MATRIX_A,
};
pub use torus::{order, run_torus, MARGIN, ORDER_RANGE};

use std::str::FromStr;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reps::Spin;

/// Exact computation only, or exact plus a matrix cross-check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Symbolic,
    Matrix,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Matrix => "matrix",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "matrix" => Ok(Mode::Matrix),
            _ => Err(Error::Config(format!("unknown mode `{s}`"))),
        }
    }
}

/// Settings of the floating-point cross-checks against matrix
/// representations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixCheck {
    pub hbar: f64,
    pub tolerance: f64,
}

impl Default for MatrixCheck {
    fn default() -> Self {
        MatrixCheck {
            hbar: 1.0,
            tolerance: 1e-9,
        }
    }
}

/// Scenario names in their canonical order.
pub const SCENARIOS: [&str; 5] = ["groenewold", "sphere", "cylinder", "rplus", "torus"];

/// Parameters for [`run_all`]. Missing keys take their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenarios: Vec<String>,
    /// Spin labels such as `"1/2"`; one sphere report per entry.
    pub spins: Vec<String>,
    pub truncation: usize,
    pub grid: usize,
    pub hbar: f64,
    /// Degree cap for the position family on the cylinder.
    pub degree: u32,
    pub rplus_degree: u32,
    pub include_c: bool,
    pub mode: Mode,
    /// Tolerance of the matrix cross-checks.
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenarios: SCENARIOS.iter().map(|s| s.to_string()).collect(),
            spins: vec!["1".into()],
            truncation: 12,
            grid: 256,
            hbar: 1.0,
            degree: POSITION_CAP,
            rplus_degree: 8,
            include_c: true,
            mode: Mode::Symbolic,
            tolerance: MatrixCheck::default().tolerance,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.scenarios {
            if !SCENARIOS.contains(&s.as_str()) {
                return Err(Error::Config(format!("unknown scenario `{s}`")));
            }
        }
        for j in &self.spins {
            j.parse::<Spin>()?;
        }
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::Config(format!(
                "hbar must be positive, got {}",
                self.hbar
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    pub fn matrix_check(&self) -> MatrixCheck {
        MatrixCheck {
            hbar: self.hbar,
            tolerance: self.tolerance,
        }
    }
}

/// The verdict each scenario is expected to reach.
pub fn expected_verdict(report: &ScenarioReport) -> Verdict {
    match report.scenario.as_str() {
        "sphere" if report.params.contains_key("trivial") => Verdict::Inconclusive,
        "groenewold" | "sphere" | "cylinder" => Verdict::Obstructed,
        _ => Verdict::Consistent,
    }
}

/// Runs one named scenario; `sphere` yields one report per spin.
pub fn run_scenario(name: &str, config: &RunConfig) -> Result<Vec<ScenarioReport>> {
    Ok(match name {
        "groenewold" => vec![run_groenewold_with(
            config.mode,
            config.truncation,
            &config.matrix_check(),
        )?],
        "sphere" => config
            .spins
            .iter()
            .map(|j| run_sphere_with(j.parse()?, config.mode, &config.matrix_check()))
            .collect::<Result<_>>()?,
        "cylinder" => vec![run_cylinder_capped(config.include_c, config.degree)?],
        "rplus" => vec![run_rplus(config.rplus_degree)?],
        "torus" => vec![run_torus(config.grid, config.hbar)?],
        _ => return Err(Error::Config(format!("unknown scenario `{name}`"))),
    })
}

/// Runs every configured scenario, one thread each. Reports come back in
/// configuration order.
pub fn run_all(config: &RunConfig) -> Result<Vec<ScenarioReport>> {
    config.validate()?;
    let results: Vec<Result<Vec<ScenarioReport>>> = thread::scope(|s| {
        let handles: Vec<_> = config
            .scenarios
            .iter()
            .map(|name| s.spawn(move || run_scenario(name, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_list() {
        let c = RunConfig {
            scenarios: vec![],
            ..RunConfig::default()
        };
        assert!(run_all(&c).unwrap().is_empty());
    }

    #[test]
    fn config_defaults_and_errors() {
        let c = RunConfig::from_json(r#"{"spins": ["1/2", "3/2"]}"#).unwrap();
        assert_eq!(c.grid, 256);
        assert_eq!(c.spins.len(), 2);
        assert!(RunConfig::from_json(r#"{"scenarios": ["moon"]}"#).is_err());
        assert!(RunConfig::from_json(r#"{"grd": 3}"#).is_err());
        assert!(RunConfig::from_json(r#"{"spins": ["1/3"]}"#).is_err());
    }
}
