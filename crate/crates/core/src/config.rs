//! Flat `key = value` run configuration.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use crate::error::ModelError;
use crate::model::{EconomyParams, HouseholdPrefs, Regime, TechnologyParams};
use crate::solver::SolverConfig;
use crate::sweep::{calibrate_a_old, SweepSpec};

/// Relative tolerance used when `A_old` is calibrated from a config.
pub const CALIBRATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    /// 1-based line number; 0 when the problem is not tied to one line.
    pub line: usize,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config key `{}`: {}", self.key, self.message)
        } else {
            write!(f, "config line {}, key `{}`: {}", self.line, self.key, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

/// How the old technology's productivity is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OldProductivity {
    Fixed(f64),
    /// Calibrated so the marginal product of capital at `A_auto = 0` hits this target.
    Calibrated { target_mpk: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub charts: bool,
    /// `A_auto` values drawn in the profit-landscape chart.
    pub profit_curve_a_auto: Vec<f64>,
}

impl Default for OutputOptions {
    fn default() -> Self {
        OutputOptions {
            out: None,
            format: None,
            charts: false,
            profit_curve_a_auto: vec![0.0, 1.05, 1.1, 1.2],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub gamma: f64,
    pub w_min: f64,
    pub c0_regime: Regime,
    pub l_max: f64,
    pub k_bar: f64,
    pub r_bar: f64,
    pub productivity: OldProductivity,
    pub a_min: f64,
    pub a_max: f64,
    pub steps: usize,
    pub solver: SolverConfig,
    pub output: OutputOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alpha: 0.5,
            gamma: 0.5,
            w_min: 2.0,
            c0_regime: Regime::Positive,
            l_max: 500.0,
            k_bar: 50.0,
            r_bar: 0.0,
            productivity: OldProductivity::Calibrated { target_mpk: 1.0 },
            a_min: 0.0,
            a_max: 2.0,
            steps: 201,
            solver: SolverConfig::default(),
            output: OutputOptions::default(),
        }
    }
}

pub const KEYS: &[&str] = &[
    "alpha",
    "gamma",
    "w_min",
    "c0_regime",
    "l_max",
    "k_bar",
    "r_bar",
    "a_old",
    "calibrate_mpk",
    "a_min",
    "a_max",
    "steps",
    "coarse_grid_points",
    "refine_tolerance",
];

fn err(line: usize, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_f64(line: usize, key: &str, raw: &str) -> Result<f64, ConfigError> {
    let v: f64 = raw
        .parse()
        .map_err(|_| err(line, key, format!("`{raw}` is not a number")))?;
    if !v.is_finite() {
        return Err(err(line, key, format!("`{raw}` is not finite")));
    }
    Ok(v)
}

fn check(line: usize, key: &str, ok: bool, what: &str, v: f64) -> Result<(), ConfigError> {
    if ok {
        Ok(())
    } else {
        Err(err(line, key, format!("{v} violates {what}")))
    }
}

/// Parses a config document. Missing keys keep the baseline defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen: HashMap<&'static str, usize> = HashMap::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (raw_key, raw_value) = content
            .split_once('=')
            .ok_or_else(|| err(line, content, "expected `key = value`"))?;
        let (raw_key, value) = (raw_key.trim(), raw_value.trim());
        let key = *KEYS
            .iter()
            .find(|k| **k == raw_key)
            .ok_or_else(|| err(line, raw_key, "unknown key"))?;
        if let Some(prev) = seen.insert(key, line) {
            return Err(err(line, key, format!("duplicate key (first set on line {prev})")));
        }

        match key {
            "c0_regime" => {
                cfg.c0_regime = value.parse().map_err(|e: String| err(line, key, e))?;
            }
            "steps" | "coarse_grid_points" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| err(line, key, format!("`{value}` is not a non-negative integer")))?;
                if key == "steps" {
                    check(line, key, n >= 2, "steps >= 2", n as f64)?;
                    cfg.steps = n;
                } else {
                    check(line, key, n >= 64, "coarse_grid_points >= 64", n as f64)?;
                    cfg.solver.coarse_grid_points = n;
                }
            }
            _ => {
                let v = parse_f64(line, key, value)?;
                match key {
                    "alpha" => {
                        check(line, key, v > 0.0 && v < 1.0, "0 < alpha < 1", v)?;
                        cfg.alpha = v;
                    }
                    "gamma" => {
                        check(line, key, v > 0.0 && v < 1.0, "0 < gamma < 1", v)?;
                        cfg.gamma = v;
                    }
                    "w_min" => {
                        check(line, key, v > 0.0, "w_min > 0", v)?;
                        cfg.w_min = v;
                    }
                    "l_max" => {
                        check(line, key, v > 0.0, "l_max > 0", v)?;
                        cfg.l_max = v;
                    }
                    "k_bar" => {
                        check(line, key, v > 0.0, "k_bar > 0", v)?;
                        cfg.k_bar = v;
                    }
                    "r_bar" => {
                        check(line, key, v >= 0.0, "r_bar >= 0", v)?;
                        cfg.r_bar = v;
                    }
                    "a_old" => {
                        check(line, key, v > 0.0, "a_old > 0", v)?;
                        cfg.productivity = OldProductivity::Fixed(v);
                    }
                    "calibrate_mpk" => {
                        check(line, key, v > 0.0, "calibrate_mpk > 0", v)?;
                        cfg.productivity = OldProductivity::Calibrated { target_mpk: v };
                    }
                    "a_min" => {
                        check(line, key, v >= 0.0, "a_min >= 0", v)?;
                        cfg.a_min = v;
                    }
                    "a_max" => cfg.a_max = v,
                    "refine_tolerance" => {
                        check(line, key, v > 0.0, "refine_tolerance > 0", v)?;
                        cfg.solver.refine_tolerance = v;
                    }
                    _ => unreachable!("key list and match arms disagree on `{key}`"),
                }
            }
        }
    }

    if let (Some(&a), Some(&c)) = (seen.get("a_old"), seen.get("calibrate_mpk")) {
        return Err(err(a.max(c), "calibrate_mpk", "a_old and calibrate_mpk are mutually exclusive"));
    }
    if !(cfg.a_max > cfg.a_min) {
        let line = seen.get("a_max").or(seen.get("a_min")).copied().unwrap_or(0);
        return Err(err(line, "a_max", format!("a_max = {} must exceed a_min = {}", cfg.a_max, cfg.a_min)));
    }
    Ok(cfg)
}

impl RunConfig {
    /// Economy with a placeholder `A_old` when calibration is pending.
    pub fn economy_template(&self) -> Result<EconomyParams, ModelError> {
        let a_old = match self.productivity {
            OldProductivity::Fixed(a) => a,
            OldProductivity::Calibrated { .. } => 1.0,
        };
        let prefs = HouseholdPrefs::from_wmin(self.w_min, self.gamma, self.l_max, self.c0_regime)?;
        EconomyParams::new(TechnologyParams::new(self.alpha, a_old, 0.0)?, prefs, self.k_bar, self.r_bar)
    }

    /// Economy with `A_old` fixed or calibrated as configured.
    pub fn resolve_economy(&self) -> Result<EconomyParams, ModelError> {
        let template = self.economy_template()?;
        match self.productivity {
            OldProductivity::Fixed(_) => Ok(template),
            OldProductivity::Calibrated { target_mpk } => {
                let a_old = calibrate_a_old(target_mpk, &template, &self.solver, CALIBRATION_TOLERANCE)?;
                Ok(template.with_a_old(a_old))
            }
        }
    }

    pub fn sweep_spec(&self, params: EconomyParams) -> SweepSpec {
        SweepSpec {
            solver: self.solver,
            ..SweepSpec::new(params, self.a_min, self.a_max, self.steps)
        }
    }
}
