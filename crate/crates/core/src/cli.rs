//! Command-line front end: `equilibrium`, `sweep` and `calibrate`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::chart::{emit_charts, profit_view_limit, ProfitCurve};
use crate::config::{parse_config, OutputFormat, RunConfig, CALIBRATION_TOLERANCE};
use crate::error::ModelError;
use crate::model::{marginal_product_capital_old, EconomyParams};
use crate::report::{write_point_csv, write_point_json, write_sweep_csv, write_sweep_json};
use crate::solver::maximize_profit;
use crate::sweep::{calibrate_a_old, run_sweep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

const DEFAULT_CHART_DIR: &str = "charts";
const PROFIT_CURVE_POINTS: usize = 400;

#[derive(Debug, Parser)]
#[command(
    name = "automation-eq",
    version,
    about = "Equilibria of a monopolist-monopsonist economy with an automation technology"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` config file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file, or output directory when --charts is given.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Also write SVG charts.
    #[arg(long, global = true)]
    charts: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the equilibrium at one automation productivity.
    Equilibrium {
        #[arg(long, allow_negative_numbers = true)]
        a_auto: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Solve equilibria over a grid of automation productivities.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        a_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        a_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Calibrate the old technology's productivity to a marginal product of capital.
    Calibrate {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        target_mpk: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(ModelError::Calibration(_) | ModelError::Bracket { .. }) => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI with explicit data and diagnostic sinks.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_config(common: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    cfg.output.out = common.out.clone();
    cfg.output.format = common.format;
    cfg.output.charts = common.charts;
    Ok(cfg)
}

/// Where data goes and, with charts on, which directory receives the SVGs.
fn destinations(cfg: &RunConfig, data_name: &str) -> (Option<PathBuf>, Option<PathBuf>) {
    match (&cfg.output.out, cfg.output.charts) {
        (Some(dir), true) => (Some(dir.join(data_name)), Some(dir.clone())),
        (None, true) => (None, Some(PathBuf::from(DEFAULT_CHART_DIR))),
        (out, false) => (out.clone(), None),
    }
}

fn write_data(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    emit: impl Fn(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            let mut buf = Vec::new();
            emit(&mut buf)?;
            fs::write(path, buf)?;
        }
        None => emit(stdout)?,
    }
    Ok(())
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn profit_curves(cfg: &RunConfig, params: &EconomyParams, extra: &[f64]) -> Result<Vec<ProfitCurve>, CliError> {
    let l_hi = profit_view_limit(&params.prefs);
    let mut values = cfg.output.profit_curve_a_auto.clone();
    values.extend_from_slice(extra);
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
        .into_iter()
        .map(|a| ProfitCurve::compute(params, a, &cfg.solver, l_hi, PROFIT_CURVE_POINTS).map_err(CliError::from))
        .collect()
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Equilibrium { a_auto, common } => {
            let cfg = load_config(&common)?;
            let params = cfg.resolve_economy()?.with_a_auto(a_auto);
            let point = maximize_profit(&params, &cfg.solver)?;
            let format = cfg.output.format.unwrap_or(OutputFormat::Json);
            let (data, chart_dir) = destinations(&cfg, &format!("equilibrium.{}", extension(format)));
            write_data(data.as_deref(), stdout, |w| match format {
                OutputFormat::Csv => write_point_csv(&point, w),
                OutputFormat::Json => write_point_json(&point, w),
            })?;
            writeln!(
                stderr,
                "A_auto = {a_auto}: L* = {:.6}, w* = {:.6}, f* = {:.6}, profit = {:.6}, automation share = {:.2}%",
                point.l_star,
                point.wage,
                point.f_star,
                point.profit,
                100.0 * point.split.auto_share()
            )?;
            if let Some(dir) = chart_dir {
                let curves = profit_curves(&cfg, &params, &[a_auto])?;
                let written = emit_charts(None, &curves, &params.prefs, &dir)?;
                writeln!(stderr, "wrote {} charts to {}", written.len(), dir.display())?;
            }
        }
        Command::Sweep {
            a_min,
            a_max,
            steps,
            common,
        } => {
            let mut cfg = load_config(&common)?;
            cfg.a_min = a_min.unwrap_or(cfg.a_min);
            cfg.a_max = a_max.unwrap_or(cfg.a_max);
            cfg.steps = steps.unwrap_or(cfg.steps);
            let params = cfg.resolve_economy()?;
            let result = run_sweep(&cfg.sweep_spec(params))?;
            let format = cfg.output.format.unwrap_or(OutputFormat::Csv);
            let (data, chart_dir) = destinations(&cfg, &format!("sweep.{}", extension(format)));
            write_data(data.as_deref(), stdout, |w| match format {
                OutputFormat::Csv => write_sweep_csv(&result, w),
                OutputFormat::Json => write_sweep_json(&result, w),
            })?;
            let show = |x: Option<f64>| x.map_or_else(|| "not reached".to_string(), |v| format!("{v:.6}"));
            writeln!(stderr, "A_old = {:.6}", params.tech.a_old)?;
            writeln!(stderr, "transition onset at A_auto = {}", show(result.transition_onset))?;
            writeln!(stderr, "labor fully displaced at A_auto = {}", show(result.displacement_complete))?;
            writeln!(
                stderr,
                "production drop = {:.1}% (f_pre = {:.4}, f_min = {:.4})",
                100.0 * result.drop_fraction,
                result.f_pre,
                result.f_min
            )?;
            writeln!(stderr, "production recovers at A_auto = {}", show(result.recovery_a_auto))?;
            if let Some(dir) = chart_dir {
                let curves = profit_curves(&cfg, &params, &[])?;
                let written = emit_charts(Some(&result), &curves, &params.prefs, &dir)?;
                writeln!(stderr, "wrote {} charts to {}", written.len(), dir.display())?;
            }
        }
        Command::Calibrate { target_mpk, common } => {
            let cfg = load_config(&common)?;
            let template = cfg.economy_template()?;
            let a_old = calibrate_a_old(target_mpk, &template, &cfg.solver, CALIBRATION_TOLERANCE)?;
            let params = template.with_a_old(a_old);
            let point = maximize_profit(&params, &cfg.solver)?;
            let mpk = marginal_product_capital_old(params.k_bar, point.l_star, &params.tech)?;
            let record = Calibration {
                target_mpk,
                a_old,
                l_star: point.l_star,
                mpk,
            };
            let format = cfg.output.format.unwrap_or(OutputFormat::Json);
            write_data(cfg.output.out.as_deref(), stdout, |w| match format {
                OutputFormat::Csv => {
                    writeln!(w, "target_mpk,a_old,l_star,mpk")?;
                    writeln!(
                        w,
                        "{},{},{},{}",
                        crate::report::format_number(target_mpk),
                        crate::report::format_number(a_old),
                        crate::report::format_number(point.l_star),
                        crate::report::format_number(mpk)
                    )
                }
                OutputFormat::Json => {
                    serde_json::to_writer_pretty(&mut *w, &record)?;
                    writeln!(w)
                }
            })?;
            writeln!(
                stderr,
                "A_old = {a_old:.6} gives MPK = {mpk:.9} at L* = {:.6}",
                point.l_star
            )?;
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct Calibration {
    target_mpk: f64,
    a_old: f64,
    l_star: f64,
    mpk: f64,
}
