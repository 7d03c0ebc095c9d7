//! Comparative statics in the automation productivity `A_auto`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::{marginal_product_capital_old, EconomyParams, EquilibriumPoint};
use crate::solver::{maximize_profit, SolverConfig};

/// Labor drop below the starting plateau that marks the onset of the transition.
pub const ONSET_LABOR_DROP: f64 = 1e-3;

/// Search interval for the old-technology productivity during calibration.
pub const CALIBRATION_BRACKET: (f64, f64) = (1e-3, 1e3);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub a_min: f64,
    pub a_max: f64,
    pub steps: usize,
    /// Economy held fixed across the sweep; its `a_auto` is overridden per step.
    pub params: EconomyParams,
    pub solver: SolverConfig,
    /// Bisection tolerance on `A_auto` for the reported thresholds.
    pub threshold_tolerance: f64,
    /// Solve grid points on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

impl SweepSpec {
    pub fn new(params: EconomyParams, a_min: f64, a_max: f64, steps: usize) -> Self {
        SweepSpec {
            a_min,
            a_max,
            steps,
            params,
            solver: SolverConfig::default(),
            threshold_tolerance: 1e-6,
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a_min >= 0.0 && self.a_min.is_finite()) {
            return Err(ModelError::invalid("a_min", format!("{} must be non-negative", self.a_min)));
        }
        if !(self.a_max > self.a_min && self.a_max.is_finite()) {
            return Err(ModelError::invalid(
                "a_max",
                format!("{} must exceed a_min = {}", self.a_max, self.a_min),
            ));
        }
        if self.steps < 2 {
            return Err(ModelError::invalid("steps", format!("{} is below the minimum of 2", self.steps)));
        }
        if !(self.threshold_tolerance > 0.0) {
            return Err(ModelError::invalid("threshold_tolerance", "must be positive"));
        }
        self.params.with_a_auto(self.a_min).validate()?;
        self.solver.validate()
    }

    /// The `A_auto` values solved by the sweep, ascending; the last equals `a_max`.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.a_max - self.a_min;
        let last = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.a_max
                } else {
                    self.a_min + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<EquilibriumPoint>,
    pub transition_onset: Option<f64>,
    pub displacement_complete: Option<f64>,
    pub f_pre: f64,
    pub f_min: f64,
    pub drop_fraction: f64,
    pub recovery_a_auto: Option<f64>,
}

/// Which threshold a bisection is looking for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// Labor has fallen more than [`ONSET_LABOR_DROP`] below `reference_labor`.
    Onset { reference_labor: f64 },
    /// The firm hires no labor at all.
    Displacement,
}

impl Threshold {
    fn holds(&self, point: &EquilibriumPoint) -> bool {
        match *self {
            Threshold::Onset { reference_labor } => point.l_star < reference_labor - ONSET_LABOR_DROP,
            Threshold::Displacement => point.l_star == 0.0,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Threshold::Onset { .. } => "onset",
            Threshold::Displacement => "displacement",
        }
    }
}

fn solve_at(params: &EconomyParams, a_auto: f64, solver: &SolverConfig) -> Result<EquilibriumPoint> {
    maximize_profit(&params.with_a_auto(a_auto), solver)
}

/// Bisects `bracket` in `A_auto` until it is narrower than `tol`.
///
/// The predicate must differ at the two ends. Returns the end of the final
/// bracket on the `bracket.1` side.
pub fn refine_transition(
    params: &EconomyParams,
    bracket: (f64, f64),
    solver: &SolverConfig,
    tol: f64,
    threshold: Threshold,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(hi > lo) || !(tol > 0.0) {
        return Err(ModelError::invalid("bracket", format!("[{lo}, {hi}] with tol {tol}")));
    }
    let at_lo = threshold.holds(&solve_at(params, lo, solver)?);
    let at_hi = threshold.holds(&solve_at(params, hi, solver)?);
    if at_lo == at_hi {
        return Err(ModelError::Bracket {
            lo,
            hi,
            predicate: threshold.name(),
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if threshold.holds(&solve_at(params, mid, solver)?) == at_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn refine_first_crossing(
    spec: &SweepSpec,
    grid: &[f64],
    points: &[EquilibriumPoint],
    threshold: Threshold,
) -> Result<Option<f64>> {
    match points.iter().position(|p| threshold.holds(p)) {
        None => Ok(None),
        Some(0) => Ok(Some(grid[0])),
        Some(i) => refine_transition(
            &spec.params,
            (grid[i - 1], grid[i]),
            &spec.solver,
            spec.threshold_tolerance,
            threshold,
        )
        .map(Some),
    }
}

/// Solves the equilibrium across the `A_auto` grid and summarizes the transition.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let grid = spec.grid();
    let points: Vec<EquilibriumPoint> = if spec.parallel {
        grid.par_iter()
            .map(|&a| solve_at(&spec.params, a, &spec.solver))
            .collect::<Result<_>>()?
    } else {
        grid.iter()
            .map(|&a| solve_at(&spec.params, a, &spec.solver))
            .collect::<Result<_>>()?
    };

    let start = points[0];
    let f_pre = start.f_star;
    let displacement_complete = refine_first_crossing(spec, &grid, &points, Threshold::Displacement)?;
    let transition_onset = refine_first_crossing(
        spec,
        &grid,
        &points,
        Threshold::Onset {
            reference_labor: start.l_star,
        },
    )?
    .map(|onset| displacement_complete.map_or(onset, |d| onset.min(d)));

    // The production trough sits at the displacement threshold, which the grid
    // only brackets; include the refined threshold points.
    let mut f_min = points.iter().map(|p| p.f_star).fold(f64::INFINITY, f64::min);
    for a in [transition_onset, displacement_complete].into_iter().flatten() {
        f_min = f_min.min(solve_at(&spec.params, a, &spec.solver)?.f_star);
    }
    let drop_fraction = if f_pre > 0.0 {
        ((f_pre - f_min) / f_pre).max(0.0)
    } else {
        0.0
    };

    let recovery_a_auto = if drop_fraction == 0.0 {
        None
    } else if let Some(displaced) = displacement_complete {
        // Past displacement f = A_auto K̄ exactly.
        Some((f_pre / spec.params.k_bar).max(displaced))
    } else {
        grid_recovery(spec, &grid, &points, f_pre)?
    };

    Ok(SweepResult {
        points,
        transition_onset,
        displacement_complete,
        f_pre,
        f_min,
        drop_fraction,
        recovery_a_auto,
    })
}

/// First `A_auto` past the production trough where output is back at `f_pre`.
fn grid_recovery(
    spec: &SweepSpec,
    grid: &[f64],
    points: &[EquilibriumPoint],
    f_pre: f64,
) -> Result<Option<f64>> {
    let trough = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.f_star.total_cmp(&b.1.f_star))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let Some(offset) = points[trough..].iter().position(|p| p.f_star >= f_pre) else {
        return Ok(None);
    };
    let i = trough + offset;
    if i == 0 {
        return Ok(Some(grid[0]));
    }
    let (mut lo, mut hi) = (grid[i - 1], grid[i]);
    while hi - lo > spec.threshold_tolerance {
        let mid = 0.5 * (lo + hi);
        if solve_at(&spec.params, mid, &spec.solver)?.f_star >= f_pre {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Marginal product of old-technology capital at the `A_auto = 0` equilibrium.
pub fn baseline_mpk(params: &EconomyParams, solver: &SolverConfig) -> Result<f64> {
    let params = params.with_a_auto(0.0);
    let pt = maximize_profit(&params, solver)?;
    if pt.l_star == 0.0 {
        return Ok(0.0);
    }
    marginal_product_capital_old(params.k_bar, pt.l_star, &params.tech)
}

/// Finds `A_old` such that the old technology's marginal product of capital
/// equals `target_mpk` in the equilibrium without automation.
///
/// Equilibrium labor itself depends on `A_old`, so this bisects (geometrically)
/// on `A_old` over [`CALIBRATION_BRACKET`] until the bracket's relative width
/// is below `tol`. The `a_old` and `a_auto` fields of `params` are ignored.
pub fn calibrate_a_old(
    target_mpk: f64,
    params: &EconomyParams,
    solver: &SolverConfig,
    tol: f64,
) -> Result<f64> {
    if !(target_mpk > 0.0 && target_mpk.is_finite()) {
        return Err(ModelError::domain("target_mpk", target_mpk, "target must be positive"));
    }
    if !(tol > 0.0) {
        return Err(ModelError::invalid("tol", "must be positive"));
    }
    let gap = |a_old: f64| -> Result<f64> {
        Ok(baseline_mpk(&params.with_a_old(a_old), solver)? - target_mpk)
    };
    let (mut lo, mut hi) = CALIBRATION_BRACKET;
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    if g_lo.signum() == g_hi.signum() {
        return Err(ModelError::Calibration(format!(
            "marginal product minus target has the same sign at a_old = {lo} ({g_lo}) and a_old = {hi} ({g_hi})"
        )));
    }
    let increasing = g_hi > g_lo;
    while hi / lo - 1.0 > tol {
        let mid = (lo * hi).sqrt();
        let g = gap(mid)?;
        if g == 0.0 {
            return Ok(mid);
        }
        if (g > 0.0) == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Baseline economy with `A_old` calibrated to the target marginal product.
pub fn calibrated_baseline(target_mpk: f64) -> Result<EconomyParams> {
    let base = EconomyParams::baseline(1.0);
    let a_old = calibrate_a_old(target_mpk, &base, &SolverConfig::default(), 1e-12)?;
    Ok(base.with_a_old(a_old))
}
