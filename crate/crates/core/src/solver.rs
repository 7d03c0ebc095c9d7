//! Global maximization of the firm's reduced profit over labor.
//!
//! Near the automation transition `Π(L)` can have two competing maxima, the
//! interior optimum and the `L = 0` corner, so a single local search is not
//! enough. The solver scans a coarse grid, refines every local bracket with a
//! golden-section search and compares the results against the exact corner.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::model::{equilibrium_at, profit, EconomyParams, EquilibriumPoint, Regime};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub coarse_grid_points: usize,
    /// Absolute tolerance on `L` for the golden-section refinement.
    pub refine_tolerance: f64,
    /// Relative profit gap under which two optima count as tied.
    pub corner_tie_epsilon: f64,
    /// Fractional distance kept from the singular end of the labor domain.
    pub domain_margin: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            coarse_grid_points: 2048,
            refine_tolerance: 1e-10,
            corner_tie_epsilon: 1e-12,
            domain_margin: 1e-9,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_grid_points < 64 {
            return Err(ModelError::invalid(
                "coarse_grid_points",
                format!("{} is below the minimum of 64", self.coarse_grid_points),
            ));
        }
        for (name, value) in [
            ("refine_tolerance", self.refine_tolerance),
            ("corner_tie_epsilon", self.corner_tie_epsilon),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ModelError::invalid(name, format!("{value} must be positive")));
            }
        }
        if !(self.domain_margin > 0.0 && self.domain_margin < 1.0) {
            return Err(ModelError::invalid(
                "domain_margin",
                format!("{} not in (0, 1)", self.domain_margin),
            ));
        }
        Ok(())
    }
}

/// Closed interval of positive labor searched by the solver, pulled in from
/// the supply curve's singular end by `margin`. The corner `L = 0` is always
/// considered separately.
pub fn search_interval(params: &EconomyParams, margin: f64) -> (f64, f64) {
    let prefs = &params.prefs;
    match prefs.regime() {
        Regime::Positive => (0.0, prefs.singular_labor() * (1.0 - margin)),
        Regime::Negative => (
            prefs.singular_labor() * (1.0 + margin),
            prefs.l_max * (1.0 - margin),
        ),
    }
}

fn uniform_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + step * i as f64 })
}

fn profit_or_neg_inf(labor: f64, params: &EconomyParams) -> f64 {
    profit(labor, params).unwrap_or(f64::NEG_INFINITY)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Returns the best point seen, endpoints of the final bracket included, so a
/// maximum sitting on the boundary is returned exactly.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while hi - lo > tol && iters < 200 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
        iters += 1;
    }
    let mut best = (lo, f(lo));
    for cand in [(c, fc), (d, fd), (hi, f(hi))] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    labor: f64,
    profit: f64,
}

fn near_tie(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Picks the global maximum; near-ties go to the larger labor level.
fn select(mut candidates: Vec<Candidate>, config: &SolverConfig) -> Candidate {
    candidates.sort_by(|a, b| a.labor.total_cmp(&b.labor));
    // Refinement of a bracket touching a boundary optimum lands within a few
    // tolerances of it; such points duplicate the exact candidate.
    let merge = 10.0 * config.refine_tolerance;
    let mut distinct: Vec<Candidate> = Vec::with_capacity(candidates.len());
    for cand in candidates {
        match distinct.last_mut() {
            Some(prev) if cand.labor - prev.labor <= merge => {
                if cand.profit > prev.profit {
                    *prev = cand;
                }
            }
            _ => distinct.push(cand),
        }
    }
    let best = distinct
        .iter()
        .map(|c| c.profit)
        .fold(f64::NEG_INFINITY, f64::max);
    *distinct
        .iter()
        .rev()
        .find(|c| c.profit == best || near_tie(c.profit, best, config.corner_tie_epsilon))
        .expect("corner candidate is always present")
}

/// Solves the firm's problem `max_L Π(L)` and returns the full equilibrium.
pub fn maximize_profit(params: &EconomyParams, config: &SolverConfig) -> Result<EquilibriumPoint> {
    params.validate()?;
    config.validate()?;
    let (lo, hi) = search_interval(params, config.domain_margin);
    let objective = |l: f64| profit_or_neg_inf(l, params);

    let grid: Vec<f64> = uniform_grid(lo, hi, config.coarse_grid_points).collect();
    let values: Vec<f64> = grid.iter().map(|&l| objective(l)).collect();
    let n = grid.len();

    let mut candidates = vec![Candidate {
        labor: 0.0,
        profit: profit(0.0, params)?,
    }];
    for i in 0..n {
        let left_ok = i == 0 || values[i] >= values[i - 1];
        let right_ok = i + 1 == n || values[i] >= values[i + 1];
        if !(left_ok && right_ok) || values[i] == f64::NEG_INFINITY {
            continue;
        }
        let a = grid[i.saturating_sub(1)];
        let b = grid[(i + 1).min(n - 1)];
        let (labor, value) = golden_section_max(objective, a, b, config.refine_tolerance);
        let cand = if value >= values[i] {
            Candidate {
                labor,
                profit: value,
            }
        } else {
            Candidate {
                labor: grid[i],
                profit: values[i],
            }
        };
        candidates.push(cand);
    }

    let best = select(candidates, config);
    equilibrium_at(best.labor, params)
}

/// Exhaustive reference solver: argmax of `Π` over a uniform grid plus the corner.
pub fn brute_force_equilibrium(params: &EconomyParams, grid_points: usize) -> Result<EquilibriumPoint> {
    params.validate()?;
    if grid_points < 1000 {
        return Err(ModelError::invalid(
            "grid_points",
            format!("{grid_points} is below the minimum of 1000"),
        ));
    }
    let (lo, hi) = search_interval(params, SolverConfig::default().domain_margin);
    let mut best_l = 0.0;
    let mut best_p = profit(0.0, params)?;
    for l in uniform_grid(lo, hi, grid_points) {
        let p = profit_or_neg_inf(l, params);
        if p > best_p {
            best_p = p;
            best_l = l;
        }
    }
    equilibrium_at(best_l, params)
}

/// `(L, Π(L))` sampled uniformly over the solver's search interval.
pub fn profit_curve(params: &EconomyParams, n_points: usize) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = search_interval(params, SolverConfig::default().domain_margin);
    profit_curve_between(params, lo, hi, n_points)
}

/// `(L, Π(L))` sampled uniformly over `[lo, hi]`.
pub fn profit_curve_between(
    params: &EconomyParams,
    lo: f64,
    hi: f64,
    n_points: usize,
) -> Result<Vec<(f64, f64)>> {
    params.validate()?;
    if n_points < 2 {
        return Err(ModelError::invalid("n_points", "need at least two samples"));
    }
    if !(hi > lo) {
        return Err(ModelError::invalid("range", format!("[{lo}, {hi}] is empty")));
    }
    uniform_grid(lo, hi, n_points)
        .map(|l| Ok((l, profit(l, params)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Approximately the calibrated baseline economy (MPK = 1 at A_auto = 0).
    const A_OLD: f64 = 3.088;

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-9);
        assert!(fx <= 0.0 && fx > -1e-17);
        // boundary maximum is returned exactly
        let (x, _) = golden_section_max(|x| -x, 0.0, 1.0, 1e-10);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let small = SolverConfig {
            coarse_grid_points: 10,
            ..Default::default()
        };
        assert!(small.validate().is_err());
        let bad_tol = SolverConfig {
            refine_tolerance: 0.0,
            ..Default::default()
        };
        assert!(bad_tol.validate().is_err());
    }

    #[test]
    fn interior_optimum_without_automation() {
        let params = EconomyParams::baseline(3.01);
        let pt = maximize_profit(&params, &SolverConfig::default()).unwrap();
        assert!((pt.l_star - 20.0).abs() < 1.0, "{}", pt.l_star);
        assert_eq!(pt.split.k_auto, 0.0);
        let g = crate::model::profit_gradient(pt.l_star, &params).unwrap();
        assert!(g.abs() < 1e-6, "{g}");
    }

    #[test]
    fn weak_automation_changes_nothing() {
        let base = EconomyParams::baseline(A_OLD);
        let cfg = SolverConfig::default();
        let p0 = maximize_profit(&base, &cfg).unwrap();
        let p5 = maximize_profit(&base.with_a_auto(0.5), &cfg).unwrap();
        assert_eq!(p5.l_star, p0.l_star);
        assert_eq!(p5.f_star, p0.f_star);
        assert_eq!(p5.profit, p0.profit);
        assert_eq!(p5.split.k_auto, 0.0);
    }

    #[test]
    fn strong_automation_hits_the_corner() {
        for a_old in [3.01, A_OLD] {
            let params = EconomyParams::baseline(a_old).with_a_auto(1.3);
            let pt = maximize_profit(&params, &SolverConfig::default()).unwrap();
            assert_eq!(pt.l_star, 0.0);
            assert_eq!(pt.f_star, 65.0);
            assert_eq!(pt.wage, 0.0);
            let brute = brute_force_equilibrium(&params, 100_000).unwrap();
            assert_eq!(brute.l_star, 0.0);
        }
        let params = EconomyParams::baseline(A_OLD).with_a_auto(5.0);
        assert_eq!(brute_force_equilibrium(&params, 10_000).unwrap().l_star, 0.0);
    }

    #[test]
    fn brute_force_agrees_with_solver() {
        let cfg = SolverConfig::default();
        for a_auto in [0.0, 1.0, 1.1] {
            let params = EconomyParams::baseline(A_OLD).with_a_auto(a_auto);
            let fast = maximize_profit(&params, &cfg).unwrap();
            let slow = brute_force_equilibrium(&params, 1_000_000).unwrap();
            assert!((fast.l_star - slow.l_star).abs() < 1e-3, "{a_auto}");
            assert!(fast.profit >= slow.profit - 1e-9 * slow.profit.abs());
            assert!((fast.profit - slow.profit).abs() <= 1e-9 * slow.profit.abs());
        }
        assert!(brute_force_equilibrium(&EconomyParams::baseline(A_OLD), 10).is_err());
    }

    #[test]
    fn profit_curve_examples() {
        let params = EconomyParams::baseline(A_OLD);
        let c = profit_curve(&params, 3).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], (0.0, 0.0));
        assert!((c[1].0 - 125.0).abs() < 1e-6);
        assert!((c[2].0 - 250.0 * (1.0 - 1e-9)).abs() < 1e-9);

        let c = profit_curve(&params.with_a_auto(1.2), 2).unwrap();
        assert_eq!(c[0], (0.0, 60.0));

        let c = profit_curve(&params, 100).unwrap();
        assert_eq!(c.len(), 100);
        assert!(c.windows(2).all(|w| w[1].0 > w[0].0));
        assert!(profit_curve(&params, 1).is_err());
    }

    #[test]
    fn negative_regime_is_solvable() {
        let mut params = EconomyParams::baseline(A_OLD);
        params.prefs = crate::model::HouseholdPrefs::from_wmin(2.0, 0.5, 500.0, Regime::Negative).unwrap();
        let pt = maximize_profit(&params, &SolverConfig::default()).unwrap();
        let (lo, hi) = search_interval(&params, 1e-9);
        assert!(pt.l_star == 0.0 || (pt.l_star >= lo && pt.l_star <= hi));
        let brute = brute_force_equilibrium(&params, 100_000).unwrap();
        assert!(pt.profit >= brute.profit - 1e-9 * brute.profit.abs());
    }
}
