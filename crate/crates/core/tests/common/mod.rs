//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls the closed forms it is meant to check: the capital split
//! is found by scanning the split objective, household labor by scanning
//! utility, and derivatives by central differences.

#![allow(dead_code)]

use automation_equilibrium::model::{old_production, EconomyParams, HouseholdPrefs, TechnologyParams};
use automation_equilibrium::{Regime, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Best value of `f_old(K_old, L) + A_auto (K - K_old)` over a uniform `K_old` grid.
pub fn split_objective_grid_max(capital: f64, labor: f64, tech: &TechnologyParams, n: usize) -> (f64, f64) {
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..=n {
        let k_old = capital * i as f64 / n as f64;
        let v = old_production(k_old, labor, tech) + tech.a_auto * (capital - k_old);
        if v > best.1 {
            best = (k_old, v);
        }
    }
    best
}

/// Labor supplied at `wage` found by maximizing `(c + c0)^γ ℓ^(1-γ)` over a
/// uniform leisure grid on `(0, L_max]`. Returns `(labor, grid spacing)`.
pub fn household_grid_argmax(wage: f64, prefs: &HouseholdPrefs, n: usize) -> (f64, f64) {
    let step = prefs.l_max / n as f64;
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 1..=n {
        let leisure = step * i as f64;
        let labor = prefs.l_max - leisure;
        let shifted = wage * labor + prefs.c0;
        if shifted <= 0.0 {
            continue;
        }
        let u = shifted.powf(prefs.gamma) * leisure.powf(1.0 - prefs.gamma);
        if u > best.1 {
            best = (labor, u);
        }
    }
    (best.0, step)
}

pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Random economy in the ranges used by the oracle-equivalence checks:
/// α ∈ [0.2, 0.8], w_min ∈ [0.5, 5]; `A_auto` is left at zero.
pub fn random_economy(rng: &mut ChaCha8Rng) -> EconomyParams {
    let alpha = rng.gen_range(0.2..0.8);
    let gamma = rng.gen_range(0.3..0.7);
    let w_min = rng.gen_range(0.5..5.0);
    let l_max = rng.gen_range(200.0..800.0);
    let k_bar = rng.gen_range(20.0..100.0);
    let a_old = rng.gen_range(1.0..5.0);
    EconomyParams::new(
        TechnologyParams::new(alpha, a_old, 0.0).unwrap(),
        HouseholdPrefs::from_wmin(w_min, gamma, l_max, Regime::Positive).unwrap(),
        k_bar,
        0.0,
    )
    .unwrap()
}

pub fn solver() -> SolverConfig {
    SolverConfig::default()
}
