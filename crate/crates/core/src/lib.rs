//! General-equilibrium solver for a single firm that is both the monopolist
//! in the product market and the monopsonist in the labor market, with access
//! to a labor-free automation technology.
//!
//! [`model`] holds the closed-form primitives, [`solver`] maximizes profit over
//! labor, [`sweep`] runs comparative statics in the automation productivity,
//! and [`config`], [`report`], [`chart`] and [`cli`] cover I/O.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod chart;
pub mod cli;
pub mod config;
pub mod error;
pub mod model;
pub mod report;
pub mod solver;
pub mod sweep;

pub use error::{ModelError, Result};
pub use model::{
    c0_from_wmin, household_labor_response, labor_supply_wage, marginal_product_capital_old,
    optimal_capital_split, profit, profit_gradient, total_production, utility, wmin_from_c0, CapitalSplit,
    EconomyParams, EquilibriumPoint, HouseholdPrefs, Regime, TechnologyParams,
};
pub use solver::{brute_force_equilibrium, maximize_profit, profit_curve, SolverConfig};
pub use sweep::{calibrate_a_old, calibrated_baseline, refine_transition, run_sweep, SweepResult, SweepSpec, Threshold};
