//! Closed-form economic primitives.
//!
//! The firm owns two technologies: an old Cobb-Douglas technology
//! `A_old K^α L^(1-α)` and an automation technology `A_auto K` that needs no
//! labor. Households trade leisure for consumption with utility
//! `(c + c0)^γ ℓ^(1-γ)`, which yields the upward-sloping labor supply curve the
//! monopsonist firm faces. Prices are in units of output.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};

/// Productivity parameters of the two production technologies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TechnologyParams {
    /// Capital exponent of the old technology, in (0, 1).
    pub alpha: f64,
    /// Total factor productivity of the old technology.
    pub a_old: f64,
    /// Output per unit of capital running the automation technology.
    pub a_auto: f64,
}

impl TechnologyParams {
    pub fn new(alpha: f64, a_old: f64, a_auto: f64) -> Result<Self> {
        let tech = TechnologyParams {
            alpha,
            a_old,
            a_auto,
        };
        tech.validate()?;
        Ok(tech)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ModelError::invalid("alpha", format!("{} not in (0, 1)", self.alpha)));
        }
        if !(self.a_old > 0.0 && self.a_old.is_finite()) {
            return Err(ModelError::invalid("a_old", format!("{} must be positive", self.a_old)));
        }
        if !(self.a_auto >= 0.0 && self.a_auto.is_finite()) {
            return Err(ModelError::invalid(
                "a_auto",
                format!("{} must be non-negative", self.a_auto),
            ));
        }
        Ok(())
    }
}

/// Sign of the consumption shift `c0`, which selects the labor supply branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `c0 > 0`: an outside source of consumption; upward-sloping supply on `[0, γ L_max)`.
    Positive,
    /// `c0 < 0`: a subsistence requirement; supply lives on `(γ L_max, L_max)`.
    Negative,
}

impl std::str::FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "positive" => Ok(Regime::Positive),
            "negative" => Ok(Regime::Negative),
            other => Err(format!("expected `positive` or `negative`, got `{other}`")),
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Positive => "positive",
            Regime::Negative => "negative",
        })
    }
}

/// Converts a reservation wage into the consumption shift `c0` of the given regime.
pub fn c0_from_wmin(w_min: f64, gamma: f64, l_max: f64, regime: Regime) -> Result<f64> {
    if !(w_min > 0.0 && w_min.is_finite()) {
        return Err(ModelError::domain("w_min", w_min, "reservation wage must be positive"));
    }
    Ok(match regime {
        Regime::Positive => gamma * l_max * w_min / (1.0 - gamma),
        Regime::Negative => -w_min * l_max,
    })
}

/// Reservation wage implied by `c0`: below it households supply no labor.
pub fn wmin_from_c0(c0: f64, gamma: f64, l_max: f64) -> f64 {
    if c0 > 0.0 {
        (1.0 - gamma) / gamma * c0 / l_max
    } else {
        -c0 / l_max
    }
}

/// Household preferences. `w_min` is derived from `c0`, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HouseholdPrefs {
    /// Weight on consumption in utility, in (0, 1).
    pub gamma: f64,
    /// Consumption shift; its sign picks the regime.
    pub c0: f64,
    /// Time endowment: labor plus leisure.
    pub l_max: f64,
}

impl HouseholdPrefs {
    pub fn new(gamma: f64, c0: f64, l_max: f64) -> Result<Self> {
        let prefs = HouseholdPrefs { gamma, c0, l_max };
        prefs.validate()?;
        Ok(prefs)
    }

    pub fn from_wmin(w_min: f64, gamma: f64, l_max: f64, regime: Regime) -> Result<Self> {
        let c0 = c0_from_wmin(w_min, gamma, l_max, regime)?;
        Self::new(gamma, c0, l_max)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(ModelError::invalid("gamma", format!("{} not in (0, 1)", self.gamma)));
        }
        if !(self.l_max > 0.0 && self.l_max.is_finite()) {
            return Err(ModelError::invalid("l_max", format!("{} must be positive", self.l_max)));
        }
        if self.c0 == 0.0 || !self.c0.is_finite() {
            return Err(ModelError::invalid(
                "c0",
                "must be finite and nonzero (c0 = 0 is perfectly inelastic supply)",
            ));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        if self.c0 > 0.0 {
            Regime::Positive
        } else {
            Regime::Negative
        }
    }

    pub fn w_min(&self) -> f64 {
        wmin_from_c0(self.c0, self.gamma, self.l_max)
    }

    /// Labor level `γ L_max` at which the supply curve is singular.
    pub fn singular_labor(&self) -> f64 {
        self.gamma * self.l_max
    }

    /// Open interval of positive labor that the supply curve can price.
    pub fn labor_domain(&self) -> (f64, f64) {
        match self.regime() {
            Regime::Positive => (0.0, self.singular_labor()),
            Regime::Negative => (self.singular_labor(), self.l_max),
        }
    }
}

/// Wage at which households supply `labor` units: `(1-γ) c0 / (γ L_max - L)`.
pub fn labor_supply_wage(labor: f64, prefs: &HouseholdPrefs) -> Result<f64> {
    let singular = prefs.singular_labor();
    let in_domain = match prefs.regime() {
        Regime::Positive => labor >= 0.0 && labor < singular,
        Regime::Negative => labor > singular && labor < prefs.l_max,
    };
    if !in_domain {
        let (lo, hi) = prefs.labor_domain();
        return Err(ModelError::domain(
            "labor",
            labor,
            format!(
                "{} regime supply is defined on ({lo}, {hi}); it is singular at L = γ·L_max = {singular}",
                prefs.regime()
            ),
        ));
    }
    Ok((1.0 - prefs.gamma) * prefs.c0 / (singular - labor))
}

/// Households' utility-maximizing labor supply at wage `wage`.
///
/// Both regimes share the interior solution `γ L_max - (1-γ) c0 / w`. Below the
/// reservation wage households supply nothing.
pub fn household_labor_response(wage: f64, prefs: &HouseholdPrefs) -> Result<f64> {
    if !(wage > 0.0 && wage.is_finite()) {
        return Err(ModelError::domain("wage", wage, "wage must be positive"));
    }
    let interior = prefs.singular_labor() - (1.0 - prefs.gamma) * prefs.c0 / wage;
    Ok(match prefs.regime() {
        Regime::Positive => interior.max(0.0),
        Regime::Negative if wage > prefs.w_min() => interior,
        Regime::Negative => 0.0,
    })
}

/// Household utility `(c + c0)^γ ℓ^(1-γ)`.
pub fn utility(consumption: f64, leisure: f64, prefs: &HouseholdPrefs) -> Result<f64> {
    let shifted = consumption + prefs.c0;
    if !(shifted > 0.0) {
        return Err(ModelError::domain(
            "consumption",
            consumption,
            format!("subsistence violated: c + c0 = {shifted} must be positive"),
        ));
    }
    if !(leisure > 0.0) {
        return Err(ModelError::domain("leisure", leisure, "leisure must be positive"));
    }
    Ok(shifted.powf(prefs.gamma) * leisure.powf(1.0 - prefs.gamma))
}

/// Exogenous description of the whole economy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyParams {
    pub tech: TechnologyParams,
    pub prefs: HouseholdPrefs,
    /// Total capital stock, fully employed.
    pub k_bar: f64,
    /// Rental rate of capital.
    pub r_bar: f64,
}

impl EconomyParams {
    pub fn new(tech: TechnologyParams, prefs: HouseholdPrefs, k_bar: f64, r_bar: f64) -> Result<Self> {
        let params = EconomyParams {
            tech,
            prefs,
            k_bar,
            r_bar,
        };
        params.validate()?;
        Ok(params)
    }

    /// Baseline economy: α = γ = 0.5, w_min = 2, K̄ = 50, L_max = 500, r̄ = 0,
    /// with the supplied old-technology productivity and no automation.
    pub fn baseline(a_old: f64) -> Self {
        EconomyParams {
            tech: TechnologyParams {
                alpha: 0.5,
                a_old,
                a_auto: 0.0,
            },
            prefs: HouseholdPrefs {
                gamma: 0.5,
                c0: 1000.0,
                l_max: 500.0,
            },
            k_bar: 50.0,
            r_bar: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.tech.validate()?;
        self.prefs.validate()?;
        if !(self.k_bar > 0.0 && self.k_bar.is_finite()) {
            return Err(ModelError::invalid("k_bar", format!("{} must be positive", self.k_bar)));
        }
        if !(self.r_bar >= 0.0 && self.r_bar.is_finite()) {
            return Err(ModelError::invalid(
                "r_bar",
                format!("{} must be non-negative", self.r_bar),
            ));
        }
        Ok(())
    }

    pub fn with_a_auto(mut self, a_auto: f64) -> Self {
        self.tech.a_auto = a_auto;
        self
    }

    pub fn with_a_old(mut self, a_old: f64) -> Self {
        self.tech.a_old = a_old;
        self
    }

    pub fn rental_cost(&self) -> f64 {
        self.r_bar * self.k_bar
    }
}

/// Allocation of the capital stock between the two technologies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapitalSplit {
    pub k_old: f64,
    pub k_auto: f64,
}

impl CapitalSplit {
    pub fn total(&self) -> f64 {
        self.k_old + self.k_auto
    }

    /// Fraction of capital running the automation technology.
    pub fn auto_share(&self) -> f64 {
        let total = self.total();
        if total > 0.0 {
            self.k_auto / total
        } else {
            0.0
        }
    }
}

/// The firm's profit-maximizing choice at one automation productivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumPoint {
    pub a_auto: f64,
    pub l_star: f64,
    /// Zero when no labor is hired.
    pub wage: f64,
    pub f_star: f64,
    pub profit: f64,
    pub split: CapitalSplit,
}

/// Output of the old technology alone.
pub fn old_production(k_old: f64, labor: f64, tech: &TechnologyParams) -> f64 {
    if k_old <= 0.0 || labor <= 0.0 {
        return 0.0;
    }
    tech.a_old * k_old.powf(tech.alpha) * labor.powf(1.0 - tech.alpha)
}

/// Output-maximizing split of `capital` given `labor`.
///
/// Interior optimum equates the old technology's marginal product of capital
/// with `A_auto`, giving `K_old = L (α A_old / A_auto)^(1/(1-α))`, clamped to
/// the available stock.
pub fn optimal_capital_split(capital: f64, labor: f64, tech: &TechnologyParams) -> CapitalSplit {
    debug_assert!(capital >= 0.0 && labor >= 0.0);
    let k_old = if tech.a_auto == 0.0 {
        capital
    } else if labor == 0.0 {
        0.0
    } else {
        let ratio = (tech.alpha * tech.a_old / tech.a_auto).powf(1.0 / (1.0 - tech.alpha));
        (labor * ratio).min(capital)
    };
    CapitalSplit {
        k_old,
        k_auto: capital - k_old,
    }
}

/// Total output with capital optimally split between the technologies.
pub fn total_production(capital: f64, labor: f64, tech: &TechnologyParams) -> f64 {
    let split = optimal_capital_split(capital, labor, tech);
    production_with_split(&split, labor, tech)
}

pub(crate) fn production_with_split(split: &CapitalSplit, labor: f64, tech: &TechnologyParams) -> f64 {
    old_production(split.k_old, labor, tech) + tech.a_auto * split.k_auto
}

/// `∂f_old/∂K = α A_old (L/K)^(1-α)`.
pub fn marginal_product_capital_old(capital: f64, labor: f64, tech: &TechnologyParams) -> Result<f64> {
    if !(capital > 0.0) {
        return Err(ModelError::domain("capital", capital, "marginal product needs K > 0"));
    }
    if !(labor > 0.0) {
        return Err(ModelError::domain("labor", labor, "marginal product needs L > 0"));
    }
    Ok(tech.alpha * tech.a_old * (labor / capital).powf(1.0 - tech.alpha))
}

/// Total wage bill `w(L) L`; zero when no labor is hired.
pub fn wage_bill(labor: f64, prefs: &HouseholdPrefs) -> Result<f64> {
    if labor == 0.0 {
        return Ok(0.0);
    }
    Ok(labor_supply_wage(labor, prefs)? * labor)
}

/// Reduced profit `Π(L) = f(K̄, L) - w(L) L - r̄ K̄` with the full stock employed.
pub fn profit(labor: f64, params: &EconomyParams) -> Result<f64> {
    let bill = wage_bill(labor, &params.prefs)?;
    Ok(total_production(params.k_bar, labor, &params.tech) - bill - params.rental_cost())
}

/// Analytic `dΠ/dL` for positive labor inside the supply domain.
///
/// The split is optimal in `K_old`, so only the direct labor derivative of the
/// old technology survives: `(1-α) A_old (K_old/L)^α`. At the clamp kink the
/// clamped branch is used.
pub fn profit_gradient(labor: f64, params: &EconomyParams) -> Result<f64> {
    if !(labor > 0.0) {
        return Err(ModelError::domain("labor", labor, "gradient needs L > 0"));
    }
    labor_supply_wage(labor, &params.prefs)?;
    let tech = &params.tech;
    let split = optimal_capital_split(params.k_bar, labor, tech);
    let marginal_output = (1.0 - tech.alpha) * tech.a_old * (split.k_old / labor).powf(tech.alpha);
    let prefs = &params.prefs;
    let gap = prefs.singular_labor() - labor;
    let marginal_cost = (1.0 - prefs.gamma) * prefs.c0 * prefs.singular_labor() / (gap * gap);
    Ok(marginal_output - marginal_cost)
}

/// Builds the equilibrium record for a chosen labor level.
pub fn equilibrium_at(labor: f64, params: &EconomyParams) -> Result<EquilibriumPoint> {
    let tech = &params.tech;
    let split = optimal_capital_split(params.k_bar, labor, tech);
    let f_star = production_with_split(&split, labor, tech);
    let wage = if labor == 0.0 {
        0.0
    } else {
        labor_supply_wage(labor, &params.prefs)?
    };
    Ok(EquilibriumPoint {
        a_auto: tech.a_auto,
        l_star: labor,
        wage,
        f_star,
        profit: f_star - wage * labor - params.rental_cost(),
        split,
    })
}
