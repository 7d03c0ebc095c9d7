//! Python bindings: `import autoeq`.

use automation_equilibrium::model::{self, EquilibriumPoint, HouseholdPrefs, TechnologyParams};
use automation_equilibrium::report::write_sweep_csv;
use automation_equilibrium::sweep::{self, SweepResult, SweepSpec};
use automation_equilibrium::{solver, EconomyParams, ModelError, Regime, SolverConfig};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(err: ModelError) -> PyErr {
    match err {
        ModelError::Calibration(_) | ModelError::Bracket { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn parse_regime(s: &str) -> PyResult<Regime> {
    s.parse().map_err(PyValueError::new_err)
}

/// Firm optimum at one automation productivity.
#[pyclass(frozen, skip_from_py_object, name = "Equilibrium")]
#[derive(Clone)]
struct PyEquilibrium {
    #[pyo3(get)]
    a_auto: f64,
    #[pyo3(get)]
    l_star: f64,
    #[pyo3(get)]
    wage: f64,
    #[pyo3(get)]
    f_star: f64,
    #[pyo3(get)]
    profit: f64,
    #[pyo3(get)]
    k_old: f64,
    #[pyo3(get)]
    k_auto: f64,
}

impl From<&EquilibriumPoint> for PyEquilibrium {
    fn from(p: &EquilibriumPoint) -> Self {
        PyEquilibrium {
            a_auto: p.a_auto,
            l_star: p.l_star,
            wage: p.wage,
            f_star: p.f_star,
            profit: p.profit,
            k_old: p.split.k_old,
            k_auto: p.split.k_auto,
        }
    }
}

#[pymethods]
impl PyEquilibrium {
    /// Fraction of capital in the automation technology.
    #[getter]
    fn auto_share(&self) -> f64 {
        let total = self.k_old + self.k_auto;
        if total > 0.0 {
            self.k_auto / total
        } else {
            0.0
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Equilibrium(a_auto={}, l_star={}, wage={}, f_star={}, profit={}, k_old={}, k_auto={})",
            self.a_auto, self.l_star, self.wage, self.f_star, self.profit, self.k_old, self.k_auto
        )
    }
}

#[pyclass(frozen, name = "Sweep")]
struct PySweep {
    inner: SweepResult,
}

#[pymethods]
impl PySweep {
    #[getter]
    fn points(&self) -> Vec<PyEquilibrium> {
        self.inner.points.iter().map(PyEquilibrium::from).collect()
    }
    #[getter]
    fn transition_onset(&self) -> Option<f64> {
        self.inner.transition_onset
    }
    #[getter]
    fn displacement_complete(&self) -> Option<f64> {
        self.inner.displacement_complete
    }
    #[getter]
    fn f_pre(&self) -> f64 {
        self.inner.f_pre
    }
    #[getter]
    fn f_min(&self) -> f64 {
        self.inner.f_min
    }
    #[getter]
    fn drop_fraction(&self) -> f64 {
        self.inner.drop_fraction
    }
    #[getter]
    fn recovery_a_auto(&self) -> Option<f64> {
        self.inner.recovery_a_auto
    }

    /// The sweep in the CLI's CSV layout.
    fn to_csv(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        write_sweep_csv(&self.inner, &mut buf).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(String::from_utf8(buf).expect("csv is ascii"))
    }

    fn __len__(&self) -> usize {
        self.inner.points.len()
    }

    fn __repr__(&self) -> String {
        let show = |x: Option<f64>| x.map_or_else(|| "None".to_string(), |v| v.to_string());
        format!(
            "Sweep(points={}, transition_onset={}, displacement_complete={}, drop_fraction={})",
            self.inner.points.len(),
            show(self.inner.transition_onset),
            show(self.inner.displacement_complete),
            self.inner.drop_fraction
        )
    }
}

/// Economy parameters. Leaving `a_old` unset calibrates it so the marginal
/// product of capital at `a_auto = 0` equals `target_mpk`.
#[pyclass(frozen, skip_from_py_object, name = "Economy")]
#[derive(Clone)]
struct PyEconomy {
    inner: EconomyParams,
}

#[pymethods]
impl PyEconomy {
    #[new]
    #[pyo3(signature = (
        *, alpha=0.5, gamma=0.5, w_min=2.0, l_max=500.0, k_bar=50.0, r_bar=0.0,
        a_old=None, a_auto=0.0, regime="positive", target_mpk=1.0
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        alpha: f64,
        gamma: f64,
        w_min: f64,
        l_max: f64,
        k_bar: f64,
        r_bar: f64,
        a_old: Option<f64>,
        a_auto: f64,
        regime: &str,
        target_mpk: f64,
    ) -> PyResult<Self> {
        let prefs = HouseholdPrefs::from_wmin(w_min, gamma, l_max, parse_regime(regime)?).map_err(to_py)?;
        let tech = TechnologyParams::new(alpha, a_old.unwrap_or(1.0), 0.0).map_err(to_py)?;
        let mut params = EconomyParams::new(tech, prefs, k_bar, r_bar).map_err(to_py)?;
        if a_old.is_none() {
            let solver = SolverConfig::default();
            let fitted = sweep::calibrate_a_old(target_mpk, &params, &solver, 1e-12).map_err(to_py)?;
            params = params.with_a_old(fitted);
        }
        params.tech.a_auto = a_auto;
        params.validate().map_err(to_py)?;
        Ok(PyEconomy { inner: params })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.tech.alpha
    }
    #[getter]
    fn a_old(&self) -> f64 {
        self.inner.tech.a_old
    }
    #[getter]
    fn a_auto(&self) -> f64 {
        self.inner.tech.a_auto
    }
    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.prefs.gamma
    }
    #[getter]
    fn c0(&self) -> f64 {
        self.inner.prefs.c0
    }
    #[getter]
    fn l_max(&self) -> f64 {
        self.inner.prefs.l_max
    }
    #[getter]
    fn w_min(&self) -> f64 {
        self.inner.prefs.w_min()
    }
    #[getter]
    fn k_bar(&self) -> f64 {
        self.inner.k_bar
    }
    #[getter]
    fn r_bar(&self) -> f64 {
        self.inner.r_bar
    }

    fn with_a_auto(&self, a_auto: f64) -> PyResult<Self> {
        let inner = self.inner.with_a_auto(a_auto);
        inner.validate().map_err(to_py)?;
        Ok(PyEconomy { inner })
    }

    fn total_production(&self, labor: f64) -> f64 {
        model::total_production(self.inner.k_bar, labor, &self.inner.tech)
    }

    fn labor_supply_wage(&self, labor: f64) -> PyResult<f64> {
        model::labor_supply_wage(labor, &self.inner.prefs).map_err(to_py)
    }

    fn household_labor_response(&self, wage: f64) -> PyResult<f64> {
        model::household_labor_response(wage, &self.inner.prefs).map_err(to_py)
    }

    fn profit(&self, labor: f64) -> PyResult<f64> {
        model::profit(labor, &self.inner).map_err(to_py)
    }

    fn profit_gradient(&self, labor: f64) -> PyResult<f64> {
        model::profit_gradient(labor, &self.inner).map_err(to_py)
    }

    /// Sampled `(L, profit)` pairs over the labor domain.
    #[pyo3(signature = (n_points=400))]
    fn profit_curve(&self, n_points: usize) -> PyResult<Vec<(f64, f64)>> {
        solver::profit_curve(&self.inner, n_points).map_err(to_py)
    }

    #[pyo3(signature = (a_auto=None))]
    fn equilibrium(&self, py: Python<'_>, a_auto: Option<f64>) -> PyResult<PyEquilibrium> {
        let params = a_auto.map_or(self.inner, |a| self.inner.with_a_auto(a));
        let point = py
            .detach(|| solver::maximize_profit(&params, &SolverConfig::default()))
            .map_err(to_py)?;
        Ok(PyEquilibrium::from(&point))
    }

    #[pyo3(signature = (grid_points=1_000_000))]
    fn brute_force(&self, py: Python<'_>, grid_points: usize) -> PyResult<PyEquilibrium> {
        let point = py
            .detach(|| solver::brute_force_equilibrium(&self.inner, grid_points))
            .map_err(to_py)?;
        Ok(PyEquilibrium::from(&point))
    }

    #[pyo3(signature = (a_min=0.0, a_max=2.0, steps=201, parallel=true))]
    fn sweep(&self, py: Python<'_>, a_min: f64, a_max: f64, steps: usize, parallel: bool) -> PyResult<PySweep> {
        let spec = SweepSpec {
            parallel,
            ..SweepSpec::new(self.inner, a_min, a_max, steps)
        };
        let inner = py.detach(|| sweep::run_sweep(&spec)).map_err(to_py)?;
        Ok(PySweep { inner })
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "Economy(alpha={}, a_old={}, a_auto={}, gamma={}, w_min={}, l_max={}, k_bar={}, r_bar={})",
            p.tech.alpha,
            p.tech.a_old,
            p.tech.a_auto,
            p.prefs.gamma,
            p.prefs.w_min(),
            p.prefs.l_max,
            p.k_bar,
            p.r_bar
        )
    }
}

/// Calibrated default economy at the given marginal product of capital.
#[pyfunction]
#[pyo3(signature = (target_mpk=1.0))]
fn calibrate(target_mpk: f64) -> PyResult<PyEconomy> {
    let inner = sweep::calibrated_baseline(target_mpk).map_err(to_py)?;
    Ok(PyEconomy { inner })
}

/// `(k_old, k_auto)` maximizing output for the given inputs.
#[pyfunction]
fn optimal_capital_split(capital: f64, labor: f64, alpha: f64, a_old: f64, a_auto: f64) -> PyResult<(f64, f64)> {
    let tech = TechnologyParams::new(alpha, a_old, a_auto).map_err(to_py)?;
    let split = model::optimal_capital_split(capital, labor, &tech);
    Ok((split.k_old, split.k_auto))
}

#[pyfunction]
fn total_production(capital: f64, labor: f64, alpha: f64, a_old: f64, a_auto: f64) -> PyResult<f64> {
    let tech = TechnologyParams::new(alpha, a_old, a_auto).map_err(to_py)?;
    Ok(model::total_production(capital, labor, &tech))
}

#[pyfunction]
#[pyo3(signature = (w_min, gamma, l_max, regime="positive"))]
fn c0_from_wmin(w_min: f64, gamma: f64, l_max: f64, regime: &str) -> PyResult<f64> {
    model::c0_from_wmin(w_min, gamma, l_max, parse_regime(regime)?).map_err(to_py)
}

#[pymodule]
fn autoeq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEconomy>()?;
    m.add_class::<PyEquilibrium>()?;
    m.add_class::<PySweep>()?;
    m.add_function(wrap_pyfunction!(calibrate, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_capital_split, m)?)?;
    m.add_function(wrap_pyfunction!(total_production, m)?)?;
    m.add_function(wrap_pyfunction!(c0_from_wmin, m)?)?;
    Ok(())
}
