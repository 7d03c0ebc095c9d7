//! Dependency-free SVG line charts.
//!
//! Output is a pure function of the input data: coordinates are printed with
//! fixed precision and nothing time- or environment-dependent is embedded.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::model::{labor_supply_wage, EconomyParams, HouseholdPrefs, Regime};
use crate::solver::{maximize_profit, profit_curve_between, SolverConfig};
use crate::sweep::SweepResult;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const PAD_LEFT: f64 = 70.0;
const PAD_RIGHT: f64 = 20.0;
const PAD_TOP: f64 = 40.0;
const PAD_BOTTOM: f64 = 55.0;
const MARGIN: f64 = 0.05;
const TICKS: usize = 5;

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Highlighted points drawn as dots.
    pub markers: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// Axis range padded by 5% of the data span on each side.
fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    if span > 0.0 {
        (lo - MARGIN * span, hi + MARGIN * span)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { MARGIN * lo.abs() };
        (lo - pad, hi + pad)
    }
}

fn tick_label(v: f64) -> String {
    let s = if v.abs() >= 1000.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    };
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

impl LineChart {
    pub fn x_range(&self) -> (f64, f64) {
        padded_range(self.all_points().map(|p| p.0))
    }

    pub fn y_range(&self) -> (f64, f64) {
        padded_range(self.all_points().map(|p| p.1))
    }

    fn all_points(&self) -> impl Iterator<Item = &(f64, f64)> {
        self.series.iter().flat_map(|s| s.points.iter().chain(s.markers.iter()))
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1) = self.x_range();
        let (y0, y1) = self.y_range();
        let plot_w = WIDTH - PAD_LEFT - PAD_RIGHT;
        let plot_h = HEIGHT - PAD_TOP - PAD_BOTTOM;
        let sx = |x: f64| PAD_LEFT + (x - x0) / (x1 - x0) * plot_w;
        let sy = |y: f64| PAD_TOP + (y1 - y) / (y1 - y0) * plot_h;

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            svg,
            r##"<rect x="{PAD_LEFT}" y="{PAD_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333"/>"##
        );

        for i in 0..=TICKS {
            let t = i as f64 / TICKS as f64;
            let xv = x0 + t * (x1 - x0);
            let yv = y0 + t * (y1 - y0);
            let (px, py) = (sx(xv), sy(yv));
            let bottom = PAD_TOP + plot_h;
            let _ = writeln!(
                svg,
                r##"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="#333"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
                bottom + 5.0,
                bottom + 19.0,
                tick_label(xv)
            );
            let _ = writeln!(
                svg,
                r##"<line x1="{:.2}" y1="{py:.2}" x2="{PAD_LEFT:.2}" y2="{py:.2}" stroke="#333"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
                PAD_LEFT - 5.0,
                PAD_LEFT - 8.0,
                py + 4.0,
                tick_label(yv)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            PAD_LEFT + plot_w / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
            PAD_TOP + plot_h / 2.0,
            PAD_TOP + plot_h / 2.0,
            escape(&self.y_label)
        );

        let clip_lo = PAD_TOP;
        let clip_hi = PAD_TOP + plot_h;
        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let path: Vec<String> = series
                .points
                .iter()
                .filter(|p| p.0.is_finite() && p.1.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y).clamp(clip_lo, clip_hi)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                path.join(" ")
            );
            for &(x, y) in &series.markers {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="4.5" fill="{color}"/>"#,
                    sx(x),
                    sy(y)
                );
            }
            let ly = PAD_TOP + 16.0 + 16.0 * i as f64;
            let lx = WIDTH - PAD_RIGHT - 150.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{ly:.2}">{}</text>"#,
                ly - 4.0,
                lx + 18.0,
                ly - 4.0,
                lx + 24.0,
                escape(&series.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Households' supply curve `w(L)`, stopping 2% short of the singularity.
pub fn labor_supply_chart(prefs: &HouseholdPrefs, n_points: usize) -> LineChart {
    let (lo, hi) = match prefs.regime() {
        Regime::Positive => (0.0, 0.98 * prefs.singular_labor()),
        Regime::Negative => (
            prefs.singular_labor() + 0.02 * (prefs.l_max - prefs.singular_labor()),
            prefs.l_max * (1.0 - 1e-9),
        ),
    };
    let n = n_points.max(2);
    let points = (0..n)
        .filter_map(|i| {
            let l = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            labor_supply_wage(l, prefs).ok().map(|w| (l, w))
        })
        .collect();
    LineChart {
        title: "Labor supply".into(),
        x_label: "labor L".into(),
        y_label: "wage w(L)".into(),
        series: vec![Series {
            label: format!("w_min = {}", tick_label(prefs.w_min())),
            points,
            markers: vec![],
        }],
    }
}

/// A sampled profit landscape together with the solver's optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfitCurve {
    pub a_auto: f64,
    pub points: Vec<(f64, f64)>,
    pub argmax: (f64, f64),
}

impl ProfitCurve {
    /// Samples `Π(L)` on `[0, l_hi]` at the given automation productivity.
    pub fn compute(
        params: &EconomyParams,
        a_auto: f64,
        solver: &SolverConfig,
        l_hi: f64,
        n_points: usize,
    ) -> Result<Self> {
        let params = params.with_a_auto(a_auto);
        let eq = maximize_profit(&params, solver)?;
        Ok(ProfitCurve {
            a_auto,
            points: profit_curve_between(&params, 0.0, l_hi, n_points)?,
            argmax: (eq.l_star, eq.profit),
        })
    }
}

/// Default labor window for profit landscapes: a quarter of the supply domain.
pub fn profit_view_limit(prefs: &HouseholdPrefs) -> f64 {
    0.25 * prefs.singular_labor()
}

pub fn profit_curves_chart(curves: &[ProfitCurve]) -> LineChart {
    LineChart {
        title: "Firm profit".into(),
        x_label: "labor L".into(),
        y_label: "profit Π(L)".into(),
        series: curves
            .iter()
            .map(|c| Series {
                label: format!("A_auto = {}", tick_label(c.a_auto)),
                points: c.points.clone(),
                markers: vec![c.argmax],
            })
            .collect(),
    }
}

fn sweep_series(result: &SweepResult, label: &str, f: impl Fn(&crate::model::EquilibriumPoint) -> f64) -> Series {
    Series {
        label: label.into(),
        points: result.points.iter().map(|p| (p.a_auto, f(p))).collect(),
        markers: vec![],
    }
}

/// The four equilibrium panels with their file names.
pub fn sweep_charts(result: &SweepResult) -> Vec<(&'static str, LineChart)> {
    let chart = |title: &str, y: &str, series: Vec<Series>| LineChart {
        title: title.into(),
        x_label: "automation productivity A_auto".into(),
        y_label: y.into(),
        series,
    };
    vec![
        (
            "sweep_production.svg",
            chart("Production", "f*", vec![sweep_series(result, "f*", |p| p.f_star)]),
        ),
        (
            "sweep_capital.svg",
            chart(
                "Capital allocation",
                "percent of capital",
                vec![
                    sweep_series(result, "old technology", |p| 100.0 * (1.0 - p.split.auto_share())),
                    sweep_series(result, "automation", |p| 100.0 * p.split.auto_share()),
                ],
            ),
        ),
        (
            "sweep_profit.svg",
            chart("Profit", "Π*", vec![sweep_series(result, "Π*", |p| p.profit)]),
        ),
        (
            "sweep_labor.svg",
            chart("Labor employment", "L*", vec![sweep_series(result, "L*", |p| p.l_star)]),
        ),
    ]
}

pub const LABOR_SUPPLY_FILE: &str = "labor_supply.svg";
pub const PROFIT_CURVES_FILE: &str = "profit_curves.svg";

fn write_chart(dir: &Path, name: &str, chart: &LineChart, written: &mut Vec<PathBuf>) -> io::Result<()> {
    let path = dir.join(name);
    fs::write(&path, chart.to_svg())?;
    written.push(path);
    Ok(())
}

/// Writes the labor-supply chart, the profit landscapes and, when a sweep is
/// given, the four sweep panels into `dir`. Returns the written paths.
pub fn emit_charts(
    result: Option<&SweepResult>,
    curves: &[ProfitCurve],
    prefs: &HouseholdPrefs,
    dir: &Path,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    write_chart(dir, LABOR_SUPPLY_FILE, &labor_supply_chart(prefs, 200), &mut written)?;
    if !curves.is_empty() {
        write_chart(dir, PROFIT_CURVES_FILE, &profit_curves_chart(curves), &mut written)?;
    }
    if let Some(result) = result {
        for (name, chart) in sweep_charts(result) {
            write_chart(dir, name, &chart, &mut written)?;
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padded_range_adds_five_percent() {
        assert_eq!(padded_range([0.0, 10.0].into_iter()), (-0.5, 10.5));
        assert_eq!(padded_range([3.0].into_iter()), (2.85, 3.15));
        assert_eq!(padded_range(std::iter::empty()), (0.0, 1.0));
    }

    #[test]
    fn labor_supply_chart_starts_at_reservation_wage() {
        let prefs = HouseholdPrefs::from_wmin(2.0, 0.5, 500.0, Regime::Positive).unwrap();
        let chart = labor_supply_chart(&prefs, 200);
        let pts = &chart.series[0].points;
        assert_eq!(pts[0], (0.0, 2.0));
        let last = pts.last().unwrap();
        assert!((last.0 - 245.0).abs() < 1e-9);
        assert!(last.1 >= 100.0 - 1e-9);
        assert!(pts.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let chart = LineChart {
            title: "a < b & c".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                label: "s".into(),
                points: vec![(0.0, 0.0), (1.0, 1.0)],
                markers: vec![(1.0, 1.0)],
            }],
        };
        let svg = chart.to_svg();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("a &lt; b &amp; c"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg, chart.to_svg());
    }
}
