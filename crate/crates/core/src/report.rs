//! CSV and JSON persistence of equilibria and sweeps.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::model::EquilibriumPoint;
use crate::sweep::SweepResult;

pub const CSV_HEADER: &str = "a_auto,l_star,wage,f_star,profit,k_old,k_auto,pct_capital_auto";

/// One output row; field names double as CSV headers and JSON keys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub a_auto: f64,
    pub l_star: f64,
    pub wage: f64,
    pub f_star: f64,
    pub profit: f64,
    pub k_old: f64,
    pub k_auto: f64,
    pub pct_capital_auto: f64,
}

impl From<&EquilibriumPoint> for PointRecord {
    fn from(p: &EquilibriumPoint) -> Self {
        PointRecord {
            a_auto: p.a_auto,
            l_star: p.l_star,
            wage: p.wage,
            f_star: p.f_star,
            profit: p.profit,
            k_old: p.split.k_old,
            k_auto: p.split.k_auto,
            pct_capital_auto: 100.0 * p.split.auto_share(),
        }
    }
}

impl PointRecord {
    fn fields(&self) -> [f64; 8] {
        [
            self.a_auto,
            self.l_star,
            self.wage,
            self.f_star,
            self.profit,
            self.k_old,
            self.k_auto,
            self.pct_capital_auto,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepStats {
    pub transition_onset: Option<f64>,
    pub displacement_complete: Option<f64>,
    pub f_pre: f64,
    pub f_min: f64,
    pub drop_fraction: f64,
    pub recovery_a_auto: Option<f64>,
}

impl From<&SweepResult> for SweepStats {
    fn from(r: &SweepResult) -> Self {
        SweepStats {
            transition_onset: r.transition_onset,
            displacement_complete: r.displacement_complete,
            f_pre: r.f_pre,
            f_min: r.f_min,
            drop_fraction: r.drop_fraction,
            recovery_a_auto: r.recovery_a_auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub points: Vec<PointRecord>,
    pub stats: SweepStats,
}

impl From<&SweepResult> for SweepDocument {
    fn from(r: &SweepResult) -> Self {
        SweepDocument {
            points: r.points.iter().map(PointRecord::from).collect(),
            stats: SweepStats::from(r),
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_optional(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), format_number)
}

fn write_row<W: Write + ?Sized>(sink: &mut W, record: &PointRecord) -> io::Result<()> {
    let row: Vec<String> = record.fields().iter().map(|&v| format_number(v)).collect();
    writeln!(sink, "{}", row.join(","))
}

pub fn write_point_csv<W: Write + ?Sized>(point: &EquilibriumPoint, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    write_row(sink, &PointRecord::from(point))
}

/// Writes the sweep table followed by a `#` comment block of summary statistics.
pub fn write_sweep_csv<W: Write + ?Sized>(result: &SweepResult, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    for p in &result.points {
        write_row(sink, &PointRecord::from(p))?;
    }
    writeln!(sink, "# transition_onset = {}", format_optional(result.transition_onset))?;
    writeln!(sink, "# displacement_complete = {}", format_optional(result.displacement_complete))?;
    writeln!(sink, "# drop_fraction = {}", format_number(result.drop_fraction))?;
    writeln!(sink, "# recovery_a_auto = {}", format_optional(result.recovery_a_auto))?;
    Ok(())
}

pub fn write_point_json<W: Write + ?Sized>(point: &EquilibriumPoint, sink: &mut W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, &PointRecord::from(point))?;
    writeln!(sink)
}

pub fn write_sweep_json<W: Write + ?Sized>(result: &SweepResult, sink: &mut W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *sink, &SweepDocument::from(result))?;
    writeln!(sink)
}

/// Data rows and `key = value` comment entries recovered from a sweep CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub rows: Vec<PointRecord>,
    pub comments: Vec<(String, String)>,
}

pub fn parse_sweep_csv(text: &str) -> Result<ParsedCsv, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    let mut rows = Vec::new();
    let mut comments = Vec::new();
    for (i, line) in lines.enumerate() {
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((k, v)) = comment.split_once('=') {
                comments.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        let values: Vec<f64> = line
            .split(',')
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("row {}: {e}", i + 1))?;
        let [a_auto, l_star, wage, f_star, profit, k_old, k_auto, pct_capital_auto] = values[..] else {
            return Err(format!("row {}: expected 8 fields, got {}", i + 1, values.len()));
        };
        rows.push(PointRecord {
            a_auto,
            l_star,
            wage,
            f_star,
            profit,
            k_old,
            k_auto,
            pct_capital_auto,
        });
    }
    Ok(ParsedCsv { rows, comments })
}
