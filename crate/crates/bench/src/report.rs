//! CSV reports and reconstructed-curve files.
//!
//! `rows.csv` and `aggregates.csv` depend only on the configuration and the
//! seed. Wall-clock figures go to `timings.csv`.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use curvebench_core::{GroundTruth, PolyCurve};

use crate::suite::{Outcome, SuiteReport, SuiteRow};

pub const ROWS_FILE: &str = "rows.csv";
pub const AGGREGATES_FILE: &str = "aggregates.csv";
pub const TIMINGS_FILE: &str = "timings.csv";
pub const CURVES_DIR: &str = "curves";

pub const ROW_HEADER: [&str; 12] = [
    "case",
    "algorithm",
    "level",
    "status",
    "points",
    "edges",
    "hausdorff",
    "rms",
    "manifold",
    "open_endpoints",
    "exact",
    "error",
];

pub const AGGREGATE_HEADER: [&str; 7] = [
    "algorithm",
    "level",
    "cases",
    "succeeded",
    "mean_rms",
    "mean_hausdorff",
    "exact_percent",
];

pub const TIMING_HEADER: [&str; 4] = ["algorithm", "level", "succeeded", "mean_runtime_ms"];

/// Paths written by [`write_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportFiles {
    pub rows: PathBuf,
    pub aggregates: PathBuf,
    pub timings: PathBuf,
    pub curves: Vec<PathBuf>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

fn row_record(r: &SuiteRow) -> [String; 12] {
    let (case, algorithm, level) = (r.case.clone(), r.algorithm.to_string(), r.level.to_string());
    match &r.outcome {
        Outcome::Reconstructed { curve, metrics } => [
            case,
            algorithm,
            level,
            "OK".into(),
            r.points.to_string(),
            curve.edges().len().to_string(),
            opt(metrics.hausdorff),
            opt(metrics.rms),
            metrics.manifold.to_string(),
            metrics.open_endpoint_count.to_string(),
            opt_bool(metrics.exact),
            String::new(),
        ],
        Outcome::Failed { error } => [
            case,
            algorithm,
            level,
            "FAILED".into(),
            r.points.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            error.clone(),
        ],
    }
}

/// Rows CSV as bytes.
pub fn rows_csv(r: &SuiteReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ROW_HEADER)?;
    for row in &r.rows {
        w.write_record(row_record(row))?;
    }
    Ok(w.into_inner()?)
}

/// Aggregates CSV as bytes.
pub fn aggregates_csv(r: &SuiteReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(AGGREGATE_HEADER)?;
    for a in &r.aggregates {
        w.write_record([
            a.algorithm.to_string(),
            a.level.to_string(),
            a.cases.to_string(),
            a.succeeded.to_string(),
            opt(a.mean_rms),
            opt(a.mean_hausdorff),
            opt(a.exact_percent),
        ])?;
    }
    Ok(w.into_inner()?)
}

/// Mean reconstruction time per (algorithm, level) over successful rows.
pub fn timings_csv(r: &SuiteReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TIMING_HEADER)?;
    for a in &r.aggregates {
        w.write_record([
            a.algorithm.to_string(),
            a.level.to_string(),
            a.succeeded.to_string(),
            opt(a.mean_runtime_seconds.map(|s| s * 1e3)),
        ])?;
    }
    Ok(w.into_inner()?)
}

/// File name of a row's reconstructed curve.
pub fn curve_file_name(r: &SuiteRow) -> String {
    format!(
        "{}__{}__{}.gt",
        r.case,
        r.algorithm.to_string().replace(':', "-"),
        r.level
    )
}

/// A reconstruction as a ground-truth file: ordered when it is one simple
/// path or cycle through every vertex, indexed otherwise.
pub fn curve_text(c: &PolyCurve) -> Result<String> {
    let gt = match c.traversal() {
        Some((order, closed)) => {
            GroundTruth::ordered(order.iter().map(|&i| c.points()[i]).collect(), closed)?
        }
        None => GroundTruth::indexed(c.points().to_vec(), c.edges().iter().copied().collect())?,
    };
    Ok(gt.to_text())
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes the CSVs and one curve file per successful row into `dir`.
pub fn write_report(r: &SuiteReport, dir: &Path) -> Result<ReportFiles> {
    let curves_dir = dir.join(CURVES_DIR);
    fs::create_dir_all(&curves_dir)
        .with_context(|| format!("cannot create {}", curves_dir.display()))?;
    let files = ReportFiles {
        rows: dir.join(ROWS_FILE),
        aggregates: dir.join(AGGREGATES_FILE),
        timings: dir.join(TIMINGS_FILE),
        curves: Vec::new(),
    };
    write(&files.rows, &rows_csv(r)?)?;
    write(&files.aggregates, &aggregates_csv(r)?)?;
    write(&files.timings, &timings_csv(r)?)?;
    let mut curves = Vec::new();
    for row in &r.rows {
        if let Outcome::Reconstructed { curve, .. } = &row.outcome {
            let path = curves_dir.join(curve_file_name(row));
            write(&path, curve_text(curve)?.as_bytes())?;
            curves.push(path);
        }
    }
    Ok(ReportFiles { curves, ..files })
}
