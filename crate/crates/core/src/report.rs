//! Rendering of benchmark results: paper-style tables, CSV, log-log plot data
//! and power-law fits of time against input size.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::{self, Read, Write};

use serde::Deserialize;
use thiserror::Error;

use crate::bench::{Algorithm, BenchResult};
use crate::input::CaseId;

pub const CSV_HEADER: &str = "algorithm,case,n,median_time_s,relative_spread,peak_bytes";

/// Column-group order in tables.
const TABLE_ORDER: [Algorithm; 3] = [Algorithm::Radix, Algorithm::Bucket, Algorithm::Insertion];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no results to report")]
    Empty,
    #[error("figure group must be 1 or 2, got {0}")]
    InvalidGroup(u8),
    #[error("no results for the cases of figure group {0}")]
    NoGroupData(u8),
    #[error("a fit needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("a fit needs at least 2 distinct sizes")]
    DegenerateSizes,
    #[error("log-log fit needs positive sizes and times, got ({0}, {1})")]
    NonPositive(f64, f64),
    #[error("CSV header mismatch: expected {CSV_HEADER:?}")]
    BadHeader,
    #[error("CSV row {row}: {message}")]
    BadRow { row: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Time,
    Memory,
}

impl Metric {
    pub fn title(self) -> &'static str {
        match self {
            Metric::Time => "Measured time consumptions [s]",
            Metric::Memory => "Measured memory usage [MB]",
        }
    }

    fn cell(self, r: &BenchResult) -> String {
        match self {
            Metric::Time => format!("{:.2}", r.median_time),
            // MB is 10^6 bytes.
            Metric::Memory => format!("{:.1}", r.peak_bytes as f64 / 1e6),
        }
    }
}

fn size_label(n: usize) -> String {
    let mut k = 0;
    let mut p = 1usize;
    while p < n {
        p = match p.checked_mul(10) {
            Some(next) => next,
            None => break,
        };
        k += 1;
    }
    if p == n && k > 0 {
        format!("n=10^{k}")
    } else {
        format!("n={n}")
    }
}

/// Renders one metric as a table with a row per input case (1-6), a column
/// group per algorithm and a column per size. Missing cells show `-`.
pub fn emit_table(results: &[BenchResult], metric: Metric) -> Result<String, ReportError> {
    if results.is_empty() {
        return Err(ReportError::Empty);
    }
    let algorithms: Vec<Algorithm> = TABLE_ORDER
        .into_iter()
        .filter(|a| results.iter().any(|r| r.algorithm == *a))
        .collect();
    let sizes: Vec<usize> = results
        .iter()
        .map(|r| r.n)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let cells: BTreeMap<(Algorithm, CaseId, usize), &BenchResult> = results
        .iter()
        .map(|r| ((r.algorithm, r.case, r.n), r))
        .collect();

    let mut body: Vec<Vec<String>> = Vec::new();
    for case in CaseId::ALL {
        let mut row = Vec::new();
        for &a in &algorithms {
            for &n in &sizes {
                row.push(
                    cells
                        .get(&(a, case, n))
                        .map_or_else(|| "-".to_string(), |r| metric.cell(r)),
                );
            }
        }
        body.push(row);
    }
    let labels: Vec<String> = sizes.iter().map(|&n| size_label(n)).collect();
    let width = body
        .iter()
        .flatten()
        .chain(labels.iter())
        .map(String::len)
        .max()
        .unwrap_or(1);

    let first = "Input no.";
    let group_width = sizes.len() * (width + 3) - 3;
    let mut out = String::new();
    writeln!(out, "{}", metric.title()).unwrap();

    write!(out, "{:>w$}", "", w = first.len()).unwrap();
    for a in &algorithms {
        write!(
            out,
            " | {:^w$}",
            format!("{} sort", a.name()),
            w = group_width
        )
        .unwrap();
    }
    out.push('\n');

    write!(out, "{first}").unwrap();
    for _ in &algorithms {
        out.push_str(" |");
        let cols: Vec<String> = labels.iter().map(|l| format!(" {l:>width$}")).collect();
        out.push_str(&cols.join("  "));
    }
    out.push('\n');

    let rule_len = first.len() + algorithms.len() * (group_width + 3);
    out.push_str(&"-".repeat(rule_len));
    out.push('\n');

    for (case, row) in CaseId::ALL.iter().zip(&body) {
        write!(out, "{:>w$}", case.number(), w = first.len()).unwrap();
        for group in row.chunks(sizes.len()) {
            out.push_str(" |");
            let cols: Vec<String> = group.iter().map(|c| format!(" {c:>width$}")).collect();
            out.push_str(&cols.join("  "));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Writes results as CSV, rows ordered by (case, n, algorithm).
pub fn emit_csv(results: &[BenchResult], mut dest: impl Write) -> Result<(), ReportError> {
    let mut rows: Vec<&BenchResult> = results.iter().collect();
    rows.sort_by_key(|r| (r.case, r.n, r.algorithm));
    writeln!(dest, "{CSV_HEADER}")?;
    for r in rows {
        // `{}` on f64 never uses exponent notation and round-trips exactly.
        writeln!(
            dest,
            "{},{},{},{},{},{}",
            r.algorithm,
            r.case.number(),
            r.n,
            r.median_time,
            r.relative_spread,
            r.peak_bytes
        )?;
    }
    dest.flush()?;
    Ok(())
}

#[derive(Deserialize)]
struct CsvRow {
    algorithm: String,
    case: u64,
    n: usize,
    median_time_s: f64,
    relative_spread: f64,
    peak_bytes: u64,
}

/// Parses CSV produced by [`emit_csv`].
pub fn parse_csv(source: impl Read) -> Result<Vec<BenchResult>, ReportError> {
    let mut reader = csv::Reader::from_reader(source);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(ReportError::BadHeader);
    }
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<CsvRow>().enumerate() {
        let row = row?;
        let bad = |message: String| ReportError::BadRow {
            row: i + 1,
            message,
        };
        out.push(BenchResult {
            algorithm: row.algorithm.parse().map_err(|e| bad(format!("{e}")))?,
            case: CaseId::from_number(row.case).map_err(|e| bad(format!("{e}")))?,
            n: row.n,
            median_time: row.median_time_s,
            relative_spread: row.relative_spread,
            peak_bytes: row.peak_bytes,
        });
    }
    Ok(out)
}

/// Median times of one algorithm on one case, by increasing n.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub algorithm: Algorithm,
    pub case: CaseId,
    pub points: Vec<(usize, f64)>,
}

/// Cases shown in each figure group.
pub fn group_cases(group: u8) -> Result<[CaseId; 3], ReportError> {
    match group {
        1 => Ok([CaseId::Uniform, CaseId::Sorted, CaseId::NearlySorted]),
        2 => Ok([
            CaseId::SmallRange,
            CaseId::LargeRange,
            CaseId::RepeatedValue,
        ]),
        other => Err(ReportError::InvalidGroup(other)),
    }
}

pub fn group_title(group: u8) -> Result<String, ReportError> {
    let [a, b, c] = group_cases(group)?;
    Ok(format!("Time consumption for inputs {a}, {b} and {c}"))
}

/// One series per (case, algorithm) present in the group.
pub fn plot_series(results: &[BenchResult], group: u8) -> Result<Vec<Series>, ReportError> {
    let cases = group_cases(group)?;
    let mut by_series: BTreeMap<(CaseId, Algorithm), Vec<(usize, f64)>> = BTreeMap::new();
    for r in results.iter().filter(|r| cases.contains(&r.case)) {
        by_series
            .entry((r.case, r.algorithm))
            .or_default()
            .push((r.n, r.median_time));
    }
    if by_series.is_empty() {
        return Err(ReportError::NoGroupData(group));
    }
    Ok(by_series
        .into_iter()
        .map(|((case, algorithm), mut points)| {
            points.sort_by_key(|p| p.0);
            Series {
                algorithm,
                case,
                points,
            }
        })
        .collect())
}

/// Writes the group's series as whitespace-separated `n median_time_s`
/// columns, one block per series separated by two blank lines.
pub fn emit_plot_data(
    results: &[BenchResult],
    group: u8,
    mut dest: impl Write,
) -> Result<Vec<Series>, ReportError> {
    let series = plot_series(results, group)?;
    writeln!(dest, "# {}", group_title(group)?)?;
    writeln!(dest, "# log-log axes; columns: n median_time_s")?;
    for (i, s) in series.iter().enumerate() {
        if i > 0 {
            writeln!(dest, "\n")?;
        }
        writeln!(dest, "# series {i}: {} sort, input {}", s.algorithm, s.case)?;
        for (n, t) in &s.points {
            writeln!(dest, "{n} {t}")?;
        }
    }
    dest.flush()?;
    Ok(series)
}

/// A gnuplot script plotting `data_file` (as written by [`emit_plot_data`])
/// on logarithmic axes.
pub fn plot_script(series: &[Series], group: u8, data_file: &str) -> Result<String, ReportError> {
    let mut out = String::new();
    writeln!(out, "set title \"{}\"", group_title(group)?).unwrap();
    writeln!(out, "set logscale x 10").unwrap();
    writeln!(out, "set logscale y 10").unwrap();
    writeln!(out, "set xlabel \"n\"").unwrap();
    writeln!(out, "set ylabel \"time [s]\"").unwrap();
    writeln!(out, "set key left top").unwrap();
    let plots: Vec<String> = series
        .iter()
        .enumerate()
        .map(|(i, s)| {
            format!(
                "\"{data_file}\" index {i} using 1:2 with linespoints title \"{} sort, input {}\"",
                s.algorithm, s.case
            )
        })
        .collect();
    writeln!(out, "plot {}", plots.join(", \\\n     ")).unwrap();
    Ok(out)
}

/// Least-squares line through `(ln n, ln t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<LogLogFit, ReportError> {
    if points.len() < 2 {
        return Err(ReportError::TooFewPoints(points.len()));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(ReportError::NonPositive(x, y));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let count = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / count;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return Err(ReportError::DegenerateSizes);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(LogLogFit {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    pub algorithm: Algorithm,
    pub case: CaseId,
    pub slope: f64,
    pub r_squared: f64,
}

/// Fits every (algorithm, case) pair measured at two or more distinct sizes.
pub fn scaling_fits(results: &[BenchResult]) -> Vec<ScalingFit> {
    let mut groups: BTreeMap<(Algorithm, CaseId), Vec<(f64, f64)>> = BTreeMap::new();
    for r in results {
        groups
            .entry((r.algorithm, r.case))
            .or_default()
            .push((r.n as f64, r.median_time));
    }
    groups
        .into_iter()
        .filter_map(|((algorithm, case), points)| {
            fit_loglog_slope(&points).ok().map(|fit| ScalingFit {
                algorithm,
                case,
                slope: fit.slope,
                r_squared: fit.r_squared,
            })
        })
        .collect()
}
