//! Benchmark harness: times the sorts over the (algorithm x case x size)
//! matrix and records their peak auxiliary memory.
//!
//! Runs are strictly serial. Nothing here spawns threads, and callers should
//! not run other work concurrently while a matrix is being measured.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::alloc_track;
use crate::input::{generate, CaseId, GenError, InputSpec};
use crate::sorting::{bucket_sort, insertion_sort, radix_sort_lsd, Key, Record, SortError};
use crate::verify::is_sorted;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_REPEATS: usize = 5;
pub const DEFAULT_BASE: u64 = 10;
pub const MIN_REPEATS: usize = 3;
pub const DESK_SIZES: [usize; 3] = [10_000, 100_000, 1_000_000];
pub const PAPER_SIZES: [usize; 3] = [1_000_000, 10_000_000, 100_000_000];

/// The benchmarked sorts. Declaration order is the row order in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Bucket,
    Radix,
    Insertion,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bucket => "bucket",
            Algorithm::Radix => "radix",
            Algorithm::Insertion => "insertion",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown algorithm {0:?} (expected bucket, radix or insertion)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bucket" => Ok(Algorithm::Bucket),
            "radix" => Ok(Algorithm::Radix),
            "insertion" => Ok(Algorithm::Insertion),
            other => Err(UnknownAlgorithm(other.to_string())),
        }
    }
}

/// An algorithm with the parameters it needs beyond the sequence itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sorter {
    pub algorithm: Algorithm,
    /// Range bound for bucket sort.
    pub max_key: Key,
    /// Radix base.
    pub base: u64,
}

impl Sorter {
    pub fn new(algorithm: Algorithm, max_key: Key, base: u64) -> Self {
        Self {
            algorithm,
            max_key,
            base,
        }
    }

    pub fn sort(&self, seq: &[Record]) -> Result<Vec<Record>, SortError> {
        match self.algorithm {
            Algorithm::Bucket => bucket_sort(seq, self.max_key),
            Algorithm::Radix => radix_sort_lsd(seq, self.base),
            Algorithm::Insertion => Ok(insertion_sort(seq)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("at least {MIN_REPEATS} repeats are needed, got {0}")]
    TooFewRepeats(usize),
    #[error("{0} sort produced unsorted output")]
    Unsorted(Algorithm),
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error("{coordinate}: {source}")]
    Cell {
        coordinate: Coordinate,
        source: Box<BenchError>,
    },
}

/// Where in the matrix an error happened. `algorithm` is absent when input
/// generation itself failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinate {
    pub algorithm: Option<Algorithm>,
    pub case: CaseId,
    pub n: usize,
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.algorithm {
            Some(a) => write!(f, "{a} sort, case {}, n = {}", self.case, self.n),
            None => write!(f, "case {}, n = {}", self.case, self.n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timing {
    pub median_secs: f64,
    /// `(max - min) / median`.
    pub relative_spread: f64,
}

/// Times `repeats` runs of the sort on `seq` after one untimed warm-up run.
/// Only the sort call is inside the timed region; each output is checked for
/// sortedness afterwards and an unsorted output rejects the measurement.
pub fn time_sort(sorter: &Sorter, seq: &[Record], repeats: usize) -> Result<Timing, BenchError> {
    if repeats < MIN_REPEATS {
        return Err(BenchError::TooFewRepeats(repeats));
    }
    let check = |out: &[Record]| {
        if is_sorted(out) {
            Ok(())
        } else {
            Err(BenchError::Unsorted(sorter.algorithm))
        }
    };

    check(&sorter.sort(seq)?)?;

    let mut samples = Vec::with_capacity(repeats);
    for _ in 0..repeats {
        let start = Instant::now();
        let out = sorter.sort(seq);
        let elapsed = start.elapsed().as_secs_f64();
        check(&out?)?;
        samples.push(elapsed);
    }
    Ok(summarize(&mut samples))
}

fn summarize(samples: &mut [f64]) -> Timing {
    samples.sort_by(f64::total_cmp);
    let len = samples.len();
    let median = if len % 2 == 1 {
        samples[len / 2]
    } else {
        (samples[len / 2 - 1] + samples[len / 2]) / 2.0
    };
    let spread = samples[len - 1] - samples[0];
    Timing {
        median_secs: median,
        relative_spread: if median > 0.0 { spread / median } else { 0.0 },
    }
}

/// Peak bytes allocated by one run of the sort, excluding the input. Requires
/// the tracking allocator to be the global allocator (the default
/// `global-tracking` feature); otherwise it reports 0.
pub fn measure_peak_memory(sorter: &Sorter, seq: &[Record]) -> Result<u64, SortError> {
    let (out, peak) = alloc_track::measure(|| sorter.sort(seq));
    out?;
    Ok(peak)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub cases: Vec<CaseId>,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub base: u64,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: vec![Algorithm::Bucket, Algorithm::Radix],
            cases: CaseId::ALL.to_vec(),
            sizes: DESK_SIZES.to_vec(),
            repeats: DEFAULT_REPEATS,
            base: DEFAULT_BASE,
            seed: DEFAULT_SEED,
        }
    }
}

impl BenchConfig {
    pub fn paper_scale() -> Self {
        Self {
            sizes: PAPER_SIZES.to_vec(),
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub algorithm: Algorithm,
    pub case: CaseId,
    pub n: usize,
    pub median_time: f64,
    pub relative_spread: f64,
    pub peak_bytes: u64,
}

/// The input a matrix cell is measured on. Case 6 cannot hold `ceil(2n/3)`
/// distinct values under its default bound once n exceeds 1.5 * 10^6, so the
/// bound is widened to exactly that count there.
pub fn matrix_spec(case: CaseId, n: usize, seed: u64) -> InputSpec {
    let spec = InputSpec::new(case, n, seed);
    if case == CaseId::RepeatedValue {
        let needed = (2 * n as u64).div_ceil(3);
        if needed > spec.max_key {
            return spec.with_max_key(needed);
        }
    }
    spec
}

/// Runs the whole matrix. Rows come out ordered by (case, n, algorithm).
pub fn run_matrix(config: &BenchConfig) -> Result<Vec<BenchResult>, BenchError> {
    let (rows, err) = run_matrix_with(config, |_| {});
    match err {
        Some(e) => Err(e),
        None => Ok(rows),
    }
}

/// Like [`run_matrix`], but hands each row to `on_row` as soon as it is
/// measured and stops at the first failing cell, returning the rows completed
/// so far together with that error.
pub fn run_matrix_with(
    config: &BenchConfig,
    mut on_row: impl FnMut(&BenchResult),
) -> (Vec<BenchResult>, Option<BenchError>) {
    let mut rows = Vec::new();
    if config.repeats < MIN_REPEATS {
        return (rows, Some(BenchError::TooFewRepeats(config.repeats)));
    }
    let algorithms = sorted_unique(&config.algorithms);
    if algorithms.is_empty() {
        return (rows, None);
    }

    for case in sorted_unique(&config.cases) {
        for n in sorted_unique(&config.sizes) {
            let spec = matrix_spec(case, n, config.seed);
            let seq = match generate(&spec) {
                Ok(seq) => seq,
                Err(e) => {
                    let coordinate = Coordinate {
                        algorithm: None,
                        case,
                        n,
                    };
                    return (rows, Some(in_cell(coordinate, e.into())));
                }
            };
            for &algorithm in &algorithms {
                let sorter = Sorter::new(algorithm, spec.max_key, config.base);
                match measure_cell(&sorter, &seq, config.repeats) {
                    Ok((timing, peak_bytes)) => {
                        let row = BenchResult {
                            algorithm,
                            case,
                            n,
                            median_time: timing.median_secs,
                            relative_spread: timing.relative_spread,
                            peak_bytes,
                        };
                        on_row(&row);
                        rows.push(row);
                    }
                    Err(e) => {
                        let coordinate = Coordinate {
                            algorithm: Some(algorithm),
                            case,
                            n,
                        };
                        return (rows, Some(in_cell(coordinate, e)));
                    }
                }
            }
        }
    }
    (rows, None)
}

fn measure_cell(
    sorter: &Sorter,
    seq: &[Record],
    repeats: usize,
) -> Result<(Timing, u64), BenchError> {
    let timing = time_sort(sorter, seq, repeats)?;
    let peak = measure_peak_memory(sorter, seq)?;
    Ok((timing, peak))
}

fn in_cell(coordinate: Coordinate, source: BenchError) -> BenchError {
    BenchError::Cell {
        coordinate,
        source: Box::new(source),
    }
}

fn sorted_unique<T: Ord + Copy>(items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
