//! `intsort`: generate benchmark inputs, sort and verify sequence files, and
//! run or re-render the benchmark matrix.
//!
//! Exit codes: 0 success, 1 failure (verification, I/O, a failing benchmark
//! cell), 2 usage error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use intsort::bench::{self, BenchConfig, DEFAULT_BASE, DEFAULT_REPEATS, DEFAULT_SEED, PAPER_SIZES};
use intsort::report::{self, Metric};
use intsort::verify::{is_sorted, same_keys};
use intsort::{generate, Algorithm, BenchResult, CaseId, InputSpec, SequenceFile, Sorter};

#[derive(Parser)]
#[command(name = "intsort", version, about = "Integer sorting benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one of the six input cases and write it as a sequence file.
    Generate(GenerateArgs),
    /// Sort a sequence file.
    Sort(SortArgs),
    /// Check that a sorted file is an ordered permutation of the original.
    Verify(VerifyArgs),
    /// Run the (algorithm x case x size) benchmark matrix.
    Bench(BenchArgs),
    /// Re-render tables, plot data and slopes from a benchmark CSV.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long = "case", value_parser = parse_case)]
    case: CaseId,
    #[arg(long)]
    n: usize,
    /// Inclusive key bound; defaults per case (10^4 for 4, 10^8 for 5, 10^6 otherwise).
    #[arg(long = "M")]
    max_key: Option<u64>,
    #[arg(long, env = "INTSORT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Case 6: the value shared by a third of the keys (default M/2).
    #[arg(long)]
    repeated_value: Option<u64>,
    /// Case 3: fraction of the sequence left in sorted position.
    #[arg(long, default_value_t = intsort::input::DEFAULT_SORTED_FRACTION)]
    sorted_fraction: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SortArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Algorithm,
    #[arg(long, default_value_t = DEFAULT_BASE)]
    base: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    original: PathBuf,
    sorted: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm, default_values = ["bucket", "radix"])]
    algorithms: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', value_parser = parse_case, default_values = ["1", "2", "3", "4", "5", "6"])]
    cases: Vec<CaseId>,
    #[arg(long, value_delimiter = ',', default_values = ["10000", "100000", "1000000"], conflicts_with = "paper_scale")]
    sizes: Vec<usize>,
    /// Use n = 10^6, 10^7, 10^8.
    #[arg(long)]
    paper_scale: bool,
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    repeats: usize,
    #[arg(long, default_value_t = DEFAULT_BASE)]
    base: u64,
    #[arg(long, env = "INTSORT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    csv: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    csv: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Print the time and memory tables.
    #[arg(long)]
    table: bool,
    /// Directory for figure plot data (fig1.dat, fig1.gp, fig2.dat, fig2.gp).
    #[arg(long)]
    plots: Option<PathBuf>,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    let id: u64 = s.parse().map_err(|_| format!("invalid case {s:?}"))?;
    CaseId::from_number(id).map_err(|e| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse::<Algorithm>().map_err(|e| e.to_string())
}

enum Failure {
    Usage(anyhow::Error),
    Failed(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Failed(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Sort(args) => cmd_sort(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    let mut spec =
        InputSpec::new(args.case, args.n, args.seed).with_sorted_fraction(args.sorted_fraction);
    if let Some(m) = args.max_key {
        spec = spec.with_max_key(m);
    }
    if let Some(k) = args.repeated_value {
        spec = spec.with_repeated_value(k);
    }
    let records = generate(&spec).map_err(|e| Failure::Usage(e.into()))?;
    SequenceFile::from_spec(&spec, records)
        .save(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "case {} n {} M {} seed {}",
        spec.case, spec.n, spec.max_key, spec.seed
    );
    Ok(())
}

fn load(path: &Path) -> anyhow::Result<SequenceFile> {
    SequenceFile::load(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_sort(args: SortArgs) -> CmdResult {
    let file = load(&args.input)?;
    let sorter = Sorter::new(args.algorithm, file.max_key, args.base);
    let start = Instant::now();
    let sorted = sorter.sort(&file.records).map_err(|e| match e {
        intsort::SortError::InvalidBase(_) => Failure::Usage(e.into()),
        other => Failure::Failed(other.into()),
    })?;
    let elapsed = start.elapsed().as_secs_f64();
    file.with_records(sorted)
        .save(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "{} sort of {} keys: {elapsed:.6} s",
        args.algorithm,
        file.records.len()
    );
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let original = load(&args.original)?;
    let sorted = load(&args.sorted)?;
    if !same_keys(&original.records, &sorted.records) {
        return Err(Failure::Failed(anyhow!("not a permutation")));
    }
    if !is_sorted(&sorted.records) {
        return Err(Failure::Failed(anyhow!("not sorted")));
    }
    println!("sorted: yes");
    println!("permutation: yes");
    println!("stability: not checked (sequence files store no tags)");
    Ok(())
}

impl BenchArgs {
    fn config(&self) -> BenchConfig {
        BenchConfig {
            algorithms: self.algorithms.clone(),
            cases: self.cases.clone(),
            sizes: if self.paper_scale {
                PAPER_SIZES.to_vec()
            } else {
                self.sizes.clone()
            },
            repeats: self.repeats,
            base: self.base,
            seed: self.seed,
        }
    }
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let config = args.config();
    if config.repeats < bench::MIN_REPEATS {
        return Err(Failure::Usage(anyhow!(
            "--repeats must be at least {}",
            bench::MIN_REPEATS
        )));
    }
    if config.base < 2 {
        return Err(Failure::Usage(anyhow!("--base must be at least 2")));
    }

    let (rows, err) = bench::run_matrix_with(&config, |r| {
        eprintln!(
            "{:>6} case {} n {:>9}: {:.6} s (spread {:.1}%), peak {} B",
            r.algorithm.name(),
            r.case,
            r.n,
            r.median_time,
            100.0 * r.relative_spread,
            r.peak_bytes
        );
    });
    write_csv(&rows, &args.csv)?;
    if let Some(e) = err {
        return Err(Failure::Failed(anyhow!(e).context(format!(
            "benchmark stopped; {} completed rows written to {}",
            rows.len(),
            args.csv.display()
        ))));
    }
    render(&rows, &args.output)
}

fn cmd_report(args: ReportArgs) -> CmdResult {
    let file = File::open(&args.csv).with_context(|| format!("reading {}", args.csv.display()))?;
    let rows =
        report::parse_csv(file).with_context(|| format!("parsing {}", args.csv.display()))?;
    render(&rows, &args.output)
}

fn write_csv(rows: &[BenchResult], path: &Path) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    report::emit_csv(rows, BufWriter::new(file))
        .with_context(|| format!("writing {}", path.display()))
}

fn render(rows: &[BenchResult], output: &OutputArgs) -> CmdResult {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if output.table && !rows.is_empty() {
        for metric in [Metric::Time, Metric::Memory] {
            let table = report::emit_table(rows, metric).map_err(anyhow::Error::from)?;
            writeln!(out, "{table}").map_err(anyhow::Error::from)?;
        }
    }
    if let Some(dir) = &output.plots {
        write_plots(rows, dir)?;
    }

    let sizes: std::collections::BTreeSet<usize> = rows.iter().map(|r| r.n).collect();
    if sizes.len() < 2 {
        writeln!(out, "slope analysis omitted: fewer than 2 distinct sizes")
            .map_err(anyhow::Error::from)?;
        return Ok(());
    }
    writeln!(out, "log-log slope of median time against n:").map_err(anyhow::Error::from)?;
    for fit in report::scaling_fits(rows) {
        writeln!(
            out,
            "  {:>9} input {}: slope {:.3}, r^2 {:.4}",
            fit.algorithm.name(),
            fit.case,
            fit.slope,
            fit.r_squared
        )
        .map_err(anyhow::Error::from)?;
    }
    Ok(())
}

fn write_plots(rows: &[BenchResult], dir: &Path) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for group in [1u8, 2] {
        if report::plot_series(rows, group).is_err() {
            eprintln!("figure {group}: no data, skipped");
            continue;
        }
        let data_name = format!("fig{group}.dat");
        let data_path = dir.join(&data_name);
        let file = File::create(&data_path)
            .with_context(|| format!("creating {}", data_path.display()))?;
        let series = report::emit_plot_data(rows, group, BufWriter::new(file))?;
        let script = report::plot_script(&series, group, &data_name)?;
        let script_path = dir.join(format!("fig{group}.gp"));
        fs::write(&script_path, script)
            .with_context(|| format!("writing {}", script_path.display()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench_args(extra: &[&str]) -> BenchArgs {
        let mut argv = vec!["intsort", "bench", "--csv", "out.csv"];
        argv.extend_from_slice(extra);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Bench(args) => args,
            _ => unreachable!(),
        }
    }

    #[test]
    fn bench_defaults_are_desk_scale() {
        let config = bench_args(&[]).config();
        assert_eq!(config.algorithms, [Algorithm::Bucket, Algorithm::Radix]);
        assert_eq!(config.cases, CaseId::ALL);
        assert_eq!(config.sizes, [10_000, 100_000, 1_000_000]);
        assert_eq!(config.repeats, 5);
        assert_eq!(config.base, 10);
    }

    #[test]
    fn paper_scale_sizes() {
        let config = bench_args(&["--paper-scale"]).config();
        assert_eq!(config.sizes, [1_000_000, 10_000_000, 100_000_000]);
    }

    #[test]
    fn list_flags() {
        let config =
            bench_args(&["--algorithms", "radix", "--cases", "5,2", "--sizes", "7,8"]).config();
        assert_eq!(config.algorithms, [Algorithm::Radix]);
        assert_eq!(config.cases, [CaseId::LargeRange, CaseId::Sorted]);
        assert_eq!(config.sizes, [7, 8]);
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        for argv in [
            vec!["intsort", "bench", "--csv", "x", "--cases", "7"],
            vec!["intsort", "bench", "--csv", "x", "--algorithms", "quick"],
            vec![
                "intsort",
                "bench",
                "--csv",
                "x",
                "--paper-scale",
                "--sizes",
                "5",
            ],
            vec![
                "intsort",
                "sort",
                "--in",
                "a",
                "--out",
                "b",
                "--algorithm",
                "heap",
            ],
        ] {
            let err = Cli::try_parse_from(argv).err().unwrap();
            assert_eq!(err.exit_code(), 2);
        }
    }
}
