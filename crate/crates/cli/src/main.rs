//! Command-line driver: single optimizations, the comparison experiment and
//! surface grids for plotting.

mod config;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use apcosa::harness::{CellReport, DEFAULT_TOLERANCE, DEFAULT_TRIALS};
use apcosa::{
    emit_csv, emit_table, run_experiment, Algorithm, Benchmark, Scalar, SearchParams, TrialConfig,
};
use clap::{Args, Parser, Subcommand};

use crate::config::{layer, ConfigFile};

/// Chaos optimal search on box-constrained benchmark functions.
///
/// Settings are layered: built-in defaults, then an optional `key = value`
/// config file (--config), then command-line flags.
#[derive(Parser, Debug)]
#[command(name = "apcosa", version, about, long_about = None)]
struct Cli {
    /// Config file with `key = value` lines (keys are long flag names, or N/M/p/A).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one optimization and print the result.
    Optimize(OptimizeArgs),
    /// Run repeated seeded trials, write per-trial CSV and print a summary table.
    Bench(BenchArgs),
    /// Sample a benchmark on a uniform grid and write `x1,x2,f` CSV.
    Surface(SurfaceArgs),
}

#[derive(Args, Debug, Default)]
struct SearchFlags {
    /// Inner iteration count N [default: 20000]
    #[arg(short = 'N', long)]
    inner_iterations: Option<usize>,
    /// Outer iteration count M, at least 3 [default: 8]
    #[arg(short = 'M', long)]
    outer_iterations: Option<usize>,
    /// Initial candidate count p [default: 10]
    #[arg(short = 'p', long)]
    candidates: Option<usize>,
    /// Logistic map coefficient A [default: 4]
    #[arg(short = 'A', long)]
    coefficient: Option<f64>,
    /// Reduction rate for the vrr baseline, in (0, 1) [default: 0.7]
    #[arg(long)]
    gamma: Option<f64>,
    /// Master seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads [default: 1]
    #[arg(long)]
    threads: Option<usize>,
    /// Floating point type: f64 or f32 [default: f64]
    #[arg(long)]
    scalar: Option<String>,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    /// Benchmark name: F1..F5
    #[arg(long)]
    benchmark: Option<String>,
    /// Algorithm: apcosa, vrr or cosa [default: apcosa]
    #[arg(long)]
    algorithm: Option<String>,
    /// Significant digits in printed values [default: 6]
    #[arg(long)]
    digits: Option<usize>,
    #[command(flatten)]
    search: SearchFlags,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Trials per (algorithm, benchmark) pair [default: 100]
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated benchmarks [default: F1,F2,F3,F4,F5]
    #[arg(long)]
    benchmarks: Option<String>,
    /// Comma-separated algorithms [default: cosa,vrr,apcosa]
    #[arg(long)]
    algorithms: Option<String>,
    /// Success tolerance on |best - f*| [default: 1e-3]
    #[arg(long)]
    tolerance: Option<f64>,
    /// Per-trial CSV output path [default: bench.csv]
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    #[command(flatten)]
    search: SearchFlags,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Benchmark name: F1..F5
    #[arg(long)]
    benchmark: Option<String>,
    /// Grid points per axis, at least 2 [default: 101]
    #[arg(long)]
    resolution: Option<usize>,
    /// Output path; stdout when omitted
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ScalarKind {
    F64,
    F32,
}

struct Resolved {
    params: SearchParams,
    gamma: f64,
    scalar: ScalarKind,
}

fn resolve_search(flags: SearchFlags, config: &ConfigFile) -> Result<Resolved> {
    let d = SearchParams::default();
    let params = SearchParams {
        inner_iterations: layer(flags.inner_iterations, config, "inner-iterations", d.inner_iterations)?,
        outer_iterations: layer(flags.outer_iterations, config, "outer-iterations", d.outer_iterations)?,
        initial_candidates: layer(flags.candidates, config, "candidates", d.initial_candidates)?,
        coefficient: layer(flags.coefficient, config, "coefficient", d.coefficient)?,
        seed: layer(flags.seed, config, "seed", d.seed)?,
        threads: layer(flags.threads, config, "threads", d.threads)?,
    };
    params.validate()?;
    let gamma = layer(flags.gamma, config, "gamma", apcosa::baselines::DEFAULT_REDUCTION_RATE)?;
    let scalar = match layer(flags.scalar, config, "scalar", "f64".to_string())?.as_str() {
        "f64" => ScalarKind::F64,
        "f32" => ScalarKind::F32,
        other => bail!("unknown scalar type '{other}' (expected f64 or f32)"),
    };
    Ok(Resolved { params, gamma, scalar })
}

fn required_benchmark(flag: Option<String>, config: &ConfigFile) -> Result<Benchmark> {
    let name = match flag {
        Some(n) => n,
        None => config
            .get::<String>("benchmark")?
            .context("missing --benchmark (one of F1..F5)")?,
    };
    Ok(name.parse()?)
}

fn parse_list<T>(text: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr,
    T::Err: std::error::Error + Send + Sync + 'static,
{
    let items = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(anyhow::Error::from))
        .collect::<Result<Vec<_>>>()?;
    if items.is_empty() {
        bail!("empty list '{text}'");
    }
    Ok(items)
}

/// `digits` significant digits; fixed notation for moderate magnitudes.
fn sig(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, v)
    }
}

fn cmd_optimize(args: OptimizeArgs, config: &ConfigFile) -> Result<String> {
    let benchmark = required_benchmark(args.benchmark, config)?;
    let algorithm: Algorithm = layer(args.algorithm, config, "algorithm", "apcosa".to_string())?.parse()?;
    let digits = layer(args.digits, config, "digits", 6)?;
    let r = resolve_search(args.search, config)?;

    let start = Instant::now();
    let (point, value, evaluations) = match r.scalar {
        ScalarKind::F64 => run_one::<f64>(algorithm, benchmark, &r)?,
        ScalarKind::F32 => run_one::<f32>(algorithm, benchmark, &r)?,
    };
    let elapsed = start.elapsed().as_secs_f64();

    let point: Vec<String> = point.iter().map(|&x| sig(x, digits)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "algorithm: {algorithm}");
    let _ = writeln!(out, "benchmark: {benchmark}");
    let _ = writeln!(out, "best_point: [{}]", point.join(", "));
    let _ = writeln!(out, "best_value: {}", sig(value, digits));
    let _ = writeln!(out, "reference_value: {}", sig(benchmark.reference_value(), digits));
    let _ = writeln!(out, "evaluations: {evaluations}");
    let _ = writeln!(out, "elapsed_seconds: {}", sig(elapsed, digits));
    Ok(out)
}

fn run_one<T: Scalar>(algorithm: Algorithm, benchmark: Benchmark, r: &Resolved) -> Result<(Vec<f64>, f64, u64)> {
    let result = algorithm.run::<T>(benchmark, &r.params, r.gamma)?;
    Ok((
        result.best_point.iter().map(|x| x.as_f64()).collect(),
        result.best_value.as_f64(),
        result.evaluations,
    ))
}

fn cmd_bench(args: BenchArgs, config: &ConfigFile) -> Result<String> {
    let benchmarks = match args.benchmarks.or(config.get("benchmarks")?) {
        Some(list) => parse_list::<Benchmark>(&list)?,
        None => apcosa::benchmarks::ALL.to_vec(),
    };
    let algorithms = match args.algorithms.or(config.get("algorithms")?) {
        Some(list) => parse_list::<Algorithm>(&list)?,
        None => apcosa::harness::ALGORITHMS.to_vec(),
    };
    let trials = layer(args.trials, config, "trials", DEFAULT_TRIALS)?;
    let tolerance = layer(args.tolerance, config, "tolerance", DEFAULT_TOLERANCE)?;
    let output = layer(args.output, config, "output", PathBuf::from("bench.csv"))?;
    let r = resolve_search(args.search, config)?;
    // Fail on an unwritable path before spending time on the trials.
    let file = std::fs::File::create(&output).with_context(|| format!("writing {}", output.display()))?;

    let trial_config = TrialConfig {
        trials,
        success_tolerance: tolerance,
        algorithms,
        benchmarks,
        master_seed: r.params.seed,
        threads: r.params.threads,
        // Trials already run concurrently; keep each optimization single-threaded.
        params: SearchParams { threads: 1, ..r.params.clone() },
        reduction_rate: r.gamma,
    };
    let report = match r.scalar {
        ScalarKind::F64 => run_experiment::<f64>(&trial_config)?,
        ScalarKind::F32 => run_experiment::<f32>(&trial_config)?,
    };
    let mut file = std::io::BufWriter::new(file);
    file.write_all(emit_csv(&report).as_bytes())
        .and_then(|_| file.flush())
        .with_context(|| format!("writing {}", output.display()))?;

    let p = &r.params;
    let mut out = format!(
        "trials={} epsilon={:e} seed={} N={} M={} p={} A={} gamma={}\n",
        trials, tolerance, p.seed, p.inner_iterations, p.outer_iterations, p.initial_candidates, p.coefficient, r.gamma
    );
    out.push_str(&emit_table(&report));
    out.push_str("time per success (s): ");
    let per: Vec<String> = report
        .cells
        .iter()
        .map(|c: &CellReport| format!("{}/{}={}", c.algorithm, c.benchmark, sig(c.time_per_success(), 4)))
        .collect();
    out.push_str(&per.join(" "));
    let _ = writeln!(out, "\nwrote {}", output.display());
    Ok(out)
}

/// Grid coordinate `i` of `n` over `[lo, hi]`, hitting both ends exactly.
fn grid_coord(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * (i as f64 / (n - 1) as f64)
    }
}

fn surface_csv(benchmark: Benchmark, resolution: usize) -> String {
    let (lo, hi) = benchmark.bounds();
    let mut out = String::with_capacity(64 * resolution * resolution + 8);
    out.push_str("x1,x2,f\n");
    for j in 0..resolution {
        let x2 = grid_coord(lo, hi, j, resolution);
        for i in 0..resolution {
            let x1 = grid_coord(lo, hi, i, resolution);
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", x1, x2, benchmark.eval(x1, x2));
        }
    }
    out
}

fn cmd_surface(args: SurfaceArgs, config: &ConfigFile) -> Result<String> {
    let benchmark = required_benchmark(args.benchmark, config)?;
    let resolution = layer(args.resolution, config, "resolution", 101)?;
    if resolution < 2 {
        bail!("--resolution must be at least 2, got {resolution}");
    }
    let output = match args.output {
        Some(p) => Some(p),
        None => config.get::<PathBuf>("output")?,
    };
    let csv = surface_csv(benchmark, resolution);
    match output {
        Some(path) => {
            write_file(&path, &csv)?;
            Ok(format!("wrote {} rows to {}\n", resolution * resolution, path.display()))
        }
        None => Ok(csv),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<String> {
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Optimize(args) => cmd_optimize(args, &config),
        Command::Bench(args) => cmd_bench(args, &config),
        Command::Surface(args) => cmd_surface(args, &config),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
