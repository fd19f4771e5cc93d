//! Repeated-trial comparison of the optimizers on the benchmark set.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::apcosa;
use crate::baselines::{cosa_optimize, vrr_optimize, VrrParams, DEFAULT_REDUCTION_RATE};
use crate::benchmarks::{Benchmark, ALL};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::search::{OptResult, SearchParams};
use crate::seed::mix64;

pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_TRIALS: usize = 100;
pub const CSV_HEADER: &str = "algorithm,benchmark,trial,seed,best_value,success,time_seconds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Cosa,
    Vrr,
    Apcosa,
}

pub const ALGORITHMS: [Algorithm; 3] = [Algorithm::Cosa, Algorithm::Vrr, Algorithm::Apcosa];

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cosa => "cosa",
            Algorithm::Vrr => "vrr",
            Algorithm::Apcosa => "apcosa",
        }
    }

    /// Runs one optimization of `benchmark` with this algorithm.
    pub fn run<T: Scalar>(
        self,
        benchmark: Benchmark,
        params: &SearchParams,
        reduction_rate: f64,
    ) -> Result<OptResult<T>> {
        let spec = benchmark.spec::<T>();
        match self {
            Algorithm::Cosa => cosa_optimize(&spec, &spec.space, params),
            Algorithm::Vrr => vrr_optimize(
                &spec,
                &spec.space,
                &VrrParams { base: params.clone(), reduction_rate },
            ),
            Algorithm::Apcosa => apcosa::optimize(&spec, &spec.space, params),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm(pub String);

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown algorithm '{}' (expected one of cosa, vrr, apcosa)", self.0)
    }
}

impl std::error::Error for UnknownAlgorithm {}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALGORITHMS
            .iter()
            .copied()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub trials: usize,
    /// A trial succeeds when `|best - f*| <= success_tolerance`.
    pub success_tolerance: f64,
    pub algorithms: Vec<Algorithm>,
    pub benchmarks: Vec<Benchmark>,
    /// Shared by all algorithms; `seed` is replaced per trial.
    pub params: SearchParams,
    pub reduction_rate: f64,
    pub master_seed: u64,
    /// Trials run concurrently on this many threads.
    pub threads: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            trials: DEFAULT_TRIALS,
            success_tolerance: DEFAULT_TOLERANCE,
            algorithms: ALGORITHMS.to_vec(),
            benchmarks: ALL.to_vec(),
            params: SearchParams::default(),
            reduction_rate: DEFAULT_REDUCTION_RATE,
            master_seed: 0,
            threads: 1,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.trials >= 1 << 48 {
            return Err(Error::InvalidParams(format!("trial count {} out of range", self.trials)));
        }
        if self.success_tolerance.is_nan() || self.success_tolerance <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "success tolerance must be positive, got {}",
                self.success_tolerance
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidParams("thread count must be positive".into()));
        }
        self.params.validate()?;
        VrrParams { base: self.params.clone(), reduction_rate: self.reduction_rate }.validate()
    }
}

/// Seed for one trial. Injective over `(algorithm, benchmark, trial)` for a
/// fixed master seed, with `trial < 2^48`.
pub fn trial_seed(master: u64, algorithm: Algorithm, benchmark: Benchmark, trial: usize) -> u64 {
    let key = (algorithm as u64) << 56 | (benchmark.index() as u64) << 48 | trial as u64;
    mix64(master.wrapping_add(mix64(key)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub best_value: f64,
    pub success: bool,
    pub time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellReport {
    pub algorithm: Algorithm,
    pub benchmark: Benchmark,
    pub records: Vec<TrialRecord>,
}

impl CellReport {
    pub fn success_count(&self) -> usize {
        self.records.iter().filter(|r| r.success).count()
    }

    pub fn median_time(&self) -> f64 {
        median(self.records.iter().map(|r| r.time_seconds).collect())
    }

    /// Median time among successful trials only; `NaN` when none succeeded.
    pub fn median_success_time(&self) -> f64 {
        median(self.records.iter().filter(|r| r.success).map(|r| r.time_seconds).collect())
    }

    /// Median trial time divided by the success fraction: the expected
    /// wall time spent per successful trial. Infinite with no successes.
    pub fn time_per_success(&self) -> f64 {
        let successes = self.success_count();
        if successes == 0 {
            return f64::INFINITY;
        }
        self.median_time() * self.records.len() as f64 / successes as f64
    }

    pub fn mean_best_value(&self) -> f64 {
        if self.records.is_empty() {
            return f64::NAN;
        }
        self.records.iter().map(|r| r.best_value).sum::<f64>() / self.records.len() as f64
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub trials: usize,
    pub success_tolerance: f64,
    /// Ordered by algorithm, then benchmark, as listed in the config.
    pub cells: Vec<CellReport>,
}

impl ExperimentReport {
    pub fn cell(&self, algorithm: Algorithm, benchmark: Benchmark) -> Option<&CellReport> {
        self.cells
            .iter()
            .find(|c| c.algorithm == algorithm && c.benchmark == benchmark)
    }

    fn algorithms(&self) -> Vec<Algorithm> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.algorithm) {
                out.push(c.algorithm);
            }
        }
        out
    }

    fn benchmarks(&self) -> Vec<Benchmark> {
        let mut out = Vec::new();
        for c in &self.cells {
            if !out.contains(&c.benchmark) {
                out.push(c.benchmark);
            }
        }
        out
    }
}

fn run_trial<T: Scalar>(
    config: &TrialConfig,
    algorithm: Algorithm,
    benchmark: Benchmark,
    trial: usize,
) -> Result<TrialRecord> {
    let seed = trial_seed(config.master_seed, algorithm, benchmark, trial);
    let params = config.params.clone().with_seed(seed);
    let start = Instant::now();
    let result = algorithm.run::<T>(benchmark, &params, config.reduction_rate)?;
    let time_seconds = start.elapsed().as_secs_f64();
    let best_value = result.best_value.as_f64();
    Ok(TrialRecord {
        trial,
        seed,
        best_value,
        success: (best_value - benchmark.reference_value()).abs() <= config.success_tolerance,
        time_seconds,
    })
}

/// Runs every (algorithm, benchmark) pair for `config.trials` seeded trials.
pub fn run_experiment<T: Scalar>(config: &TrialConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let pool = if config.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(config.threads)
                .build()
                .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut cells = Vec::with_capacity(config.algorithms.len() * config.benchmarks.len());
    for &algorithm in &config.algorithms {
        for &benchmark in &config.benchmarks {
            let run = |t| run_trial::<T>(config, algorithm, benchmark, t);
            let records = match &pool {
                Some(pool) => pool.install(|| (0..config.trials).into_par_iter().map(run).collect()),
                None => (0..config.trials).map(run).collect::<Result<Vec<_>>>(),
            }?;
            cells.push(CellReport { algorithm, benchmark, records });
        }
    }
    Ok(ExperimentReport {
        trials: config.trials,
        success_tolerance: config.success_tolerance,
        cells,
    })
}

/// Formats with 17 significant digits, enough to round-trip any `f64`.
fn exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// One row per trial, ordered by algorithm, benchmark, then trial index.
pub fn emit_csv(report: &ExperimentReport) -> String {
    let mut out = String::with_capacity(64 * (1 + report.cells.len() * report.trials));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let mut cells: Vec<&CellReport> = report.cells.iter().collect();
    cells.sort_by_key(|c| (c.algorithm, c.benchmark));
    for cell in cells {
        let mut records: Vec<&TrialRecord> = cell.records.iter().collect();
        records.sort_by_key(|r| r.trial);
        for r in records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                cell.algorithm,
                cell.benchmark,
                r.trial,
                r.seed,
                exact(r.best_value),
                r.success,
                exact(r.time_seconds)
            );
        }
    }
    out
}

/// A parsed CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub algorithm: Algorithm,
    pub benchmark: Benchmark,
    pub record: TrialRecord,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse { line: 1, message: format!("expected header '{CSV_HEADER}'") });
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = i + 1;
        let err = |message: String| Error::Parse { line: line_no, message };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", fields.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| err(format!("bad number '{s}': {e}")));
        rows.push(CsvRow {
            algorithm: fields[0].parse().map_err(|e: UnknownAlgorithm| err(e.to_string()))?,
            benchmark: fields[1].parse().map_err(|e: crate::benchmarks::UnknownBenchmark| err(e.to_string()))?,
            record: TrialRecord {
                trial: fields[2].parse().map_err(|e| err(format!("bad trial index: {e}")))?,
                seed: fields[3].parse().map_err(|e| err(format!("bad seed: {e}")))?,
                best_value: num(fields[4])?,
                success: fields[5].parse().map_err(|e| err(format!("bad success flag: {e}")))?,
                time_seconds: num(fields[6])?,
            },
        });
    }
    Ok(rows)
}

fn display_value(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" { "0".into() } else { t.into() }
    } else {
        s
    }
}

/// Aligned text table: one row per benchmark, with success frequency and
/// median time per algorithm.
pub fn emit_table(report: &ExperimentReport) -> String {
    let algorithms = report.algorithms();
    let benchmarks = report.benchmarks();
    let col = 10;
    let group = (col * algorithms.len()).max(20);

    let mut out = String::new();
    let header = format!(
        "{:<4}{:<10}{:<22}{:<10}{:<group$}  {}",
        "No", "function", "minimum (x1*, x2*)", "F*", "success frequency", "median time (s)"
    );
    out.push_str(&header);
    out.push('\n');
    let mut sub = format!("{:<46}", "");
    for _ in 0..2 {
        let mut names = String::new();
        for a in &algorithms {
            let _ = write!(names, "{:<col$}", a.name());
        }
        let _ = write!(sub, "{names:<group$}  ");
    }
    out.push_str(sub.trim_end());
    out.push('\n');

    for (row, b) in benchmarks.iter().enumerate() {
        let [x1, x2] = b.reference_minimizer();
        let minimum = format!("({}, {})", display_value(x1), display_value(x2));
        let mut line = format!(
            "{:<4}{:<10}{:<22}{:<10}",
            row + 1,
            b.name(),
            minimum,
            display_value(b.reference_value())
        );
        let mut success = String::new();
        let mut times = String::new();
        for a in &algorithms {
            let (s, t) = match report.cell(*a, *b) {
                Some(c) => (format!("{}/{}", c.success_count(), c.records.len()), format!("{:.4}", c.median_time())),
                None => ("-".into(), "-".into()),
            };
            let _ = write!(success, "{s:<col$}");
            let _ = write!(times, "{t:<col$}");
        }
        let _ = write!(line, "{success:<group$}  {times}");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn quick(trials: usize) -> TrialConfig {
        TrialConfig {
            trials,
            params: SearchParams { inner_iterations: 2000, outer_iterations: 5, ..Default::default() },
            master_seed: 17,
            ..Default::default()
        }
    }

    #[test]
    fn generous_tolerance_always_succeeds() {
        let config = TrialConfig {
            trials: 1,
            success_tolerance: 1.0,
            algorithms: vec![Algorithm::Apcosa],
            benchmarks: vec![Benchmark::F1],
            ..Default::default()
        };
        let report = run_experiment::<f64>(&config).unwrap();
        assert_eq!(report.cells.len(), 1);
        assert_eq!(report.cells[0].success_count(), 1);
    }

    #[test]
    fn repeat_runs_match_except_timing() {
        let config = TrialConfig { benchmarks: vec![Benchmark::F2, Benchmark::F5], ..quick(3) };
        let strip = |r: ExperimentReport| {
            r.cells
                .into_iter()
                .map(|c| c.records.into_iter().map(|t| (t.seed, t.best_value, t.success)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let a = strip(run_experiment::<f64>(&config).unwrap());
        let b = strip(run_experiment::<f64>(&TrialConfig { threads: 3, ..config.clone() }).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn trial_seeds_are_injective() {
        let mut seen = HashSet::new();
        for a in ALGORITHMS {
            for b in ALL {
                for t in 0..500 {
                    assert!(seen.insert(trial_seed(42, a, b, t)));
                }
            }
        }
    }

    #[test]
    fn csv_shape_and_round_trip() {
        let empty = ExperimentReport { trials: 0, success_tolerance: 1e-3, cells: vec![] };
        assert_eq!(emit_csv(&empty), format!("{CSV_HEADER}\n"));

        let config = TrialConfig {
            algorithms: vec![Algorithm::Apcosa, Algorithm::Cosa],
            benchmarks: vec![Benchmark::F5],
            ..quick(3)
        };
        let report = run_experiment::<f64>(&config).unwrap();
        let csv = emit_csv(&report);
        assert_eq!(csv.lines().count(), 7);
        // Sorted by algorithm: cosa rows first.
        assert!(csv.lines().nth(1).unwrap().starts_with("cosa,F5,0,"));

        let rows = parse_csv(&csv).unwrap();
        for row in rows {
            let cell = report.cell(row.algorithm, row.benchmark).unwrap();
            assert_eq!(cell.records[row.record.trial], row.record);
        }
    }

    #[test]
    fn success_count_matches_records() {
        let report = run_experiment::<f64>(&TrialConfig { benchmarks: vec![Benchmark::F1], ..quick(4) }).unwrap();
        for row in parse_csv(&emit_csv(&report)).unwrap() {
            let f_star = row.benchmark.reference_value();
            assert_eq!(row.record.success, (row.record.best_value - f_star).abs() <= 1e-3);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_csv("nope\n"), Err(Error::Parse { line: 1, .. })));
        let bad = format!("{CSV_HEADER}\ncosa,F1,0,1,x,true,0.1\n");
        assert!(matches!(parse_csv(&bad), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn table_layout() {
        let record = TrialRecord { trial: 0, seed: 1, best_value: 0.0, success: true, time_seconds: 0.5 };
        let single = ExperimentReport {
            trials: 1,
            success_tolerance: 1e-3,
            cells: vec![CellReport { algorithm: Algorithm::Apcosa, benchmark: Benchmark::F1, records: vec![record.clone()] }],
        };
        let table = emit_table(&single);
        assert_eq!(table.lines().count(), 3);
        assert!(table.contains("1/1"));
        assert!(table.contains("(1, 1)"));

        let mut cells = Vec::new();
        for a in ALGORITHMS {
            for b in ALL {
                cells.push(CellReport { algorithm: a, benchmark: b, records: vec![record.clone(); 100] });
            }
        }
        let full = emit_table(&ExperimentReport { trials: 100, success_tolerance: 1e-3, cells });
        assert_eq!(full.lines().count(), 7);
        let f2 = full.lines().nth(3).unwrap();
        assert!(f2.contains("(0.0898, -0.7127)") && f2.contains("-1.0316"));
        assert_eq!(f2.matches("100/100").count(), 3);
    }

    #[test]
    fn medians() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(vec![]).is_nan());
    }

    #[test]
    fn invalid_config() {
        assert!(run_experiment::<f64>(&TrialConfig { trials: 0, ..Default::default() }).is_err());
        assert!(run_experiment::<f64>(&TrialConfig { success_tolerance: 0.0, ..Default::default() }).is_err());
        assert!(run_experiment::<f64>(&TrialConfig { reduction_rate: 1.5, ..Default::default() }).is_err());
    }
}
