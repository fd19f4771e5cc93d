use std::path::Path;
use std::process::{Command, Output};

fn apcosa(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apcosa"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn optimize_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let o = apcosa(&["optimize", "--benchmark", "F1", "--algorithm", "apcosa", "--seed", "42"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let value: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("best_value: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(value < 1e-3);
    assert!(out.contains("evaluations: "));
    assert!(out.contains("elapsed_seconds: "));
}

#[test]
fn unknown_names_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = apcosa(&["optimize", "--benchmark", "F9"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("F9"));

    let o = apcosa(&["optimize", "--benchmark", "F1", "--algorithm", "newton"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("newton"));

    let o = apcosa(&["surface", "--benchmark", "F0"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_flags_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(apcosa(&["optimize", "--bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(apcosa(&["optimize", "-N", "many"], dir.path()).status.code(), Some(2));
    assert_eq!(apcosa(&["frobnicate"], dir.path()).status.code(), Some(2));
}

#[test]
fn optimize_is_reproducible_except_timing() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["optimize", "--benchmark", "F5", "--algorithm", "apcosa", "--seed", "7", "-M", "8", "-N", "20000", "-p", "10"];
    let strip = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.starts_with("elapsed_seconds"))
            .map(str::to_owned)
            .collect::<Vec<_>>()
    };
    let a = apcosa(&args, dir.path());
    let b = apcosa(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a).len(), 6);
}

#[test]
fn bench_writes_csv_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = apcosa(
        &["bench", "--trials", "5", "--benchmarks", "F1", "--algorithms", "apcosa", "--seed", "1"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().next().unwrap().contains("epsilon=1e-3"));
    assert!(out.contains("5/5"));

    let csv = std::fs::read_to_string(dir.path().join("bench.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert_eq!(csv.lines().next().unwrap(), apcosa::harness::CSV_HEADER);
    let rows = apcosa::parse_csv(&csv).unwrap();
    assert!(rows.iter().all(|r| r.record.success));

    // Same seed, same data apart from timing.
    let path = dir.path().join("again.csv");
    let o = apcosa(
        &["bench", "--trials", "5", "--benchmarks", "F1", "--algorithms", "apcosa", "--seed", "1", "-o", path.to_str().unwrap()],
        dir.path(),
    );
    assert!(o.status.success());
    let again = apcosa::parse_csv(&std::fs::read_to_string(path).unwrap()).unwrap();
    let key = |rows: &[apcosa::harness::CsvRow]| {
        rows.iter().map(|r| (r.record.seed, r.record.best_value.to_bits())).collect::<Vec<_>>()
    };
    assert_eq!(key(&rows), key(&again));
}

#[test]
fn bench_unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = apcosa(
        &["bench", "--trials", "1", "--output", "/nonexistent-dir/out.csv"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn surface_grid() {
    let dir = tempfile::tempdir().unwrap();
    let o = apcosa(&["surface", "--benchmark", "F1", "--resolution", "3"], dir.path());
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("x1,x2,f"));
    let rows: Vec<[f64; 3]> = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect();
    assert_eq!(rows.len(), 9);
    // Row-major with x1 fastest; endpoints exact.
    assert_eq!(rows[0][..2], [-2.048, -2.048]);
    assert_eq!(rows[1][..2], [0.0, -2.048]);
    assert_eq!(rows[8][..2], [2.048, 2.048]);
    assert_eq!(rows[4][..2], [0.0, 0.0]);
    let corner = 100.0 * (2.048f64 * 2.048 + 2.048).powi(2) + (1.0f64 + 2.048).powi(2);
    assert!((rows[0][2] - corner).abs() < 1e-9);
    assert!((rows[0][2] - 3905.93).abs() < 0.01);

    let path = dir.path().join("f5.csv");
    let o = apcosa(&["surface", "--benchmark", "F5", "--resolution", "3", "-o", path.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    let center: Vec<f64> = text.lines().nth(5).unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(center, vec![0.0, 0.0, 600.0]);

    assert_eq!(apcosa(&["surface", "--benchmark", "F1", "--resolution", "1"], dir.path()).status.code(), Some(1));
}

#[test]
fn config_file_layering() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# defaults for this run\nbenchmark = F5\nN = 2000\nM = 4\nseed = 3\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let o = apcosa(&["--config", cfg, "optimize"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("benchmark: F5"));
    // p + N + 2 p' floor(N / p') + N, at most M N + p.
    let evals: u64 = out.lines().find_map(|l| l.strip_prefix("evaluations: ")).unwrap().parse().unwrap();
    assert!(evals <= 4 * 2000 + 10 && evals > 2 * 2000);

    // A flag overrides the file.
    let o = apcosa(&["optimize", "--config", cfg, "--benchmark", "F1", "--algorithm", "cosa"], dir.path());
    let out = stdout(&o);
    assert!(out.contains("benchmark: F1"));
    assert!(out.contains("evaluations: 8000"));

    std::fs::write(dir.path().join("bad.conf"), "colour = blue\n").unwrap();
    let o = apcosa(&["--config", "bad.conf", "optimize", "--benchmark", "F1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}
