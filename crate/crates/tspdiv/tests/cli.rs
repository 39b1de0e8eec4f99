//! End-to-end checks of the command-line interface: subcommands, file
//! outputs and exit codes (0 success, 1 usage error, 2 input error).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tspdiv"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn run_on_unit_instance_reports_scores() {
    let out = bin()
        .args(["run", "--unit", "20", "--mu", "3", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("unit-20"));
    assert!(text.contains("optimum-reached"));
    assert!(text.contains("gtype%=100.00"));
}

#[test]
fn run_writes_records_and_artifact_then_renders() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "run",
            "--instance",
            data("eil51.tsp").to_str().unwrap(),
            "--opt-tour",
            data("eil51.opt.tour").to_str().unwrap(),
            "--mu",
            "4",
            "--alpha",
            "0.2",
            "--max-iters",
            "2000",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records = dir.path().join("records.csv");
    let artifact = dir.path().join("run.json");
    assert!(records.exists() && artifact.exists());
    let csv = std::fs::read_to_string(&records).unwrap();
    assert!(csv.starts_with(
        "instance,n,mu,alpha,measure,mutation,seed,iterations,terminated,gtype,gtype_percent,div,sigma"
    ));
    assert_eq!(csv.lines().count(), 2);

    for style in ["edge-counts", "population"] {
        let svg_path = dir.path().join(format!("{style}.svg"));
        let out = bin()
            .args([
                "render",
                "--record",
                artifact.to_str().unwrap(),
                "--style",
                style,
                "--out",
                svg_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let svg = std::fs::read_to_string(&svg_path).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<line"));
    }
}

#[test]
fn run_emits_json_lines_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "run",
            "--unit",
            "12",
            "--mu",
            "3",
            "--format",
            "jsonl",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let jsonl = std::fs::read_to_string(dir.path().join("records.jsonl")).unwrap();
    assert_eq!(jsonl.lines().count(), 1);
    let row: serde_json::Value = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
    assert_eq!(row["instance"], "unit-12");
    assert_eq!(row["mu"], 3);
}

#[test]
fn oracle_prints_optimum_and_dumps_population() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("tours.txt");
    let out = bin()
        .args(["oracle", "--n", "7", "--mu", "4", "--out", dump.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("optimal_gtype=70"));
    assert!(text.contains("spread_ok=true"));
    let tours = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(tours.matches("-1").count(), 4);
}

#[test]
fn corr_reads_records_and_writes_scatter() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("records.csv");
    let mut csv = String::from(
        "instance,n,mu,alpha,measure,mutation,seed,iterations,terminated,gtype,gtype_percent,div,sigma\n",
    );
    for i in 0..6 {
        let sigma = 0.1 * i as f64;
        let div = 1.0 - sigma;
        csv.push_str(&format!(
            "unit-10,10,3,0,ed,2opt,{i},100,budget-exhausted,50,80,{div},{sigma}\n"
        ));
    }
    std::fs::write(&records, csv).unwrap();
    let scatter = dir.path().join("scatter.csv");
    let out = bin()
        .args([
            "corr",
            "--records",
            records.to_str().unwrap(),
            "--scatter",
            scatter.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("pearson_r(sigma, div) = -1.0000"));
    assert!(std::fs::read_to_string(&scatter).unwrap().starts_with("sigma,div"));
}

#[test]
fn corr_with_degenerate_variance_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("records.csv");
    let mut csv = String::from(
        "instance,n,mu,alpha,measure,mutation,seed,iterations,terminated,gtype,gtype_percent,div,sigma\n",
    );
    for i in 0..4 {
        csv.push_str(&format!(
            "unit-10,10,3,0,ed,2opt,{i},100,optimum-reached,60,100,1,0\n"
        ));
    }
    std::fs::write(&records, csv).unwrap();
    let out = bin()
        .args(["corr", "--records", records.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero variance"));
}

#[test]
fn usage_errors_exit_with_one() {
    // Missing required --mu.
    let out = bin().args(["run", "--unit", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Unknown subcommand.
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // --instance without --opt-tour.
    let out = bin()
        .args([
            "run",
            "--instance",
            data("eil51.tsp").to_str().unwrap(),
            "--mu",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Both --instance and --unit.
    let out = bin()
        .args([
            "run",
            "--instance",
            data("eil51.tsp").to_str().unwrap(),
            "--unit",
            "10",
            "--mu",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    // Nonexistent instance file.
    let out = bin()
        .args([
            "run",
            "--instance",
            "/nonexistent/foo.tsp",
            "--opt-tour",
            "/nonexistent/foo.opt.tour",
            "--mu",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Malformed records file.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("records.csv");
    std::fs::write(&bad, "not,a,header\n").unwrap();
    let out = bin()
        .args(["corr", "--records", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    for args in [vec!["--help"], vec!["--version"], vec!["run", "--help"]] {
        let out = bin().args(&args).output().unwrap();
        assert!(out.status.success(), "args {args:?}");
    }
}

#[test]
fn plan_tiny_battery_emits_summary_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "plan",
            "--preset",
            "unconstrained-desk",
            "--replicates",
            "1",
            "--jobs",
            "2",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("records.csv")).unwrap();
    // 2 instances x 2 mus x 2 measures x 3 mutations x 1 replicate.
    assert_eq!(csv.lines().count(), 25);
    assert!(stdout(&out).contains("gtype%"));
}
