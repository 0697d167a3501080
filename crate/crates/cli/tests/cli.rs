//! End-to-end runs of the `telegraph` binary.

use serde_json::Value;
use std::process::{Command, Output};
use telegraph_cli::report::{SolveOutput, SweepOutput};
use telegraph_cli::{ProblemSpec, RunConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_telegraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn solve_json(args: &[&str]) -> SolveOutput {
    let mut a = vec!["solve", "--format", "json"];
    a.extend_from_slice(args);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn without_timings(text: &str) -> Value {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v
}

fn error_object(out: &Output) -> Value {
    let err = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(err.trim()).unwrap_or_else(|_| panic!("stderr is not JSON: {err}"))
}

#[test]
fn example1_solves_to_rounding() {
    let out = solve_json(&["--example", "1", "--n", "4", "--mt", "4"]);
    let n = out.norms.unwrap();
    assert!(n.big_linf <= 1e-12, "{n:?}");
    assert!(n.l1.max(n.l2).max(n.linf).max(n.rms) <= 1e-12);
    assert_eq!(out.l_plus_1, 25);
    assert_eq!(out.alpha_stars.len(), 5);
    assert_eq!(out.coefficient_bound_violations, Some(0));
    assert_eq!(out.problem_id, "example1");
}

#[test]
fn example2_near_published_value() {
    let out = solve_json(&["--example", "2", "--n", "8", "--mt", "8"]);
    let e = out.norms.unwrap().big_linf;
    assert!((1.42e-10..=1.42e-8).contains(&e), "{e}");
}

#[test]
fn json_is_deterministic_apart_from_timings() {
    let args = ["solve", "--example", "1", "--n", "4", "--mt", "4", "--format", "json"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(without_timings(&a), without_timings(&b));
    let v: Value = serde_json::from_str(&a).unwrap();
    for key in ["config", "problem_id", "norms", "timings", "L_plus_1", "alpha_stars"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for key in ["l1", "l2", "linf", "Linf", "rms"] {
        assert!(v["norms"].get(key).is_some(), "missing norms.{key}");
    }
    for key in ["assemble_s", "solve_s", "total_s"] {
        assert!(v["timings"][key].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn json_round_trip_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let path_s = path.to_str().unwrap();
    let args = [
        "solve", "--example", "3", "--nx", "5", "--nt", "4", "--mt", "6", "--alpha", "0.25", "--format", "json",
        "--out", path_s, "--probe", "0.5,0.5",
    ];
    assert!(stdout(&args).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let out: SolveOutput = serde_json::from_str(&text).unwrap();
    let expected = RunConfig {
        nx: 5,
        nt: 4,
        mt: 6,
        alpha: 0.25,
        format: telegraph_cli::Format::Json,
        out: Some(path_s.to_string()),
        probes: vec![[0.5, 0.5]],
        ..RunConfig::square(1)
    };
    assert_eq!(out.config, expected);
    assert_eq!(out.problem, ProblemSpec::Registry { id: 3 });

    let replayed = stdout(&["solve", "--replay", path_s, "--out", dir.path().join("again.json").to_str().unwrap()]);
    assert!(replayed.is_empty());
    let again = std::fs::read_to_string(dir.path().join("again.json")).unwrap();
    let mut a = without_timings(&text);
    let mut b = without_timings(&again);
    a["config"].as_object_mut().unwrap().remove("out");
    b["config"].as_object_mut().unwrap().remove("out");
    assert_eq!(a, b);
}

#[test]
fn custom_problem_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    std::fs::write(
        &file,
        "# sin x cos t\nbeta1 = 12\nbeta2 = 4\nf = 4*(cos(t) - 3*sin(t))*sin(x)\n\
         g1 = sin(x)\ng2 = 0\nh1 = 0\nh2 = sin(1)*cos(t)\nexact = sin(x)*cos(t)\n",
    )
    .unwrap();
    let custom = solve_json(&["--problem", file.to_str().unwrap(), "--n", "6"]);
    let registry = solve_json(&["--example", "3", "--n", "6"]);
    assert_eq!(custom.problem_id, "custom");
    let (c, r) = (custom.norms.unwrap(), registry.norms.unwrap());
    assert!((c.big_linf - r.big_linf).abs() <= 1e-3 * r.big_linf, "{c:?} vs {r:?}");
    assert!(custom.coefficient_bound_violations.is_none());

    let replay_path = dir.path().join("custom.json");
    std::fs::write(&replay_path, serde_json::to_string(&custom).unwrap()).unwrap();
    let again: SolveOutput =
        serde_json::from_str(&stdout(&["solve", "--replay", replay_path.to_str().unwrap()])).unwrap();
    assert_eq!(again.problem, custom.problem);
    assert_eq!(again.norms, custom.norms);
}

#[test]
fn problem_without_exact_still_solves() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    std::fs::write(&file, "beta1 = 1\nbeta2 = 2\nl = 2\ntau = 0.5\nf = x*t\ng1 = 0\ng2 = 0\nh1 = 0\nh2 = 0\n").unwrap();
    let out = solve_json(&["--problem", file.to_str().unwrap(), "--n", "5", "--probe", "1,0.25"]);
    assert!(out.norms.is_none());
    assert!(out.probes[0].error.is_none());
    assert!(out.residual < 1e-12);
    let table = stdout(&["solve", "--problem", file.to_str().unwrap(), "--n", "5"]);
    assert!(table.contains("error norms skipped"));
}

#[test]
fn quadrature_examples() {
    let out = stdout(&[
        "quadrature", "--kind", "optimal", "--m", "10", "--L", "1", "--nodes", "0.5", "--integrand", "exp(x)",
        "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let r = v["results"][0].as_f64().unwrap();
    assert!((r - 0.6487212707).abs() < 1e-10, "{r}");
    assert!((r - (0.5f64.exp() - 1.0)).abs() < 1e-14);

    let out = stdout(&[
        "quadrature", "--kind", "s", "--alpha", "0", "--n", "5", "--upper-all", "--integrand", "1", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let nodes = v["nodes"].as_array().unwrap();
    let results = v["results"].as_array().unwrap();
    assert_eq!(nodes.len(), 6);
    for (x, r) in nodes.iter().zip(results) {
        assert!((x.as_f64().unwrap() - r.as_f64().unwrap()).abs() < 1e-15);
    }
}

#[test]
fn quadrature_reports_errors_against_exact() {
    let out = stdout(&[
        "quadrature", "--kind", "s", "--alpha", "0.5", "--n", "12", "--L", "2", "--nodes", "0.3,1.1,2",
        "--order", "2", "--integrand", "cos(x)", "--exact", "1 - cos(x)", "--format", "csv",
    ]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["i", "upper", "result", "exact", "error", "alpha_star"]);
    for rec in rdr.records() {
        let err: f64 = rec.unwrap()[4].parse().unwrap();
        assert!(err < 1e-9, "{err}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["solve", "--example", "1", "--n", "4", "--alpha", "-0.6"],
        vec!["quadrature", "--alpha", "-0.6", "--nodes", "0.5", "--integrand", "x"],
        vec!["nodes", "--alpha", "-0.6", "--n", "3"],
        vec!["solve", "--example", "7", "--n", "4"],
        vec!["solve", "--example", "1"],
        vec!["solve", "--example", "1", "--n", "0"],
        vec!["sweep", "--example", "1", "--ns", "4..2"],
        vec!["solve", "--example", "1", "--n", "4", "--frobnicate"],
        vec!["quadrature", "--nodes", "1.5", "--integrand", "x"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let e = error_object(&out);
        assert_eq!(e["error"]["kind"], "usage", "{args:?}");
        assert_eq!(e["error"]["exit_code"], 2);
    }
    let out = run(&["solve", "--example", "1", "--n", "4", "--alpha", "-0.6"]);
    assert!(error_object(&out)["error"]["message"].as_str().unwrap().contains("range"));
}

#[test]
fn parse_errors_exit_3() {
    let out = run(&["quadrature", "--nodes", "0.5", "--integrand", "exp(x"]);
    assert_eq!(out.status.code(), Some(3));
    let e = error_object(&out);
    assert_eq!(e["error"]["kind"], "parse");
    assert_eq!(e["error"]["offset"], 5);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    std::fs::write(&file, "beta1 = 1\nbeta2 = 1\nf = foo(x)\ng1=0\ng2=0\nh1=0\nh2=0\n").unwrap();
    let out = run(&["solve", "--problem", file.to_str().unwrap(), "--n", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let replay = dir.path().join("r.json");
    std::fs::write(&replay, "{\"config\": 3}").unwrap();
    assert_eq!(run(&["solve", "--replay", replay.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn sweep_csv_contract() {
    let out = stdout(&["sweep", "--example", "1", "--ns", "4,6,8", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["N", "Mt", "L_plus_1", "l1", "l2", "linf", "Linf", "rms", "seconds"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    for (row, n) in rows.iter().zip([4usize, 6, 8]) {
        assert_eq!(row[0].parse::<usize>().unwrap(), n);
        assert_eq!(row[1].parse::<usize>().unwrap(), n);
        assert_eq!(row[2].parse::<usize>().unwrap(), (n + 1) * (n + 1));
        assert!(row[6].parse::<f64>().unwrap() <= 1e-12);
        assert!(row[8].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn sweep_timing_grows_with_size() {
    let out = stdout(&["sweep", "--example", "4", "--ns", "4,28", "--mt-rule", "cap:6", "--lattice", "10", "--format", "json"]);
    let s: SweepOutput = serde_json::from_str(&out).unwrap();
    let t: Vec<f64> = s.rows.iter().map(|r| r.seconds.unwrap()).collect();
    assert!(t.iter().all(|&v| v > 0.0));
    assert!(t[1] > t[0], "{t:?}");
    assert_eq!(s.rows[1].mt, 6);
}

#[test]
fn parallel_sweep_keeps_row_order_and_values() {
    let args = |jobs: &'static str| {
        vec!["sweep", "--example", "3", "--ns", "2..8", "--format", "json", "--jobs", jobs]
    };
    let a: SweepOutput = serde_json::from_str(&stdout(&args("1"))).unwrap();
    let b: SweepOutput = serde_json::from_str(&stdout(&args("4"))).unwrap();
    assert_eq!(a.rows.len(), 7);
    for (x, y) in a.rows.iter().zip(&b.rows) {
        assert_eq!(x.n, y.n);
        assert_eq!(x.norms, y.norms);
    }
    assert!(a.linf_slope.unwrap() < -1.0);
}

#[test]
fn sweep_tolerates_failed_rows() {
    let out = run(&["sweep", "--example", "1", "--ns", "0,3", "--format", "csv"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("N = 0"));
    let out = run(&["sweep", "--example", "1", "--ns", "0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn nodes_and_tables() {
    let out = stdout(&["nodes", "--alpha", "0.5", "--n", "3", "--L", "2", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let w: f64 = rows.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!(w > 0.0);
    let table = stdout(&["sweep", "--example", "2", "--ns", "4,6"]);
    assert!(table.contains("Linf") && table.contains("slope"));
    let table = stdout(&["quadrature", "--kind", "optimal", "--m", "4", "--nodes", "0.2,0.9", "--integrand", "x^2"]);
    assert!(table.contains("alpha*"));
    assert!(stdout(&["--help"]).contains("solve"));
}
