use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::TempDir;
use uniform_tail::app::cli::{main_with_args, EXIT_INVALID, EXIT_OK, EXIT_VIOLATION};

fn run(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("uniform-tail").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

struct Ws {
    dir: TempDir,
}

impl Ws {
    fn new() -> Self {
        Ws { dir: TempDir::new().unwrap() }
    }
    fn path(&self) -> &Path {
        self.dir.path()
    }
    fn out(&self) -> String {
        self.path().join("out").display().to_string()
    }
    fn file(&self, name: &str, text: &str) -> String {
        write(self.path(), name, text).display().to_string()
    }
    fn result(&self, name: &str) -> PathBuf {
        self.path().join("out").join(name)
    }
}

const HEAVY: &str = r#"{"r": 1.5, "gamma": 1.0}"#;

#[test]
fn model_describe_and_report() {
    let ws = Ws::new();
    let m = ws.file("m.json", HEAVY);
    assert_eq!(run(&["model", "describe", "--model", &m, "--out", &ws.out()]), EXIT_OK);
    let d = json(&ws.result("model.json"));
    assert_eq!(d["regime"], "heavy");
    assert_eq!(d["monotone_class"], "md");
    assert_eq!(run(&["report", "--config", &m, "--out", &ws.out()]), EXIT_OK);
    let r = json(&ws.result("report.json"));
    assert_eq!(r["bound"]["theorem"], "heavy_md");
    for row in r["bound"]["values"].as_array().unwrap() {
        assert!(row["bound"].as_f64().unwrap() >= row["tail"].as_f64().unwrap());
    }
}

#[test]
fn invalid_model_exits_with_validation_code() {
    let ws = Ws::new();
    let bad = ws.file("bad.json", r#"{"r": -1.0}"#);
    assert_eq!(run(&["model", "describe", "--model", &bad]), EXIT_INVALID);
    let garbled = ws.file("garbled.json", "{not json");
    assert_eq!(run(&["psi", "--model", &garbled]), EXIT_INVALID);
    assert_eq!(run(&["psi"]), EXIT_INVALID);
    assert_eq!(run(&["no-such-command"]), EXIT_INVALID);
}

#[test]
fn bound_csv_dominates_tail() {
    let ws = Ws::new();
    let m = ws.file("m.json", HEAVY);
    let code = run(&["bound", "--model", &m, "--theorem", "heavy", "--xmin", "10", "--xmax", "1000", "--points", "7", "--out", &ws.out()]);
    assert_eq!(code, EXIT_OK);
    let (h, rows) = csv_rows(&ws.result("bound.csv"));
    assert_eq!(h, ["x", "bound", "T"]);
    assert_eq!(rows.len(), 7);
    let mut last = f64::INFINITY;
    for r in rows {
        let (b, t): (f64, f64) = (r[1].parse().unwrap(), r[2].parse().unwrap());
        assert!(b >= t && b <= last);
        last = b;
    }
    assert_eq!(run(&["bound", "--model", &m, "--theorem", "heavy", "--xmin", "5", "--xmax", "1"]), EXIT_INVALID);
    assert_eq!(run(&["bound", "--model", &m, "--theorem", "weighted"]), EXIT_INVALID);
}

#[test]
fn psi_json_and_norming_csv() {
    let ws = Ws::new();
    let m = ws.file("m.json", r#"{"r": 1.5}"#);
    assert_eq!(run(&["psi", "--model", &m, "--points", "5", "--format", "json", "--out", &ws.out()]), EXIT_OK);
    let v = json(&ws.result("psi.json"));
    for row in v.as_array().unwrap() {
        assert!(row["psi_bar"].as_f64().unwrap() >= row["psi"].as_f64().unwrap());
    }
    assert_eq!(run(&["norming", "--model", &m, "--n", "1,100,10000", "--out", &ws.out()]), EXIT_OK);
    let (h, rows) = csv_rows(&ws.result("norming.csv"));
    assert_eq!(h, ["n", "b_exact", "b_asymptotic", "ratio"]);
    assert_eq!(rows[0][1], "1");
    let sh = ws.file("s.json", r#"{"r": 1.0, "variant": {"superheavy": 1.0}}"#);
    assert_eq!(run(&["norming", "--model", &sh, "--n", "1,2", "--out", &ws.out()]), EXIT_OK);
    let (h, rows) = csv_rows(&ws.result("norming.csv"));
    assert_eq!(h, ["n", "log_B", "B"]);
    assert!((rows[1][1].parse::<f64>().unwrap() - 2.0 * (1.0 + 2f64.ln())).abs() < 1e-12);
}

fn experiment(norming: &str) -> String {
    format!(r#"{{"model": {{"r": 1.5}}, "norming": {norming}, "n_set": [1, 10, 100], "R": 2000, "seed": 5, "x_grid": [10, 30, 100]}}"#)
}

#[test]
fn simulate_is_reproducible_and_seed_overridable() {
    let ws = Ws::new();
    let e = ws.file("e.json", &experiment(r#"{"kind": "exact"}"#));
    let read = |ws: &Ws| fs::read(ws.result("simulate.csv")).unwrap();
    assert_eq!(run(&["simulate", "--experiment", &e, "--out", &ws.out()]), EXIT_OK);
    let a = read(&ws);
    assert_eq!(run(&["--seed", "5", "simulate", "--config", &e, "--out", &ws.out()]), EXIT_OK);
    assert_eq!(a, read(&ws));
    assert_eq!(run(&["--seed", "6", "simulate", "--config", &e, "--out", &ws.out()]), EXIT_OK);
    assert_ne!(a, read(&ws));
    let s = json(&ws.result("simulate_summary.json"));
    assert_eq!(s["seed"], 6);
}

#[test]
fn verify_exit_codes() {
    let ws = Ws::new();
    let ok = ws.file("ok.json", &experiment(r#"{"kind": "exact"}"#));
    assert_eq!(run(&["verify", "--experiment", &ok, "--theorem", "heavy", "--out", &ws.out()]), EXIT_OK);
    assert_eq!(json(&ws.result("verify_summary.json"))["pass"], true);
    let (h, _) = csv_rows(&ws.result("verify.csv"));
    assert_eq!(h, ["x", "n_star", "U_hat", "SE", "bound", "margin"]);
    // b(n) = 0.01 inflates every sum far beyond the bound.
    let bad = ws.file("bad.json", &experiment(r#"{"kind": "values", "values": [0.01, 0.01, 0.01]}"#));
    assert_eq!(run(&["verify", "--experiment", &bad, "--theorem", "thm21", "--out", &ws.out()]), EXIT_VIOLATION);
    assert_eq!(json(&ws.result("verify_summary.json"))["pass"], false);
}

#[test]
fn ci_from_sample_file() {
    let ws = Ws::new();
    let m = ws.file("m.json", r#"{"r": 1.5}"#);
    let samples: String = (0..1000).map(|k| format!("{}\n", 3.0 + if k % 2 == 0 { 0.5 } else { -0.5 })).collect();
    let s = ws.file("s.txt", &samples);
    assert_eq!(run(&["ci", "--model", &m, "--samples", &s, "--truth", "3", "--out", &ws.out()]), EXIT_OK);
    let r = json(&ws.result("ci.json"));
    assert_eq!(r["hit"], true);
    assert_eq!(r["n"], 1000);
    let hw = r["half_width"].as_f64().unwrap();
    let want = r["x_delta"].as_f64().unwrap() * r["b_n"].as_f64().unwrap() / 1000.0;
    assert!((hw - want).abs() < 1e-12 * want);
    let junk = ws.file("junk.txt", "1\nabc\n");
    assert_eq!(run(&["ci", "--model", &m, "--samples", &junk]), EXIT_INVALID);
}

#[test]
fn fields_from_points_and_samples() {
    let ws = Ws::new();
    let pts: String = std::iter::once("index,x\n".to_string()).chain((0..9).map(|i| format!("{i},{}\n", i as f64 / 8.0))).collect();
    let p = ws.file("p.csv", &pts);
    assert_eq!(run(&["fields", "--points", &p, "--r", "3", "--out", &ws.out()]), EXIT_OK);
    let (h, rows) = csv_rows(&ws.result("profile.csv"));
    assert_eq!(h, ["eps", "N", "H"]);
    let ns: Vec<usize> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*ns.last().unwrap(), 9);
    let e = json(&ws.result("entropy.json"));
    assert_eq!(e["exact_covering"], true);
    assert_eq!(e["continuity"]["finiteness"], "finite");
    assert!(e["continuity"]["value"].as_f64().unwrap() > 0.0);

    let samples = "a,b,c\n0,1,2\n0,-1,2\n1,1,3\n";
    let s = ws.file("s.csv", samples);
    assert_eq!(run(&["fields", "--samples", &s, "--r", "2", "--out", &ws.out()]), EXIT_OK);
    assert_eq!(run(&["fields", "--points", &p, "--samples", &s]), EXIT_INVALID);
}
