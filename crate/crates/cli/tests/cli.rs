use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betti-scope"))
        .args(args)
        .current_dir(dir)
        .env_remove("BETTI_SCOPE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn gen(dir: &Path, file: &str, args: &[&str]) {
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", file]);
    let o = bin(dir, &all);
    assert!(o.status.success(), "{}", stderr(&o));
}

fn report(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn betti_of_hollow_triangle() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("triangle.cplx"), "# hollow\ndim 2\ns 0 1\ns 1 2\ns 0 2\n").unwrap();
    let o = bin(dir.path(), &["betti", "triangle.cplx"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "b = [1, 1]\n");
}

#[test]
fn gen_writes_cplx() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "t.cplx", &["--kind", "torus", "--n", "4"]);
    let text = fs::read_to_string(dir.path().join("t.cplx")).unwrap();
    assert!(text.starts_with("# cplx v1\ndim 6\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("s ")).count(), 32);
    let o = bin(dir.path(), &["betti", "t.cplx"]);
    assert_eq!(stdout(&o), "b = [1, 2, 1]\n");
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for name in ["a.cplx", "b.cplx"] {
        gen(dir.path(), name, &["--kind", "random-flag", "--n", "40", "--d", "4", "--seed", "9"]);
    }
    assert_eq!(fs::read(dir.path().join("a.cplx")).unwrap(), fs::read(dir.path().join("b.cplx")).unwrap());
}

#[test]
fn verify_passes_on_torus() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "t.cplx", &["--kind", "torus", "--n", "5"]);
    let o = bin(dir.path(), &["--report", "v.json", "verify", "t.cplx"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    for p in ["d1 d0 = 0", "Δ^1 PSD", "dim ker Δ^1 = b1", "Δ^2 pseudo-determinant >= 1", "Δ^0 logarithmic kernel bound"] {
        assert!(out.contains(&format!("PASS {p}")), "missing {p} in\n{out}");
    }
    let r = report(dir.path(), "v.json");
    assert_eq!(r["outputs"]["failed"], 0);
    assert_eq!(r["outputs"]["betti"], serde_json::json!([1, 2, 1]));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.cplx"), "dim 2\ns 0 1\n# note\ns 0 y\n").unwrap();
    let o = bin(dir.path(), &["betti", "bad.cplx"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.cplx: line 4"), "{}", stderr(&o));

    fs::write(dir.path().join("deg.cplx"), "dim 2\ns 0 1\ns 0 2\ns 0 3\n").unwrap();
    let o = bin(dir.path(), &["verify", "deg.cplx"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"));
}

#[test]
fn missing_family_parameter_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = bin(dir.path(), &["gen", "--kind", "sphere"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--k"));
}

#[test]
fn estimate_report_carries_bounds_and_seeds() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "big.cplx", &["--kind", "cycle", "--n", "3", "--copies", "300"]);
    let args = ["--report", "e.json", "estimate", "--dim", "1", "--eps", "0.05", "--seed", "7", "big.cplx"];
    let o = bin(dir.path(), &args);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(dir.path(), "e.json");
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "estimate");
    assert_eq!(r["params"]["seed"], 7);
    assert_eq!(r["seeds"], serde_json::json!([7]));
    let e = &r["outputs"]["estimate"];
    assert!((e["per_vertex"].as_f64().unwrap() - 1.0 / 3.0).abs() < 0.05);
    assert!(e["bound_term"].as_f64().unwrap() > 0.0);
    assert!(r["outputs"]["summary"]["cheb_moments"].as_array().unwrap().len() > 16);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    // same inputs and seed, same numbers
    let o = bin(dir.path(), &["--report", "f.json", "--threads", "2", "estimate", "--dim", "1", "--eps", "0.05", "--seed", "7", "big.cplx"]);
    assert!(o.status.success());
    let again = report(dir.path(), "f.json");
    assert_eq!(r["outputs"], again["outputs"]);
    assert_eq!(r["inputs"], again["inputs"]);
}

#[test]
fn digest_is_of_canonical_text() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("a.cplx"), "dim 2\ns 2 1\ns 0 1\n").unwrap();
    fs::write(dir.path().join("b.cplx"), "# same complex\ndim 2\ns 0 1\n\ns 1 2\n").unwrap();
    for (f, r) in [("a.cplx", "a.json"), ("b.cplx", "b.json")] {
        assert!(bin(dir.path(), &["--report", r, "betti", f]).status.success());
    }
    assert_eq!(report(dir.path(), "a.json")["inputs"][0]["sha256"], report(dir.path(), "b.json")["inputs"][0]["sha256"]);
}

#[test]
fn profile_and_distance() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), "t6.cplx", &["--kind", "torus", "--n", "6"]);
    gen(dir.path(), "t7.cplx", &["--kind", "torus", "--n", "7"]);
    gen(dir.path(), "c.cplx", &["--kind", "cycle", "--n", "9"]);
    let o = bin(dir.path(), &["profile", "t6.cplx", "--radius", "2"]);
    let p: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((p["r"].as_u64(), p["i"].as_u64(), p["total"].as_u64()), (Some(2), Some(0), Some(36)));
    assert_eq!(p["counts"].as_object().unwrap().len(), 1);

    let o = bin(dir.path(), &["distance", "t6.cplx", "t7.cplx", "--rmax", "2"]);
    assert!(stdout(&o).starts_with("d_s = 0 "), "{}", stdout(&o));
    let o = bin(dir.path(), &["distance", "t6.cplx", "c.cplx", "--rmax", "2"]);
    assert!(!stdout(&o).starts_with("d_s = 0 "));
}

#[test]
fn spectrum_exports_triplets() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("e.cplx"), "dim 1\ns 0 1\n").unwrap();
    let o = bin(dir.path(), &["spectrum", "e.cplx", "--dim", "0", "--triplets", "l.txt"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("l.txt")).unwrap(), "% 2 2 4\n0 0 1\n0 1 -1\n1 0 -1\n1 1 1\n");
    assert!(stdout(&o).contains("n = 2, K = 4, kernel = 1"));
}

#[test]
fn corpus_test_matches_and_reports_no_match() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    gen(&corpus, "hollow.cplx", &["--kind", "cycle", "--n", "3", "--copies", "30", "--degree-bound", "6"]);
    gen(&corpus, "solid.cplx", &["--kind", "simplex", "--k", "2", "--copies", "30", "--degree-bound", "6"]);
    gen(&corpus, "torus.cplx", &["--kind", "torus", "--n", "6"]);
    gen(dir.path(), "q.cplx", &["--kind", "simplex", "--k", "2", "--copies", "200", "--degree-bound", "6"]);
    gen(dir.path(), "five.cplx", &["--kind", "cycle", "--n", "5", "--copies", "20", "--degree-bound", "6"]);

    let o = bin(dir.path(), &["--report", "t.json", "test", "q.cplx", "--corpus", "corpus", "--eps", "0.1", "--dim", "1", "--seed", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("matched solid"));
    let r = report(dir.path(), "t.json");
    assert_eq!(r["outputs"]["outcome"]["estimate"], 0.0);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 4);

    let o = bin(dir.path(), &["test", "five.cplx", "--corpus", "corpus", "--eps", "0.1", "--dim", "1", "--rho", "0.1"]);
    assert_eq!(o.status.code(), Some(3));
}
