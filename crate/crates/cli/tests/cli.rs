use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dkbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkbound")).args(args).env_remove("DKBOUND_SEED").output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const DIAG3: &str = "n 3\n0 0 0\n0 1 0\n0 0 2\n";
const SHIFTED3: &str = "n 3\n0.1 0 0\n0 1.1 0\n0 0 2.1\n";

/// Writes A, L and L_sym of a random regular graph into `dir`.
fn operators(dir: &TempDir, n: usize, d: usize, seed: u64) -> [PathBuf; 3] {
    let out = dkbound(&[
        "operators",
        "--random-regular",
        &n.to_string(),
        &d.to_string(),
        "--seed",
        &seed.to_string(),
        "--out",
        s(dir.path()),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    ["adjacency.txt", "laplacian.txt", "normalized_laplacian.txt"].map(|f| dir.path().join(f))
}

#[test]
fn compare_identical_matrices_gives_zero_bounds() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "n 3\n2 -1 0\n-1 2 -1\n0 -1 2\n");
    let out = dkbound(&["compare", s(&m), s(&m), "--j", "0", "--r", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["feasible"], true);
    assert!(v["report"]["rho1_attained"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["report"]["bound_rho1"].as_f64(), Some(0.0));
    assert_eq!(v["report"]["bound_rho2"].as_f64(), Some(0.0));
}

#[test]
fn compare_diagonal_fixture() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.txt", DIAG3);
    let psi = write(&dir, "psi.txt", SHIFTED3);
    let out = dkbound(&["compare", s(&phi), s(&psi), "--r", "1"]);
    assert_eq!(code(&out), 0);
    let rep = &stdout_json(&out)["report"];
    assert!((rep["delta_used"].as_f64().unwrap() - 1.1).abs() < 1e-12);
    let expected = 2f64.sqrt() * 0.1 / 1.1;
    assert!((rep["bound_rho1"].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn compare_regular_laplacians_with_search() {
    let dir = TempDir::new().unwrap();
    let [_, l, lsym] = operators(&dir, 30, 4, 11);
    let out = dkbound(&["compare", s(&l), s(&lsym), "--r", "3", "--search-affine"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert!(v["report"]["bound_rho1"].as_f64().unwrap() <= 1e-8);
    let coeffs = v["report"]["transform"]["coefficients"].as_array().unwrap();
    assert!((coeffs[1].as_f64().unwrap() - 0.25).abs() < 1e-6);
    assert!(v["search"]["evaluations"].as_u64().unwrap() > 0);
}

#[test]
fn compare_shape_mismatch_is_input_error() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", DIAG3);
    let b = write(&dir, "b.txt", "n 4\n1 0 0 0\n0 2 0 0\n0 0 3 0\n0 0 0 4\n");
    let out = dkbound(&["compare", s(&a), s(&b), "--r", "1"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("shape mismatch"));
    assert!(out.stdout.is_empty());
}

#[test]
fn compare_infeasible_transform_exits_2() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.txt", DIAG3);
    let psi = write(&dir, "psi.txt", SHIFTED3);
    // a huge offset pushes every transformed value far from the Ψ block
    let out = dkbound(&["compare", s(&phi), s(&psi), "--r", "1", "--j", "1", "--c0", "100"]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["feasible"], false);
    assert!(v["failure"].as_str().is_some());
    assert!(v["report"]["bound_rho1"].is_null());
}

#[test]
fn compare_gap_violation_exits_2() {
    let dir = TempDir::new().unwrap();
    let flat = write(&dir, "flat.txt", "n 3\n0 0 0\n0 1 0\n0 0 1\n");
    let out = dkbound(&["compare", s(&flat), s(&flat), "--r", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("eigengap"));
}

#[test]
fn compare_input_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", DIAG3);
    let asym = write(&dir, "asym.txt", "n 2\n1 2\n3 1\n");
    let junk = write(&dir, "junk.txt", "n 2\n1 x\n2 1\n");
    for bad in [&asym, &junk] {
        let out = dkbound(&["compare", s(bad), s(bad), "--r", "1"]);
        assert_eq!(code(&out), 1, "{}", bad.display());
    }
    assert_eq!(code(&dkbound(&["compare", s(&good), s(&good), "--r", "4"])), 1);
    assert_eq!(code(&dkbound(&["compare", s(&good), s(&good), "--r", "1", "--poly", "1,2,3,4,5,6,7,8"])), 1);
    assert_eq!(code(&dkbound(&["compare", s(&good)])), 1);
    assert_eq!(code(&dkbound(&["compare", s(&good), s(&dir.path().join("missing.txt")), "--r", "1"])), 1);
}

#[test]
fn compare_warns_on_symmetrization() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "n 2\n1 0.5\n0.500000000001 3\n");
    let out = dkbound(&["compare", s(&m), s(&m), "--r", "1"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("symmetrized"));
}

#[test]
fn compare_csv_and_out_file() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.txt", DIAG3);
    let psi = write(&dir, "psi.txt", SHIFTED3);
    let file = dir.path().join("report.csv");
    let out = dkbound(&["compare", s(&phi), s(&psi), "--r", "1", "--format", "csv", "--out", s(&file)]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("rho1,rho2,numerator,delta,bound_rho1,bound_rho2,coefficients\n"));
    assert_eq!(fs::read_to_string(&file).unwrap(), text);
}

#[test]
fn compare_polynomial_transform() {
    let dir = TempDir::new().unwrap();
    let phi = write(&dir, "phi.txt", DIAG3);
    let psi = write(&dir, "psi.txt", "n 3\n0 0 0\n0 1 0\n0 0 4\n");
    // p(x) = x² maps diag(0,1,2) onto diag(0,1,4)
    let out = dkbound(&["compare", s(&phi), s(&psi), "--r", "2", "--poly", "0,0,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["report"]["bound_rho1"].as_f64(), Some(0.0));
}

#[test]
fn feasibility_adjacency_against_laplacian() {
    let dir = TempDir::new().unwrap();
    let n = 24;
    let [a, l, _] = operators(&dir, n, 4, 5);
    let j_phi = (n - 3).to_string();
    let out = dkbound(&["feasibility", s(&a), s(&l), "--r", "3", "--j", "0", "--j-phi", &j_phi, "--search-affine"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["standard_feasible"], false);
    assert!(v["reason"].as_str().is_some());
    assert_eq!(v["affine"]["found"], true);
    assert!(v["affine"]["c1"].as_f64().unwrap() < 0.0);
    assert!(v["affine"]["bound_rho1"].as_f64().unwrap() <= 1e-8);

    // without the search nothing is feasible
    let out = dkbound(&["feasibility", s(&a), s(&l), "--r", "3", "--j-phi", &j_phi]);
    assert_eq!(code(&out), 2);
    assert!(stdout_json(&out)["affine"].is_null());
}

#[test]
fn feasibility_gapless_and_identical() {
    let dir = TempDir::new().unwrap();
    let flat = write(&dir, "flat.txt", "n 3\n0 0 0\n0 1 0\n0 0 1\n");
    let out = dkbound(&["feasibility", s(&flat), s(&flat), "--r", "2"]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    assert_eq!(v["gap_ok"], false);
    assert_eq!(v["standard_feasible"], false);
    assert!(v["reason"].as_str().unwrap().contains("eigengap"));

    let m = write(&dir, "m.txt", DIAG3);
    let out = dkbound(&["feasibility", s(&m), s(&m), "--r", "1", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("true,true,,,,"));
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn dreg_experiment_small_instance() {
    let dir = TempDir::new().unwrap();
    let out =
        dkbound(&["dreg-experiment", "--n", "10", "--d", "3", "--replicates", "1", "--r", "2", "--out", s(dir.path())]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("records.csv")).unwrap();
    assert_eq!(csv.as_bytes(), out.stdout.as_slice());
    assert_eq!(csv.lines().next(), Some("replicate,rho1,thm4_bound,ext_bound,c1,c0,delta"));
    let rows = csv_rows(&csv);
    assert_eq!(rows.len(), 1);
    let rho1: f64 = rows[0][1].parse().unwrap();
    let ext: f64 = rows[0][3].parse().unwrap();
    assert!(rho1 <= ext + 1e-8);

    let summary: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["schema"], 1);
    assert_eq!(summary["replicates"], 1);
    for col in ["rho1", "thm4_bound", "ext_bound", "c1", "c0", "delta"] {
        for stat in ["min", "max", "mean"] {
            assert!(summary[col][stat].is_number(), "{col}.{stat}");
        }
    }
}

#[test]
fn dreg_experiment_is_deterministic() {
    let args = ["dreg-experiment", "--n", "16", "--d", "3", "--replicates", "4", "--r", "2", "--seed", "42"];
    let a = dkbound(&args);
    let b = dkbound(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = dkbound(&["dreg-experiment", "--n", "16", "--d", "3", "--replicates", "4", "--r", "2", "--seed", "43"]);
    assert_ne!(a.stdout, c.stdout);
    let ids: Vec<String> = csv_rows(&String::from_utf8(a.stdout).unwrap()).into_iter().map(|r| r[0].clone()).collect();
    assert_eq!(ids, ["0", "1", "2", "3"]);
}

#[test]
fn dreg_experiment_seed_from_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_dkbound"));
        cmd.args(["dreg-experiment", "--n", "12", "--d", "3", "--replicates", "2", "--r", "2"]);
        match env {
            Some(v) => cmd.env("DKBOUND_SEED", v),
            None => cmd.env_remove("DKBOUND_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    let explicit =
        dkbound(&["dreg-experiment", "--n", "12", "--d", "3", "--replicates", "2", "--r", "2", "--seed", "7"]);
    assert_eq!(run(Some("7")), explicit.stdout);
    assert_ne!(run(None), explicit.stdout);
}

#[test]
fn dreg_experiment_rejects_bad_spec() {
    assert_eq!(code(&dkbound(&["dreg-experiment", "--n", "5", "--d", "3", "--replicates", "1"])), 1);
    assert_eq!(code(&dkbound(&["dreg-experiment", "--n", "10", "--d", "3", "--replicates", "0"])), 1);
}

#[test]
fn dreg_experiment_json_output() {
    let out =
        dkbound(&["dreg-experiment", "--n", "12", "--d", "3", "--replicates", "2", "--r", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["records"].as_array().unwrap().len(), 2);
}

#[test]
fn operators_from_edge_list() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "p3.edges", "n 3\n0 1\n1 2\n");
    let out_dir = dir.path().join("ops");
    let out = dkbound(&["operators", "--edges", s(&edges), "--out", s(&out_dir)]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["n"], 3);
    assert!(v["regular_degree"].is_null());
    let lap = fs::read_to_string(out_dir.join("laplacian.txt")).unwrap();
    assert_eq!(lap, "n 3\n1 -1 0\n-1 2 -1\n0 -1 1\n");

    let isolated = write(&dir, "iso.edges", "n 3\n0 1\n");
    assert_eq!(code(&dkbound(&["operators", "--edges", s(&isolated), "--out", s(&out_dir)])), 1);
}
