use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lcsim::{lcs_dp, RngHandle, Sequence};
use rand::Rng;
use serde_json::Value;
use tempfile::TempDir;

fn lcsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcsim"))
        .args(args)
        .output()
        .expect("spawn lcsim")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn lcs_identical_and_disjoint_files() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "ACGTTGCA\n");
    let b = write(dir.path(), "b.txt", "ACGT\nTGCA\n");
    let out = stdout(&lcsim(&["lcs", s(&a), s(&b), "--witness"]));
    assert_eq!(out, "8\nACGTTGCA\n");

    let c = write(dir.path(), "c.txt", "0000");
    let d = write(dir.path(), "d.txt", "1111");
    let out = stdout(&lcsim(&["lcs", s(&c), s(&d), "--alphabet", "01", "--witness"]));
    assert_eq!(out, "0\n\n");
}

#[test]
fn lcs_random_files_match_oracle() {
    let dir = TempDir::new().unwrap();
    let mut rng = RngHandle::new(12).rng();
    for i in 0..15 {
        let la = rng.random_range(0..60);
        let lb = rng.random_range(0..60);
        let a: Vec<u8> = (0..la).map(|_| rng.random_range(0..4u8)).collect();
        let b: Vec<u8> = (0..lb).map(|_| rng.random_range(0..4u8)).collect();
        let text = |w: &[u8]| w.iter().map(|&c| b"ACGT"[c as usize] as char).collect::<String>();
        let fa = write(dir.path(), &format!("a{i}"), &text(&a));
        let fb = write(dir.path(), &format!("b{i}"), &text(&b));
        let expect = lcs_dp(&Sequence::new(a, 4).unwrap(), &Sequence::new(b, 4).unwrap()).unwrap();
        for algo in ["wmmm", "bitparallel", "dp"] {
            let out = stdout(&lcsim(&["lcs", s(&fa), s(&fb), "--algorithm", algo, "--check"]));
            assert_eq!(out.trim(), expect.to_string());
        }
    }
}

#[test]
fn validation_and_resource_errors_have_distinct_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "ACGX");
    let out = lcsim(&["lcs", s(&a), s(&a)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in the alphabet"));

    let long = write(dir.path(), "long.txt", &"A".repeat(2_500));
    let out = lcsim(&["lcs", s(&long), s(&long), "--witness"]);
    assert_eq!(out.status.code(), Some(3));

    let out = lcsim(&["bounds", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lcsim(&["test", "--generate", "alt-common", "--n", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_single_point_has_no_fit() {
    let out = stdout(&lcsim(&["simulate", "--n", "200", "--reps", "20", "--seed", "1"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# schema: lcsim.scan/1");
    assert_eq!(lines[1], "n,reps,mean,variance,stderr");
    assert_eq!(lines.len(), 3);
    assert!(lines[2].starts_with("200,20,"));
}

#[test]
fn simulate_grid_writes_fit_and_manifest() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("scan.csv");
    let out = lcsim(&[
        "simulate", "--grid", "100:100:400", "--reps", "30", "--seed", "9", "--out", s(&csv),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
    assert!(text.lines().last().unwrap().starts_with("# fit: variance = "));
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("scan.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["schema"], "lcsim.manifest/1");
    assert_eq!(manifest["seed"], 9);
    assert_eq!(manifest["parameters"]["grid"], serde_json::json!([100, 200, 300, 400]));
    assert_eq!(manifest["output_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn omitted_seed_is_reported() {
    let out = lcsim(&["simulate", "--n", "50", "--reps", "5"]);
    assert!(out.status.success());
    let manifest: Value = serde_json::from_slice(
        out.stderr.split(|&b| b == b'\n').find(|l| l.starts_with(b"{")).unwrap(),
    )
    .unwrap();
    assert!(manifest["seed"].is_u64());
}

#[test]
fn test_identical_pair_rejects() {
    let out = stdout(&lcsim(&["test", "--generate", "identical", "--n", "2000", "--seed", "3"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "lcsim.test/1");
    assert_eq!(v["lc_obs"], 2000);
    assert_eq!(v["reject"], true);
    assert_eq!(v["params"]["gamma_star"], 0.654);
    assert!(v["params"]["seed"].is_null());
}

#[test]
fn test_files_and_param_sources() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", "ACGTACGTAC");
    let b = write(dir.path(), "b.txt", "ACGTACGTAA");
    let out = stdout(&lcsim(&["test", s(&a), s(&b), "--gamma-star", "0.5", "--c", "0.01", "--alpha", "0.01"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lc_obs"], 9);
    let expect = (9.0 - 5.0) / (0.1f64).sqrt();
    assert!((v["s"].as_f64().unwrap() - expect).abs() < 1e-12);
    assert_eq!(v["params"]["alpha"], 0.01);

    let short = write(dir.path(), "c.txt", "ACG");
    assert_eq!(lcsim(&["test", s(&a), s(&short)]).status.code(), Some(2));

    let params = dir.path().join("params.json");
    let out = lcsim(&[
        "calibrate", "--k", "4", "--n-cal", "500", "--reps", "10", "--seed", "5", "--out", s(&params),
    ]);
    assert!(out.status.success());
    let cal: Value = serde_json::from_str(&fs::read_to_string(&params).unwrap()).unwrap();
    assert_eq!(cal["schema"], "lcsim.params/1");
    assert_eq!(cal["seed"], 5);
    let out = stdout(&lcsim(&["test", s(&a), s(&b), "--params", s(&params)]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["gamma_star"], cal["gamma_star"]);
    assert_eq!(v["params"]["n_cal"], 500);
}

#[test]
fn power_writes_histogram() {
    let dir = TempDir::new().unwrap();
    let hist = dir.path().join("hist.csv");
    let out = stdout(&lcsim(&[
        "power", "--alt", "identical", "--n", "500", "--reps", "12", "--seed", "2",
        "--hist-out", s(&hist), "--bins", "4",
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["p"], 0.0);
    assert_eq!(v["reps"], 12);
    let text = fs::read_to_string(&hist).unwrap();
    let counts: u64 = text
        .lines()
        .skip(2)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(counts, 12);
}

#[test]
fn bounds_table_and_csv() {
    let out = stdout(&lcsim(&["bounds", "--k", "2", "--m", "2..3"]));
    assert!(out.lines().nth(1).unwrap().contains("0.866595"));
    let out = stdout(&lcsim(&["bounds", "--k", "3", "--m", "2", "--format", "csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[1], "k,m,upper_bound,lower_bound");
    assert!(lines[2].starts_with("3,2,") && lines[2].ends_with(','));
}
