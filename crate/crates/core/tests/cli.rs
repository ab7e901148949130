use std::path::Path;
use std::process::Command;

use spinloops::cli::{read_csv, HEADER};

const BIN: &str = env!("CARGO_BIN_EXE_spinloops");

const CONFIG: &str = r#"
[params]
spin = 0.5
L = 2
beta = 1.0
bc = "capped"

[schedule]
burnin = 500
sweeps = 6000
batches = 20
chains = 2
seed = 11

[sample]
observables = ["projector:0", "spinspin:0:1", "dimer:0"]
"#;

fn write_config(dir: &Path, text: &str) -> std::path::PathBuf {
    let p = dir.join("run.toml");
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn golden_header() {
    let golden = "run_id,L,beta,Q,lambda,S,bc,observable,args,mean,stderr,n_eff,tau_int,seed,code_version";
    assert_eq!(HEADER.join(","), golden);
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let out = dir.path().join("o");
    let (code, _, err) = run(&["oracle", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(out.join("oracle.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), golden);
}

#[test]
fn sample_is_reproducible_and_compares() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), CONFIG);
    let cfg = cfg.to_str().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let (code, _, err) = run(&["sample", "--config", cfg, "--out", d.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
    }
    let ca = std::fs::read(a.join("sample.csv")).unwrap();
    assert_eq!(ca, std::fs::read(b.join("sample.csv")).unwrap());
    let rows = read_csv(&a.join("sample.csv")).unwrap();
    assert_eq!(rows.len(), 3);

    let (code, _, err) = run(&["oracle", "--config", cfg, "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let mc = a.join("sample.csv");
    let ex = a.join("oracle.csv");
    let (code, stdout, err) =
        run(&["compare", mc.to_str().unwrap(), ex.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}{err}");
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 3);

    let (_, _, _) = run(&["sample", "--config", cfg, "--seed", "12", "--out", b.to_str().unwrap()]);
    assert_ne!(ca, std::fs::read(b.join("sample.csv")).unwrap());
}

#[test]
fn low_effective_samples_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let text = CONFIG.replace("sweeps = 6000", "sweeps = 40").replace("burnin = 500", "burnin = 0");
    let cfg = write_config(dir.path(), &text);
    let (code, _, err) = run(&["sample", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
    let rows = read_csv(&dir.path().join("sample.csv")).unwrap();
    assert!(rows.iter().any(|r| r.stderr.is_nan()));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let bad = write_config(dir.path(), "[params]\ndelta = 0.5\nL = 2\nbeta = 1.0\n");
    assert_eq!(run(&["oracle", "--config", bad.to_str().unwrap(), "--out", d]).0, 1);
    let unknown = write_config(dir.path(), &CONFIG.replace("chains = 2", "chanes = 2"));
    assert_eq!(run(&["sample", "--config", unknown.to_str().unwrap(), "--out", d]).0, 1);
    assert_eq!(run(&["sample", "--config", "/nonexistent/run.toml"]).0, 3);
    let big = write_config(dir.path(), &CONFIG.replace("L = 2", "L = 9"));
    assert_eq!(run(&["oracle", "--config", big.to_str().unwrap(), "--out", d]).0, 4);
    let small = write_config(dir.path(), CONFIG);
    assert_eq!(run(&["oracle", "--config", small.to_str().unwrap(), "--cap", "8", "--out", d]).0, 4);
}

#[test]
fn compare_detects_offset_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let header = HEADER.join(",");
    let row = |args: &str, mean: &str, err: &str| format!("x,2,1,4,0,1/2,capped,projector,{args},{mean},{err},1000,1,0,0.1.0");
    let mc = dir.path().join("mc.csv");
    let ex = dir.path().join("ex.csv");
    std::fs::write(&mc, format!("{header}\n{}\n", row("0", "0.95", "0.01"))).unwrap();
    std::fs::write(&ex, format!("{header}\n{}\n", row("0", "0.9", "0"))).unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, stdout, _) = run(&["compare", mc.to_str().unwrap(), ex.to_str().unwrap(), "--out", d]);
    assert_eq!(code, 5);
    assert!(stdout.contains("FAIL") && stdout.contains("z=+5.00"), "{stdout}");
    std::fs::write(&ex, format!("{header}\n{}\n", row("1", "0.9", "0"))).unwrap();
    let (code, _, err) = run(&["compare", mc.to_str().unwrap(), ex.to_str().unwrap(), "--out", d]);
    assert_eq!(code, 5);
    assert!(err.contains("key mismatch"), "{err}");
}

#[test]
fn scan_writes_every_point() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        "{}\n[scan]\nL = [1, 2]\nbeta = [0.5, 1.0]\n",
        CONFIG.replace("sweeps = 6000", "sweeps = 3000").replace("\"dimer:0\"", "\"rungs\"")
    );
    let cfg = write_config(dir.path(), &text);
    let d = dir.path().join("scan");
    let (code, _, err) = run(&["scan", "--config", cfg.to_str().unwrap(), "--out", d.to_str().unwrap()]);
    assert!(code == 0 || code == 2, "{err}");
    let rows = read_csv(&d.join("scan.csv")).unwrap();
    assert_eq!(rows.len(), 4 * 3);
    for i in 0..4 {
        assert_eq!(read_csv(&d.join(format!("scan_{i:03}.csv"))).unwrap().len(), 3);
    }
}

#[test]
fn verify_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[verify]\nspins = [0.5]\nL = [1, 2]\nlambdas = [0.5]\n");
    let (code, stdout, err) = run(&["verify", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}{err}");
    let text = std::fs::read_to_string(dir.path().join("verify.json")).unwrap();
    let rep = spinloops::oracle::IdentityReport::from_json(&text).unwrap();
    assert_eq!(rep.records.len(), 14);
    assert!(rep.all_pass());
}
