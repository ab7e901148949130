//! Drive a run from a TOML configuration and read the CSV back.

use spinloops::cli::{cmd_oracle, cmd_sample, compare_records, read_csv, Overrides, RunConfig};

const CONFIG: &str = r#"
[params]
spin = 0.5
L = 2
beta = 2.0
bc = "periodic_time"

[schedule]
burnin = 1000
sweeps = 10000
chains = 2
seed = 42

[sample]
observables = ["projector:0", "spinspin:-1:2", "dimer:0"]
"#;

fn main() -> spinloops::error::Result<()> {
    let cfg = RunConfig::parse(CONFIG)?;
    let dir = std::env::temp_dir().join("spinloops-config-example");
    let o = Overrides { out: Some(dir.clone()), ..Default::default() };
    let mc = cmd_sample(&cfg, &o)?;
    let ex = cmd_oracle(&cfg, &o)?;
    println!("wrote {:?} and {:?}", mc.written, ex.written);
    for row in compare_records(read_csv(&dir.join("sample.csv"))?, read_csv(&dir.join("oracle.csv"))?, 3.0)? {
        println!("{} {} z = {:+.2}", if row.pass { "ok  " } else { "FAIL" }, row.key, row.z);
    }
    std::fs::remove_dir_all(dir)?;
    Ok(())
}
