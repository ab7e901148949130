//! The subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::config::{Overrides, RunConfig};
use super::csv::{oracle_run_id, read_csv, sample_run_id, write_csv, ResultRecord};
use super::write_atomic;
use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelParams};
use crate::observables::{Estimate, ObservableSpec, RunResult};
use crate::oracle::{verify_grid, OracleModel};
use crate::sampler::{run_chain_with, weighting_for, RunOptions, SamplerSchedule};

/// What a command produced and the process exit code it implies.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub code: u8,
    pub written: Vec<PathBuf>,
    /// Human-readable summary for stdout.
    pub report: String,
    /// Warnings for stderr.
    pub notes: Vec<String>,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::DimensionCap { .. } => 4,
        Error::KeyMismatch(_) => 5,
        _ => 1,
    }
}

fn out_dir(o: &Overrides, section: &Option<PathBuf>) -> PathBuf {
    o.out.clone().or_else(|| section.clone()).unwrap_or_else(|| PathBuf::from("."))
}

fn sample_point(
    params: &ModelParams,
    model: ModelKind,
    schedule: &SamplerSchedule,
    specs: &[ObservableSpec],
) -> Result<(Vec<ResultRecord>, RunResult)> {
    let options = RunOptions { weighting: weighting_for(params, model)?, ..Default::default() };
    let result = run_chain_with(params, schedule, specs, &options)?;
    let id = sample_run_id(params, model, schedule, specs);
    let rows: Vec<ResultRecord> = result
        .observables
        .iter()
        .map(|o| ResultRecord::new(&id, params, &o.spec, &o.estimate, schedule.master_seed))
        .collect();
    if rows.len() != specs.len() {
        return Err(Error::InvalidConfiguration(format!("{} rows for {} observables", rows.len(), specs.len())));
    }
    Ok((rows, result))
}

fn oracle_point(
    params: &ModelParams,
    model: ModelKind,
    cap: usize,
    specs: &[ObservableSpec],
    seed: u64,
    notes: &mut Vec<String>,
) -> Result<Vec<ResultRecord>> {
    let m = OracleModel::new(params, model, cap)?;
    let id = oracle_run_id(params, model, cap, specs);
    let mut rows = Vec::new();
    for s in specs {
        match m.value(s)? {
            Some(v) => rows.push(ResultRecord::exact(&id, params, s, v, seed)),
            None => notes.push(format!("no exact value for {s} ({model}, {}); skipped", params.bc)),
        }
    }
    Ok(rows)
}

fn low_n_eff_notes(rows: &[ResultRecord], notes: &mut Vec<String>) -> bool {
    let mut low = false;
    for r in rows {
        if r.stderr.is_nan() {
            low = true;
            notes.push(format!("{}: n_eff = {:.1} below threshold; stderr withheld", r.key(), r.n_eff));
        }
    }
    low
}

fn table(rows: &[ResultRecord]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(s, "{:<40} {:>16.10} {:>12.3e} {:>10.1}", r.key(), r.mean, r.stderr, r.n_eff);
    }
    s
}

pub fn cmd_sample(cfg: &RunConfig, o: &Overrides) -> Result<Outcome> {
    let params = cfg.model_params()?;
    let model = cfg.model()?;
    let schedule = cfg.schedule(o)?;
    let specs = cfg.sample_observables()?;
    let (rows, result) = sample_point(&params, model, &schedule, &specs)?;
    let dir = out_dir(o, &cfg.sample.out);
    let file = cfg.sample.file.clone().unwrap_or_else(|| "sample.csv".into());
    let csv_path = dir.join(&file);
    write_csv(&csv_path, &rows)?;
    let json_path = csv_path.with_extension("json");
    let json = serde_json::to_string_pretty(&result).map_err(|e| Error::Io(e.to_string()))?;
    write_atomic(&json_path, json.as_bytes())?;
    let mut out = Outcome { written: vec![csv_path, json_path], report: table(&rows), ..Default::default() };
    if low_n_eff_notes(&rows, &mut out.notes) {
        out.code = 2;
    }
    Ok(out)
}

pub fn cmd_oracle(cfg: &RunConfig, o: &Overrides) -> Result<Outcome> {
    let params = cfg.model_params()?;
    let model = cfg.model()?;
    let specs = cfg.oracle_observables()?;
    let cap = cfg.oracle_cap(o);
    let seed = cfg.schedule(o)?.master_seed;
    let mut out = Outcome::default();
    let rows = oracle_point(&params, model, cap, &specs, seed, &mut out.notes)?;
    let dir = out_dir(o, &cfg.oracle.out);
    let format = cfg.oracle.format.as_deref().unwrap_or("csv");
    let path = match format {
        "csv" => {
            let p = dir.join(cfg.oracle.file.clone().unwrap_or_else(|| "oracle.csv".into()));
            write_csv(&p, &rows)?;
            p
        }
        "json" => {
            let p = dir.join(cfg.oracle.file.clone().unwrap_or_else(|| "oracle.json".into()));
            let json = serde_json::to_string_pretty(&rows).map_err(|e| Error::Io(e.to_string()))?;
            write_atomic(&p, json.as_bytes())?;
            p
        }
        other => return Err(Error::Config(format!("unknown oracle format '{other}'"))),
    };
    out.written.push(path);
    out.report = table(&rows);
    Ok(out)
}

pub fn cmd_verify(cfg: &RunConfig, o: &Overrides) -> Result<Outcome> {
    let grid = cfg.verify_grid(o)?;
    let report = verify_grid(&grid)?;
    let path = out_dir(o, &cfg.verify.out).join(cfg.verify.file.clone().unwrap_or_else(|| "verify.json".into()));
    write_atomic(&path, report.to_json().as_bytes())?;
    let mut text = String::new();
    for r in &report.records {
        let _ = writeln!(
            text,
            "{} {:<24} {:<40} dev={:.3e} thr={:.1e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.point,
            r.max_deviation,
            r.threshold
        );
    }
    let failed = report.failures().count();
    let _ = writeln!(text, "{} identities checked, {failed} failed", report.records.len());
    Ok(Outcome { code: if failed == 0 { 0 } else { 5 }, written: vec![path], report: text, notes: vec![] })
}

/// One line of a comparison report.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub key: String,
    pub mean: f64,
    pub stderr: f64,
    pub exact: f64,
    pub z: f64,
    pub pass: bool,
}

fn index(rows: Vec<ResultRecord>, what: &str) -> Result<BTreeMap<String, ResultRecord>> {
    let mut map = BTreeMap::new();
    for r in rows {
        let k = r.key();
        if map.insert(k.clone(), r).is_some() {
            return Err(Error::KeyMismatch(format!("duplicate key in {what}: {k}")));
        }
    }
    Ok(map)
}

/// z-scores of Monte Carlo rows against exact rows with identical keys.
pub fn compare_records(mc: Vec<ResultRecord>, exact: Vec<ResultRecord>, threshold: f64) -> Result<Vec<CompareRow>> {
    let mc = index(mc, "MC input")?;
    let exact = index(exact, "oracle input")?;
    let missing: Vec<&String> = mc.keys().filter(|k| !exact.contains_key(*k)).collect();
    let extra: Vec<&String> = exact.keys().filter(|k| !mc.contains_key(*k)).collect();
    if !missing.is_empty() || !extra.is_empty() {
        let list = |v: &[&String]| v.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ");
        return Err(Error::KeyMismatch(format!(
            "only in MC: [{}]; only in oracle: [{}]",
            list(&missing),
            list(&extra)
        )));
    }
    Ok(mc
        .into_iter()
        .map(|(key, m)| {
            let x = exact[&key].mean;
            let est = Estimate { mean: m.mean, stderr: m.stderr, n_eff: m.n_eff, tau_int: m.tau_int, n_samples: 0 };
            let z = est.z_score(x);
            CompareRow { key, mean: m.mean, stderr: m.stderr, exact: x, z, pass: z.abs() <= threshold }
        })
        .collect())
}

pub fn cmd_compare(cfg: &RunConfig, o: &Overrides, mc: Option<&Path>, exact: Option<&Path>) -> Result<Outcome> {
    let mc = mc.map(Path::to_path_buf).or_else(|| cfg.compare.mc.clone());
    let exact = exact.map(Path::to_path_buf).or_else(|| cfg.compare.oracle.clone());
    let (Some(mc), Some(exact)) = (mc, exact) else {
        return Err(Error::Config("compare needs an MC CSV and an oracle CSV".into()));
    };
    let threshold = cfg.compare.threshold.unwrap_or(3.0);
    let rows = compare_records(read_csv(&mc)?, read_csv(&exact)?, threshold)?;
    let mut csv = String::from("key,mean,stderr,exact,z,pass\n");
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            csv,
            "\"{}\",{},{},{},{},{}",
            r.key,
            super::fmt_num(r.mean),
            super::fmt_num(r.stderr),
            super::fmt_num(r.exact),
            super::fmt_num(r.z),
            r.pass
        );
        let _ = writeln!(
            text,
            "{} {:<44} mc={:.8} ± {:.2e} exact={:.8} z={:+.2}",
            if r.pass { "PASS" } else { "FAIL" },
            r.key,
            r.mean,
            r.stderr,
            r.exact,
            r.z
        );
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    let _ = writeln!(text, "{} compared, {failed} beyond {threshold} sigma", rows.len());
    let path = out_dir(o, &cfg.compare.out).join(cfg.compare.file.clone().unwrap_or_else(|| "compare.csv".into()));
    write_atomic(&path, csv.as_bytes())?;
    Ok(Outcome { code: if failed == 0 { 0 } else { 5 }, written: vec![path], report: text, notes: vec![] })
}

pub fn cmd_scan(cfg: &RunConfig, o: &Overrides) -> Result<Outcome> {
    let points = cfg.scan_points()?;
    let model = cfg.model()?;
    let kind = cfg.scan.kind.as_deref().unwrap_or("sample");
    let dir = out_dir(o, &cfg.scan.out);
    let prefix = cfg.scan.prefix.clone().unwrap_or_else(|| "scan".into());
    let mut out = Outcome::default();
    let mut all = Vec::new();
    for (i, params) in points.iter().enumerate() {
        let rows = match kind {
            "sample" => {
                let schedule = cfg.schedule(o)?;
                let specs = cfg.sample_observables()?;
                sample_point(params, model, &schedule, &specs)?.0
            }
            "oracle" => {
                let seed = cfg.schedule(o)?.master_seed;
                oracle_point(params, model, cfg.oracle_cap(o), &cfg.oracle_observables()?, seed, &mut out.notes)?
            }
            other => return Err(Error::Config(format!("unknown scan kind '{other}'"))),
        };
        let path = dir.join(format!("{prefix}_{i:03}.csv"));
        write_csv(&path, &rows)?;
        out.written.push(path);
        all.extend(rows);
    }
    if kind == "sample" {
        let expected = points.len() * cfg.sample_observables()?.len();
        if all.len() != expected {
            return Err(Error::InvalidConfiguration(format!("{} rows, expected {expected}", all.len())));
        }
    }
    let path = dir.join(format!("{prefix}.csv"));
    write_csv(&path, &all)?;
    out.written.push(path);
    if low_n_eff_notes(&all, &mut out.notes) {
        out.code = 2;
    }
    out.report = table(&all);
    Ok(out)
}
