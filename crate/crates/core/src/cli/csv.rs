//! Result rows and their CSV form.

use std::hash::Hasher;
use std::path::Path;

use fnv::FnvHasher;

use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelParams};
use crate::observables::{Estimate, ObservableSpec, CODE_VERSION};
use crate::sampler::SamplerSchedule;

pub const HEADER: [&str; 15] = [
    "run_id",
    "L",
    "beta",
    "Q",
    "lambda",
    "S",
    "bc",
    "observable",
    "args",
    "mean",
    "stderr",
    "n_eff",
    "tau_int",
    "seed",
    "code_version",
];

/// One CSV row. Numeric parameter fields are kept in their printed form so
/// that rows from different producers key identically.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ResultRecord {
    pub run_id: String,
    #[serde(rename = "L")]
    pub l: usize,
    pub beta: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub lambda: String,
    #[serde(rename = "S")]
    pub spin: String,
    pub bc: String,
    pub observable: String,
    pub args: String,
    pub mean: f64,
    pub stderr: f64,
    pub n_eff: f64,
    pub tau_int: f64,
    pub seed: u64,
    pub code_version: String,
}

/// Decimal text with 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-6..15).contains(&exp) {
        return format!("{x:.11e}");
    }
    let digits = (11 - exp).max(0) as usize;
    let s = format!("{x:.digits$}");
    // Rounding can carry into a new leading digit; re-round in that case.
    let lead = s.trim_start_matches('-').split('.').next().unwrap_or("").trim_start_matches('0').len();
    if exp >= 0 && lead as i32 > exp + 1 && digits > 0 {
        let d = digits - 1;
        return format!("{x:.d$}");
    }
    s
}

fn parse_num(s: &str) -> Result<f64> {
    match s {
        "nan" => Ok(f64::NAN),
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s.parse().map_err(|_| Error::Config(format!("bad number '{s}' in CSV"))),
    }
}

/// Stable FNV-1a identifier of a run.
pub fn run_id(parts: &[&str]) -> String {
    let mut h = FnvHasher::default();
    for p in parts {
        h.write(p.as_bytes());
        h.write_u8(0x1f);
    }
    format!("{:016x}", h.finish())
}

pub fn sample_run_id(params: &ModelParams, model: ModelKind, schedule: &SamplerSchedule, specs: &[ObservableSpec]) -> String {
    let sched = serde_json::to_string(schedule).expect("schedule serializes");
    let obs: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
    run_id(&["sample", &param_key(params), model.as_str(), &sched, &obs.join(","), CODE_VERSION])
}

pub fn oracle_run_id(params: &ModelParams, model: ModelKind, cap: usize, specs: &[ObservableSpec]) -> String {
    let obs: Vec<String> = specs.iter().map(|s| s.to_string()).collect();
    run_id(&["oracle", &param_key(params), model.as_str(), &cap.to_string(), &obs.join(","), CODE_VERSION])
}

fn param_key(p: &ModelParams) -> String {
    let f = ParamFields::of(p);
    format!("{}|{}|{}|{}|{}|{}", p.l, f.beta, f.q, f.lambda, f.spin, p.bc)
}

struct ParamFields {
    beta: String,
    q: String,
    lambda: String,
    spin: String,
}

impl ParamFields {
    fn of(p: &ModelParams) -> Self {
        ParamFields {
            beta: fmt_num(p.beta),
            q: fmt_num(p.q),
            lambda: p.lambda.map(fmt_num).unwrap_or_default(),
            spin: p.spin.map(|s| s.to_string()).unwrap_or_default(),
        }
    }
}

impl ResultRecord {
    pub fn new(run_id: &str, params: &ModelParams, spec: &ObservableSpec, est: &Estimate, seed: u64) -> Self {
        let f = ParamFields::of(params);
        ResultRecord {
            run_id: run_id.to_string(),
            l: params.l,
            beta: f.beta,
            q: f.q,
            lambda: f.lambda,
            spin: f.spin,
            bc: params.bc.to_string(),
            observable: spec.name().to_string(),
            args: spec.args(),
            mean: est.mean,
            stderr: if est.low_n_eff() { f64::NAN } else { est.stderr },
            n_eff: est.n_eff,
            tau_int: est.tau_int,
            seed,
            code_version: CODE_VERSION.to_string(),
        }
    }

    /// An exact value: zero error, infinite effective sample size.
    pub fn exact(run_id: &str, params: &ModelParams, spec: &ObservableSpec, value: f64, seed: u64) -> Self {
        let est = Estimate { mean: value, stderr: 0.0, n_eff: f64::INFINITY, tau_int: 0.0, n_samples: 0 };
        ResultRecord::new(run_id, params, spec, &est, seed)
    }

    /// Everything identifying the quantity, excluding run and estimate fields.
    pub fn key(&self) -> String {
        format!(
            "L={} beta={} Q={} lambda={} S={} bc={} {}:{}",
            self.l, self.beta, self.q, self.lambda, self.spin, self.bc, self.observable, self.args
        )
    }

    fn fields(&self) -> [String; 15] {
        [
            self.run_id.clone(),
            self.l.to_string(),
            self.beta.clone(),
            self.q.clone(),
            self.lambda.clone(),
            self.spin.clone(),
            self.bc.clone(),
            self.observable.clone(),
            self.args.clone(),
            fmt_num(self.mean),
            fmt_num(self.stderr),
            fmt_num(self.n_eff),
            fmt_num(self.tau_int),
            self.seed.to_string(),
            self.code_version.clone(),
        ]
    }

    fn from_fields(r: &csv::StringRecord) -> Result<Self> {
        if r.len() != HEADER.len() {
            return Err(Error::Config(format!("CSV row has {} fields, expected {}", r.len(), HEADER.len())));
        }
        let int = |s: &str| s.parse::<u64>().map_err(|_| Error::Config(format!("bad integer '{s}' in CSV")));
        Ok(ResultRecord {
            run_id: r[0].to_string(),
            l: int(&r[1])? as usize,
            beta: r[2].to_string(),
            q: r[3].to_string(),
            lambda: r[4].to_string(),
            spin: r[5].to_string(),
            bc: r[6].to_string(),
            observable: r[7].to_string(),
            args: r[8].to_string(),
            mean: parse_num(&r[9])?,
            stderr: parse_num(&r[10])?,
            n_eff: parse_num(&r[11])?,
            tau_int: parse_num(&r[12])?,
            seed: int(&r[13])?,
            code_version: r[14].to_string(),
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn to_csv(records: &[ResultRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

pub fn from_csv(bytes: &[u8]) -> Result<Vec<ResultRecord>> {
    let mut r = csv::Reader::from_reader(bytes);
    let header = r.headers().map_err(csv_err)?;
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Config(format!("unexpected CSV header: {}", header.iter().collect::<Vec<_>>().join(","))));
    }
    r.records().map(|row| ResultRecord::from_fields(&row.map_err(csv_err)?)).collect()
}

pub fn write_csv(path: &Path, records: &[ResultRecord]) -> Result<()> {
    super::write_atomic(path, &to_csv(records)?)
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRecord>> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_csv(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_num(1.0), "1.00000000000");
        assert_eq!(fmt_num(-0.123456789012345), "-0.123456789012");
        assert_eq!(fmt_num(123.456), "123.456000000");
        assert_eq!(fmt_num(9.9999999999999), "10.0000000000");
        assert_eq!(fmt_num(1e-9), "1.00000000000e-9");
        assert_eq!(fmt_num(0.0), "0");
    }

    #[test]
    fn fnv_known_vector() {
        let mut h = FnvHasher::default();
        h.write(b"a");
        assert_eq!(h.finish(), 0xaf63dc4c8601ec8c);
    }
}
