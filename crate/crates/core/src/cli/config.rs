//! TOML run configuration.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{BoundaryCondition, ModelKind, ModelParams, PartialParams, Spin};
use crate::observables::ObservableSpec;
use crate::oracle::{default_grid, IdentityParams, DEFAULT_DIMENSION_CAP};
use crate::sampler::SamplerSchedule;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: Option<ParamsSection>,
    #[serde(default)]
    pub schedule: ScheduleSection,
    #[serde(default)]
    pub sample: SampleSection,
    #[serde(default)]
    pub oracle: OracleSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default)]
    pub scan: ScanSection,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    #[serde(default)]
    pub model: Option<String>,
    pub spin: Option<f64>,
    #[serde(rename = "Q")]
    pub q: Option<f64>,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    #[serde(rename = "L")]
    pub l: usize,
    pub beta: f64,
    #[serde(default)]
    pub bc: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    pub burnin: Option<u64>,
    pub sweeps: Option<u64>,
    pub thinning: Option<u64>,
    pub batches: Option<u64>,
    pub chains: Option<u64>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSection {
    #[serde(default)]
    pub observables: Vec<String>,
    pub out: Option<PathBuf>,
    pub file: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub observables: Option<Vec<String>>,
    pub cap: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub file: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub spins: Option<Vec<f64>>,
    #[serde(rename = "L")]
    pub sizes: Option<Vec<usize>>,
    pub lambdas: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub cap: Option<usize>,
    pub out: Option<PathBuf>,
    pub file: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    pub mc: Option<PathBuf>,
    pub oracle: Option<PathBuf>,
    pub threshold: Option<f64>,
    pub out: Option<PathBuf>,
    pub file: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    /// `sample` (default) or `oracle`.
    pub kind: Option<String>,
    #[serde(rename = "L")]
    pub sizes: Option<Vec<usize>>,
    pub beta: Option<Vec<f64>>,
    pub spin: Option<Vec<f64>>,
    #[serde(rename = "Q")]
    pub q: Option<Vec<f64>>,
    pub lambda: Option<Vec<f64>>,
    pub bc: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub prefix: Option<String>,
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub chains: Option<u64>,
    pub cap: Option<usize>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn params_section(&self) -> Result<&ParamsSection> {
        self.params.as_ref().ok_or_else(|| Error::Config("missing [params] section".into()))
    }

    pub fn model(&self) -> Result<ModelKind> {
        match self.params.as_ref().and_then(|p| p.model.as_deref()) {
            Some(m) => m.parse(),
            None => Ok(ModelKind::Af),
        }
    }

    pub fn partial_params(&self) -> Result<PartialParams> {
        let p = self.params_section()?;
        let bc = match &p.bc {
            Some(b) => b.parse()?,
            None => BoundaryCondition::CappedAlternating,
        };
        let mut pp = PartialParams::new(p.l, p.beta, bc);
        if let Some(s) = p.spin {
            pp = pp.spin(Spin::from_f64(s)?);
        }
        pp.q = p.q;
        pp.lambda = p.lambda;
        pp.delta = p.delta;
        Ok(pp)
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        self.partial_params()?.normalize()
    }

    pub fn schedule(&self, o: &Overrides) -> Result<SamplerSchedule> {
        let d = SamplerSchedule::default();
        let s = &self.schedule;
        let sched = SamplerSchedule {
            burn_in_sweeps: s.burnin.unwrap_or(d.burn_in_sweeps),
            measure_sweeps: s.sweeps.unwrap_or(d.measure_sweeps),
            thinning: s.thinning.unwrap_or(d.thinning),
            batch_count: s.batches.unwrap_or(d.batch_count),
            master_seed: o.seed.or(s.seed).unwrap_or(d.master_seed),
            chain_count: o.chains.or(s.chains).unwrap_or(d.chain_count),
        };
        sched.validate()?;
        Ok(sched)
    }

    pub fn sample_observables(&self) -> Result<Vec<ObservableSpec>> {
        parse_observables(&self.sample.observables)
    }

    pub fn oracle_observables(&self) -> Result<Vec<ObservableSpec>> {
        match &self.oracle.observables {
            Some(list) => parse_observables(list),
            None => self.sample_observables(),
        }
    }

    pub fn oracle_cap(&self, o: &Overrides) -> usize {
        o.cap.or(self.oracle.cap).unwrap_or(DEFAULT_DIMENSION_CAP)
    }

    pub fn verify_grid(&self, o: &Overrides) -> Result<Vec<IdentityParams>> {
        let v = &self.verify;
        let cap = o.cap.or(v.cap).unwrap_or(DEFAULT_DIMENSION_CAP);
        if v.spins.is_none() && v.sizes.is_none() && v.lambdas.is_none() && v.beta.is_none() {
            return Ok(default_grid(cap));
        }
        let spins = match &v.spins {
            Some(s) => s.iter().map(|&x| Spin::from_f64(x)).collect::<Result<Vec<_>>>()?,
            None => vec![Spin::HALF, Spin::ONE],
        };
        let sizes = v.sizes.clone().unwrap_or_else(|| vec![1, 2]);
        let lambdas = v.lambdas.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0]);
        let beta = v.beta.unwrap_or(1.0);
        let mut grid = Vec::new();
        for &spin in &spins {
            for &l in &sizes {
                for &lambda in &lambdas {
                    grid.push(IdentityParams { spin, lambda, l, beta, cap });
                }
            }
        }
        Ok(grid)
    }

    /// Cartesian product of the scan axes over the base parameters.
    pub fn scan_points(&self) -> Result<Vec<ModelParams>> {
        let base = self.partial_params()?;
        let s = &self.scan;
        let sizes = s.sizes.clone().unwrap_or_else(|| vec![base.l]);
        let betas = s.beta.clone().unwrap_or_else(|| vec![base.beta]);
        let bcs: Vec<BoundaryCondition> = match &s.bc {
            Some(list) => list.iter().map(|b| b.parse()).collect::<Result<_>>()?,
            None => vec![base.bc],
        };
        let axes = [s.spin.is_some(), s.q.is_some(), s.lambda.is_some()];
        if axes.iter().filter(|&&a| a).count() > 1 {
            return Err(Error::Config("scan at most one of spin, Q, lambda".into()));
        }
        let couplings: Vec<PartialParams> = if let Some(spins) = &s.spin {
            spins.iter().map(|&x| Ok(decoupled(&base).spin(Spin::from_f64(x)?))).collect::<Result<_>>()?
        } else if let Some(qs) = &s.q {
            qs.iter().map(|&x| decoupled(&base).q(x)).collect()
        } else if let Some(ls) = &s.lambda {
            ls.iter().map(|&x| decoupled(&base).lambda(x)).collect()
        } else {
            vec![base.clone()]
        };
        let mut out = Vec::new();
        for c in &couplings {
            for &l in &sizes {
                for &beta in &betas {
                    for &bc in &bcs {
                        out.push(PartialParams { l, beta, bc, ..c.clone() }.normalize()?);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Config("scan has an empty axis".into()));
        }
        Ok(out)
    }
}

fn decoupled(p: &PartialParams) -> PartialParams {
    PartialParams::new(p.l, p.beta, p.bc)
}

pub fn parse_observables(list: &[String]) -> Result<Vec<ObservableSpec>> {
    if list.is_empty() {
        return Err(Error::Config("no observables requested".into()));
    }
    list.iter().map(|s| s.parse()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
[params]
spin = 0.5
L = 2
beta = 1.0
bc = "capped"

[schedule]
sweeps = 1000
seed = 3

[sample]
observables = ["projector:0", "spinspin:0:1"]
"#;

    #[test]
    fn parses_basic() {
        let c = RunConfig::parse(BASIC).unwrap();
        let p = c.model_params().unwrap();
        assert_eq!(p.q, 4.0);
        let s = c.schedule(&Overrides { seed: Some(9), ..Default::default() }).unwrap();
        assert_eq!((s.measure_sweeps, s.master_seed), (1000, 9));
        assert_eq!(c.sample_observables().unwrap().len(), 2);
        assert_eq!(c.oracle_observables().unwrap().len(), 2);
    }

    #[test]
    fn unknown_key_rejected() {
        let bad = BASIC.replace("sweeps = 1000", "sweps = 1000");
        assert!(matches!(RunConfig::parse(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn delta_below_one_rejected() {
        let c = RunConfig::parse("[params]\ndelta = 0.5\nL = 2\nbeta = 1.0\n").unwrap();
        assert!(c.model_params().is_err());
    }

    #[test]
    fn scan_product() {
        let text = format!("{BASIC}\n[scan]\nL = [2, 3]\nbeta = [1.0, 2.0, 4.0]\nspin = [0.5, 1.0]\n");
        let c = RunConfig::parse(&text).unwrap();
        let pts = c.scan_points().unwrap();
        assert_eq!(pts.len(), 12);
        assert_eq!(pts[11].q, 9.0);
    }
}
