//! Results of a sampling run.

use serde::Serialize;

use super::fit::CorrelationFit;
use super::spec::ObservableSpec;
use super::stats::Estimate;
use crate::model::ModelParams;
use crate::sampler::{AuditLog, MoveCounters, SamplerSchedule};

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObservableResult {
    #[serde(serialize_with = "as_text")]
    pub spec: ObservableSpec,
    pub estimate: Estimate,
    /// Present for correlation-length fits; `estimate` then holds `xi`.
    pub fit: Option<CorrelationFit>,
}

fn as_text<S: serde::Serializer>(spec: &ObservableSpec, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&spec.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunResult {
    pub params: ModelParams,
    pub schedule: SamplerSchedule,
    pub code_version: String,
    pub observables: Vec<ObservableResult>,
    pub counters: MoveCounters,
    pub audit: Option<AuditLog>,
}

impl RunResult {
    pub fn get(&self, spec: &ObservableSpec) -> Option<&ObservableResult> {
        self.observables.iter().find(|o| &o.spec == spec)
    }

    pub fn estimate(&self, spec: &ObservableSpec) -> Option<Estimate> {
        self.get(spec).map(|o| o.estimate)
    }

    pub fn any_low_n_eff(&self) -> bool {
        self.observables.iter().any(|o| o.estimate.low_n_eff())
    }
}
