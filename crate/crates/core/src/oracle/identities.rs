//! Operator identity suite.

use serde::{Deserialize, Serialize};

use super::expectations::seed_trace_ratio;
use super::hamiltonians::{antiferro_form, hamiltonian_af, hamiltonian_xxz, kform_with, xxz_periodic, xxz_with_boundary, XxzVariant};
use super::linalg::{hermitian_eigen, max_abs, max_abs_diff, CMat};
use super::operators::{k_operator, ChainSpace};
use super::states::{gauge_transform, seed_dimer, GaugeKind};
use crate::error::{Error, Result};
use crate::model::Spin;

pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    #[serde(rename = "maxDeviation")]
    pub max_deviation: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Parameter point the record belongs to.
    pub point: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub records: Vec<IdentityRecord>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let records = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        Ok(IdentityReport { records })
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.records.extend(other.records);
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityParams {
    pub spin: Spin,
    pub lambda: f64,
    pub l: usize,
    pub beta: f64,
    pub cap: usize,
}

type KBuilder<'a> = &'a dyn Fn(f64) -> CMat;

fn record(report: &mut IdentityReport, name: &str, point: &str, deviation: f64, threshold: f64) {
    report.records.push(IdentityRecord {
        name: name.to_string(),
        max_deviation: deviation,
        threshold,
        pass: deviation <= threshold,
        point: point.to_string(),
    });
}

/// Most negative entry, as a non-negative deviation, relative to the scale.
fn negativity(m: &CMat) -> f64 {
    let scale = max_abs(m).max(1e-300);
    m.iter().map(|z| (-z.re).max(z.im.abs())).fold(0.0, f64::max) / scale
}

fn relative_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs_diff(a, b) / max_abs(a).max(max_abs(b)).max(1.0)
}

pub fn verify_identities(p: &IdentityParams) -> Result<IdentityReport> {
    verify_identities_with(p, &k_operator)
}

/// The suite with a caller-supplied two-site `K` builder.
pub fn verify_identities_with(p: &IdentityParams, k_builder: KBuilder<'_>) -> Result<IdentityReport> {
    let tol = IDENTITY_TOLERANCE;
    let mut rep = IdentityReport::default();
    let point = format!("S={} L={} lambda={} beta={}", p.spin, p.l, p.lambda, p.beta);
    let half = p.spin == Spin::HALF;

    if half {
        let lhs = xxz_with_boundary(p.l, p.lambda, p.cap)?;
        let rhs = kform_with(p.l, p.lambda, false, p.cap, k_builder)?;
        record(&mut rep, "xxz_kform_open", &point, relative_diff(&lhs, &rhs), tol);

        let lhs = xxz_periodic(p.l, p.lambda, p.cap)?;
        let rhs = kform_with(p.l, p.lambda, true, p.cap, k_builder)?;
        record(&mut rep, "xxz_kform_periodic", &point, relative_diff(&lhs, &rhs), tol);

        let space = ChainSpace::new(Spin::HALF, p.l, p.cap)?;
        let u = gauge_transform(&space, GaugeKind::Quarter)?;
        let delta = p.lambda.cosh();
        let h = hamiltonian_xxz(p.l, delta, XxzVariant::Open, p.cap)?;
        let lhs = &u * h * u.adjoint();
        let rhs = antiferro_form(p.l, delta, p.cap)?;
        record(&mut rep, "gauge_antiferro_form", &point, relative_diff(&lhs, &rhs), tol);

        let kf = kform_with(p.l, p.lambda, false, p.cap, k_builder)?;
        let semigroup = hermitian_eigen(&kf)?.shifted_exp(p.beta);
        record(&mut rep, "kform_positivity", &point, negativity(&semigroup), tol);
    }

    let space = ChainSpace::new(p.spin, p.l, p.cap)?;
    let u = gauge_transform(&space, GaugeKind::Half)?;
    let h_af = hamiltonian_af(p.l, p.spin, false, p.cap)?;
    let semigroup = hermitian_eigen(&h_af)?.shifted_exp(p.beta);
    let gauged = u.adjoint() * semigroup * &u;
    let mut neg = negativity(&gauged);
    for b in -(p.l as i64) + 1..p.l as i64 {
        neg = neg.max(negativity(&(u.adjoint() * space.projector(b)? * &u)));
    }
    record(&mut rep, "gauged_positivity_af", &point, neg, tol);

    // Lower bound: deviation is bound - ratio, non-positive when it holds.
    let d = seed_dimer(p.l, p.spin, p.cap)?;
    let ratio = seed_trace_ratio(&h_af, &d, p.beta)?;
    let bound = (p.spin.multiplicity() as f64).powi(-(p.l as i32));
    record(&mut rep, "af_seed_overlap_bound", &point, bound - ratio, 0.0);
    if let Some(last) = rep.records.last_mut() {
        last.pass = last.max_deviation < 0.0;
    }

    if half {
        let k = k_builder(p.lambda);
        let e = hermitian_eigen(&k)?;
        let top = 2.0 * p.lambda.cosh();
        let dev = e.values[..3].iter().map(|v| v.abs()).fold((e.values[3] - top).abs(), f64::max);
        record(&mut rep, "k_rank_one", &point, dev / top, tol);
    }

    Ok(rep)
}

/// The default grid: `S in {1/2, 1}`, `L in {1, 2, 3}` where the cap allows,
/// `lambda in {0, 0.5, 1}`, `beta = 1`.
pub fn default_grid(cap: usize) -> Vec<IdentityParams> {
    let mut out = Vec::new();
    for spin in [Spin::HALF, Spin::ONE] {
        for l in 1..=3 {
            if super::operators::chain_dimension(spin, l, cap).is_err() {
                continue;
            }
            for lambda in [0.0, 0.5, 1.0] {
                out.push(IdentityParams { spin, lambda, l, beta: 1.0, cap });
            }
        }
    }
    out
}

pub fn verify_grid(grid: &[IdentityParams]) -> Result<IdentityReport> {
    let mut rep = IdentityReport::default();
    for p in grid {
        rep.extend(verify_identities(p)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_at_reference_point() {
        let p = IdentityParams { spin: Spin::HALF, lambda: 1.0, l: 2, beta: 1.0, cap: 4096 };
        let r = verify_identities(&p).unwrap();
        assert_eq!(r.records.len(), 7);
        for rec in &r.records {
            assert!(rec.pass, "{rec:?}");
        }
        let bound = r.records.iter().find(|x| x.name == "af_seed_overlap_bound").unwrap();
        assert!(bound.max_deviation < 0.0);
    }

    #[test]
    fn sign_error_is_caught() {
        let p = IdentityParams { spin: Spin::HALF, lambda: 0.5, l: 2, beta: 1.0, cap: 4096 };
        let wrong = |lam: f64| k_operator(-lam);
        let r = verify_identities_with(&p, &wrong).unwrap();
        let failed: Vec<&str> = r.failures().map(|x| x.name.as_str()).collect();
        assert!(failed.contains(&"xxz_kform_open"), "{failed:?}");
    }

    #[test]
    fn report_json_round_trip() {
        let p = IdentityParams { spin: Spin::ONE, lambda: 0.0, l: 1, beta: 1.0, cap: 4096 };
        let r = verify_identities(&p).unwrap();
        let back = IdentityReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("maxDeviation"));
    }
}
