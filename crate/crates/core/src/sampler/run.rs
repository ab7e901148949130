//! Multi-chain runs with observable estimation.

use crate::error::{Error, Result};
use crate::loops::ab_clusters;
use crate::model::{make_box, ModelKind, ModelParams};
use crate::observables::{
    evaluate, fit_correlation_length, stats, CurvePoint, Estimate, ObservableResult, ObservableSpec, RunResult,
    SampleView, CODE_VERSION,
};

use super::chain::{init_poisson, mcmc_sweep, ChainState, MoveCounters, Weighting, AuditLog};
use super::orientation::sample_orientations;
use super::rng::{substream, Purpose};
use super::schedule::SamplerSchedule;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub weighting: Weighting,
    pub audit: bool,
    /// Run chains on separate threads.
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { weighting: Weighting::Loops, audit: false, parallel: true }
    }
}

/// Loop weighting that matches `model` on the box of `params`: winding loops
/// of the XXZ trace weigh 2 instead of `sqrt(Q)`.
pub fn weighting_for(params: &ModelParams, model: ModelKind) -> Result<Weighting> {
    match model {
        ModelKind::Af => Ok(Weighting::Loops),
        ModelKind::Xxz => {
            let lambda = params.require_lambda()?;
            Ok(if params.bc.is_time_periodic() { Weighting::FourEdge { lambda } } else { Weighting::Loops })
        }
    }
}

struct ChainOutput {
    series: Vec<Vec<f64>>,
    counters: MoveCounters,
    audit: Option<AuditLog>,
}

fn run_one(
    params: &ModelParams,
    schedule: &SamplerSchedule,
    per_sample: &[ObservableSpec],
    options: &RunOptions,
    chain: u64,
) -> Result<ChainOutput> {
    let bx = make_box(params)?;
    let seed = schedule.master_seed;
    let mut init_rng = substream(seed, chain, Purpose::Init);
    let mut moves = substream(seed, chain, Purpose::Moves);
    let mut orient = substream(seed, chain, Purpose::Orientations);
    let cfg = init_poisson(&bx, &mut init_rng);
    let mut state = ChainState::new(bx, params.sqrt_q(), options.weighting, cfg, chain)?;
    if options.audit {
        state = state.with_audit();
    }
    let lambda = params.lambda.unwrap_or(0.0);
    let need_orient = per_sample.iter().any(ObservableSpec::needs_orientation);
    let need_clusters = per_sample.iter().any(ObservableSpec::needs_clusters);
    for _ in 0..schedule.burn_in_sweeps {
        mcmc_sweep(&mut state, &mut moves);
    }
    let n = schedule.samples_per_chain();
    let mut series = vec![Vec::with_capacity(n); per_sample.len()];
    for k in 0..schedule.measure_sweeps {
        mcmc_sweep(&mut state, &mut moves);
        if (k + 1) % schedule.thinning != 0 {
            continue;
        }
        let oriented = need_orient.then(|| sample_orientations(state.decomposition(), lambda, &mut orient));
        let clusters = need_clusters.then(|| ab_clusters(&bx, state.config()));
        let view = SampleView {
            config: state.config(),
            dec: state.decomposition(),
            oriented: oriented.as_ref(),
            clusters: clusters.as_ref(),
            lambda,
            sqrt_q: params.sqrt_q(),
            spin: params.spin,
        };
        for (spec, out) in per_sample.iter().zip(series.iter_mut()) {
            out.push(evaluate(spec, &view)?);
        }
    }
    Ok(ChainOutput { series, counters: *state.counters(), audit: state.audit().copied() })
}

/// Run `schedule.chain_count` chains and estimate every requested observable.
pub fn run_chain(params: &ModelParams, schedule: &SamplerSchedule, specs: &[ObservableSpec]) -> Result<RunResult> {
    run_chain_with(params, schedule, specs, &RunOptions::default())
}

pub fn run_chain_with(
    params: &ModelParams,
    schedule: &SamplerSchedule,
    specs: &[ObservableSpec],
    options: &RunOptions,
) -> Result<RunResult> {
    schedule.validate()?;
    let bx = make_box(params)?;
    for s in specs {
        s.validate(params, &bx)?;
    }
    // Distinct per-sample observables, in first-appearance order.
    let mut per_sample: Vec<ObservableSpec> = Vec::new();
    for s in specs {
        for e in s.expand() {
            if !per_sample.contains(&e) {
                per_sample.push(e);
            }
        }
    }

    let chains: Vec<u64> = (0..schedule.chain_count).collect();
    let outputs: Vec<Result<ChainOutput>> = if options.parallel && chains.len() > 1 {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chains
                .iter()
                .map(|&c| {
                    let per_sample = &per_sample;
                    scope.spawn(move || run_one(params, schedule, per_sample, options, c))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("chain thread panicked")).collect()
        })
    } else {
        chains.iter().map(|&c| run_one(params, schedule, &per_sample, options, c)).collect()
    };
    let outputs: Vec<ChainOutput> = outputs.into_iter().collect::<Result<_>>()?;

    let mut counters = MoveCounters::default();
    let mut audit: Option<AuditLog> = None;
    for o in &outputs {
        counters.merge(&o.counters);
        if let Some(a) = o.audit {
            let acc = audit.get_or_insert_with(AuditLog::default);
            acc.proposals_checked += a.proposals_checked;
            acc.mismatches += a.mismatches;
            acc.non_unit_changes += a.non_unit_changes;
        }
    }

    let batches = schedule.batch_count as usize;
    let estimate_of = |spec: &ObservableSpec| -> Result<Estimate> {
        let k = per_sample.iter().position(|p| p == spec).expect("expanded spec");
        let per_chain: Vec<Vec<f64>> = outputs.iter().map(|o| o.series[k].clone()).collect();
        stats::estimate_chains(&per_chain, batches)
    };

    let mut observables = Vec::with_capacity(specs.len());
    for spec in specs {
        match spec {
            ObservableSpec::CorrelationLengthFit { .. } => {
                let parts = spec.expand();
                let mut points = Vec::with_capacity(parts.len());
                let mut n_eff = f64::INFINITY;
                let mut tau: f64 = 0.5;
                let mut n_samples = 0;
                for p in &parts {
                    let e = estimate_of(p)?;
                    let ObservableSpec::Connectivity { v, .. } = p else { unreachable!() };
                    points.push(CurvePoint { r: *v as f64, p: e.mean, stderr: e.stderr, n_eff: e.n_eff });
                    n_eff = n_eff.min(e.n_eff);
                    tau = tau.max(e.tau_int);
                    n_samples = e.n_samples;
                }
                let (estimate, fit) = match fit_correlation_length(&points) {
                    Ok(f) => (Estimate { mean: f.xi, stderr: f.xi_stderr, n_eff, tau_int: tau, n_samples }, Some(f)),
                    Err(Error::InsufficientData(_)) => {
                        (Estimate { mean: f64::NAN, stderr: f64::NAN, n_eff, tau_int: tau, n_samples }, None)
                    }
                    Err(e) => return Err(e),
                };
                observables.push(ObservableResult { spec: spec.clone(), estimate, fit });
            }
            _ => observables.push(ObservableResult { spec: spec.clone(), estimate: estimate_of(spec)?, fit: None }),
        }
    }

    Ok(RunResult {
        params: params.clone(),
        schedule: *schedule,
        code_version: CODE_VERSION.to_string(),
        observables,
        counters,
        audit,
    })
}
