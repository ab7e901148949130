//! Birth-death Metropolis chain on rung configurations.

use rand::Rng;
use serde::Serialize;
use rand_distr::{Distribution, Poisson};

use crate::error::Result;
use crate::loops::{decompose, LoopDecomposition};
use crate::model::{BoundaryCondition, Rung, RungConfiguration, SpaceTimeBox};

/// How a configuration is weighted relative to the Poisson process.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weighting {
    /// `sqrt(Q)^N`.
    Loops,
    /// Product over loops of `e^{lambda w} + e^{-lambda w}`: contractible loops
    /// count `sqrt(Q)`, winding loops count 2.
    FourEdge { lambda: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveCounters {
    pub birth_attempted: u64,
    pub birth_accepted: u64,
    pub death_attempted: u64,
    pub death_accepted: u64,
    pub collisions: u64,
}

impl MoveCounters {
    pub fn merge(&mut self, o: &MoveCounters) {
        self.birth_attempted += o.birth_attempted;
        self.birth_accepted += o.birth_accepted;
        self.death_attempted += o.death_attempted;
        self.death_accepted += o.death_accepted;
        self.collisions += o.collisions;
    }
}

/// Running record of recounted loop-count changes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditLog {
    pub proposals_checked: u64,
    pub mismatches: u64,
    pub non_unit_changes: u64,
}

pub fn init_poisson<R: Rng + ?Sized>(bx: &SpaceTimeBox, rng: &mut R) -> RungConfiguration {
    let mut cfg = RungConfiguration::empty(bx);
    let pois = Poisson::new(bx.beta()).expect("beta > 0");
    for c in 0..bx.n_columns() {
        let n = pois.sample(rng) as u64;
        for _ in 0..n {
            loop {
                let t = rng.random_range(bx.t_min()..bx.t_max());
                if cfg.insert(bx, Rung::new(c, t)).is_ok() {
                    break;
                }
            }
        }
    }
    cfg
}

pub fn birth_acceptance(n: usize, volume: f64, weight_ratio: f64) -> f64 {
    (volume / (n as f64 + 1.0) * weight_ratio).min(1.0)
}

pub fn death_acceptance(n: usize, volume: f64, weight_ratio: f64) -> f64 {
    (n as f64 / volume * weight_ratio).min(1.0)
}

/// `log` of the configuration weight under [`Weighting::FourEdge`].
pub fn four_edge_log_weight(dec: &LoopDecomposition, lambda: f64) -> f64 {
    dec.loops()
        .iter()
        .map(|l| (2.0 * (lambda * l.turning as f64).cosh()).ln())
        .sum()
}

#[derive(Clone, Debug)]
pub struct ChainState {
    pub(crate) bx: SpaceTimeBox,
    pub(crate) sqrt_q: f64,
    pub(crate) weighting: Weighting,
    pub(crate) config: RungConfiguration,
    pub(crate) dec: LoopDecomposition,
    pub(crate) log_weight: f64,
    pub(crate) sweeps: u64,
    pub(crate) counters: MoveCounters,
    pub(crate) chain: u64,
    pub(crate) audit: Option<AuditLog>,
    scratch_cfg: RungConfiguration,
    scratch_dec: LoopDecomposition,
}

impl ChainState {
    pub fn new(
        bx: SpaceTimeBox,
        sqrt_q: f64,
        weighting: Weighting,
        config: RungConfiguration,
        chain: u64,
    ) -> Result<Self> {
        config.validate(&bx)?;
        let dec = decompose(&bx, &config);
        let log_weight = match weighting {
            Weighting::Loops => dec.loop_count() as f64 * sqrt_q.ln(),
            Weighting::FourEdge { lambda } => four_edge_log_weight(&dec, lambda),
        };
        Ok(ChainState {
            bx,
            sqrt_q,
            weighting,
            scratch_cfg: config.clone(),
            scratch_dec: dec.clone(),
            config,
            dec,
            log_weight,
            sweeps: 0,
            counters: MoveCounters::default(),
            chain,
            audit: None,
        })
    }

    pub fn with_audit(mut self) -> Self {
        self.audit = Some(AuditLog::default());
        self
    }

    pub fn bx(&self) -> &SpaceTimeBox {
        &self.bx
    }

    pub fn config(&self) -> &RungConfiguration {
        &self.config
    }

    pub fn decomposition(&self) -> &LoopDecomposition {
        &self.dec
    }

    pub fn sweeps(&self) -> u64 {
        self.sweeps
    }

    pub fn counters(&self) -> &MoveCounters {
        &self.counters
    }

    pub fn chain(&self) -> u64 {
        self.chain
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    pub fn audit(&self) -> Option<&AuditLog> {
        self.audit.as_ref()
    }

    /// Number of proposals per sweep, `ceil(#columns * beta)`.
    pub fn proposals_per_sweep(&self) -> usize {
        self.bx.volume().ceil() as usize
    }

    fn record_audit(&mut self, proposed: &RungConfiguration, predicted: i32) {
        if let Some(log) = self.audit.as_mut() {
            let actual = decompose(&self.bx, proposed).loop_count() as i64 - self.dec.loop_count() as i64;
            log.proposals_checked += 1;
            if actual != predicted as i64 {
                log.mismatches += 1;
            }
            if actual.abs() != 1 {
                log.non_unit_changes += 1;
            }
        }
    }

    /// Weight ratio of the configuration in `scratch_cfg` to the current one;
    /// `dn` is the predicted change in loop count.
    fn weight_ratio(&mut self, dn: i32) -> f64 {
        match self.weighting {
            Weighting::Loops => self.sqrt_q.powi(dn),
            Weighting::FourEdge { lambda } => {
                self.scratch_dec.rebuild(&self.scratch_cfg);
                (four_edge_log_weight(&self.scratch_dec, lambda) - self.log_weight).exp()
            }
        }
    }

    fn accept(&mut self) {
        std::mem::swap(&mut self.config, &mut self.scratch_cfg);
        match self.weighting {
            Weighting::Loops => self.dec.rebuild(&self.config),
            Weighting::FourEdge { .. } => std::mem::swap(&mut self.dec, &mut self.scratch_dec),
        }
        self.log_weight = match self.weighting {
            Weighting::Loops => self.dec.loop_count() as f64 * self.sqrt_q.ln(),
            Weighting::FourEdge { lambda } => four_edge_log_weight(&self.dec, lambda),
        };
        self.scratch_cfg.clone_from(&self.config);
    }

    fn birth<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let bx = self.bx;
        let rung = loop {
            let c = rng.random_range(0..bx.n_columns());
            let t = rng.random_range(bx.t_min()..bx.t_max());
            let r = Rung::new(c, t);
            if self.config.check_insert(&bx, r).is_ok() {
                break r;
            }
            self.counters.collisions += 1;
        };
        self.counters.birth_attempted += 1;
        let dn = self.dec.delta_n_if_insert(rung).expect("collision-free proposal");
        self.scratch_cfg.insert(&bx, rung).expect("collision-free proposal");
        if self.audit.is_some() {
            let proposed = self.scratch_cfg.clone();
            self.record_audit(&proposed, dn);
        }
        let ratio = self.weight_ratio(dn);
        let p = birth_acceptance(self.config.len(), bx.volume(), ratio);
        if rng.random::<f64>() < p {
            self.counters.birth_accepted += 1;
            self.accept();
        } else {
            self.scratch_cfg.remove(rung);
        }
    }

    fn death<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.counters.death_attempted += 1;
        let n = self.config.len();
        if n == 0 {
            return;
        }
        let rung = self.config.nth(rng.random_range(0..n)).unwrap();
        let dn = self.dec.delta_n_if_remove(rung).expect("existing rung");
        self.scratch_cfg.remove(rung);
        if self.audit.is_some() {
            let proposed = self.scratch_cfg.clone();
            self.record_audit(&proposed, dn);
        }
        let ratio = self.weight_ratio(dn);
        let p = death_acceptance(n, self.bx.volume(), ratio);
        if rng.random::<f64>() < p {
            self.counters.death_accepted += 1;
            self.accept();
        } else {
            self.scratch_cfg.insert(&self.bx, rung).expect("restoring removed rung");
        }
    }

    /// One proposal: birth or death with probability 1/2 each.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if rng.random_bool(0.5) {
            self.birth(rng);
        } else {
            self.death(rng);
        }
    }
}

pub fn mcmc_sweep<R: Rng + ?Sized>(state: &mut ChainState, rng: &mut R) {
    for _ in 0..state.proposals_per_sweep() {
        state.step(rng);
    }
    state.sweeps += 1;
}

/// `(N, N_per)`: loop counts of `cfg` on the capped and time-periodic versions
/// of an open-in-space box.
pub fn capped_and_periodic_counts(bx: &SpaceTimeBox, cfg: &RungConfiguration) -> Result<(usize, usize)> {
    let capped = SpaceTimeBox::new(bx.l(), bx.beta(), BoundaryCondition::CappedAlternating)?;
    let per = SpaceTimeBox::new(bx.l(), bx.beta(), BoundaryCondition::PeriodicTime)?;
    Ok((decompose(&capped, cfg).loop_count(), decompose(&per, cfg).loop_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BoundaryCondition::*;
    use crate::sampler::rng::{substream, Purpose};

    #[test]
    fn plug_in_acceptances() {
        let b = SpaceTimeBox::new(2, 1.0, CappedAlternating).unwrap();
        let empty = RungConfiguration::empty(&b);
        let dec = decompose(&b, &empty);
        let c = b.column_of_edge(0).unwrap();
        let dn = dec.delta_n_if_insert(Rung::new(c, 0.1)).unwrap();
        assert_eq!(dn, -1);
        assert!((birth_acceptance(0, b.volume(), 3f64.powi(dn)) - 1.0).abs() < 1e-15);
        let one = RungConfiguration::from_rungs(&b, [Rung::new(c, 0.1)]).unwrap();
        let dn = decompose(&b, &one).delta_n_if_remove(Rung::new(c, 0.1)).unwrap();
        assert_eq!(dn, 1);
        assert!((death_acceptance(1, b.volume(), 3f64.powi(dn)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn init_is_deterministic() {
        let b = SpaceTimeBox::new(2, 2.0, CappedAlternating).unwrap();
        let a = init_poisson(&b, &mut substream(3, 0, Purpose::Init));
        let c = init_poisson(&b, &mut substream(3, 0, Purpose::Init));
        assert_eq!(a, c);
        a.validate(&b).unwrap();
    }

    #[test]
    fn empty_column_probability() {
        let b = SpaceTimeBox::new(1, 0.1, CappedAlternating).unwrap();
        let mut rng = substream(11, 0, Purpose::Init);
        let n = 100_000;
        let zeros = (0..n).filter(|_| init_poisson(&b, &mut rng).is_empty()).count();
        let p = (-0.1f64).exp();
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        assert!(((zeros as f64 / n as f64) - p).abs() < 3.0 * sd);
    }

    #[test]
    fn detailed_balance_on_two_slots() {
        // States built from two fixed rungs; the Poisson density dt^n is common
        // to both directions, so Kolmogorov's criterion reads off the
        // acceptance functions directly.
        let b = SpaceTimeBox::new(1, 1.0, CappedAlternating).unwrap();
        let q = 3.0f64;
        let r1 = Rung::new(0, -0.2);
        let r2 = Rung::new(0, 0.3);
        let states: Vec<Vec<Rung>> = vec![vec![], vec![r1], vec![r1, r2], vec![r2]];
        let cfgs: Vec<RungConfiguration> =
            states.iter().map(|s| RungConfiguration::from_rungs(&b, s.iter().copied()).unwrap()).collect();
        let n_loops: Vec<i32> = cfgs.iter().map(|c| decompose(&b, c).loop_count() as i32).collect();
        let v = b.volume();
        // Transition densities between neighbours in the cycle.
        let trans = |from: usize, to: usize| -> f64 {
            let (nf, nt) = (cfgs[from].len(), cfgs[to].len());
            let ratio = q.powi(n_loops[to] - n_loops[from]);
            if nt == nf + 1 {
                0.5 / v * birth_acceptance(nf, v, ratio)
            } else {
                0.5 / nf as f64 * death_acceptance(nf, v, ratio)
            }
        };
        let fwd: f64 = (0..4).map(|k| trans(k, (k + 1) % 4)).product();
        let bwd: f64 = (0..4).map(|k| trans((k + 1) % 4, k)).product();
        assert!((fwd - bwd).abs() <= 1e-12 * fwd.max(bwd));
        for k in 0..4 {
            let j = (k + 1) % 4;
            let pk = q.powi(n_loops[k]);
            let pj = q.powi(n_loops[j]);
            let lhs = pk * trans(k, j);
            let rhs = pj * trans(j, k);
            assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(rhs));
        }
    }

    #[test]
    fn audit_finds_no_mismatch() {
        for bc in [CappedAlternating, PeriodicTime, PeriodicBoth] {
            let b = SpaceTimeBox::new(3, 2.0, bc).unwrap();
            let cfg = init_poisson(&b, &mut substream(5, 0, Purpose::Init));
            let mut st = ChainState::new(b, 3.0, Weighting::Loops, cfg, 0).unwrap().with_audit();
            let mut rng = substream(5, 0, Purpose::Moves);
            for _ in 0..50 {
                mcmc_sweep(&mut st, &mut rng);
            }
            let a = st.audit().unwrap();
            assert!(a.proposals_checked > 100);
            assert_eq!(a.mismatches, 0);
            assert_eq!(a.non_unit_changes, 0);
        }
    }

    #[test]
    fn four_edge_chain_stays_consistent() {
        let b = SpaceTimeBox::new(2, 2.0, PeriodicBoth).unwrap();
        let cfg = init_poisson(&b, &mut substream(9, 0, Purpose::Init));
        let lambda = 0.7f64;
        let sq = 2.0 * lambda.cosh();
        let mut st = ChainState::new(b, sq, Weighting::FourEdge { lambda }, cfg, 0).unwrap();
        let mut rng = substream(9, 0, Purpose::Moves);
        for _ in 0..100 {
            mcmc_sweep(&mut st, &mut rng);
            let fresh = decompose(&b, st.config());
            assert_eq!(fresh.dump(), st.decomposition().dump());
            assert!((four_edge_log_weight(&fresh, lambda) - st.log_weight).abs() < 1e-9);
        }
    }
}
