//! Loop orientations and the induced pseudo-spin field.

use rand::Rng;

use crate::error::Result;
use crate::loops::LoopDecomposition;

/// Per-loop orientation relative to the reference traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedConfiguration {
    sigma: Vec<i8>,
}

/// `P(sigma = +1)` for a loop of turning number `w`.
pub fn plus_probability(lambda: f64, w: i32) -> f64 {
    1.0 / (1.0 + (-2.0 * lambda * w as f64).exp())
}

pub fn sample_orientations<R: Rng + ?Sized>(
    dec: &LoopDecomposition,
    lambda: f64,
    rng: &mut R,
) -> OrientedConfiguration {
    let sigma = dec
        .loops()
        .iter()
        .map(|l| {
            let u: f64 = rng.random();
            if u < plus_probability(lambda, l.turning) { 1 } else { -1 }
        })
        .collect();
    OrientedConfiguration { sigma }
}

impl OrientedConfiguration {
    pub fn from_sigma(sigma: Vec<i8>) -> Self {
        OrientedConfiguration { sigma }
    }

    pub fn sigma(&self) -> &[i8] {
        &self.sigma
    }

    /// Pseudo-spin on segment `s`.
    pub fn tau_segment(&self, dec: &LoopDecomposition, s: usize) -> i8 {
        self.sigma[dec.segment_loop(s)] * dec.segment_dir(s)
    }

    pub fn tau(&self, dec: &LoopDecomposition, u: i64, t: f64) -> Result<i8> {
        Ok(self.tau_segment(dec, dec.segment_at(u, t)?))
    }

    /// `e^{lambda * sum_l sigma_l w_l}`.
    pub fn loop_weight(&self, dec: &LoopDecomposition, lambda: f64) -> f64 {
        let s: i32 = dec.loops().iter().zip(&self.sigma).map(|(l, &g)| l.turning * g as i32).sum();
        (lambda * s as f64).exp()
    }
}

/// Weight of one rung given pseudo-spins `(west, east)` below and above.
pub fn rung_weight(below: (i8, i8), above: (i8, i8), lambda: f64) -> f64 {
    match (below, above) {
        ((1, -1), (-1, 1)) | ((-1, 1), (1, -1)) => 1.0,
        ((1, -1), (1, -1)) => (-lambda).exp(),
        ((-1, 1), (-1, 1)) => lambda.exp(),
        _ => 0.0,
    }
}

/// Weight of one cap given the pseudo-spins `(west, east)` at it.
pub fn cap_weight(pair: (i8, i8), lambda: f64) -> f64 {
    match pair {
        (1, -1) => (-lambda / 2.0).exp(),
        (-1, 1) => (lambda / 2.0).exp(),
        _ => 0.0,
    }
}

/// Product of rung and cap weights for an arbitrary pseudo-spin assignment
/// `tau` on segments. Vanishes unless `tau` is consistent with the loops.
pub fn four_edge_weight(dec: &LoopDecomposition, tau: &[i8], lambda: f64) -> f64 {
    let mut w = 1.0;
    for r in dec.rung_segments() {
        w *= rung_weight(
            (tau[r.west_below], tau[r.east_below]),
            (tau[r.west_above], tau[r.east_above]),
            lambda,
        );
        if w == 0.0 {
            return 0.0;
        }
    }
    if dec.bx().is_capped() {
        for (wf, wl, ef, el) in dec.cap_segments() {
            w *= cap_weight((tau[wl], tau[el]), lambda);
            w *= cap_weight((tau[wf], tau[ef]), lambda);
        }
    } else {
        for i in 0..dec.bx().n_sites() {
            let r = dec.site_segments(i);
            if tau[r.start] != tau[r.end - 1] {
                return 0.0;
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::decompose;
    use crate::model::BoundaryCondition::*;
    use crate::model::{Rung, RungConfiguration, SpaceTimeBox};
    use crate::sampler::chain::init_poisson;
    use crate::sampler::rng::{substream, Purpose};

    #[test]
    fn contractible_probability() {
        assert!((plus_probability(2f64.ln(), 1) - 0.8).abs() < 1e-15);
        assert_eq!(plus_probability(3.0, 0), 0.5);
        assert_eq!(plus_probability(0.0, 1), 0.5);
    }

    #[test]
    fn right_boundary_calibration() {
        // tau(L, 0) on the empty capped box has expectation +tanh(lambda).
        let lambda = 0.5f64;
        for l in [1usize, 2, 3] {
            let b = SpaceTimeBox::new(l, 1.0, CappedAlternating).unwrap();
            let d = decompose(&b, &RungConfiguration::empty(&b));
            let s = d.segment_at(l as i64, 0.0).unwrap();
            let w = d.loops()[d.segment_loop(s)].turning;
            let e = d.segment_dir(s) as f64 * (lambda * w as f64).tanh();
            assert!((e - lambda.tanh()).abs() < 1e-14);
        }
    }

    fn brute_force_sum(b: &SpaceTimeBox, cfg: &RungConfiguration, lambda: f64) -> f64 {
        let d = decompose(b, cfg);
        let n = d.n_segments();
        assert!(n <= 16);
        (0u32..1 << n)
            .map(|mask| {
                let tau: Vec<i8> = (0..n).map(|s| if mask >> s & 1 == 1 { 1 } else { -1 }).collect();
                four_edge_weight(&d, &tau, lambda)
            })
            .sum()
    }

    #[test]
    fn brute_force_sum_factorizes() {
        let lambda = 0.6f64;
        let b = SpaceTimeBox::new(1, 1.0, CappedAlternating).unwrap();
        let cfg = RungConfiguration::from_rungs(&b, [Rung::new(0, -0.1), Rung::new(0, 0.2)]).unwrap();
        let n = decompose(&b, &cfg).loop_count() as i32;
        let z = brute_force_sum(&b, &cfg, lambda);
        assert!((z - (2.0 * lambda.cosh()).powi(n)).abs() < 1e-12 * z);
    }

    #[test]
    fn consistent_tau_weight_matches_loop_weight() {
        let lambda = 0.8f64;
        let b = SpaceTimeBox::new(2, 1.5, CappedAlternating).unwrap();
        for seed in 0..20 {
            let cfg = init_poisson(&b, &mut substream(seed, 0, Purpose::Init));
            let d = decompose(&b, &cfg);
            let o = sample_orientations(&d, lambda, &mut substream(seed, 0, Purpose::Orientations));
            let tau: Vec<i8> = (0..d.n_segments()).map(|s| o.tau_segment(&d, s)).collect();
            let w = four_edge_weight(&d, &tau, lambda);
            assert!((w - o.loop_weight(&d, lambda)).abs() < 1e-12 * w);
        }
    }
}
