#![allow(dead_code)]

use rand::Rng;
use spinloops::loops::{decompose, LoopDecomposition};
use spinloops::model::{BoundaryCondition, Rung, RungConfiguration, SpaceTimeBox};
use spinloops::observables::BASE_POINT;
use spinloops::sampler::{substream, Purpose};

pub const BCS: [BoundaryCondition; 3] =
    [BoundaryCondition::CappedAlternating, BoundaryCondition::PeriodicTime, BoundaryCondition::PeriodicBoth];

/// `n` uniform rungs on `bx`, drawn from `seed`.
pub fn random_config(bx: &SpaceTimeBox, n: usize, seed: u64) -> RungConfiguration {
    let mut rng = substream(seed, 99, Purpose::Init);
    let mut cfg = RungConfiguration::empty(bx);
    while cfg.len() < n {
        let c = rng.random_range(0..bx.n_columns());
        let t = rng.random_range(bx.t_min()..bx.t_max());
        let _ = cfg.insert(bx, Rung::new(c, t));
    }
    cfg
}

pub fn fixture(l: usize, beta: f64, bc: BoundaryCondition, n: usize, seed: u64) -> (SpaceTimeBox, RungConfiguration, LoopDecomposition) {
    let bx = SpaceTimeBox::new(l, beta, bc).unwrap();
    let cfg = random_config(&bx, n, seed);
    let dec = decompose(&bx, &cfg);
    (bx, cfg, dec)
}

/// A dual time that avoids every rung of `cfg`.
pub fn free_time<R: Rng>(bx: &SpaceTimeBox, cfg: &RungConfiguration, rng: &mut R) -> f64 {
    loop {
        let t = rng.random_range(bx.t_min()..bx.t_max());
        if cfg.iter().all(|r| (r.time - t).abs() > 1e-9) {
            return t;
        }
    }
}

pub fn random_dual<R: Rng>(bx: &SpaceTimeBox, rng: &mut R) -> f64 {
    let l = bx.l() as i64;
    rng.random_range(-l..=l) as f64 + 0.5
}

/// Axis-parallel path from the base point to `end` through `turns` random corners.
pub fn random_path<R: Rng>(bx: &SpaceTimeBox, cfg: &RungConfiguration, end: (f64, f64), turns: usize, rng: &mut R) -> Vec<(f64, f64)> {
    let mut path = vec![BASE_POINT];
    let mut cur = BASE_POINT;
    for _ in 0..turns {
        cur = (random_dual(bx, rng), cur.1);
        path.push(cur);
        cur = (cur.0, free_time(bx, cfg, rng));
        path.push(cur);
    }
    path.push((end.0, cur.1));
    path.push(end);
    path
}

