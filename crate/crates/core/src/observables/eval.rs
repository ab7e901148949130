//! Per-sample evaluators.

use crate::error::{Error, Result};
use crate::loops::{ClusterDecomposition, LoopDecomposition, NestedRegion, RegionClusters};
use crate::model::{RungConfiguration, Spin};
use crate::sampler::OrientedConfiguration;

use super::spec::{ObservableSpec, Side};

/// `sum_m m^2 / (2S+1)`.
pub fn c_s(spin: Spin) -> f64 {
    spin.m_values().map(|m| m * m).sum::<f64>() / spin.multiplicity() as f64
}

fn parity(u: i64) -> f64 {
    if u.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
}

pub fn eval_connectivity(dec: &LoopDecomposition, u: i64, v: i64, t: f64) -> Result<f64> {
    Ok(dec.same_loop((u, 0.0), (v, t))? as u8 as f64)
}

pub fn eval_dimer_order(dec: &LoopDecomposition, n: i64) -> Result<f64> {
    let left = dec.same_loop((2 * n - 1, 0.0), (2 * n, 0.0))?;
    let right = dec.same_loop((2 * n, 0.0), (2 * n + 1, 0.0))?;
    Ok(left as u8 as f64 - right as u8 as f64)
}

/// Conditional expectation of `S^z_u S^z_v` given the loops.
pub fn eval_spin_spin(dec: &LoopDecomposition, spin: Spin, u: i64, v: i64) -> Result<f64> {
    if u == v {
        return Err(Error::OutOfRange("spin-spin needs u != v".into()));
    }
    let conn = dec.same_loop((u, 0.0), (v, 0.0))?;
    Ok(if conn { parity(u - v) * c_s(spin) } else { 0.0 })
}

/// Conditional expectation of `sqrt(Q) P_{u,u+1}`: `sqrt(Q)` when the two
/// sites share a loop, `1/sqrt(Q)` otherwise.
pub fn eval_projector(dec: &LoopDecomposition, sqrt_q: f64, u: i64) -> Result<f64> {
    let conn = dec.same_loop((u, 0.0), (u + 1, 0.0))?;
    Ok(if conn { sqrt_q } else { 1.0 / sqrt_q })
}

/// `E[tau(u, t) | loops]`.
pub fn rb_tau(dec: &LoopDecomposition, lambda: f64, u: i64, t: f64) -> Result<f64> {
    let s = dec.segment_at(u, t)?;
    let w = dec.loops()[dec.segment_loop(s)].turning;
    Ok(dec.segment_dir(s) as f64 * (lambda * w as f64).tanh())
}

fn tau_value(
    dec: &LoopDecomposition,
    oriented: Option<&OrientedConfiguration>,
    lambda: f64,
    rb: bool,
    u: i64,
    t: f64,
) -> Result<f64> {
    if rb {
        rb_tau(dec, lambda, u, t)
    } else {
        let o = oriented.ok_or_else(|| Error::InvalidConfiguration("orientations not sampled".into()))?;
        Ok(o.tau(dec, u, t)? as f64)
    }
}

pub fn eval_staggered_magnetization(
    dec: &LoopDecomposition,
    oriented: Option<&OrientedConfiguration>,
    lambda: f64,
    rb: bool,
) -> Result<f64> {
    let bx = dec.bx();
    let mut acc = 0.0;
    for i in 0..bx.n_sites() {
        let u = bx.site(i);
        acc += parity(u) * tau_value(dec, oriented, lambda, rb, u, 0.0)?;
    }
    Ok(acc / bx.n_sites() as f64)
}

pub fn eval_boundary_magnetization(
    dec: &LoopDecomposition,
    oriented: Option<&OrientedConfiguration>,
    lambda: f64,
    side: Side,
    rb: bool,
) -> Result<f64> {
    let l = dec.bx().l() as i64;
    let u = match side {
        Side::Left => -l + 1,
        Side::Right => l,
    };
    tau_value(dec, oriented, lambda, rb, u, 0.0)
}

pub fn eval_boundary_touch(clusters: &ClusterDecomposition, l: usize, t: f64) -> Result<f64> {
    Ok(clusters.boundary_touch(NestedRegion::new(l, t))? as u8 as f64)
}

/// Everything a sample offers to the evaluators.
pub struct SampleView<'a> {
    pub config: &'a RungConfiguration,
    pub dec: &'a LoopDecomposition,
    pub oriented: Option<&'a OrientedConfiguration>,
    pub clusters: Option<&'a ClusterDecomposition>,
    pub lambda: f64,
    pub sqrt_q: f64,
    pub spin: Option<Spin>,
}

pub fn evaluate(spec: &ObservableSpec, s: &SampleView<'_>) -> Result<f64> {
    use ObservableSpec::*;
    let dec = s.dec;
    match spec {
        Connectivity { u, v, t } => eval_connectivity(dec, *u, *v, *t),
        DimerOrder { n } => eval_dimer_order(dec, *n),
        SpinSpin { u, v } => {
            let spin = s.spin.ok_or_else(|| Error::OutOfRange("no quantum spin for this Q".into()))?;
            eval_spin_spin(dec, spin, *u, *v)
        }
        Projector { u } => eval_projector(dec, s.sqrt_q, *u),
        SpinZ { u, rb } => tau_value(dec, s.oriented, s.lambda, *rb, *u, 0.0),
        StaggeredMagnetization { rb } => eval_staggered_magnetization(dec, s.oriented, s.lambda, *rb),
        BoundaryMagnetization { side, rb } => eval_boundary_magnetization(dec, s.oriented, s.lambda, *side, *rb),
        BoundaryTouch { l, t } => {
            let c = s.clusters.ok_or_else(|| Error::InvalidConfiguration("clusters not built".into()))?;
            eval_boundary_touch(c, *l, *t)
        }
        RegionConnectivity { l, t, p, q } => {
            let rc = RegionClusters::new(dec.bx(), s.config, NestedRegion::new(*l, *t))?;
            Ok(rc.connected(*p, *q)? as u8 as f64)
        }
        NestingCount => Ok(dec.encircling_count(0.5, 0.0)? as f64),
        RungCount => Ok(s.config.len() as f64),
        LoopCount => Ok(dec.loop_count() as f64),
        PseudoSpinEvent { insertions } => {
            let o = s.oriented.ok_or_else(|| Error::InvalidConfiguration("orientations not sampled".into()))?;
            let shift = dec.bx().beta() / 2.0;
            for ins in insertions {
                if o.tau(dec, ins.site, ins.time - shift)? != ins.sign {
                    return Ok(0.0);
                }
            }
            Ok(1.0)
        }
        CorrelationLengthFit { .. } => Err(Error::InvalidConfiguration(
            "correlation-length fits are evaluated from their connectivities".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::decompose;
    use crate::model::BoundaryCondition::*;
    use crate::model::{Rung, SpaceTimeBox};

    fn empty(l: usize) -> (SpaceTimeBox, RungConfiguration) {
        let b = SpaceTimeBox::new(l, 1.0, CappedAlternating).unwrap();
        let c = RungConfiguration::empty(&b);
        (b, c)
    }

    #[test]
    fn c_s_values() {
        assert!((c_s(Spin::HALF) - 0.25).abs() < 1e-15);
        assert!((c_s(Spin::ONE) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn empty_box_values() {
        let (b, c) = empty(2);
        let d = decompose(&b, &c);
        assert_eq!(eval_connectivity(&d, -1, 0, 0.0).unwrap(), 1.0);
        assert_eq!(eval_connectivity(&d, 0, 1, 0.0).unwrap(), 0.0);
        assert_eq!(eval_spin_spin(&d, Spin::HALF, -1, 0).unwrap(), -0.25);
        assert_eq!(eval_spin_spin(&d, Spin::HALF, 0, 1).unwrap(), 0.0);
        assert_eq!(eval_projector(&d, 2.0, 0).unwrap(), 0.5);
        assert_eq!(eval_projector(&d, 3.0, -1).unwrap(), 3.0);
        assert_eq!(eval_dimer_order(&d, 0).unwrap(), 1.0);
    }

    #[test]
    fn dimer_order_zero_when_both_connected() {
        let b = SpaceTimeBox::new(2, 1.0, CappedAlternating).unwrap();
        let c = RungConfiguration::from_rungs(&b, [Rung::new(b.column_of_edge(0).unwrap(), 0.3)]).unwrap();
        let d = decompose(&b, &c);
        assert_eq!(eval_dimer_order(&d, 0).unwrap(), 0.0);
    }

    #[test]
    fn rb_staggered_on_empty_box() {
        let lambda = 0.7f64;
        for l in [2usize, 4] {
            let (b, c) = empty(l);
            let d = decompose(&b, &c);
            let m = eval_staggered_magnetization(&d, None, lambda, true).unwrap();
            assert!((m - lambda.tanh()).abs() < 1e-14);
            assert_eq!(eval_staggered_magnetization(&d, None, 0.0, true).unwrap(), 0.0);
            let r = eval_boundary_magnetization(&d, None, lambda, Side::Right, true).unwrap();
            let lft = eval_boundary_magnetization(&d, None, lambda, Side::Left, true).unwrap();
            assert!((r - lambda.tanh()).abs() < 1e-14);
            assert!((lft + lambda.tanh()).abs() < 1e-14);
        }
    }

    #[test]
    fn raw_tau_needs_orientations() {
        let (b, c) = empty(1);
        let d = decompose(&b, &c);
        assert!(eval_staggered_magnetization(&d, None, 0.5, false).is_err());
    }
}
