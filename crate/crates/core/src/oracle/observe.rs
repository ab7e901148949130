//! Exact values of sampler observables.

use super::expectations::{tracial_expectation, SeededState, ThermalState, TracialInsertion};
use super::hamiltonians::{hamiltonian_af, kform, xxz_periodic};
use super::linalg::{hermitian_eigen, CMat};
use super::operators::ChainSpace;
use super::states::{seed_dimer, seed_neel};
use crate::error::Result;
use crate::model::{BoundaryCondition, ModelKind, ModelParams, Spin};
use crate::observables::{c_s, ObservableSpec, Side};

enum State {
    Seeded(SeededState),
    Thermal(ThermalState),
}

impl State {
    fn expect(&self, f: &CMat) -> f64 {
        match self {
            State::Seeded(s) => s.expect(f),
            State::Thermal(t) => t.expect(f),
        }
    }

    fn expect_diagonal(&self, f: impl Fn(usize) -> f64) -> f64 {
        match self {
            State::Seeded(s) => s.expect_diagonal(f),
            State::Thermal(t) => t.expect_diagonal(f),
        }
    }
}

/// The quantum state a sampler run at `params` represents.
pub struct OracleModel {
    pub model: ModelKind,
    pub params: ModelParams,
    pub space: ChainSpace,
    pub hamiltonian: CMat,
    state: State,
}

impl OracleModel {
    pub fn new(params: &ModelParams, model: ModelKind, cap: usize) -> Result<Self> {
        let (l, beta) = (params.l, params.beta);
        let periodic = params.bc == BoundaryCondition::PeriodicBoth;
        let (spin, h) = match model {
            ModelKind::Af => {
                let spin = params.require_spin()?;
                (spin, hamiltonian_af(l, spin, periodic, cap)?)
            }
            ModelKind::Xxz => {
                let lambda = params.require_lambda()?;
                let h = if periodic { xxz_periodic(l, lambda, cap)? } else { kform(l, lambda, false, cap)? };
                (Spin::HALF, h)
            }
        };
        let space = ChainSpace::new(spin, l, cap)?;
        let state = if params.bc.is_time_periodic() {
            State::Thermal(ThermalState::new(&h, beta)?)
        } else {
            let seed = match model {
                ModelKind::Af => seed_dimer(l, spin, cap)?,
                ModelKind::Xxz => seed_neel(l, params.require_lambda()?, cap)?,
            };
            let eig = hermitian_eigen(&h)?;
            State::Seeded(SeededState::from_eigen(&eig, &seed, beta)?)
        };
        Ok(OracleModel { model, params: params.clone(), space, hamiltonian: h, state })
    }

    fn tau(&self, u: i64) -> Result<f64> {
        let i = self.space.index(u)?;
        Ok(self.state.expect_diagonal(|x| 2.0 * self.space.m_at(x, i)))
    }

    fn sqrt_q_projector(&self, u: i64) -> Result<f64> {
        Ok(self.space.spin.multiplicity() as f64 * self.state.expect(&self.space.projector(u)?))
    }

    fn connectivity(&self, u: i64, v: i64) -> Result<f64> {
        let zz = self.state.expect(&self.space.sz_sz(u, v)?);
        let sign = if (u - v).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        Ok(sign * zz / c_s(self.space.spin))
    }

    /// Exact value of `spec`, or `None` when it has no quantum counterpart
    /// for this model and boundary condition.
    pub fn value(&self, spec: &ObservableSpec) -> Result<Option<f64>> {
        use ObservableSpec::*;
        let af = self.model == ModelKind::Af;
        let half = self.space.spin == Spin::HALF;
        let q = self.space.spin.multiplicity() as f64;
        let v = match spec {
            Projector { u } if af => Some(self.sqrt_q_projector(*u)?),
            SpinSpin { u, v } if af => Some(self.state.expect(&self.space.sz_sz(*u, *v)?)),
            Connectivity { u, v, t } if af && *t == 0.0 && u != v => Some(self.connectivity(*u, *v)?),
            Connectivity { u, v, t } if *t == 0.0 && u == v => Some(1.0),
            DimerOrder { n } if af => {
                let left = self.sqrt_q_projector(2 * n - 1)?;
                let right = self.sqrt_q_projector(2 * n)?;
                Some((left - right) / (q - 1.0 / q))
            }
            SpinZ { u, .. } if half => Some(self.tau(*u)?),
            StaggeredMagnetization { .. } if half => {
                let n = self.space.n_sites() as i64;
                let l = self.space.l as i64;
                let mut acc = 0.0;
                for u in -l + 1..=l {
                    let s = if u.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    acc += s * self.tau(u)?;
                }
                Some(acc / n as f64)
            }
            BoundaryMagnetization { side, .. } if half => {
                let l = self.space.l as i64;
                Some(self.tau(match side {
                    Side::Left => -l + 1,
                    Side::Right => l,
                })?)
            }
            PseudoSpinEvent { insertions } if half && self.params.bc.is_time_periodic() => {
                let mut ins: Vec<TracialInsertion> = insertions
                    .iter()
                    .map(|i| TracialInsertion { site: i.site, time: i.time, sign: i.sign })
                    .collect();
                ins.sort_by(|a, b| a.time.total_cmp(&b.time));
                Some(tracial_expectation(&self.hamiltonian, &self.space, self.params.beta, &ins)?)
            }
            _ => None,
        };
        Ok(v)
    }
}

/// Exact values for a list of observables; unsupported ones map to `None`.
pub fn oracle_values(
    params: &ModelParams,
    model: ModelKind,
    specs: &[ObservableSpec],
    cap: usize,
) -> Result<Vec<Option<f64>>> {
    let m = OracleModel::new(params, model, cap)?;
    specs.iter().map(|s| m.value(s)).collect()
}
