//! Seeded, thermal and tracial expectation values.

use super::linalg::{c, hermitian_eigen, CMat, CVec, Eigen};
use super::operators::ChainSpace;
use crate::error::{Error, Result};

/// `e^{-beta H / 2} |seed>`, normalized lazily.
#[derive(Clone, Debug)]
pub struct SeededState {
    psi: CVec,
    norm2: f64,
}

impl SeededState {
    pub fn new(h: &CMat, seed: &CVec, beta: f64) -> Result<Self> {
        let eig = hermitian_eigen(h)?;
        Self::from_eigen(&eig, seed, beta)
    }

    pub fn from_eigen(eig: &Eigen, seed: &CVec, beta: f64) -> Result<Self> {
        let seed_norm2 = seed.norm_squared();
        if seed_norm2 == 0.0 {
            return Err(Error::SingularNormalization(0.0));
        }
        let psi = eig.shifted_exp(beta / 2.0) * seed;
        let norm2 = psi.norm_squared();
        // Relative cut below double-precision noise flags an annihilated seed.
        if norm2 < 1e-300 || norm2 < 1e-26 * seed_norm2 {
            return Err(Error::SingularNormalization(norm2));
        }
        Ok(SeededState { psi, norm2 })
    }

    pub fn expect(&self, f: &CMat) -> f64 {
        (self.psi.adjoint() * f * &self.psi)[(0, 0)].re / self.norm2
    }

    /// Expectation of a diagonal observable with entries `f(x)`.
    pub fn expect_diagonal(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.psi.iter().enumerate().map(|(x, z)| z.norm_sqr() * f(x)).sum::<f64>() / self.norm2
    }
}

/// `<seed| e^{-beta H/2} F e^{-beta H/2} |seed> / <seed| e^{-beta H} |seed>`.
pub fn seeded_expectation(h: &CMat, seed: &CVec, beta: f64, f: &CMat) -> Result<f64> {
    Ok(SeededState::new(h, seed, beta)?.expect(f))
}

/// Gibbs state `e^{-beta H} / tr e^{-beta H}`.
#[derive(Clone, Debug)]
pub struct ThermalState {
    rho: CMat,
}

impl ThermalState {
    pub fn new(h: &CMat, beta: f64) -> Result<Self> {
        let eig = hermitian_eigen(h)?;
        let rho = eig.shifted_exp(beta);
        let z = rho.trace().re;
        Ok(ThermalState { rho: rho / c(z) })
    }

    pub fn expect(&self, f: &CMat) -> f64 {
        (&self.rho * f).trace().re
    }

    pub fn expect_diagonal(&self, f: impl Fn(usize) -> f64) -> f64 {
        (0..self.rho.nrows()).map(|x| self.rho[(x, x)].re * f(x)).sum()
    }
}

pub fn thermal_expectation(h: &CMat, beta: f64, f: &CMat) -> Result<f64> {
    Ok(ThermalState::new(h, beta)?.expect(f))
}

/// Projector insertion `1[tau^z_site = sign]` at imaginary time `time`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracialInsertion {
    pub site: i64,
    pub time: f64,
    pub sign: i8,
}

/// Time-ordered trace ratio with projector insertions, spin 1/2.
pub fn tracial_expectation(
    h: &CMat,
    space: &ChainSpace,
    beta: f64,
    insertions: &[TracialInsertion],
) -> Result<f64> {
    if space.spin != crate::model::Spin::HALF {
        return Err(Error::OutOfRange("tracial insertions are defined for spin 1/2".into()));
    }
    let mut last = 0.0;
    for ins in insertions {
        if !(ins.time > last && ins.time < beta) {
            return Err(Error::TimeOrderViolation);
        }
        last = ins.time;
    }
    let eig = hermitian_eigen(h)?;
    let z = eig.shifted_exp(beta).trace().re;
    let mut m = CMat::identity(space.dim, space.dim);
    let mut prev = 0.0;
    for ins in insertions {
        let i = space.index(ins.site)?;
        m = eig.shifted_exp(ins.time - prev) * m;
        for x in 0..space.dim {
            let up = space.m_at(x, i) > 0.0;
            if up != (ins.sign > 0) {
                m.row_mut(x).fill(c(0.0));
            }
        }
        prev = ins.time;
    }
    m = eig.shifted_exp(beta - prev) * m;
    Ok(m.trace().re / z)
}

/// `<seed| P_gs |seed> / dim P_gs`, ground space resolved to `tol * |H|`.
pub fn ground_overlap(h: &CMat, seed: &CVec, tol: f64) -> Result<(f64, usize)> {
    let eig = hermitian_eigen(h)?;
    let scale = super::linalg::max_abs(h).max(1.0);
    let e0 = eig.min_value();
    let g: Vec<usize> = (0..eig.values.len()).filter(|&k| eig.values[k] - e0 <= tol * scale).collect();
    let overlap: f64 = g
        .iter()
        .map(|&k| (eig.vectors.column(k).adjoint() * seed)[(0, 0)].norm_sqr())
        .sum();
    Ok((overlap / g.len() as f64, g.len()))
}

/// `<seed| e^{-beta H} |seed> / tr e^{-beta H}`.
pub fn seed_trace_ratio(h: &CMat, seed: &CVec, beta: f64) -> Result<f64> {
    let eig = hermitian_eigen(h)?;
    let e = eig.shifted_exp(beta);
    let num = (seed.adjoint() * &e * seed)[(0, 0)].re;
    Ok(num / e.trace().re)
}
