//! Gauge transformations and seed vectors.

use num_complex::Complex64;

use super::linalg::{c, CMat, CVec, C0};
use super::operators::ChainSpace;
use crate::error::{Error, Result};
use crate::model::Spin;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeKind {
    /// `exp(i pi/2 sum (-1)^u S^z_u)`.
    Half,
    /// `exp(i pi/4 sum (-1)^u tau^z_u)`, spin 1/2 only.
    Quarter,
}

fn parity(u: i64) -> f64 {
    if u.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
}

/// Diagonal phases of the gauge transformation.
pub fn gauge_phases(space: &ChainSpace, kind: GaugeKind) -> Result<Vec<Complex64>> {
    let coeff = match kind {
        GaugeKind::Half => std::f64::consts::FRAC_PI_2,
        GaugeKind::Quarter => {
            if space.spin != Spin::HALF {
                return Err(Error::OutOfRange("the Pauli-form gauge needs spin 1/2".into()));
            }
            std::f64::consts::FRAC_PI_4 * 2.0
        }
    };
    let l = space.l as i64;
    Ok((0..space.dim)
        .map(|x| {
            let theta: f64 = (0..space.n_sites())
                .map(|i| parity(i as i64 - l + 1) * space.m_at(x, i))
                .sum::<f64>()
                * coeff;
            Complex64::from_polar(1.0, theta)
        })
        .collect())
}

pub fn gauge_transform(space: &ChainSpace, kind: GaugeKind) -> Result<CMat> {
    let ph = gauge_phases(space, kind)?;
    Ok(CMat::from_fn(space.dim, space.dim, |r, k| if r == k { ph[r] } else { C0 }))
}

/// Product state over the cap pairs `(-L+2j-1, -L+2j)` with pair amplitude
/// `amp(m_first, m_second)`.
fn pair_product(space: &ChainSpace, amp: impl Fn(f64, f64) -> Complex64) -> CVec {
    CVec::from_fn(space.dim, |x, _| {
        let mut a = c(1.0);
        for j in 0..space.l {
            a *= amp(space.m_at(x, 2 * j), space.m_at(x, 2 * j + 1));
            if a == C0 {
                break;
            }
        }
        a
    })
}

/// `U (x)_j sum_m |m, -m>` with the half gauge, unnormalized.
pub fn seed_dimer(l: usize, spin: Spin, cap: usize) -> Result<CVec> {
    let space = ChainSpace::new(spin, l, cap)?;
    let plain = pair_product(&space, |a, b| if (a + b).abs() < 1e-9 { c(1.0) } else { C0 });
    let ph = gauge_phases(&space, GaugeKind::Half)?;
    Ok(CVec::from_fn(space.dim, |x, _| plain[x] * ph[x]))
}

/// `(x)_j (e^{-lambda/2} |+,-> + e^{lambda/2} |-,+>)`, unnormalized.
pub fn seed_neel(l: usize, lambda: f64, cap: usize) -> Result<CVec> {
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    Ok(pair_product(&space, |a, b| {
        if a > 0.0 && b < 0.0 {
            c((-lambda / 2.0).exp())
        } else if a < 0.0 && b > 0.0 {
            c((lambda / 2.0).exp())
        } else {
            C0
        }
    }))
}
