//! Hamiltonian builders.

use super::linalg::{c, CMat};
use super::operators::{k_operator, pauli, projector_p0, ChainSpace};
use crate::error::{Error, Result};
use crate::model::Spin;

/// The nearest-neighbour bonds `(i, j)` of the chain as site-index pairs; the
/// periodic bond is `(L, -L+1)`.
pub fn bonds(space: &ChainSpace, periodic: bool) -> Vec<(usize, usize)> {
    let n = space.n_sites();
    let mut b: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    if periodic {
        b.push((n - 1, 0));
    }
    b
}

/// `-sum (2S+1) P^(0)` over open or periodic bonds.
pub fn hamiltonian_af(l: usize, spin: Spin, periodic: bool, cap: usize) -> Result<CMat> {
    let space = ChainSpace::new(spin, l, cap)?;
    let p = projector_p0(spin)? * c(-(spin.multiplicity() as f64));
    let mut h = CMat::zeros(space.dim, space.dim);
    for (i, j) in bonds(&space, periodic) {
        h += space.embed_two(&p, i, j);
    }
    Ok(h)
}

/// Sign of the boundary field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XxzVariant {
    Open,
    /// Open chain plus `sinh(lambda) (-1)^L (tau^z_{-L+1} - tau^z_L)/2`, signed.
    OpenField(FieldSign),
    Periodic,
    /// `-sum K` at `+lambda` or `-lambda`.
    KForm(FieldSign),
    KFormPeriodic(FieldSign),
}

fn xxz_bond(delta: f64) -> CMat {
    // -(1/2) [xx + yy + Delta (1 - zz)]
    let (x, y, z) = pauli();
    let one = CMat::identity(4, 4);
    let xy = x.kronecker(&x) + y.kronecker(&y);
    let zz = z.kronecker(&z);
    (xy + (one - zz) * c(delta)) * c(-0.5)
}

fn xxz_sum(space: &ChainSpace, delta: f64, periodic: bool) -> CMat {
    let bond = xxz_bond(delta);
    let mut h = CMat::zeros(space.dim, space.dim);
    for (i, j) in bonds(space, periodic) {
        h += space.embed_two(&bond, i, j);
    }
    h
}

/// `-sum K(lambda)` with a caller-supplied two-site `K` builder.
pub fn kform_with(
    l: usize,
    lambda: f64,
    periodic: bool,
    cap: usize,
    k_builder: &dyn Fn(f64) -> CMat,
) -> Result<CMat> {
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    let k = k_builder(lambda) * c(-1.0);
    let mut h = CMat::zeros(space.dim, space.dim);
    for (i, j) in bonds(&space, periodic) {
        h += space.embed_two(&k, i, j);
    }
    Ok(h)
}

pub fn kform(l: usize, lambda: f64, periodic: bool, cap: usize) -> Result<CMat> {
    kform_with(l, lambda, periodic, cap, &k_operator)
}

/// Boundary term `sinh(lambda) (tau^z_{-L+1} - tau^z_L) / 2`.
pub fn boundary_term(l: usize, lambda: f64, cap: usize) -> Result<CMat> {
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    let n = space.n_sites();
    Ok(space.diagonal(|x| {
        let first = 2.0 * space.m_at(x, 0);
        let last = 2.0 * space.m_at(x, n - 1);
        lambda.sinh() * (first - last) / 2.0
    }))
}

/// XXZ Hamiltonians at anisotropy `delta = cosh(lambda)`, `lambda >= 0`.
pub fn hamiltonian_xxz(l: usize, delta: f64, variant: XxzVariant, cap: usize) -> Result<CMat> {
    if !(delta >= 1.0 && delta.is_finite()) {
        return Err(Error::OutOfRange(format!("Delta = {delta} must be >= 1")));
    }
    let lambda = delta.acosh();
    let signed = |s: FieldSign| match s {
        FieldSign::Plus => lambda,
        FieldSign::Minus => -lambda,
    };
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    match variant {
        XxzVariant::Open => Ok(xxz_sum(&space, delta, false)),
        XxzVariant::Periodic => Ok(xxz_sum(&space, delta, true)),
        XxzVariant::OpenField(s) => {
            let parity = if l % 2 == 0 { 1.0 } else { -1.0 };
            Ok(xxz_sum(&space, delta, false) + boundary_term(l, signed(s), cap)? * c(parity))
        }
        XxzVariant::KForm(s) => kform(l, signed(s), false, cap),
        XxzVariant::KFormPeriodic(s) => kform(l, signed(s), true, cap),
    }
}

/// Open XXZ chain at signed `lambda` plus the boundary term, the left side of
/// the open-chain K identity.
pub fn xxz_with_boundary(l: usize, lambda: f64, cap: usize) -> Result<CMat> {
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    Ok(xxz_sum(&space, lambda.cosh(), false) + boundary_term(l, lambda, cap)?)
}

/// Periodic XXZ chain at anisotropy `cosh(lambda)`.
pub fn xxz_periodic(l: usize, lambda: f64, cap: usize) -> Result<CMat> {
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    Ok(xxz_sum(&space, lambda.cosh(), true))
}

/// `(1/2) sum [tau . tau + (Delta - 1) zz - Delta]` over open bonds.
pub fn antiferro_form(l: usize, delta: f64, cap: usize) -> Result<CMat> {
    let space = ChainSpace::new(Spin::HALF, l, cap)?;
    let (x, y, z) = pauli();
    let one = CMat::identity(4, 4);
    let zz = z.kronecker(&z);
    let dot = x.kronecker(&x) + y.kronecker(&y) + &zz;
    let bond = (dot + zz * c(delta - 1.0) - one * c(delta)) * c(0.5);
    let mut h = CMat::zeros(space.dim, space.dim);
    for (i, j) in bonds(&space, false) {
        h += space.embed_two(&bond, i, j);
    }
    Ok(h)
}
