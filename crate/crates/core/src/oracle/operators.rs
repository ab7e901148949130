//! Single- and two-site spin operators and their embedding into the chain.
//!
//! Basis states are ordered lexicographically by `(m_{-L+1}, ..., m_L)`, each
//! `m` descending from `S`; the first site is the most significant digit.

use num_complex::Complex64;

use super::linalg::{c, CMat, C0, I};
use crate::error::{Error, Result};
use crate::model::Spin;

pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// `(2S+1)^{2L}`, or `DimensionCap` when above `cap`.
pub fn chain_dimension(spin: Spin, l: usize, cap: usize) -> Result<usize> {
    let d = spin.multiplicity();
    let mut dim: usize = 1;
    for _ in 0..2 * l {
        dim = dim.checked_mul(d).unwrap_or(usize::MAX);
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
    }
    Ok(dim)
}

fn require_quantum(spin: Spin) -> Result<()> {
    if spin.twice() == 0 {
        return Err(Error::OutOfRange("spin must be at least 1/2".into()));
    }
    Ok(())
}

/// `(S^x, S^y, S^z)` in the `(2S+1)`-dimensional irreducible representation.
pub fn spin_matrices(spin: Spin) -> Result<(CMat, CMat, CMat)> {
    require_quantum(spin)?;
    let d = spin.multiplicity();
    let s = spin.value();
    let m: Vec<f64> = spin.m_values().collect();
    let mut sp = CMat::zeros(d, d);
    // S^+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>, index k-1 holds m+1.
    for k in 1..d {
        sp[(k - 1, k)] = c((s * (s + 1.0) - m[k] * (m[k] + 1.0)).sqrt());
    }
    let sm = sp.adjoint();
    let sx = (&sp + &sm) * c(0.5);
    let sy = (&sp - &sm) * Complex64::new(0.0, -0.5);
    let sz = CMat::from_fn(d, d, |r, k| if r == k { c(m[k]) } else { C0 });
    Ok((sx, sy, sz))
}

/// Index of `|m_1, m_2>` in the two-site basis.
fn pair_index(spin: Spin, m1: f64, m2: f64) -> usize {
    let d = spin.multiplicity();
    let k = |m: f64| (spin.value() - m).round() as usize;
    k(m1) * d + k(m2)
}

/// The singlet projector `P^(0)` on two spins.
pub fn projector_p0(spin: Spin) -> Result<CMat> {
    require_quantum(spin)?;
    let d = spin.multiplicity();
    let mut p = CMat::zeros(d * d, d * d);
    let ms: Vec<f64> = spin.m_values().collect();
    for &m in &ms {
        for &mp in &ms {
            let sign = if ((m - mp).round() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            p[(pair_index(spin, m, -m), pair_index(spin, mp, -mp))] = c(sign / d as f64);
        }
    }
    Ok(p)
}

/// Two-site operator `K = |v><v|` with `v = e^{lambda/2}|-,+> + e^{-lambda/2}|+,->`.
pub fn k_operator(lambda: f64) -> CMat {
    let mut v = CMat::zeros(4, 1);
    v[(2, 0)] = c((lambda / 2.0).exp());
    v[(1, 0)] = c((-lambda / 2.0).exp());
    &v * v.adjoint()
}

/// Pauli matrices `(tau^x, tau^y, tau^z)`.
pub fn pauli() -> (CMat, CMat, CMat) {
    let x = CMat::from_row_slice(2, 2, &[C0, c(1.0), c(1.0), C0]);
    let y = CMat::from_row_slice(2, 2, &[C0, -I, I, C0]);
    let z = CMat::from_row_slice(2, 2, &[c(1.0), C0, C0, c(-1.0)]);
    (x, y, z)
}

/// Geometry of the `2L`-site chain for embedding local operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSpace {
    pub spin: Spin,
    pub l: usize,
    pub dim: usize,
}

impl ChainSpace {
    pub fn new(spin: Spin, l: usize, cap: usize) -> Result<Self> {
        require_quantum(spin)?;
        if l < 1 {
            return Err(Error::OutOfRange("L must be at least 1".into()));
        }
        Ok(ChainSpace { spin, l, dim: chain_dimension(spin, l, cap)? })
    }

    pub fn n_sites(&self) -> usize {
        2 * self.l
    }

    pub fn local_dim(&self) -> usize {
        self.spin.multiplicity()
    }

    /// Site index `0..2L` of site `u`.
    pub fn index(&self, u: i64) -> Result<usize> {
        let i = u + self.l as i64 - 1;
        if i < 0 || i >= self.n_sites() as i64 {
            return Err(Error::IndexOutOfRange(format!("site {u}")));
        }
        Ok(i as usize)
    }

    fn stride(&self, i: usize) -> usize {
        self.local_dim().pow((self.n_sites() - 1 - i) as u32)
    }

    /// Local basis digit of site index `i` in basis state `x`.
    pub fn digit(&self, x: usize, i: usize) -> usize {
        (x / self.stride(i)) % self.local_dim()
    }

    /// `m` of site index `i` in basis state `x`.
    pub fn m_at(&self, x: usize, i: usize) -> f64 {
        self.spin.value() - self.digit(x, i) as f64
    }

    pub fn embed_one(&self, op: &CMat, i: usize) -> CMat {
        let d = self.local_dim();
        let st = self.stride(i);
        let mut out = CMat::zeros(self.dim, self.dim);
        for y in 0..self.dim {
            let b = self.digit(y, i);
            let base = y - b * st;
            for a in 0..d {
                let z = op[(a, b)];
                if z != C0 {
                    out[(base + a * st, y)] += z;
                }
            }
        }
        out
    }

    /// Embed a two-site operator acting on site indices `(i, j)` in that order.
    pub fn embed_two(&self, op: &CMat, i: usize, j: usize) -> CMat {
        assert_ne!(i, j);
        let d = self.local_dim();
        let (si, sj) = (self.stride(i), self.stride(j));
        let mut out = CMat::zeros(self.dim, self.dim);
        for y in 0..self.dim {
            let (bi, bj) = (self.digit(y, i), self.digit(y, j));
            let base = y - bi * si - bj * sj;
            for ai in 0..d {
                for aj in 0..d {
                    let z = op[(ai * d + aj, bi * d + bj)];
                    if z != C0 {
                        out[(base + ai * si + aj * sj, y)] += z;
                    }
                }
            }
        }
        out
    }

    /// Diagonal operator with entries `f(x)`.
    pub fn diagonal(&self, f: impl Fn(usize) -> f64) -> CMat {
        CMat::from_fn(self.dim, self.dim, |r, k| if r == k { c(f(r)) } else { C0 })
    }

    /// `S^z_u`.
    pub fn sz(&self, u: i64) -> Result<CMat> {
        let i = self.index(u)?;
        Ok(self.diagonal(|x| self.m_at(x, i)))
    }

    /// `S^z_u S^z_v`.
    pub fn sz_sz(&self, u: i64, v: i64) -> Result<CMat> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        Ok(self.diagonal(|x| self.m_at(x, i) * self.m_at(x, j)))
    }

    /// `P^(0)_{u,u+1}`.
    pub fn projector(&self, u: i64) -> Result<CMat> {
        let (i, j) = (self.index(u)?, self.index(u + 1)?);
        Ok(self.embed_two(&projector_p0(self.spin)?, i, j))
    }

    /// `1[tau^z_u = sigma]` (spin 1/2).
    pub fn tau_projector(&self, u: i64, sigma: i8) -> Result<CMat> {
        let i = self.index(u)?;
        Ok(self.diagonal(|x| if (self.m_at(x, i) > 0.0) == (sigma > 0) { 1.0 } else { 0.0 }))
    }

    /// Total `S^z`.
    pub fn sz_total(&self) -> CMat {
        self.diagonal(|x| (0..self.n_sites()).map(|i| self.m_at(x, i)).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::linalg::{max_abs, max_abs_diff};

    #[test]
    fn commutation_relations() {
        for s in [Spin::HALF, Spin::ONE, Spin::THREE_HALVES, Spin::TWO] {
            let (x, y, z) = spin_matrices(s).unwrap();
            let comm = &x * &y - &y * &x;
            assert!(max_abs_diff(&comm, &(&z * I)) < 1e-12);
            let d = s.multiplicity();
            for k in 0..d {
                assert!((z[(k, k)].re - (s.value() - k as f64)).abs() < 1e-15);
            }
        }
        let (x, _, z) = spin_matrices(Spin::HALF).unwrap();
        let (px, _, pz) = pauli();
        assert!(max_abs_diff(&(x * c(2.0)), &px) < 1e-15);
        assert!(max_abs_diff(&(z * c(2.0)), &pz) < 1e-15);
        assert!(spin_matrices(Spin::ZERO).is_err());
    }

    #[test]
    fn projector_properties() {
        for s in [Spin::HALF, Spin::ONE, Spin::THREE_HALVES] {
            let p = projector_p0(s).unwrap();
            assert!(max_abs_diff(&(&p * &p), &p) < 1e-12);
            assert!((p.trace().re - 1.0).abs() < 1e-12);
            let (x, y, z) = spin_matrices(s).unwrap();
            let one = CMat::identity(s.multiplicity(), s.multiplicity());
            for a in [x, y, z] {
                let tot = a.kronecker(&one) + one.kronecker(&a);
                assert!(max_abs(&(tot * &p)) < 1e-12);
            }
        }
        // S = 1/2: |D><D| with D = (|+-> - |-+>)/sqrt 2.
        let p = projector_p0(Spin::HALF).unwrap();
        assert!((p[(1, 1)].re - 0.5).abs() < 1e-15 && (p[(1, 2)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn k_is_rank_one() {
        let k = k_operator(0.7);
        let e = crate::oracle::linalg::hermitian_eigen(&k).unwrap();
        assert!(e.values[..3].iter().all(|v| v.abs() < 1e-12));
        assert!((e.values[3] - 2.0 * 0.7f64.cosh()).abs() < 1e-12);
    }

    #[test]
    fn embedding_orders_sites() {
        let sp = ChainSpace::new(Spin::HALF, 1, 64).unwrap();
        let sz0 = sp.sz(0).unwrap();
        assert_eq!(sz0[(0, 0)].re, 0.5);
        assert_eq!(sz0[(2, 2)].re, -0.5);
        let (_, _, z) = spin_matrices(Spin::HALF).unwrap();
        assert!(max_abs_diff(&sp.embed_one(&z, 0), &sz0) < 1e-15);
        let zz = z.kronecker(&z);
        assert!(max_abs_diff(&sp.embed_two(&zz, 0, 1), &sp.sz_sz(0, 1).unwrap()) < 1e-15);
    }

    #[test]
    fn dimension_cap() {
        assert_eq!(chain_dimension(Spin::HALF, 6, 4096).unwrap(), 4096);
        assert!(matches!(chain_dimension(Spin::HALF, 7, 4096), Err(Error::DimensionCap { .. })));
        assert!(chain_dimension(Spin::ONE, 3, 4096).is_ok());
    }
}
