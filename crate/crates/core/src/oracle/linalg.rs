//! Dense complex linear algebra.
//!
//! Contract of [`hermitian_eigen`]: real eigenvalues in ascending order with
//! orthonormal eigenvectors in the columns, and residual
//! `|H v - e v| <= 1e-10 |H|` for every pair.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const C0: Complex64 = Complex64::new(0.0, 0.0);
pub const C1: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

pub fn hermiticity_defect(h: &CMat) -> f64 {
    max_abs_diff(h, &h.adjoint())
}

pub fn hermitian_eigen(h: &CMat) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::InvalidConfiguration("eigenproblem of a non-square matrix".into()));
    }
    let scale = max_abs(h).max(1.0);
    if hermiticity_defect(h) > 1e-12 * scale {
        return Err(Error::InvalidConfiguration("matrix is not Hermitian".into()));
    }
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMat::from_fn(h.nrows(), h.ncols(), |r, k| eig.eigenvectors[(r, order[k])]);
    Ok(Eigen { values, vectors })
}

impl Eigen {
    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    /// `V f(E) V^*`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> CMat {
        let d: Vec<Complex64> = self.values.iter().map(|&e| c(f(e))).collect();
        let mut vd = self.vectors.clone();
        for (k, mut col) in vd.column_iter_mut().enumerate() {
            col *= d[k];
        }
        vd * self.vectors.adjoint()
    }

    /// `exp(-s (H - E_min))`.
    pub fn shifted_exp(&self, s: f64) -> CMat {
        let e0 = self.min_value();
        self.apply_fn(|e| (-s * (e - e0)).exp())
    }

    pub fn max_residual(&self, h: &CMat) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, &e) in self.values.iter().enumerate() {
            let v = self.vectors.column(k);
            let r = h * v - v * c(e);
            worst = worst.max(r.norm());
        }
        worst
    }
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_of_pauli_y() {
        let y = CMat::from_row_slice(2, 2, &[C0, -I, I, C0]);
        let e = hermitian_eigen(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.max_residual(&y) < 1e-12);
        let back = e.apply_fn(|x| x);
        assert!(max_abs_diff(&back, &y) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMat::from_row_slice(2, 2, &[C0, C1, C0, C0]);
        assert!(hermitian_eigen(&m).is_err());
    }
}
