//! Cross-check of the dense eigensolver against a cyclic Jacobi solver.

use nalgebra::DMatrix;
use spinloops::model::Spin;
use spinloops::oracle::linalg::{hermitian_eigen, CMat};
use spinloops::oracle::{hamiltonian_af, kform, xxz_periodic};

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(mut a: DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum();
        if off < 1e-26 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut v: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Hermitian `A + iB` as the real symmetric `[[A, -B], [B, A]]`, whose
/// spectrum is that of the original with every eigenvalue doubled.
fn realify(h: &CMat) -> DMatrix<f64> {
    let n = h.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

fn check(h: &CMat) {
    let eig = hermitian_eigen(h).unwrap();
    let jac = jacobi_eigenvalues(realify(h));
    let norm = h.norm().max(1.0);
    for (k, &e) in eig.values.iter().enumerate() {
        for d in [jac[2 * k], jac[2 * k + 1]] {
            assert!((e - d).abs() < 1e-10 * norm, "eigenvalue {k}: {e} vs {d}");
        }
    }
    assert!(eig.max_residual(h) <= 1e-10 * norm);
}

#[test]
fn antiferro_spectra() {
    for (spin, l) in [(Spin::HALF, 1), (Spin::HALF, 2), (Spin::ONE, 1), (Spin::THREE_HALVES, 1)] {
        for periodic in [false, true] {
            check(&hamiltonian_af(l, spin, periodic, 4096).unwrap());
        }
    }
}

#[test]
fn complex_kform_spectra() {
    for lambda in [0.0, 0.5, 1.0] {
        check(&kform(2, lambda, false, 4096).unwrap());
        check(&kform(2, lambda, true, 4096).unwrap());
        check(&xxz_periodic(2, lambda, 4096).unwrap());
    }
}
