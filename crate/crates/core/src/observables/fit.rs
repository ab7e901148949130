//! Exponential fit of a connectivity curve.

use serde::Serialize;

use crate::error::{Error, Result};

/// Bins with fewer effective samples than this are dropped from the fit.
pub const MIN_BIN_N_EFF: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub r: f64,
    pub p: f64,
    pub stderr: f64,
    pub n_eff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationFit {
    /// `f64::INFINITY` when the fitted decay rate is not positive.
    pub xi: f64,
    pub xi_stderr: f64,
    pub slope: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    pub rmin: f64,
    pub rmax: f64,
    pub points_used: usize,
}

impl CorrelationFit {
    pub fn is_infinite(&self) -> bool {
        self.xi.is_infinite()
    }
}

/// Least-squares slope of `-ln p(r)` against `r`, inverse-variance weighted
/// when every retained point has a positive error bar.
pub fn fit_correlation_length(points: &[CurvePoint]) -> Result<CorrelationFit> {
    let kept: Vec<&CurvePoint> =
        points.iter().filter(|p| p.p > 0.0 && p.p.is_finite() && p.n_eff >= MIN_BIN_N_EFF).collect();
    if kept.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "{} usable points in the fit window",
            kept.len()
        )));
    }
    let xs: Vec<f64> = kept.iter().map(|p| p.r).collect();
    let ys: Vec<f64> = kept.iter().map(|p| -p.p.ln()).collect();
    let weighted = kept.iter().all(|p| p.stderr > 0.0);
    let ws: Vec<f64> = kept
        .iter()
        .map(|p| if weighted { (p.p / p.stderr).powi(2) } else { 1.0 })
        .collect();
    let sw: f64 = ws.iter().sum();
    let xm = xs.iter().zip(&ws).map(|(x, w)| x * w).sum::<f64>() / sw;
    let ym = ys.iter().zip(&ws).map(|(y, w)| y * w).sum::<f64>() / sw;
    let sxx: f64 = xs.iter().zip(&ws).map(|(x, w)| w * (x - xm).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData("fit window has a single abscissa".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).zip(&ws).map(|((x, y), w)| w * (x - xm) * (y - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let ss_res: f64 =
        xs.iter().zip(&ys).zip(&ws).map(|((x, y), w)| w * (y - intercept - slope * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().zip(&ws).map(|(y, w)| w * (y - ym).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    let slope_stderr = if weighted {
        (1.0 / sxx).sqrt()
    } else if kept.len() > 2 {
        (ss_res / (kept.len() - 2) as f64 / sxx).sqrt()
    } else {
        0.0
    };
    let (xi, xi_stderr) = if slope > 0.0 {
        (1.0 / slope, slope_stderr / (slope * slope))
    } else {
        (f64::INFINITY, f64::NAN)
    };
    Ok(CorrelationFit {
        xi,
        xi_stderr,
        slope,
        slope_stderr,
        r_squared,
        rmin: xs.iter().cloned().fold(f64::INFINITY, f64::min),
        rmax: xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        points_used: kept.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r: f64, p: f64) -> CurvePoint {
        CurvePoint { r, p, stderr: 0.0, n_eff: 1e6 }
    }

    #[test]
    fn synthetic_exponential() {
        let pts: Vec<CurvePoint> = (2..=8).map(|r| pt(r as f64, (-(r as f64) / 2.0).exp())).collect();
        let f = fit_correlation_length(&pts).unwrap();
        assert!((f.xi - 2.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_curve_is_infinite() {
        let pts: Vec<CurvePoint> = (2..=8).map(|r| pt(r as f64, 0.3)).collect();
        assert!(fit_correlation_length(&pts).unwrap().is_infinite());
    }

    #[test]
    fn too_few_points() {
        assert!(fit_correlation_length(&[pt(2.0, 0.1), pt(3.0, 0.0)]).is_err());
        let thin = [CurvePoint { r: 2.0, p: 0.5, stderr: 0.1, n_eff: 10.0 }, pt(3.0, 0.2)];
        assert!(fit_correlation_length(&thin).is_err());
    }
}
