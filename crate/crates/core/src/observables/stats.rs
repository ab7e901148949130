//! Batch means, integrated autocorrelation times and goodness of fit.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};

use crate::error::{Error, Result};

/// Below this many effective samples an error bar is not quoted.
pub const MIN_EFFECTIVE_SAMPLES: f64 = 50.0;

/// Window constant of the automatic windowing rule.
pub const SOKAL_C: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_eff: f64,
    pub tau_int: f64,
    pub n_samples: usize,
}

impl Estimate {
    pub fn low_n_eff(&self) -> bool {
        self.n_eff < MIN_EFFECTIVE_SAMPLES
    }

    /// `(mean - exact) / stderr`, with the error floored at rounding level so
    /// that deterministic estimators compare cleanly.
    pub fn z_score(&self, exact: f64) -> f64 {
        let d = self.mean - exact;
        let floor = 1e-10 * exact.abs().max(1.0);
        if d.abs() <= floor { 0.0 } else { d / self.stderr.max(floor) }
    }
}

pub fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub fn batch_means(series: &[f64], batches: usize) -> Result<Vec<f64>> {
    if batches == 0 || series.len() < batches || series.len() % batches != 0 {
        return Err(Error::InsufficientData(format!(
            "{} samples do not split into {batches} batches",
            series.len()
        )));
    }
    let size = series.len() / batches;
    Ok(series.chunks(size).map(mean).collect())
}

/// Integrated autocorrelation time with the self-consistent window
/// `M >= c * tau(M)`; at least 1/2.
pub fn integrated_autocorrelation(series: &[f64], c: f64) -> f64 {
    let n = series.len();
    if n < 2 {
        return 0.5;
    }
    let m = mean(series);
    let d: Vec<f64> = series.iter().map(|x| x - m).collect();
    let c0 = d.iter().map(|x| x * x).sum::<f64>() / n as f64;
    if c0 <= 0.0 {
        return 0.5;
    }
    let mut tau = 0.5;
    for k in 1..n {
        let ck = d[..n - k].iter().zip(&d[k..]).map(|(a, b)| a * b).sum::<f64>() / n as f64;
        tau += ck / c0;
        if k as f64 >= c * tau {
            break;
        }
    }
    tau.max(0.5)
}

/// Estimate from one series per chain; batch means are pooled in chain order.
pub fn estimate_chains(chains: &[Vec<f64>], batches: usize) -> Result<Estimate> {
    if chains.is_empty() {
        return Err(Error::InsufficientData("no chains".into()));
    }
    let mut pooled = Vec::with_capacity(batches * chains.len());
    let mut n_eff = 0.0;
    let mut tau_weighted = 0.0;
    let mut n_total = 0;
    let mut sum = 0.0;
    for series in chains {
        pooled.extend(batch_means(series, batches)?);
        let tau = integrated_autocorrelation(series, SOKAL_C);
        n_eff += series.len() as f64 / (2.0 * tau);
        tau_weighted += tau * series.len() as f64;
        n_total += series.len();
        sum += series.iter().sum::<f64>();
    }
    let mean_all = sum / n_total as f64;
    let b = pooled.len() as f64;
    let var = pooled.iter().map(|x| (x - mean_all).powi(2)).sum::<f64>() / (b - 1.0);
    Ok(Estimate {
        mean: mean_all,
        stderr: (var / b).sqrt(),
        n_eff: n_eff.min(n_total as f64),
        tau_int: tau_weighted / n_total as f64,
        n_samples: n_total,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Chi-square test of non-negative integer counts against `Poisson(rate)`,
/// merging tail bins until each expected count is at least 5.
pub fn poisson_chi_square(counts: &[u64], rate: f64) -> Result<ChiSquareResult> {
    let n = counts.len() as f64;
    let pois = Poisson::new(rate).map_err(|e| Error::OutOfRange(e.to_string()))?;
    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let mut observed = vec![0.0; max + 1];
    for &c in counts {
        observed[c as usize] += 1.0;
    }
    // Bins k = 0..K-1 individually, the last bin takes k >= K-1.
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc_o = 0.0;
    let mut acc_e = 0.0;
    let mut cum_p = 0.0;
    for k in 0..=max {
        let p = pois.pmf(k as u64);
        cum_p += p;
        acc_o += observed[k];
        acc_e += n * p;
        if acc_e >= 5.0 {
            bins.push((acc_o, acc_e));
            acc_o = 0.0;
            acc_e = 0.0;
        }
    }
    acc_e += n * (1.0 - cum_p).max(0.0);
    if let Some(last) = bins.last_mut() {
        last.0 += acc_o;
        last.1 += acc_e;
    } else {
        bins.push((acc_o, acc_e));
    }
    while bins.len() > 1 && bins.last().unwrap().1 < 5.0 {
        let (o, e) = bins.pop().unwrap();
        let last = bins.last_mut().unwrap();
        last.0 += o;
        last.1 += e;
    }
    if bins.len() < 2 {
        return Err(Error::InsufficientData("fewer than two chi-square bins".into()));
    }
    let statistic = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let dof = bins.len() - 1;
    let chi = ChiSquared::new(dof as f64).map_err(|e| Error::OutOfRange(e.to_string()))?;
    Ok(ChiSquareResult { statistic, dof, p_value: 1.0 - chi.cdf(statistic) })
}
