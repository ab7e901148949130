//! Batch means and integrated autocorrelation time on an AR(1) series.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use spinloops::observables::{estimate_chains, integrated_autocorrelation, SOKAL_C};

fn main() -> spinloops::error::Result<()> {
    let phi: f64 = 0.9;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let chains: Vec<Vec<f64>> = (0..4)
        .map(|_| {
            let mut x = 0.0;
            (0..50_000)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    x = phi * x + z;
                    x
                })
                .collect()
        })
        .collect();
    let exact_tau = 0.5 * (1.0 + phi) / (1.0 - phi);
    println!("tau_int exact {exact_tau:.2}, estimated {:.2}", integrated_autocorrelation(&chains[0], SOKAL_C));
    let e = estimate_chains(&chains, 100)?;
    println!("mean {:.4} ± {:.4}, n_eff {:.0} of {}", e.mean, e.stderr, e.n_eff, e.n_samples);
    Ok(())
}
