//! Connectivity decay and a fitted correlation length.

use spinloops::model::{BoundaryCondition, PartialParams, Spin};
use spinloops::observables::ObservableSpec;
use spinloops::sampler::{run_chain, SamplerSchedule};

fn main() -> spinloops::error::Result<()> {
    let p = PartialParams::new(8, 8.0, BoundaryCondition::PeriodicTime).spin(Spin::ONE).normalize()?;
    let xi: ObservableSpec = "xi:1:5".parse()?;
    let sched = SamplerSchedule { burn_in_sweeps: 500, measure_sweeps: 4000, chain_count: 2, master_seed: 6, ..Default::default() };
    let r = run_chain(&p, &sched, &[xi.clone()])?;
    let res = r.get(&xi).unwrap();
    match &res.fit {
        Some(f) => println!("xi = {:.3} ± {:.3} from r in [{}, {}], {} points, R^2 = {:.3}", f.xi, f.xi_stderr, f.rmin, f.rmax, f.points_used, f.r_squared),
        None => println!("too few usable points for a fit"),
    }
    Ok(())
}
