//! Boundary pseudo-spins of the capped XXZ box sit at -/+ tanh(lambda).

use spinloops::model::{BoundaryCondition, PartialParams};
use spinloops::sampler::{run_chain, SamplerSchedule};

fn main() -> spinloops::error::Result<()> {
    let lambda: f64 = 0.5;
    let specs = vec!["boundary:left".parse()?, "boundary:right".parse()?, "staggered:rb".parse()?];
    let sched = SamplerSchedule { burn_in_sweeps: 1000, measure_sweeps: 8000, chain_count: 2, master_seed: 9, ..Default::default() };
    println!("tanh(lambda) = {:.4}", lambda.tanh());
    for (l, beta) in [(2, 1.0), (4, 4.0), (8, 8.0)] {
        let p = PartialParams::new(l, beta, BoundaryCondition::CappedAlternating).lambda(lambda).normalize()?;
        let r = run_chain(&p, &sched, &specs)?;
        let v: Vec<String> = r.observables.iter().map(|o| format!("{:+.4}±{:.4}", o.estimate.mean, o.estimate.stderr)).collect();
        println!("L={l} beta={beta}: left {} right {} staggered {}", v[0], v[1], v[2]);
    }
    Ok(())
}
