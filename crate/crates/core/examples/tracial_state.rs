//! Pseudo-spin events on the torus against the XXZ trace formula.

use spinloops::model::{BoundaryCondition, ModelKind, PartialParams};
use spinloops::observables::ObservableSpec;
use spinloops::oracle::OracleModel;
use spinloops::sampler::{run_chain_with, weighting_for, RunOptions, SamplerSchedule};

fn main() -> spinloops::error::Result<()> {
    let specs: Vec<ObservableSpec> = vec!["tracial:0:0.3:1:1:0.6:1".parse()?, "tracial:0:0.2:1:0:0.7:-1".parse()?];
    let sched = SamplerSchedule { burn_in_sweeps: 2000, measure_sweeps: 40000, chain_count: 2, master_seed: 4, ..Default::default() };
    for lambda in [0.7, -0.7] {
        let p = PartialParams::new(2, 1.0, BoundaryCondition::PeriodicBoth).lambda(lambda).normalize()?;
        let opts = RunOptions { weighting: weighting_for(&p, ModelKind::Xxz)?, ..Default::default() };
        let r = run_chain_with(&p, &sched, &specs, &opts)?;
        let exact = OracleModel::new(&p, ModelKind::Xxz, 4096)?;
        for o in &r.observables {
            let x = exact.value(&o.spec)?.unwrap();
            println!("lambda {lambda:+} {:<26} mc {:.5} ± {:.5} exact {:.5}", o.spec.to_string(), o.estimate.mean, o.estimate.stderr, x);
        }
    }
    Ok(())
}
