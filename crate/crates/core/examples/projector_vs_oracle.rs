//! Projector and spin-spin estimates at L=2 against exact diagonalization.

use spinloops::model::{BoundaryCondition, ModelKind, PartialParams, Spin};
use spinloops::observables::ObservableSpec;
use spinloops::oracle::OracleModel;
use spinloops::sampler::{run_chain, SamplerSchedule};

fn main() -> spinloops::error::Result<()> {
    let p = PartialParams::new(2, 1.0, BoundaryCondition::CappedAlternating).spin(Spin::ONE).normalize()?;
    let specs: Vec<ObservableSpec> = ["projector:-1", "projector:0", "spinspin:0:1", "spinspin:-1:2", "dimer:0"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let sched = SamplerSchedule { burn_in_sweeps: 2000, measure_sweeps: 20000, chain_count: 2, master_seed: 5, ..Default::default() };
    let r = run_chain(&p, &sched, &specs)?;
    let exact = OracleModel::new(&p, ModelKind::Af, 4096)?;
    for o in &r.observables {
        let x = exact.value(&o.spec)?.unwrap();
        let e = o.estimate;
        println!("{:<14} mc {:>9.5} ± {:.5}   exact {:>9.5}   z {:+.2}", o.spec.to_string(), e.mean, e.stderr, x, e.z_score(x));
    }
    Ok(())
}
