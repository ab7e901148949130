//! Seeded and thermal expectation values by dense diagonalization.

use spinloops::model::{BoundaryCondition, ModelKind, PartialParams, Spin};
use spinloops::oracle::{ground_overlap, hamiltonian_af, seed_dimer, OracleModel};

fn main() -> spinloops::error::Result<()> {
    let specs = ["projector:0", "spinspin:-1:2", "dimer:0"];
    for bc in [BoundaryCondition::CappedAlternating, BoundaryCondition::PeriodicTime, BoundaryCondition::PeriodicBoth] {
        let p = PartialParams::new(2, 1.0, bc).spin(Spin::HALF).normalize()?;
        let m = OracleModel::new(&p, ModelKind::Af, 4096)?;
        let vals: Vec<String> = specs.iter().map(|s| format!("{s} = {:.6}", m.value(&s.parse().unwrap()).unwrap().unwrap())).collect();
        println!("{bc}: {}", vals.join(", "));
    }
    let h = hamiltonian_af(3, Spin::ONE, false, 4096)?;
    let (overlap, dim) = ground_overlap(&h, &seed_dimer(3, Spin::ONE, 4096)?, 1e-9)?;
    println!("S=1 L=3 dimer seed: ground overlap {overlap:.6}, degeneracy {dim}");
    Ok(())
}
