//! The coupled parameters S, Q, lambda and Delta.

use spinloops::model::{BoundaryCondition, PartialParams, Spin};

fn main() -> spinloops::error::Result<()> {
    for s in [Spin::HALF, Spin::ONE, Spin::THREE_HALVES] {
        let p = PartialParams::new(4, 8.0, BoundaryCondition::CappedAlternating).spin(s).normalize()?;
        println!("S = {s:<4} Q = {:<5} lambda = {:.6} Delta = {:.6}", p.q, p.lambda.unwrap(), p.delta.unwrap());
    }
    let p = PartialParams::new(4, 8.0, BoundaryCondition::PeriodicBoth).delta(1.5).normalize()?;
    println!("Delta = 1.5 gives Q = {:.6}, S = {}", p.q, p.spin.map(|s| s.to_string()).unwrap_or_default());
    let classical = PartialParams::new(4, 8.0, BoundaryCondition::CappedAlternating).q(2.0).normalize()?;
    println!("Q = 2 is classical only: {}", classical.classical_only());
    match PartialParams::new(4, 8.0, BoundaryCondition::CappedAlternating).delta(0.5).normalize() {
        Err(e) => println!("Delta = 0.5 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
