//! Trace the loops of a rung configuration and watch a rung split or merge them.

use spinloops::loops::decompose;
use spinloops::model::{BoundaryCondition, Rung, RungConfiguration, SpaceTimeBox};

fn main() -> spinloops::error::Result<()> {
    let bx = SpaceTimeBox::new(2, 2.0, BoundaryCondition::CappedAlternating)?;
    let c = |u| bx.column_of_edge(u).unwrap();
    let cfg = RungConfiguration::from_rungs(&bx, [Rung::new(c(0), -0.4), Rung::new(c(0), 0.5), Rung::new(c(-1), 0.1)])?;
    let dec = decompose(&bx, &cfg);
    println!("{} rungs, {} loops", cfg.len(), dec.loop_count());
    for (k, l) in dec.loops().iter().enumerate() {
        println!("  loop {k}: {} segments, turning number {:+}", l.len, l.turning);
    }
    println!("(-1,0) and (2,0) on one loop: {}", dec.same_loop((-1, 0.0), (2, 0.0))?);

    let extra = Rung::new(c(1), 0.0);
    println!("inserting a rung on (1,2) at t=0 changes N by {:+}", dec.delta_n_if_insert(extra)?);
    for bc in [BoundaryCondition::PeriodicTime, BoundaryCondition::PeriodicBoth] {
        let b = SpaceTimeBox::new(2, 2.0, bc)?;
        let d = decompose(&b, &RungConfiguration::from_rungs(&b, cfg.iter())?);
        let winding = d.loops().iter().filter(|l| l.winding.winds()).count();
        println!("{bc}: {} loops, {winding} winding", d.loop_count());
    }
    Ok(())
}
