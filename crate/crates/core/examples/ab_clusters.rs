//! A/B cluster labeling and the nesting of loops between clusters.

use spinloops::loops::{ab_clusters, decompose, NestedRegion};
use spinloops::model::{BoundaryCondition, ColumnType};
use spinloops::sampler::{init_poisson, substream, Purpose};

fn main() -> spinloops::error::Result<()> {
    let bx = spinloops::model::SpaceTimeBox::new(4, 4.0, BoundaryCondition::CappedAlternating)?;
    let cfg = init_poisson(&bx, &mut substream(3, 0, Purpose::Init));
    let cl = ab_clusters(&bx, &cfg);
    let dec = decompose(&bx, &cfg);
    println!("{} rungs: {} A clusters, {} B clusters, {} loops", cfg.len(), cl.count(ColumnType::A), cl.count(ColumnType::B), dec.loop_count());
    println!("wired type: {:?}", bx.wired());
    println!("(0,0) ~ (2,0): {}", cl.connected((0, 0.0), (2, 0.0))?);
    for l in [1, 2, 3] {
        println!("region l={l} reaches the boundary from (1/2,0): {}", cl.boundary_touch(NestedRegion::new(l, 2.0))?);
    }
    Ok(())
}
