//! Heights on dual points, along two paths and from the pseudo-spins alone.

use spinloops::loops::decompose;
use spinloops::model::{BoundaryCondition, SpaceTimeBox};
use spinloops::observables::{height_along, height_at, height_from_field, rung_crossing_increments, PseudoSpinField};
use spinloops::sampler::{init_poisson, sample_orientations, substream, Purpose};

fn main() -> spinloops::error::Result<()> {
    let bx = SpaceTimeBox::new(3, 2.0, BoundaryCondition::CappedAlternating)?;
    let cfg = init_poisson(&bx, &mut substream(8, 0, Purpose::Init));
    let dec = decompose(&bx, &cfg);
    let o = sample_orientations(&dec, 0.5, &mut substream(8, 0, Purpose::Orientations));
    let profile: Vec<i64> = (-2..=3).map(|k| height_at(&dec, &o, k as f64 + 0.5, 0.0).unwrap()).collect();
    println!("h(x, 0) for x = -3/2..7/2: {profile:?}");
    let end = (1.5, 0.77);
    let detour = vec![(-0.5, 0.0), (-0.5, -0.61), (2.5, -0.61), (2.5, 0.77), end];
    let direct = vec![(-0.5, 0.0), (1.5, 0.0), end];
    println!("h{end:?}: direct {} detour {}", height_along(&dec, &o, &direct)?, height_along(&dec, &o, &detour)?);
    println!("rung crossings on the detour: {:?}", rung_crossing_increments(&dec, &o, &detour)?);
    let field = PseudoSpinField::from_oriented(&dec, &o);
    println!("from the pseudo-spins alone: {}", height_from_field(&field, &detour)?);
    Ok(())
}
