//! Orient the loops and check the 4-edge weight against the per-loop weight.

use spinloops::loops::decompose;
use spinloops::model::{BoundaryCondition, SpaceTimeBox};
use spinloops::sampler::{four_edge_weight, init_poisson, plus_probability, sample_orientations, substream, Purpose};

fn main() -> spinloops::error::Result<()> {
    let lambda = 0.7;
    let bx = SpaceTimeBox::new(3, 3.0, BoundaryCondition::CappedAlternating)?;
    let cfg = init_poisson(&bx, &mut substream(17, 0, Purpose::Init));
    let dec = decompose(&bx, &cfg);
    let o = sample_orientations(&dec, lambda, &mut substream(17, 0, Purpose::Orientations));
    for (l, s) in dec.loops().iter().zip(o.sigma()) {
        println!("turning {:+} P(+) = {:.3} sigma {:+}", l.turning, plus_probability(lambda, l.turning), s);
    }
    let tau: Vec<i8> = (0..dec.n_segments()).map(|s| o.tau_segment(&dec, s)).collect();
    println!("4-edge weight {:.12}", four_edge_weight(&dec, &tau, lambda));
    println!("loop weight   {:.12}", o.loop_weight(&dec, lambda));
    let row: String = (-2..=3).map(|u| if o.tau(&dec, u, 0.0).unwrap() > 0 { '+' } else { '-' }).collect();
    println!("tau(u, 0) for u = -2..3: {row}");
    Ok(())
}
