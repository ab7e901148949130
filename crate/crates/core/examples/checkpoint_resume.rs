//! Stop a chain, write a checkpoint, and resume it bit-identically.

use spinloops::model::{BoundaryCondition, SpaceTimeBox};
use spinloops::sampler::{init_poisson, mcmc_sweep, substream, ChainState, Checkpoint, Purpose, Weighting};

fn main() -> spinloops::error::Result<()> {
    let bx = SpaceTimeBox::new(3, 2.0, BoundaryCondition::CappedAlternating)?;
    let cfg = init_poisson(&bx, &mut substream(2, 0, Purpose::Init));
    let mut state = ChainState::new(bx, 3.0, Weighting::Loops, cfg, 0)?;
    let mut moves = substream(2, 0, Purpose::Moves);
    for _ in 0..50 {
        mcmc_sweep(&mut state, &mut moves);
    }
    let cp = Checkpoint { state: state.clone(), moves: moves.clone(), orientations: substream(2, 0, Purpose::Orientations) };
    let dir = std::env::temp_dir().join("spinloops-checkpoint-example");
    let path = dir.join("chain0.ckpt");
    cp.save(&path)?;

    for _ in 0..50 {
        mcmc_sweep(&mut state, &mut moves);
    }
    let mut back = Checkpoint::load(&path)?;
    for _ in 0..50 {
        mcmc_sweep(&mut back.state, &mut back.moves);
    }
    println!("after 100 sweeps: {} rungs direct, {} rungs resumed", state.config().len(), back.state.config().len());
    println!("identical: {}", state.config() == back.state.config());
    std::fs::remove_dir_all(dir)?;
    Ok(())
}
