//! Markov chain Monte Carlo over rung configurations.

mod chain;
mod checkpoint;
mod orientation;
mod rng;
mod run;
mod schedule;

pub use chain::{
    birth_acceptance, capped_and_periodic_counts, death_acceptance, four_edge_log_weight, init_poisson, mcmc_sweep,
    AuditLog, ChainState, MoveCounters, Weighting,
};
pub use checkpoint::Checkpoint;
pub use orientation::{
    cap_weight, four_edge_weight, plus_probability, rung_weight, sample_orientations, OrientedConfiguration,
};
pub use rng::{substream, Purpose};
pub use run::{run_chain, run_chain_with, weighting_for, RunOptions};
pub use schedule::SamplerSchedule;
