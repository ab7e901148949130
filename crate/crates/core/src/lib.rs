//! Loop-representation Monte Carlo for the projection antiferromagnet and the
//! XXZ chain, with a dense exact-diagonalization oracle for small systems.
//!
//! Both chains share the random rung configurations `omega` of a Poisson
//! process tilted by `sqrt(Q)^{N(omega)}`, `N` the number of loops. The crate
//! builds and samples those configurations, reads spin observables off the
//! loops, and checks everything against dense linear algebra.

pub mod cli;
pub mod error;
pub mod loops;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod sampler;

pub use error::{Error, Result};
