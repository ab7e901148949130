//! Parameters, geometry and rung configurations.

mod config;
mod geometry;
mod params;

pub use config::{Rung, RungConfiguration};
pub use geometry::{make_box, ColumnType, SpaceTimeBox};
pub use params::{normalize_params, BoundaryCondition, ModelKind, ModelParams, PartialParams, Spin, PARAM_TOL};
