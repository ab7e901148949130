//! Loop geometry of a rung configuration.

mod clusters;
mod decompose;

pub use clusters::{ab_clusters, ClusterDecomposition, NestedRegion, RegionClusters};
pub use decompose::{decompose, LoopDecomposition, LoopInfo, RungSegments, WindingFlags};
