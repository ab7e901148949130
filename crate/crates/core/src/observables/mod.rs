//! Estimators evaluated on sampled loop configurations.

mod eval;
mod fit;
mod height;
mod result;
mod spec;
pub mod stats;

pub use eval::{
    c_s, eval_boundary_magnetization, eval_boundary_touch, eval_connectivity, eval_dimer_order,
    eval_projector, eval_spin_spin, eval_staggered_magnetization, evaluate, rb_tau, SampleView,
};
pub use fit::{fit_correlation_length, CorrelationFit, CurvePoint, MIN_BIN_N_EFF};
pub use height::{
    canonical_path, height_along, height_at, height_from_field, rung_crossing_increments, PseudoSpinField,
    BASE_POINT,
};
pub use result::{ObservableResult, RunResult, CODE_VERSION};
pub use spec::{Insertion, ObservableSpec, Side};
pub use stats::{
    batch_means, estimate_chains, integrated_autocorrelation, poisson_chi_square, ChiSquareResult, Estimate,
    MIN_EFFECTIVE_SAMPLES, SOKAL_C,
};
