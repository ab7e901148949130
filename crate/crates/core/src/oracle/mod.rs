//! Dense exact computations for small chains.

mod expectations;
mod hamiltonians;
mod identities;
pub mod linalg;
mod observe;
mod operators;
mod states;

pub use expectations::{
    ground_overlap, seed_trace_ratio, seeded_expectation, thermal_expectation, tracial_expectation, SeededState,
    ThermalState, TracialInsertion,
};
pub use hamiltonians::{
    antiferro_form, bonds, boundary_term, hamiltonian_af, hamiltonian_xxz, kform, kform_with, xxz_periodic,
    xxz_with_boundary, FieldSign, XxzVariant,
};
pub use identities::{
    default_grid, verify_grid, verify_identities, verify_identities_with, IdentityParams, IdentityRecord,
    IdentityReport, IDENTITY_TOLERANCE,
};
pub use operators::{
    chain_dimension, k_operator, pauli, projector_p0, spin_matrices, ChainSpace, DEFAULT_DIMENSION_CAP,
};
pub use states::{gauge_phases, gauge_transform, seed_dimer, seed_neel, GaugeKind};
pub use observe::{oracle_values, OracleModel};
