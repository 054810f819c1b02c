//! Normalized bar cochains with twisted finite coefficients.

#[allow(clippy::module_inception)]
mod cochain;
mod coeffs;
mod cup;
mod differential;
mod primitive;

pub use cochain::{tuple_at, tuple_count, tuple_index, Cochain};
pub use coeffs::{crt_idempotents, Coefficients};
pub use cup::{cup_pair, Pairing};
pub use differential::{
    cancel, coboundary, coboundary_generators, coboundary_matrix, cocycle_generators, cocycle_violation,
    cohomology_module, cohomology_u1, is_cocycle, quotient_invariants, u1_cost_estimate, CoboundaryRows, MAX_UNKNOWNS,
};
pub use primitive::{solve_primitive, Obstruction, Primitive};
