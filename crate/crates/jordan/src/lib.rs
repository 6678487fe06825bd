//! Jordan-pair models of the classical compact Hermitian symmetric spaces
//! (types I–IV): triple products, Bergman operators, generic norms and
//! quasi-inverses, and the graded Lie algebra `g = n⁺ ⊕ l ⊕ n⁻` with its
//! bracket, Killing form and Cartan involution.

// Coordinate loops read closer to the formulas than zipped iterators.
#![allow(clippy::needless_range_loop)]

mod algebra;
mod certify;
pub mod checks;
mod error;
mod family;
mod model;
mod norm;
mod space;
mod structure;

pub use algebra::GElement;
pub use certify::{
    certify_delta, closed_form_delta, symbolic_det_bergman, symbolic_point, DeltaCertificate, SYMBOLIC_DIM_LIMIT,
};
pub use error::{JordanError, Result};
pub use family::{classical_catalogue, Family, Invariants, SpaceSpec};
pub use space::{make_space, space, SpaceDescriptor};
