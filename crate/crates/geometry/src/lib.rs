//! Kähler geometry of a Hermitian symmetric space on its dense chart `n⁺`:
//! potential, q-map, metric and the ω-functions, all exact.

pub mod checks;
mod omega;
mod potential;

pub use omega::{adjoint_shift, omega_local};
pub use potential::{
    bergman_diagonal, bergman_gram, kahler_potential, log_det_trace, metric, metric_matrix, potential_gradient,
    potential_hessian, q_derivatives, q_derivatives_closed, q_map, q_map_plus, q_polarized, q_polarized_derivative,
    q_polarized_in, q_vanishing, PotentialValue, QDerivatives,
};
