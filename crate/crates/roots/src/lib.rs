//! Root systems of the Hermitian symmetric pairs with their marked node,
//! strongly orthogonal roots, Hua–Kostant–Schmid weights, tangent and line
//! bundle spectra, and explicit highest-weight polynomials.

mod error;
mod hwv;
mod spectra;
mod system;

pub use error::{Result, RootError};
pub use hwv::{
    frame_partial_sums, hwv_polynomial, minor_polynomials, raising_annihilates, raising_operators, sl2_relations,
    sl2_triple, torus_action, torus_weight_check,
};
pub use spectra::{
    as_gamma_m, chain_multiplicity, check_signature, coincidence_oracle, descents, gamma_m, hks_weights,
    lambda_m_entries, lambda_m_set, line_bundle_spectrum, signatures, successor_rule_holds, table_mismatches,
    tangent_spectrum, Signature, WeightEntry, WeightTable,
};
pub use system::{build_root_system, strongly_orthogonal, RootSystemData, Weight};
