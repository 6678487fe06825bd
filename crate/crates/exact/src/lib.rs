//! Exact arithmetic over the Gaussian rationals `Q(i)`: scalars, first-order
//! jets, truncated power series, dense linear algebra, multivariate
//! polynomials and rational expression DAGs.

pub mod error;
pub mod expr;
pub mod field;
pub mod jet;
pub mod matrix;
pub mod poly;
mod rat;
pub mod sample;
pub mod scalar;
pub mod series;

pub use error::{ExactError, Result};
pub use expr::{jet_eval, Expr};
pub use field::{dot, Field, Ring};
pub use jet::Jet;
pub use matrix::Matrix;
pub use poly::{poly_nth_root, Monomial, MultiPoly};
pub use sample::Sampler;
pub use scalar::GaussianRational;
pub use series::Series;

/// The scalar field every computation is carried out in.
pub type Q = GaussianRational;
/// Polynomials with exact coefficients.
pub type Poly = MultiPoly<Q>;
