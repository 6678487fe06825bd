//! Certificates for `Det B(X, Y) = Δ(X, Y)^p`.
//!
//! Small spaces get the full symbolic determinant and a `p`-th root
//! extraction. Larger ones are certified along random lines: on
//! `t ↦ (x₀ + t x₁, y₀ + t y₁)` both sides are polynomials in `t` of degree at
//! most `max(4n, 2rp)`, so agreement at that many plus one points proves the
//! identity on the line, and random lines make a failure of the identity
//! detectable with overwhelming probability.

use hermsym_exact::{poly_nth_root, Matrix, MultiPoly, Sampler, Q};
use num_traits::Zero;

use crate::error::{JordanError, Result};
use crate::family::Family;
use crate::space::SpaceDescriptor;

/// Largest dimension for which the symbolic determinant is expanded.
pub const SYMBOLIC_DIM_LIMIT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaCertificate {
    pub lines: usize,
    pub points_per_line: usize,
    /// Whether the symbolic determinant was expanded and its root extracted.
    pub symbolic: bool,
}

/// Variables `x_1..x_n, y_1..y_n` as polynomials.
pub fn symbolic_point(n: usize) -> (Vec<MultiPoly<Q>>, Vec<MultiPoly<Q>>) {
    let x = (0..n).map(MultiPoly::var).collect();
    let y = (n..2 * n).map(MultiPoly::var).collect();
    (x, y)
}

/// `Det B(X, Y)` expanded symbolically.
pub fn symbolic_det_bergman(s: &SpaceDescriptor) -> MultiPoly<Q> {
    let (x, y) = symbolic_point(s.dim());
    s.bergman(&x, &y).det_berkowitz()
}

/// Line certificate plus, for small spaces, the symbolic root extraction.
pub fn certify_delta(s: &SpaceDescriptor, seed: u64, lines: usize) -> Result<DeltaCertificate> {
    let n = s.dim();
    let p = s.genus() as u32;
    let degree = (4 * n).max(2 * s.rank() * s.genus());
    let mut rng = Sampler::derived(seed, &format!("delta-lines-{}", s.spec()));
    for line in 0..lines {
        let (x0, x1, y0, y1) = (rng.vector(n), rng.vector(n), rng.vector(n), rng.vector(n));
        for k in 0..=degree {
            let t = Q::from(k as i64);
            let x: Vec<Q> = x0.iter().zip(&x1).map(|(a, b)| a + &(b * &t)).collect();
            let y: Vec<Q> = y0.iter().zip(&y1).map(|(a, b)| a + &(b * &t)).collect();
            if s.bergman(&x, &y).det() != s.generic_norm(&x, &y).pow(p) {
                return Err(JordanError::Invariant(format!("{}: Det B != Δ^p on line {line} at t = {k}", s.spec())));
            }
        }
    }
    let symbolic = n <= SYMBOLIC_DIM_LIMIT;
    if symbolic {
        let det = symbolic_det_bergman(s);
        let root = poly_nth_root(&det, p)?;
        if &root != s.delta_poly() {
            return Err(JordanError::Invariant(format!("{}: p-th root of Det B differs from Δ", s.spec())));
        }
    }
    Ok(DeltaCertificate { lines, points_per_line: degree + 1, symbolic })
}

/// `det(1 − xy)` for the matrix families where it is the generic norm
/// (types I and III), as an independent oracle.
pub fn closed_form_delta(s: &SpaceDescriptor) -> Option<MultiPoly<Q>> {
    if !matches!(s.family(), Family::I | Family::III) {
        return None;
    }
    let n = s.dim();
    let basis_plus: Vec<Matrix<Q>> = (0..n).map(|a| s.to_matrix_plus(&s.basis_vector(a))).collect();
    let basis_minus: Vec<Matrix<Q>> = (0..n).map(|a| s.to_matrix_minus(&s.basis_vector(a))).collect();
    let lift = |basis: &[Matrix<Q>], offset: usize| {
        let (r, c) = (basis[0].rows(), basis[0].cols());
        Matrix::from_fn(r, c, |i, j| {
            let mut p = MultiPoly::zero();
            for (a, b) in basis.iter().enumerate() {
                let e = &b[(i, j)];
                if !e.is_zero() {
                    p += MultiPoly::var(offset + a).scale(e);
                }
            }
            p
        })
    };
    let x = lift(&basis_plus, 0);
    let y = lift(&basis_minus, n);
    let xy = x.mul(&y);
    Some(Matrix::identity(xy.rows()).sub(&xy).det_berkowitz())
}
