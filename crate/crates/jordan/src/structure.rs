//! Sparse structure constants of a Jordan pair.
//!
//! An entry `(a, b, c, out, coef)` records `{u_a, v_b, u_c}_out = coef`, where
//! `u` is the basis of the side being multiplied and `v` the basis of the
//! opposite side.

use hermsym_exact::{Matrix, Ring, Q};
use num_traits::Zero;

use crate::error::{JordanError, Result};
use crate::model::Model;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Entry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub out: usize,
    pub coef: Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Plus,
    Minus,
}

/// Structure constants of one side, computed from the matrix model.
pub(crate) fn structure_constants(model: &Model, side: Side) -> Result<Vec<Entry>> {
    let (us, vs) = match side {
        Side::Plus => (model.basis_plus(), model.basis_minus()),
        Side::Minus => (model.basis_minus(), model.basis_plus()),
    };
    let n = us.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in a..n {
                let t = model.triple(&us[a], &vs[b], &us[c]);
                let coords = match side {
                    Side::Plus => model.coords_plus(&t),
                    Side::Minus => model.coords_minus(&t),
                };
                let back = match side {
                    Side::Plus => model.matrix_plus(&coords),
                    Side::Minus => model.matrix_minus(&coords),
                };
                if back != t {
                    return Err(JordanError::Invariant(format!(
                        "triple product of basis elements ({a},{b},{c}) leaves the model"
                    )));
                }
                for (e, coef) in coords.into_iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    out.push(Entry { a, b, c, out: e, coef: coef.clone() });
                    if c != a {
                        out.push(Entry { a: c, b, c: a, out: e, coef });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `{x, y, z}` from the constants.
pub(crate) fn triple<F: Ring>(gamma: &[Entry], x: &[F], y: &[F], z: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); x.len()];
    for e in gamma {
        if x[e.a].is_zero() || y[e.b].is_zero() || z[e.c].is_zero() {
            continue;
        }
        out[e.out] += x[e.a].mul_ref(&y[e.b]).mul_ref(&z[e.c]).scale(&e.coef);
    }
    out
}

fn products<F: Ring>(x: &[F], y: &[F]) -> Vec<Vec<Option<F>>> {
    x.iter()
        .map(|a| y.iter().map(|b| if a.is_zero() || b.is_zero() { None } else { Some(a.mul_ref(b)) }).collect())
        .collect()
}

/// `D_{x,y}` as a matrix acting on coordinates.
pub(crate) fn d_op<F: Ring>(gamma: &[Entry], x: &[F], y: &[F]) -> Matrix<F> {
    let n = x.len();
    let xy = products(x, y);
    let mut m = Matrix::zeros(n, n);
    for e in gamma {
        if let Some(p) = &xy[e.a][e.b] {
            m[(e.out, e.c)] += p.scale(&e.coef);
        }
    }
    m
}

/// `Q_x` as a matrix from the opposite side: `Q_x y = ½{x, y, x}`.
pub(crate) fn q_op<F: Ring>(gamma: &[Entry], x: &[F]) -> Matrix<F> {
    let n = x.len();
    let xx = products(x, x);
    let half = Q::ratio(1, 2);
    let mut m = Matrix::zeros(n, n);
    for e in gamma {
        if let Some(p) = &xx[e.a][e.c] {
            m[(e.out, e.b)] += p.scale(&(&e.coef * &half));
        }
    }
    m
}

/// `Q_{x,z} y = {x, y, z}` as a matrix in `y`.
pub(crate) fn q2_op<F: Ring>(gamma: &[Entry], x: &[F], z: &[F]) -> Matrix<F> {
    let n = x.len();
    let xz = products(x, z);
    let mut m = Matrix::zeros(n, n);
    for e in gamma {
        if let Some(p) = &xz[e.a][e.c] {
            m[(e.out, e.b)] += p.scale(&e.coef);
        }
    }
    m
}
