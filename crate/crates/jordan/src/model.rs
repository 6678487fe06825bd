//! Concrete matrix realizations of the classical Jordan pairs.
//!
//! `n⁺` carries the basis `c_ℓ`, `n⁻` the conjugate basis `d_ℓ = c̄_ℓ`; each
//! basis element has a pivot entry equal to one, which is how coordinates are
//! read off a matrix.

use hermsym_exact::{Matrix, Q};
use num_traits::{One, Zero};

use crate::family::{Family, SpaceSpec};

#[derive(Debug, Clone)]
pub(crate) enum Model {
    /// `r×s` matrices, `n⁻` = `s×r` matrices.
    Rect { r: usize, s: usize },
    /// Alternating `k×k` matrices.
    Alt { k: usize },
    /// Symmetric `k×k` matrices.
    Sym { k: usize },
    /// `C^k` with the symmetric form `β(x,y) = Σ xᵢyᵢ`.
    Spin { k: usize },
}

impl Model {
    pub(crate) fn of(spec: &SpaceSpec) -> Option<Model> {
        Some(match (spec.family(), spec.params()) {
            (Family::I, &[r, s]) => Model::Rect { r, s },
            (Family::II, &[k]) => Model::Alt { k },
            (Family::III, &[k]) => Model::Sym { k },
            (Family::IV, &[k]) => Model::Spin { k },
            _ => return None,
        })
    }

    /// Pivot positions `(row, col)` of the `n⁺` basis, in basis order.
    fn plus_pivots(&self) -> Vec<(usize, usize)> {
        match *self {
            Model::Rect { r, s } => (0..r).flat_map(|a| (0..s).map(move |b| (a, b))).collect(),
            Model::Alt { k } => (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect(),
            Model::Sym { k } => (0..k).flat_map(|a| (a..k).map(move |b| (a, b))).collect(),
            Model::Spin { k } => (0..k).map(|j| (0, j)).collect(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.plus_pivots().len()
    }

    /// Matrix shapes of `n⁺` and `n⁻` elements.
    pub(crate) fn shapes(&self) -> ((usize, usize), (usize, usize)) {
        match *self {
            Model::Rect { r, s } => ((r, s), (s, r)),
            Model::Alt { k } | Model::Sym { k } => ((k, k), (k, k)),
            Model::Spin { k } => ((1, k), (1, k)),
        }
    }

    pub(crate) fn basis_plus(&self) -> Vec<Matrix<Q>> {
        let ((rows, cols), _) = self.shapes();
        self.plus_pivots()
            .into_iter()
            .map(|(a, b)| {
                let mut m = Matrix::zeros(rows, cols);
                m[(a, b)] = Q::one();
                match self {
                    Model::Alt { .. } => m[(b, a)] = -Q::one(),
                    Model::Sym { .. } => m[(b, a)] = Q::one(),
                    _ => {}
                }
                m
            })
            .collect()
    }

    /// `d_ℓ`, the conjugate (transpose) of `c_ℓ`.
    pub(crate) fn basis_minus(&self) -> Vec<Matrix<Q>> {
        self.basis_plus().into_iter().map(|m| self.bar_plus(&m)).collect()
    }

    /// Conjugation `n⁺ → n⁻` on matrices.
    fn bar_plus(&self, m: &Matrix<Q>) -> Matrix<Q> {
        match self {
            Model::Spin { .. } => m.conj(),
            _ => m.adjoint(),
        }
    }

    pub(crate) fn coords_plus(&self, m: &Matrix<Q>) -> Vec<Q> {
        self.plus_pivots().into_iter().map(|(a, b)| m[(a, b)].clone()).collect()
    }

    /// Coordinates in the basis `d_ℓ`, read at the transposed pivots.
    pub(crate) fn coords_minus(&self, m: &Matrix<Q>) -> Vec<Q> {
        self.plus_pivots()
            .into_iter()
            .map(|(a, b)| match self {
                Model::Spin { .. } => m[(a, b)].clone(),
                _ => m[(b, a)].clone(),
            })
            .collect()
    }

    pub(crate) fn matrix_plus(&self, coords: &[Q]) -> Matrix<Q> {
        let basis = self.basis_plus();
        let ((rows, cols), _) = self.shapes();
        combine(rows, cols, &basis, coords)
    }

    pub(crate) fn matrix_minus(&self, coords: &[Q]) -> Matrix<Q> {
        let basis = self.basis_minus();
        let (_, (rows, cols)) = self.shapes();
        combine(rows, cols, &basis, coords)
    }

    /// `{x, y, z}`; the same formula serves both sides of the pair.
    pub(crate) fn triple(&self, x: &Matrix<Q>, y: &Matrix<Q>, z: &Matrix<Q>) -> Matrix<Q> {
        match self {
            Model::Spin { .. } => {
                let beta =
                    |a: &Matrix<Q>, b: &Matrix<Q>| -> Q { a.data().iter().zip(b.data()).map(|(p, q)| p * q).sum() };
                let two = Q::from(2);
                let t = z.scale(&beta(x, y)).add(&x.scale(&beta(z, y))).sub(&y.scale(&beta(x, z)));
                t.scale(&two)
            }
            _ => x.mul(y).mul(z).add(&z.mul(y).mul(x)),
        }
    }

    /// Frame of orthogonal tripotents, as `n⁺` coordinates.
    pub(crate) fn frame(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        let pivots = self.plus_pivots();
        let unit = |pos: (usize, usize)| {
            let mut v = vec![Q::zero(); n];
            let idx = pivots.iter().position(|&p| p == pos).expect("frame pivot in basis");
            v[idx] = Q::one();
            v
        };
        match *self {
            Model::Rect { r, s } => (0..r).map(|i| unit((i, s - 1 - i))).collect(),
            Model::Alt { k } => (0..k / 2).map(|i| unit((2 * i, 2 * i + 1))).collect(),
            Model::Sym { k } => (0..k).map(|i| unit((i, i))).collect(),
            Model::Spin { k } => {
                let half = Q::ratio(1, 2);
                let mut e1 = vec![Q::zero(); k];
                let mut e2 = vec![Q::zero(); k];
                e1[0] = half.clone();
                e1[1] = Q::complex(0, 1, 1, 2);
                e2[0] = half;
                e2[1] = Q::complex(0, 1, -1, 2);
                vec![e1, e2]
            }
        }
    }
}

fn combine(rows: usize, cols: usize, basis: &[Matrix<Q>], coords: &[Q]) -> Matrix<Q> {
    let mut m = Matrix::zeros(rows, cols);
    for (b, c) in basis.iter().zip(coords) {
        if !c.is_zero() {
            m = m.add(&b.scale(c));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_roundtrip() {
        for model in [Model::Rect { r: 2, s: 3 }, Model::Alt { k: 4 }, Model::Sym { k: 3 }, Model::Spin { k: 4 }] {
            let n = model.dim();
            let coords: Vec<Q> = (0..n).map(|i| Q::complex(i as i64, 1, 1, 1 + i as i64)).collect();
            assert_eq!(model.coords_plus(&model.matrix_plus(&coords)), coords);
            assert_eq!(model.coords_minus(&model.matrix_minus(&coords)), coords);
        }
    }

    #[test]
    fn conjugate_basis_is_transpose() {
        let m = Model::Alt { k: 3 };
        let d = m.basis_minus();
        let c = m.basis_plus();
        assert_eq!(d[0], c[0].transpose());
    }
}
