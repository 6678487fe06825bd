//! Dense matrices over a [`Ring`], with exact elimination over a [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{ExactError, Result};
use crate::field::{dot, Field, Ring};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Ring> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Ring>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = F::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    pub fn scale_q(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a.mul_ref(b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `vᵀ M`.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape");
        (0..self.cols)
            .map(|j| {
                let mut acc = F::zero();
                for (i, x) in v.iter().enumerate() {
                    acc += x.mul_ref(&self[(i, j)]);
                }
                acc
            })
            .collect()
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Division-free determinant (Berkowitz), valid over any commutative ring.
    pub fn det_berkowitz(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return F::one();
        }
        // v holds the characteristic polynomial of the leading r×r block.
        let mut v = vec![F::one(), -self[(0, 0)].clone()];
        for r in 1..n {
            let mut t = Vec::with_capacity(r + 2);
            t.push(F::one());
            t.push(-self[(r, r)].clone());
            let mut col: Vec<F> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 2..r + 2 {
                let s = dot(&self.row(r)[..r], &col);
                t.push(-s);
                col = (0..r).map(|i| dot(&self.row(i)[..r], &col)).collect();
            }
            let mut next = vec![F::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..=i.min(v.len() - 1) {
                    *slot += t[i - j].mul_ref(&v[j]);
                }
            }
            v = next;
        }
        let d = v.pop().expect("nonempty");
        if n % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Fraction-free (Bareiss) determinant with unit pivots; falls back to the
    /// division-free expansion when no unit pivot exists in a local ring.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return F::one();
        }
        let mut a = self.clone();
        let mut prev_inv = F::one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| a[(i, k)].is_unit()) else {
                if (k..n).all(|i| a[(i, k)].is_zero()) {
                    return F::zero();
                }
                return self.det_berkowitz();
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            let pivot = a[(k, k)].clone();
            for i in k + 1..n {
                let aik = a[(i, k)].clone();
                for j in k + 1..n {
                    let mut x = a[(i, j)].mul_ref(&pivot);
                    if !aik.is_zero() {
                        x -= aik.mul_ref(&a[(k, j)]);
                    }
                    a[(i, j)] = x.mul_ref(&prev_inv);
                }
                a[(i, k)] = F::zero();
            }
            prev_inv = pivot.inv().expect("unit pivot");
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan elimination of `[self | rhs]` for square `self`.
    fn eliminate(&self, rhs: &Matrix<F>) -> Result<Matrix<F>> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(ExactError::ShapeMismatch(format!(
                "cannot solve a {}x{} system with {} right-hand rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let p = (k..n).find(|&i| a[(i, k)].is_unit()).ok_or(ExactError::SingularMatrix)?;
            a.swap_rows(p, k);
            b.swap_rows(p, k);
            let inv = a[(k, k)].inv().expect("unit pivot");
            for j in k..n {
                a[(k, j)] = a[(k, j)].mul_ref(&inv);
            }
            for j in 0..b.cols {
                b[(k, j)] = b[(k, j)].mul_ref(&inv);
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in k..n {
                    let t = f.mul_ref(&a[(k, j)]);
                    a[(i, j)] -= t;
                }
                for j in 0..b.cols {
                    let t = f.mul_ref(&b[(k, j)]);
                    b[(i, j)] -= t;
                }
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.eliminate(&Matrix::identity(self.rows))
    }

    pub fn solve(&self, rhs: &[F]) -> Result<Vec<F>> {
        let b = Matrix::from_columns(&[rhs.to_vec()]);
        Ok(self.eliminate(&b)?.column(0))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| a[(i, c)].is_unit()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inv().expect("unit pivot");
            for j in c..self.cols {
                a[(r, j)] = a[(r, j)].mul_ref(&inv);
            }
            for i in 0..self.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..self.cols {
                    let t = f.mul_ref(&a[(r, j)]);
                    a[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F: Ring> Matrix<F> {
    /// `true` when the matrix equals a scalar multiple of the identity.
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }
}
