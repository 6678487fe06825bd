//! The graded Lie algebra `g = n⁺ ⊕ l ⊕ n⁻`.
//!
//! Structure-algebra elements are stored through their action on `n⁺`; on
//! `n⁻` they act by the negative κ-adjoint.

use hermsym_exact::{Jet, Matrix, Ring, Sampler, Q};
use num_traits::{One, Zero};

use crate::error::{JordanError, Result};
use crate::space::SpaceDescriptor;

/// `(v, T, w)` with `v ∈ n⁺`, `T ∈ l` acting on `n⁺`, `w ∈ n⁻`.
#[derive(Debug, Clone, PartialEq)]
pub struct GElement {
    pub v: Vec<Q>,
    pub t: Matrix<Q>,
    pub w: Vec<Q>,
}

impl GElement {
    pub fn zero(n: usize) -> Self {
        GElement { v: vec![Q::zero(); n], t: Matrix::zeros(n, n), w: vec![Q::zero(); n] }
    }

    /// The grading element `Z_0 = (0, Id, 0)`.
    pub fn z0(n: usize) -> Self {
        GElement { t: Matrix::identity(n), ..GElement::zero(n) }
    }

    pub fn plus(v: Vec<Q>) -> Self {
        let n = v.len();
        GElement { v, ..GElement::zero(n) }
    }

    pub fn levi(t: Matrix<Q>) -> Self {
        let n = t.rows();
        GElement { t, ..GElement::zero(n) }
    }

    pub fn minus(w: Vec<Q>) -> Self {
        let n = w.len();
        GElement { w, ..GElement::zero(n) }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Zero::is_zero) && self.t.is_zero() && self.w.iter().all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &GElement) -> GElement {
        GElement { v: add(&self.v, &rhs.v), t: self.t.add(&rhs.t), w: add(&self.w, &rhs.w) }
    }

    pub fn sub(&self, rhs: &GElement) -> GElement {
        self.add(&rhs.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> GElement {
        GElement {
            v: self.v.iter().map(|a| a * c).collect(),
            t: self.t.scale(c),
            w: self.w.iter().map(|a| a * c).collect(),
        }
    }
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Exact basis of `l` and its intrinsic trace form.
#[derive(Debug)]
pub(crate) struct LieData {
    basis: Vec<Matrix<Q>>,
    /// Nonzero entries of each basis element, by flat position.
    sparse: Vec<Vec<(usize, Q)>>,
    /// Flat matrix positions of the RREF pivots; entry `k` of `T` at
    /// `pivots[k]` is the `k`-th coordinate.
    pivots: Vec<usize>,
    /// `Tr_l(ad b_i ad b_j)`.
    gram: Matrix<Q>,
    /// Sign relating the abstract bracket to the vector-field bracket.
    sigma: i8,
}

impl LieData {
    fn build(s: &SpaceDescriptor) -> LieData {
        let n = s.dim();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                rows.push(s.d_op(&s.basis_vector(a), &s.basis_vector(b)).data().to_vec());
            }
        }
        rows.push(Matrix::<Q>::identity(n).data().to_vec());
        let (rref, pivots) = Matrix::from_rows(rows).rref();
        let basis: Vec<Matrix<Q>> = (0..pivots.len()).map(|k| Matrix::new(n, n, rref.row(k).to_vec())).collect();
        let sparse = basis
            .iter()
            .map(|b| b.data().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p, c.clone())).collect())
            .collect();
        let mut data = LieData { basis, sparse, pivots, gram: Matrix::zeros(0, 0), sigma: 1 };

        // Structure constants of l, then the trace form of its adjoint action.
        let d = data.basis.len();
        let consts: Vec<Vec<Vec<Q>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| data.coords(&data.basis[i].commutator(&data.basis[j])).expect("l is a Lie algebra"))
                    .collect()
            })
            .collect();
        data.gram = Matrix::from_fn(d, d, |i, j| {
            let mut acc = Q::zero();
            for k in 0..d {
                for (m, c) in consts[j][k].iter().enumerate() {
                    if !c.is_zero() && !consts[i][m][k].is_zero() {
                        acc += c * &consts[i][m][k];
                    }
                }
            }
            acc
        });
        data
    }

    fn coords(&self, t: &Matrix<Q>) -> Result<Vec<Q>> {
        let c: Vec<Q> = self.pivots.iter().map(|&p| t.data()[p].clone()).collect();
        if self.combine(&c, t.rows()) != *t {
            return Err(JordanError::NotInL);
        }
        Ok(c)
    }

    fn combine(&self, c: &[Q], n: usize) -> Matrix<Q> {
        let mut data = vec![Q::zero(); n * n];
        for (entries, x) in self.sparse.iter().zip(c) {
            if x.is_zero() {
                continue;
            }
            for (p, v) in entries {
                data[*p] += v * x;
            }
        }
        Matrix::new(n, n, data)
    }
}

impl SpaceDescriptor {
    pub(crate) fn lie_data(&self) -> &LieData {
        self.lie.get_or_init(|| {
            let mut data = LieData::build(self);
            data.sigma = self.measure_vf_sign();
            data
        })
    }

    /// Basis of the structure algebra `l`, as operators on `n⁺`.
    pub fn l_basis(&self) -> &[Matrix<Q>] {
        &self.lie_data().basis
    }

    /// Coordinates of `T` in [`Self::l_basis`]; `NotInL` if `T ∉ l`.
    pub fn l_coords(&self, t: &Matrix<Q>) -> Result<Vec<Q>> {
        if t.rows() != self.dim() || t.cols() != self.dim() {
            return Err(JordanError::ShapeMismatch(format!("expected a {0}x{0} operator", self.dim())));
        }
        self.lie_data().coords(t)
    }

    pub fn check_element(&self, x: &GElement) -> Result<()> {
        let n = self.dim();
        if x.v.len() != n || x.w.len() != n {
            return Err(JordanError::ShapeMismatch(format!("element slots must have {n} coordinates")));
        }
        self.l_coords(&x.t).map(|_| ())
    }

    /// Intrinsic trace form of `l` on its own adjoint representation.
    pub fn kappa_l(&self, t1: &Matrix<Q>, t2: &Matrix<Q>) -> Result<Q> {
        let a = self.l_coords(t1)?;
        let b = self.l_coords(t2)?;
        let g = &self.lie_data().gram;
        Ok(hermsym_exact::dot(&a, &g.mul_vec(&b)))
    }

    /// Killing form of `g`.
    pub fn killing_form(&self, x1: &GElement, x2: &GElement) -> Result<Q> {
        self.check_element(x1)?;
        self.check_element(x2)?;
        let inner = x1.t.mul(&x2.t).sub(&self.d_op(&x1.v, &x2.w)).sub(&self.d_op(&x2.v, &x1.w));
        Ok(self.kappa_l(&x1.t, &x2.t)? + inner.trace() * Q::from(2))
    }

    /// `[X1, X2]`.
    pub fn bracket(&self, x1: &GElement, x2: &GElement) -> Result<GElement> {
        self.check_element(x1)?;
        self.check_element(x2)?;
        Ok(self.bracket_unchecked(x1, x2))
    }

    pub(crate) fn bracket_unchecked(&self, x1: &GElement, x2: &GElement) -> GElement {
        let v = sub(&x1.t.mul_vec(&x2.v), &x2.t.mul_vec(&x1.v));
        let t = self.d_op(&x2.v, &x1.w).add(&x1.t.commutator(&x2.t)).sub(&self.d_op(&x1.v, &x2.w));
        let m1 = self.minus_action(&x1.t);
        let m2 = self.minus_action(&x2.t);
        let w = sub(&m1.mul_vec(&x2.w), &m2.mul_vec(&x1.w));
        GElement { v, t, w }
    }

    /// `ϑ(u, T, v) = (v̄, −T*, ū)`.
    pub fn cartan_involution(&self, x: &GElement) -> Result<GElement> {
        self.check_element(x)?;
        Ok(GElement { v: self.conjugate(&x.w), t: self.star(&x.t).neg(), w: self.conjugate(&x.v) })
    }

    /// Holomorphic vector field `z ↦ v + Tz + Q_z w`.
    pub fn vf_eval<F: Ring + From<Q>>(&self, x: &GElement, z: &[F]) -> Vec<F> {
        let lift = |v: &[Q]| v.iter().map(|c| F::from(c.clone())).collect::<Vec<F>>();
        let t = x.t.map(|c| F::from(c.clone()));
        let tz = t.mul_vec(z);
        let qzw = self.q_apply(z, &lift(&x.w));
        lift(&x.v).into_iter().zip(tz).zip(qzw).map(|((a, b), c)| a + b + c).collect()
    }

    /// `∂ζ1(z)[ζ2(z)] − ∂ζ2(z)[ζ1(z)]` computed with jets.
    pub fn vf_bracket_at(&self, x1: &GElement, x2: &GElement, z: &[Q]) -> Vec<Q> {
        let z1 = self.vf_eval(x1, z);
        let z2 = self.vf_eval(x2, z);
        let d1 = self.vf_eval(x1, &Jet::seed(z, &z2));
        let d2 = self.vf_eval(x2, &Jet::seed(z, &z1));
        d1.iter().zip(&d2).map(|(a, b)| a.deriv() - b.deriv()).collect()
    }

    /// `ς` with `vf([X, Y]) = ς·[vf X, vf Y]`.
    pub fn vf_sign(&self) -> i8 {
        self.lie_data().sigma
    }

    fn measure_vf_sign(&self) -> i8 {
        let n = self.dim();
        let z0 = GElement::z0(n);
        let c = GElement::plus(self.basis_vector(0));
        let origin = vec![Q::zero(); n];
        let field = self.vf_bracket_at(&z0, &c, &origin);
        let abs = self.vf_eval(&self.bracket_unchecked(&z0, &c), &origin);
        if field == abs {
            1
        } else {
            debug_assert_eq!(field.iter().map(|a| -a.clone()).collect::<Vec<_>>(), abs);
            -1
        }
    }

    /// Random element with small Gaussian-rational coordinates.
    pub fn sample_element(&self, rng: &mut Sampler) -> GElement {
        let n = self.dim();
        let data = self.lie_data();
        let c: Vec<Q> = (0..data.basis.len()).map(|_| rng.scalar()).collect();
        let t = data.combine(&c, n);
        GElement { v: rng.vector(n), t, w: rng.vector(n) }
    }

    /// Basis of `g`: `n⁺` basis, then `l` basis, then `n⁻` basis.
    pub fn g_basis(&self) -> Vec<GElement> {
        let n = self.dim();
        let mut out: Vec<GElement> = (0..n).map(|a| GElement::plus(self.basis_vector(a))).collect();
        out.extend(self.l_basis().iter().cloned().map(GElement::levi));
        out.extend((0..n).map(|a| GElement::minus(self.basis_vector(a))));
        out
    }

    /// Coordinates of an element in [`Self::g_basis`].
    pub fn g_coords(&self, x: &GElement) -> Result<Vec<Q>> {
        let mut c = x.v.clone();
        c.extend(self.l_coords(&x.t)?);
        c.extend(x.w.iter().cloned());
        Ok(c)
    }

    /// `Tr(ad X ad Y)` over a full basis of `g`; an oracle for
    /// [`Self::killing_form`], quadratic in `dim g`.
    pub fn killing_form_bruteforce(&self, x: &GElement, y: &GElement) -> Result<Q> {
        self.check_element(x)?;
        self.check_element(y)?;
        let basis = self.g_basis();
        let mut acc = Q::zero();
        for (k, b) in basis.iter().enumerate() {
            let inner = self.bracket_unchecked(y, b);
            let outer = self.bracket_unchecked(x, &inner);
            acc += self.g_coords(&outer)?[k].clone();
        }
        Ok(acc)
    }
}
