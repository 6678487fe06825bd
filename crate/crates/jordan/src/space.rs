//! Space descriptors: a concrete Jordan pair together with its Killing form,
//! dual basis, frame and generic norm.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use hermsym_exact::{Field, Matrix, MultiPoly, Ring, Sampler, Q};
use num_traits::{One, Zero};

use crate::algebra::LieData;
use crate::error::{JordanError, Result};
use crate::family::{Family, SpaceSpec};
use crate::model::Model;
use crate::norm::generic_norm_poly;
use crate::structure::{self, structure_constants, Entry, Side};

/// A classical Jordan pair `(n⁺, n⁻)` with everything derived from it.
///
/// Elements of `n⁺` are coordinate vectors in the basis `c_ℓ`, elements of
/// `n⁻` coordinate vectors in the conjugate basis `c̄_ℓ`.
#[derive(Debug)]
pub struct SpaceDescriptor {
    spec: SpaceSpec,
    model: Model,
    dim: usize,
    rank: usize,
    genus: usize,
    plus: Vec<Entry>,
    minus: Vec<Entry>,
    killing: Matrix<Q>,
    killing_inv: Matrix<Q>,
    gram: Matrix<Q>,
    gram_inv: Matrix<Q>,
    /// `K_jj / K_ii` when the Killing matrix is diagonal.
    adjoint_ratio: Option<Matrix<Q>>,
    frame: Vec<Vec<Q>>,
    delta: MultiPoly<Q>,
    pub(crate) lie: OnceLock<LieData>,
}

static CACHE: OnceLock<Mutex<HashMap<SpaceSpec, Arc<SpaceDescriptor>>>> = OnceLock::new();

/// Build (or fetch the cached) descriptor of a classical space.
pub fn make_space(spec: &SpaceSpec) -> Result<Arc<SpaceDescriptor>> {
    if !spec.family().is_classical() {
        return Err(JordanError::UnsupportedSpace(format!(
            "{spec} has no matrix model; it is available at root-system level only"
        )));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("cache lock").get(spec) {
        return Ok(s.clone());
    }
    // Built outside the lock: two threads may race, both results are equal.
    let built = Arc::new(SpaceDescriptor::build(spec)?);
    let mut guard = cache.lock().expect("cache lock");
    Ok(guard.entry(spec.clone()).or_insert(built).clone())
}

/// Parse a space string and build its descriptor.
pub fn space(s: &str) -> Result<Arc<SpaceDescriptor>> {
    make_space(&s.parse()?)
}

fn check_len<F>(v: &[F], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return Err(JordanError::ShapeMismatch(format!("{what}: expected {n} coordinates, got {}", v.len())));
    }
    Ok(())
}

impl SpaceDescriptor {
    fn build(spec: &SpaceSpec) -> Result<Self> {
        let model = Model::of(spec).ok_or_else(|| JordanError::UnsupportedSpace(spec.to_string()))?;
        let inv = spec.invariants();
        let dim = model.dim();
        if dim != inv.dim {
            return Err(JordanError::Invariant(format!("{spec}: model dimension {dim} != table value {}", inv.dim)));
        }
        let plus = structure_constants(&model, Side::Plus)?;
        let minus = structure_constants(&model, Side::Minus)?;

        // κ(c_a, c̄_b) = −2 Tr D(c_a, c̄_b) = −2 Σ_c Γ_{abcc}.
        let mut killing: Matrix<Q> = Matrix::zeros(dim, dim);
        for e in plus.iter().filter(|e| e.c == e.out) {
            killing[(e.a, e.b)] -= &e.coef * &Q::from(2);
        }
        let killing_inv =
            killing.inverse().map_err(|_| JordanError::Invariant(format!("{spec}: degenerate Killing form")))?;
        let gram = killing.neg();
        let gram_inv = killing_inv.neg();

        let diagonal = (0..dim).all(|i| (0..dim).all(|j| i == j || killing[(i, j)].is_zero()));
        let adjoint_ratio = diagonal.then(|| Matrix::from_fn(dim, dim, |i, j| &killing[(j, j)] / &killing[(i, i)]));
        let frame = model.frame();
        let delta = generic_norm_poly(dim, inv.rank, inv.genus, &plus, &minus)?;
        let s = SpaceDescriptor {
            spec: spec.clone(),
            model,
            dim,
            rank: inv.rank,
            genus: inv.genus,
            plus,
            minus,
            killing,
            killing_inv,
            gram,
            gram_inv,
            adjoint_ratio,
            frame,
            delta,
            lie: OnceLock::new(),
        };
        s.validate()?;
        Ok(s)
    }

    /// Constructor assertions; any failure means the model is wrong.
    fn validate(&self) -> Result<()> {
        let fail = |what: String| Err(JordanError::Invariant(format!("{}: {what}", self.spec)));
        if self.frame.len() != self.rank {
            return fail(format!("frame has {} elements, rank is {}", self.frame.len(), self.rank));
        }
        for (i, e) in self.frame.iter().enumerate() {
            let eb = self.conjugate(e);
            let two_e: Vec<Q> = e.iter().map(|c| c * &Q::from(2)).collect();
            if self.triple(e, &eb, e) != two_e {
                return fail(format!("frame element {i} is not a tripotent"));
            }
            for (j, f) in self.frame.iter().enumerate() {
                if i != j && !self.d_op(e, &self.conjugate(f)).is_zero() {
                    return fail(format!("frame elements {i} and {j} are not orthogonal"));
                }
            }
        }
        let dual = self.killing.mul(&self.killing_inv);
        if !dual.is_identity() {
            return fail("dual basis is not κ-dual".into());
        }
        if self.gram != self.gram.adjoint() {
            return fail("inner product is not Hermitian".into());
        }
        if self.delta.constant_term() != Q::one() {
            return fail("generic norm has constant term != 1".into());
        }
        let mut rng = Sampler::derived(0x5eed, "descriptor-check");
        for _ in 0..2 {
            let x = rng.vector(self.dim);
            let y = rng.vector(self.dim);
            if self.bergman(&x, &y).det() != self.generic_norm(&x, &y).pow(self.genus as u32) {
                return fail("Det B != Δ^p at a sample point".into());
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Basis vector `c_ℓ` (equally `c̄_ℓ` on the `n⁻` side).
    pub fn basis_vector(&self, l: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[l] = Q::one();
        v
    }

    /// `c̃_k ∈ n⁻` with `κ(c_ℓ, c̃_k) = δ_{ℓk}`.
    pub fn dual_basis(&self) -> Vec<Vec<Q>> {
        (0..self.dim).map(|k| self.killing_inv.column(k)).collect()
    }

    pub fn frame(&self) -> &[Vec<Q>] {
        &self.frame
    }

    /// Cached `Δ(X, Y)` in the variables `x_1..x_n, y_1..y_n`.
    pub fn delta_poly(&self) -> &MultiPoly<Q> {
        &self.delta
    }

    /// Matrix `K_ab = κ(c_a, c̄_b)`.
    pub fn killing_matrix(&self) -> &Matrix<Q> {
        &self.killing
    }

    pub fn killing_matrix_inverse(&self) -> &Matrix<Q> {
        &self.killing_inv
    }

    /// Gram matrix of `(v|w) = −κ(v, w̄)` in the basis `c_ℓ`.
    pub fn gram(&self) -> &Matrix<Q> {
        &self.gram
    }

    // ---- operators, generic over the scalar ring ----

    /// `{x, y, z}` on `n⁺ × n⁻ × n⁺`.
    pub fn triple<F: Ring>(&self, x: &[F], y: &[F], z: &[F]) -> Vec<F> {
        structure::triple(&self.plus, x, y, z)
    }

    /// `{y, x, w}` on `n⁻ × n⁺ × n⁻`.
    pub fn triple_minus<F: Ring>(&self, y: &[F], x: &[F], w: &[F]) -> Vec<F> {
        structure::triple(&self.minus, y, x, w)
    }

    /// Checked variant of [`Self::triple`] for external input.
    pub fn triple_product(&self, x: &[Q], y: &[Q], z: &[Q]) -> Result<Vec<Q>> {
        check_len(x, self.dim, "x")?;
        check_len(y, self.dim, "y")?;
        check_len(z, self.dim, "z")?;
        Ok(self.triple(x, y, z))
    }

    /// `D_{x,y}` on `n⁺`.
    pub fn d_op<F: Ring>(&self, x: &[F], y: &[F]) -> Matrix<F> {
        structure::d_op(&self.plus, x, y)
    }

    /// `D_{y,x}` on `n⁻`.
    pub fn d_op_minus<F: Ring>(&self, y: &[F], x: &[F]) -> Matrix<F> {
        structure::d_op(&self.minus, y, x)
    }

    /// `Q_x : n⁻ → n⁺`.
    pub fn q_op<F: Ring>(&self, x: &[F]) -> Matrix<F> {
        structure::q_op(&self.plus, x)
    }

    /// `Q_y : n⁺ → n⁻`.
    pub fn q_op_minus<F: Ring>(&self, y: &[F]) -> Matrix<F> {
        structure::q_op(&self.minus, y)
    }

    /// `Q_{x,z} : n⁻ → n⁺`, `Q_{x,z} y = {x, y, z}`.
    pub fn q2_op<F: Ring>(&self, x: &[F], z: &[F]) -> Matrix<F> {
        structure::q2_op(&self.plus, x, z)
    }

    /// `Q_x y`.
    pub fn q_apply<F: Ring>(&self, x: &[F], y: &[F]) -> Vec<F> {
        let half = Q::ratio(1, 2);
        self.triple(x, y, x).into_iter().map(|c| c.scale(&half)).collect()
    }

    /// `Q_y x` with `y ∈ n⁻`.
    pub fn q_apply_minus<F: Ring>(&self, y: &[F], x: &[F]) -> Vec<F> {
        let half = Q::ratio(1, 2);
        self.triple_minus(y, x, y).into_iter().map(|c| c.scale(&half)).collect()
    }

    /// `B(x, y) = Id − D_{x,y} + Q_x Q_y` on `n⁺`.
    pub fn bergman<F: Ring>(&self, x: &[F], y: &[F]) -> Matrix<F> {
        let qq = self.q_op(x).mul(&self.q_op_minus(y));
        Matrix::identity(self.dim).sub(&self.d_op(x, y)).add(&qq)
    }

    /// `B(y, x) = Id − D_{y,x} + Q_y Q_x` on `n⁻`.
    pub fn bergman_minus<F: Ring>(&self, y: &[F], x: &[F]) -> Matrix<F> {
        let qq = self.q_op_minus(y).mul(&self.q_op(x));
        Matrix::identity(self.dim).sub(&self.d_op_minus(y, x)).add(&qq)
    }

    /// `Δ(x, y)` from the cached polynomial.
    pub fn generic_norm<F: Ring + From<Q>>(&self, x: &[F], y: &[F]) -> F {
        let mut point = Vec::with_capacity(2 * self.dim);
        point.extend_from_slice(x);
        point.extend_from_slice(y);
        self.delta.eval(&point)
    }

    /// Quasi-inverse `x^y = B(x,y)⁻¹(x − Q_x y)`, or `None` when `B(x,y)` is
    /// not invertible over `F`.
    pub fn quasi_inverse_in<F: Field>(&self, x: &[F], y: &[F]) -> Option<Vec<F>> {
        let rhs: Vec<F> = x.iter().zip(self.q_apply(x, y)).map(|(a, b)| a.clone() - b).collect();
        self.bergman(x, y).solve(&rhs).ok()
    }

    /// `y^x = B(y,x)⁻¹(y − Q_y x)` in `n⁻`.
    pub fn quasi_inverse_minus_in<F: Field>(&self, y: &[F], x: &[F]) -> Option<Vec<F>> {
        let rhs: Vec<F> = y.iter().zip(self.q_apply_minus(y, x)).map(|(a, b)| a.clone() - b).collect();
        self.bergman_minus(y, x).solve(&rhs).ok()
    }

    pub fn quasi_inverse(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        check_len(x, self.dim, "x")?;
        check_len(y, self.dim, "y")?;
        self.quasi_inverse_in(x, y)
            .ok_or_else(|| JordanError::NotQuasiInvertible { delta: Box::new(self.generic_norm(x, y)) })
    }

    pub fn quasi_inverse_minus(&self, y: &[Q], x: &[Q]) -> Result<Vec<Q>> {
        check_len(x, self.dim, "x")?;
        check_len(y, self.dim, "y")?;
        self.quasi_inverse_minus_in(y, x)
            .ok_or_else(|| JordanError::NotQuasiInvertible { delta: Box::new(self.generic_norm(x, y)) })
    }

    /// Conjugation `n± → n∓`; in coordinates it conjugates every entry.
    pub fn conjugate<F: Ring>(&self, x: &[F]) -> Vec<F> {
        x.iter().map(|c| c.conj()).collect()
    }

    /// `κ(v, w)` for `v ∈ n⁺`, `w ∈ n⁻`.
    pub fn kappa<F: Ring + From<Q>>(&self, v: &[F], w: &[F]) -> F {
        let mut acc = F::zero();
        for a in 0..self.dim {
            if v[a].is_zero() {
                continue;
            }
            for b in 0..self.dim {
                let k = &self.killing[(a, b)];
                if !k.is_zero() && !w[b].is_zero() {
                    acc += v[a].mul_ref(&w[b]).scale(k);
                }
            }
        }
        acc
    }

    /// `(v|w) = −κ(v, w̄)` on `n⁺`.
    pub fn inner(&self, v: &[Q], w: &[Q]) -> Q {
        -self.kappa(v, &self.conjugate(w))
    }

    /// Adjoint of `T` for `(·|·)`.
    pub fn star(&self, t: &Matrix<Q>) -> Matrix<Q> {
        self.gram_inv.mul(&t.transpose()).mul(&self.gram).conj()
    }

    /// `κ`-adjoint: `κ(Tv, w) = κ(v, T^† w)`.
    pub fn kappa_adjoint<F: Ring + From<Q>>(&self, t: &Matrix<F>) -> Matrix<F> {
        if let Some(r) = &self.adjoint_ratio {
            return Matrix::from_fn(self.dim, self.dim, |i, j| {
                let x = &t[(j, i)];
                if x.is_zero() || r[(i, j)].is_one() {
                    x.clone()
                } else {
                    x.scale(&r[(i, j)])
                }
            });
        }
        let kinv = self.killing_inv.map(|c| F::from(c.clone()));
        let k = self.killing.map(|c| F::from(c.clone()));
        kinv.mul(&t.transpose()).mul(&k)
    }

    /// Action on `n⁻` of the structure-algebra element acting by `T` on `n⁺`.
    pub fn minus_action<F: Ring + From<Q>>(&self, t: &Matrix<F>) -> Matrix<F> {
        self.kappa_adjoint(t).neg()
    }

    /// Element of `n⁺` as a model matrix.
    pub fn to_matrix_plus(&self, x: &[Q]) -> Matrix<Q> {
        self.model.matrix_plus(x)
    }

    pub fn to_matrix_minus(&self, y: &[Q]) -> Matrix<Q> {
        self.model.matrix_minus(y)
    }

    /// Coordinates of a model matrix in `n⁺`; fails unless it lies there.
    pub fn from_matrix_plus(&self, m: &Matrix<Q>) -> Result<Vec<Q>> {
        let ((r, c), _) = self.model.shapes();
        if (m.rows(), m.cols()) != (r, c) {
            return Err(JordanError::ShapeMismatch(format!("expected a {r}x{c} matrix")));
        }
        let x = self.model.coords_plus(m);
        if &self.model.matrix_plus(&x) != m {
            return Err(JordanError::ShapeMismatch("matrix is not an element of n+".into()));
        }
        Ok(x)
    }

    pub fn from_matrix_minus(&self, m: &Matrix<Q>) -> Result<Vec<Q>> {
        let (_, (r, c)) = self.model.shapes();
        if (m.rows(), m.cols()) != (r, c) {
            return Err(JordanError::ShapeMismatch(format!("expected a {r}x{c} matrix")));
        }
        let y = self.model.coords_minus(m);
        if &self.model.matrix_minus(&y) != m {
            return Err(JordanError::ShapeMismatch("matrix is not an element of n-".into()));
        }
        Ok(y)
    }

    /// Matrix shapes `(rows, cols)` of `n⁺` and `n⁻` elements.
    pub fn shapes(&self) -> ((usize, usize), (usize, usize)) {
        self.model.shapes()
    }

    /// Row-major entries of the model matrix of an `n⁺` element.
    pub fn serialize_plus(&self, x: &[Q]) -> Vec<Q> {
        self.to_matrix_plus(x).data().to_vec()
    }

    pub fn serialize_minus(&self, y: &[Q]) -> Vec<Q> {
        self.to_matrix_minus(y).data().to_vec()
    }

    pub fn deserialize_plus(&self, entries: &[Q]) -> Result<Vec<Q>> {
        let ((r, c), _) = self.model.shapes();
        check_len(entries, r * c, "matrix entries")?;
        self.from_matrix_plus(&Matrix::new(r, c, entries.to_vec()))
    }

    pub fn deserialize_minus(&self, entries: &[Q]) -> Result<Vec<Q>> {
        let (_, (r, c)) = self.model.shapes();
        check_len(entries, r * c, "matrix entries")?;
        self.from_matrix_minus(&Matrix::new(r, c, entries.to_vec()))
    }

    /// Random quasi-invertible pair `(x, y)`.
    pub fn sample_pair(&self, rng: &mut Sampler) -> (Vec<Q>, Vec<Q>) {
        loop {
            let x = rng.vector(self.dim);
            let y = rng.vector(self.dim);
            if !self.generic_norm(&x, &y).is_zero() {
                return (x, y);
            }
        }
    }
}
