//! Explicit highest-weight polynomials on `n⁻` and their verification through
//! the frame `sl₂`-triples, the frame torus and (for type I) compact raising
//! operators.

use hermsym_exact::{Matrix, MultiPoly, Q};
use hermsym_jordan::{Family, GElement, SpaceDescriptor};
use num_traits::{One, Zero};

use crate::error::{Result, RootError};

fn check(space: &SpaceDescriptor, m: &[u32]) -> Result<()> {
    if !space.family().is_classical() {
        return Err(RootError::UnsupportedSpace(space.spec().to_string()));
    }
    if m.len() != space.rank() || m.windows(2).any(|w| w[0] < w[1]) {
        return Err(RootError::InvalidSignature(m.to_vec()));
    }
    Ok(())
}

/// Frame partial sums `eᵢ⁺ = c₁ + … + cᵢ` for `i = 1, …, r`.
pub fn frame_partial_sums(space: &SpaceDescriptor) -> Vec<Vec<Q>> {
    let mut acc = vec![Q::zero(); space.dim()];
    space
        .frame()
        .iter()
        .map(|c| {
            for (a, x) in acc.iter_mut().zip(c) {
                *a += x.clone();
            }
            acc.clone()
        })
        .collect()
}

/// `Δᵢ(w) = Δ(eᵢ⁺, eᵢ⁻ − w)` as a polynomial in the coordinates of `w ∈ n⁻`.
pub fn minor_polynomials(space: &SpaceDescriptor) -> Vec<MultiPoly<Q>> {
    let n = space.dim();
    frame_partial_sums(space)
        .into_iter()
        .map(|e| {
            let ebar = space.conjugate(&e);
            let mut subs: Vec<MultiPoly<Q>> = e.iter().cloned().map(MultiPoly::constant).collect();
            subs.extend((0..n).map(|k| MultiPoly::constant(ebar[k].clone()) - MultiPoly::var(k)));
            space.delta_poly().compose(&subs)
        })
        .collect()
}

/// `p_m = Δ₁^{m₁−m₂} ⋯ Δ_r^{m_r}`.
pub fn hwv_polynomial(space: &SpaceDescriptor, m: &[u32]) -> Result<MultiPoly<Q>> {
    check(space, m)?;
    let minors = minor_polynomials(space);
    let mut p = MultiPoly::one();
    for (i, d) in minors.iter().enumerate() {
        let k = m[i] - m.get(i + 1).copied().unwrap_or(0);
        if k > 0 {
            p = p * d.pow(k);
        }
    }
    Ok(p)
}

/// `(Xᵢ, Hᵢ, Yᵢ) = ((cᵢ,0,0), (0,D_{cᵢ,c̄ᵢ},0), −(0,0,c̄ᵢ))`.
pub fn sl2_triple(space: &SpaceDescriptor, i: usize) -> (GElement, GElement, GElement) {
    let c = &space.frame()[i];
    let cbar = space.conjugate(c);
    let x = GElement::plus(c.clone());
    let h = GElement::levi(space.d_op(c, &cbar));
    let y = GElement::minus(cbar.iter().map(|a| -a.clone()).collect());
    (x, h, y)
}

/// Checks `[H,X] = 2X`, `[H,Y] = −2Y` and `[X,Y] = H` for every frame index.
pub fn sl2_relations(space: &SpaceDescriptor) -> Result<()> {
    let two = Q::from(2);
    for i in 0..space.rank() {
        let (x, h, y) = sl2_triple(space, i);
        let fail =
            |what: &str| Err(RootError::Invariant(format!("{}: sl₂ relation {what} fails for c_{i}", space.spec())));
        if space.bracket(&h, &x)? != x.scale(&two) {
            return fail("[H,X] = 2X");
        }
        if space.bracket(&h, &y)? != y.scale(&-two.clone()) {
            return fail("[H,Y] = −2Y");
        }
        if space.bracket(&x, &y)? != h {
            return fail("[X,Y] = H");
        }
    }
    Ok(())
}

/// `(T.p)(y) = −∂p(y)[T⁻y]` for `T ∈ l` given by its action on `n⁺`.
pub fn torus_action(space: &SpaceDescriptor, t: &Matrix<Q>, p: &MultiPoly<Q>) -> MultiPoly<Q> {
    let minus = space.minus_action(t);
    let n = space.dim();
    let mut out = MultiPoly::zero();
    for k in 0..n {
        let row: Vec<Q> = (0..n).map(|j| minus[(k, j)].clone()).collect();
        if row.iter().all(Zero::is_zero) {
            continue;
        }
        let d = p.partial(k);
        if !d.is_zero() {
            out -= d * MultiPoly::linear(&row, 0);
        }
    }
    out
}

/// Scalar `λ` with `a = λ·p`, if there is one.
fn eigenvalue(a: &MultiPoly<Q>, p: &MultiPoly<Q>) -> Option<Q> {
    let (mono, c) = p.terms().next()?;
    let lambda = a.coefficient(mono) / c.clone();
    (a.clone() == p.scale(&lambda)).then_some(lambda)
}

/// Eigenvalues of `p_m` under `D_{cⱼ,c̄ⱼ}`, `j = 1, …, r`.
pub fn torus_weight_check(space: &SpaceDescriptor, m: &[u32]) -> Result<Vec<i64>> {
    let p = hwv_polynomial(space, m)?;
    let mut out = Vec::with_capacity(space.rank());
    for (j, c) in space.frame().iter().enumerate() {
        let t = space.d_op(c, &space.conjugate(c));
        let lambda = eigenvalue(&torus_action(space, &t, &p), &p)
            .ok_or_else(|| RootError::NotEigenvector(format!("p_{m:?} under D_(c_{j}, c̄_{j})")))?;
        let int = lambda
            .to_integer()
            .ok_or_else(|| RootError::NotEigenvector(format!("eigenvalue {lambda} of p_{m:?} is not an integer")))?;
        out.push(int);
    }
    Ok(out)
}

/// Compact raising operators of a type I space as operators on `n⁺`:
/// `x ↦ E_ab x` on the left factor and `x ↦ x E_ab` on the right, `a < b`.
pub fn raising_operators(space: &SpaceDescriptor) -> Result<Vec<Matrix<Q>>> {
    if space.family() != Family::I {
        return Err(RootError::UnsupportedSpace(space.spec().to_string()));
    }
    let n = space.dim();
    let ((r, s), _) = space.shapes();
    let elementary = |size: usize, a: usize, b: usize| {
        Matrix::from_fn(size, size, |i, j| if (i, j) == (a, b) { Q::one() } else { Q::zero() })
    };
    let as_operator = |f: &dyn Fn(&Matrix<Q>) -> Matrix<Q>| -> Result<Matrix<Q>> {
        let mut cols = Vec::with_capacity(n);
        for l in 0..n {
            let x = space.to_matrix_plus(&space.basis_vector(l));
            cols.push(space.from_matrix_plus(&f(&x))?);
        }
        Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
    };
    let mut out = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let e = elementary(r, a, b);
            out.push(as_operator(&|x| e.mul(x))?);
        }
    }
    for a in 0..s {
        for b in a + 1..s {
            let e = elementary(s, a, b);
            out.push(as_operator(&|x| x.mul(&e))?);
        }
    }
    for t in &out {
        space.check_element(&GElement::levi(t.clone()))?;
    }
    Ok(out)
}

/// Whether every type I raising operator annihilates `p_m`.
pub fn raising_annihilates(space: &SpaceDescriptor, m: &[u32]) -> Result<bool> {
    let p = hwv_polynomial(space, m)?;
    Ok(raising_operators(space)?.iter().all(|t| torus_action(space, t, &p).is_zero()))
}
