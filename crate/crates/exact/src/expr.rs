//! Rational expression DAGs over numbered variables.
//!
//! Expressions are immutable and shared through `Arc`, so derivatives and
//! substitutions reuse subtrees instead of copying them. Linear solves are
//! first-class nodes, which keeps quasi-inverses and their derivatives compact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{ExactError, Result};
use crate::field::{Field, Ring};
use crate::jet::Jet;
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::GaussianRational;

type Q = GaussianRational;

#[derive(Clone)]
pub struct Expr(Arc<Node>);

pub enum Node {
    Const(Q),
    Var(usize),
    /// A polynomial in the global variables, or in the given argument expressions.
    Poly(Arc<MultiPoly<Q>>, Option<Arc<[Expr]>>),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    /// Component `k` of the solution of a linear system.
    Comp(Arc<Solve>, usize),
}

/// The vector `u` with `A u = b`, for a square expression matrix `A`.
pub struct Solve {
    n: usize,
    matrix: Vec<Expr>,
    rhs: Vec<Expr>,
}

fn key<T>(a: &Arc<T>) -> usize {
    Arc::as_ptr(a) as *const () as usize
}

impl Expr {
    fn from_node(n: Node) -> Self {
        Expr(Arc::new(n))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: Q) -> Self {
        Expr::from_node(Node::Const(c))
    }

    pub fn var(i: usize) -> Self {
        Expr::from_node(Node::Var(i))
    }

    pub fn poly(p: MultiPoly<Q>) -> Self {
        if p.is_zero() {
            return Expr::zero();
        }
        if p.degree() == Some(0) {
            return Expr::constant(p.constant_term());
        }
        Expr::from_node(Node::Poly(Arc::new(p), None))
    }

    /// `p(args)`.
    pub fn poly_at(p: MultiPoly<Q>, args: Vec<Expr>) -> Self {
        if p.is_zero() {
            return Expr::zero();
        }
        if p.degree() == Some(0) {
            return Expr::constant(p.constant_term());
        }
        Expr::from_node(Node::Poly(Arc::new(p), Some(args.into())))
    }

    /// Solution vector of `A u = b`, one expression per component.
    pub fn solve(matrix: &Matrix<Expr>, rhs: &[Expr]) -> Vec<Expr> {
        assert!(matrix.is_square() && matrix.rows() == rhs.len(), "solve shape");
        let n = rhs.len();
        let s = Arc::new(Solve { n, matrix: matrix.data().to_vec(), rhs: rhs.to_vec() });
        (0..n).map(|k| Expr::from_node(Node::Comp(s.clone(), k))).collect()
    }

    pub fn as_const(&self) -> Option<&Q> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn div(&self, rhs: &Expr) -> Expr {
        if let Some(c) = rhs.as_const() {
            if let Some(ci) = c.inv() {
                return self.scale(&ci);
            }
        }
        if self.is_zero() {
            return Expr::zero();
        }
        Expr::from_node(Node::Div(self.clone(), rhs.clone()))
    }

    /// Number of distinct nodes.
    pub fn size(&self) -> usize {
        fn walk(e: &Expr, seen: &mut HashMap<usize, ()>, solves: &mut HashMap<usize, ()>) {
            if seen.insert(key(&e.0), ()).is_some() {
                return;
            }
            match e.node() {
                Node::Const(_) | Node::Var(_) => {}
                Node::Poly(_, args) => {
                    for a in args.iter().flat_map(|a| a.iter()) {
                        walk(a, seen, solves);
                    }
                }
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    walk(a, seen, solves);
                    walk(b, seen, solves);
                }
                Node::Neg(a) => walk(a, seen, solves),
                Node::Comp(s, _) => {
                    if solves.insert(key(s), ()).is_none() {
                        for x in s.matrix.iter().chain(&s.rhs) {
                            walk(x, seen, solves);
                        }
                    }
                }
            }
        }
        let mut seen = HashMap::new();
        walk(self, &mut seen, &mut HashMap::new());
        seen.len()
    }

    /// Evaluation in a field containing `Q(i)`.
    pub fn eval<F: Field>(&self, vars: &[F]) -> Result<F> {
        Evaluator::new(vars).eval(self)
    }

    /// Evaluates several expressions sharing one cache.
    pub fn eval_many<F: Field>(exprs: &[Expr], vars: &[F]) -> Result<Vec<F>> {
        let mut ev = Evaluator::new(vars);
        exprs.iter().map(|e| ev.eval(e)).collect()
    }

    /// Directional derivative along the vector field `Σ dirᵢ ∂/∂varᵢ`; missing
    /// entries of `dir` count as zero.
    pub fn directional(&self, dir: &[Expr]) -> Expr {
        Differentiator::new(dir).diff(self)
    }

    pub fn directional_many(exprs: &[Expr], dir: &[Expr]) -> Vec<Expr> {
        let mut d = Differentiator::new(dir);
        exprs.iter().map(|e| d.diff(e)).collect()
    }

    pub fn partial(&self, var: usize) -> Expr {
        let mut dir = vec![Expr::zero(); var + 1];
        dir[var] = Expr::one();
        self.directional(&dir)
    }

    /// Replaces `varᵢ` with `subs[i]`; variables beyond `subs` are kept.
    pub fn substitute(&self, subs: &[Expr]) -> Expr {
        Substituter::new(subs).subst(self)
    }

    pub fn substitute_many(exprs: &[Expr], subs: &[Expr]) -> Vec<Expr> {
        let mut s = Substituter::new(subs);
        exprs.iter().map(|e| s.subst(e)).collect()
    }
}

/// Exact value and directional derivative at a point.
pub fn jet_eval(expr: &Expr, point: &[Q], direction: &[Q]) -> Result<Jet<Q>> {
    expr.eval(&Jet::seed(point, direction))
}

struct Evaluator<'a, F> {
    vars: &'a [F],
    memo: HashMap<usize, F>,
    solves: HashMap<usize, Vec<F>>,
}

impl<'a, F: Field> Evaluator<'a, F> {
    fn new(vars: &'a [F]) -> Self {
        Evaluator { vars, memo: HashMap::new(), solves: HashMap::new() }
    }

    fn eval(&mut self, e: &Expr) -> Result<F> {
        let k = key(&e.0);
        if let Some(v) = self.memo.get(&k) {
            return Ok(v.clone());
        }
        let v = match e.node() {
            Node::Const(c) => F::from(c.clone()),
            Node::Var(i) => self
                .vars
                .get(*i)
                .cloned()
                .ok_or_else(|| ExactError::ShapeMismatch(format!("variable {i} not assigned")))?,
            Node::Poly(p, None) => p.eval(self.vars),
            Node::Poly(p, Some(args)) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<F>>>()?;
                p.eval(&vals)
            }
            Node::Add(a, b) => self.eval(a)? + self.eval(b)?,
            Node::Sub(a, b) => self.eval(a)? - self.eval(b)?,
            Node::Mul(a, b) => {
                let x = self.eval(a)?;
                x.mul_ref(&self.eval(b)?)
            }
            Node::Div(a, b) => {
                let d = self.eval(b)?.inv().ok_or(ExactError::DivisionByZero)?;
                self.eval(a)?.mul_ref(&d)
            }
            Node::Neg(a) => -self.eval(a)?,
            Node::Comp(s, idx) => self.solve(s)?[*idx].clone(),
        };
        self.memo.insert(k, v.clone());
        Ok(v)
    }

    fn solve(&mut self, s: &Arc<Solve>) -> Result<&Vec<F>> {
        let k = key(s);
        if !self.solves.contains_key(&k) {
            let data = s.matrix.iter().map(|x| self.eval(x)).collect::<Result<Vec<F>>>()?;
            let rhs = s.rhs.iter().map(|x| self.eval(x)).collect::<Result<Vec<F>>>()?;
            let u = Matrix::new(s.n, s.n, data).solve(&rhs).map_err(|e| match e {
                ExactError::SingularMatrix => ExactError::DivisionByZero,
                other => other,
            })?;
            self.solves.insert(k, u);
        }
        Ok(&self.solves[&k])
    }
}

struct Differentiator<'a> {
    dir: &'a [Expr],
    memo: HashMap<usize, Expr>,
    solves: HashMap<usize, Vec<Expr>>,
}

impl<'a> Differentiator<'a> {
    fn new(dir: &'a [Expr]) -> Self {
        Differentiator { dir, memo: HashMap::new(), solves: HashMap::new() }
    }

    fn dir_of(&self, i: usize) -> Option<&Expr> {
        self.dir.get(i).filter(|d| !d.is_zero())
    }

    fn diff(&mut self, e: &Expr) -> Expr {
        let k = key(&e.0);
        if let Some(v) = self.memo.get(&k) {
            return v.clone();
        }
        let d = match e.node() {
            Node::Const(_) => Expr::zero(),
            Node::Var(i) => self.dir_of(*i).cloned().unwrap_or_else(Expr::zero),
            Node::Poly(p, None) => {
                let mut acc = Expr::zero();
                for i in 0..p.nvars() {
                    if let Some(di) = self.dir_of(i).cloned() {
                        acc += Expr::poly(p.partial(i)) * di;
                    }
                }
                acc
            }
            Node::Poly(p, Some(args)) => {
                let mut acc = Expr::zero();
                for (i, a) in args.iter().enumerate().take(p.nvars()) {
                    let da = self.diff(a);
                    if !da.is_zero() {
                        acc += Expr::poly_at(p.partial(i), args.to_vec()) * da;
                    }
                }
                acc
            }
            Node::Add(a, b) => self.diff(a) + self.diff(b),
            Node::Sub(a, b) => self.diff(a) - self.diff(b),
            Node::Mul(a, b) => {
                let (da, db) = (self.diff(a), self.diff(b));
                da * b.clone() + a.clone() * db
            }
            Node::Div(a, b) => {
                let (da, db) = (self.diff(a), self.diff(b));
                let first = da.div(b);
                if db.is_zero() {
                    first
                } else {
                    first - (a.clone() * db).div(&(b.clone() * b.clone()))
                }
            }
            Node::Neg(a) => -self.diff(a),
            Node::Comp(s, idx) => self.diff_solve(s)[*idx].clone(),
        };
        self.memo.insert(k, d.clone());
        d
    }

    /// `d(A⁻¹b) = A⁻¹(db − dA·u)` with `u = A⁻¹b`.
    fn diff_solve(&mut self, s: &Arc<Solve>) -> Vec<Expr> {
        let k = key(s);
        if let Some(v) = self.solves.get(&k) {
            return v.clone();
        }
        let n = s.n;
        let u: Vec<Expr> = (0..n).map(|j| Expr::from_node(Node::Comp(s.clone(), j))).collect();
        let dmat: Vec<Expr> = s.matrix.iter().map(|x| self.diff(x)).collect();
        let mut rhs: Vec<Expr> = s.rhs.iter().map(|x| self.diff(x)).collect();
        for (i, r) in rhs.iter_mut().enumerate() {
            for (j, uj) in u.iter().enumerate() {
                let a = &dmat[i * n + j];
                if !a.is_zero() {
                    *r = r.clone() - a.clone() * uj.clone();
                }
            }
        }
        let out = if rhs.iter().all(|r| r.is_zero()) {
            vec![Expr::zero(); n]
        } else {
            let s2 = Arc::new(Solve { n, matrix: s.matrix.clone(), rhs });
            (0..n).map(|j| Expr::from_node(Node::Comp(s2.clone(), j))).collect()
        };
        self.solves.insert(k, out.clone());
        out
    }
}

struct Substituter<'a> {
    subs: &'a [Expr],
    memo: HashMap<usize, Expr>,
    solves: HashMap<usize, Vec<Expr>>,
}

impl<'a> Substituter<'a> {
    fn new(subs: &'a [Expr]) -> Self {
        Substituter { subs, memo: HashMap::new(), solves: HashMap::new() }
    }

    fn subst(&mut self, e: &Expr) -> Expr {
        let k = key(&e.0);
        if let Some(v) = self.memo.get(&k) {
            return v.clone();
        }
        let r = match e.node() {
            Node::Const(_) => e.clone(),
            Node::Var(i) => self.subs.get(*i).cloned().unwrap_or_else(|| e.clone()),
            Node::Poly(p, None) => {
                let nv = p.nvars();
                let args = (0..nv).map(|i| self.subs.get(i).cloned().unwrap_or_else(|| Expr::var(i))).collect();
                Expr::poly_at((**p).clone(), args)
            }
            Node::Poly(p, Some(args)) => {
                let args = args.iter().map(|a| self.subst(a)).collect();
                Expr::poly_at((**p).clone(), args)
            }
            Node::Add(a, b) => self.subst(a) + self.subst(b),
            Node::Sub(a, b) => self.subst(a) - self.subst(b),
            Node::Mul(a, b) => self.subst(a) * self.subst(b),
            Node::Div(a, b) => self.subst(a).div(&self.subst(b)),
            Node::Neg(a) => -self.subst(a),
            Node::Comp(s, idx) => {
                let sk = key(s);
                if !self.solves.contains_key(&sk) {
                    let m: Vec<Expr> = s.matrix.iter().map(|x| self.subst(x)).collect();
                    let rhs: Vec<Expr> = s.rhs.iter().map(|x| self.subst(x)).collect();
                    let comps = Expr::solve(&Matrix::new(s.n, s.n, m), &rhs);
                    self.solves.insert(sk, comps);
                }
                self.solves[&sk][*idx].clone()
            }
        };
        self.memo.insert(k, r.clone());
        r
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Const(c) => write!(f, "{c}"),
            Node::Var(i) => write!(f, "v{i}"),
            Node::Poly(p, None) => write!(f, "[{p:?}]"),
            Node::Poly(p, Some(a)) => write!(f, "[{p:?}]{a:?}"),
            Node::Add(a, b) => write!(f, "({a:?} + {b:?})"),
            Node::Sub(a, b) => write!(f, "({a:?} - {b:?})"),
            Node::Mul(a, b) => write!(f, "{a:?}*{b:?}"),
            Node::Div(a, b) => write!(f, "{a:?}/{b:?}"),
            Node::Neg(a) => write!(f, "-{a:?}"),
            Node::Comp(_, k) => write!(f, "solve[{k}]"),
        }
    }
}

/// Pointer identity, or equal constants. Deciding semantic equality of
/// expressions is out of reach; sample-based comparison is the caller's job.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || matches!((self.as_const(), other.as_const()), (Some(a), Some(b)) if a == b)
    }
}

impl From<Q> for Expr {
    fn from(c: Q) -> Self {
        Expr::constant(c)
    }
}

impl Zero for Expr {
    fn zero() -> Self {
        Expr::constant(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.as_const().is_some_and(|c| c.is_zero())
    }
}

impl One for Expr {
    fn one() -> Self {
        Expr::constant(Q::one())
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self.node() {
            Node::Const(c) => Expr::constant(-c),
            Node::Neg(a) => a.clone(),
            _ => Expr::from_node(Node::Neg(self)),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a + b),
            (Some(a), _) if a.is_zero() => rhs,
            (_, Some(b)) if b.is_zero() => self,
            _ => Expr::from_node(Node::Add(self, rhs)),
        }
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a - b),
            (Some(a), _) if a.is_zero() => -rhs,
            (_, Some(b)) if b.is_zero() => self,
            _ => Expr::from_node(Node::Sub(self, rhs)),
        }
    }
}

impl Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Expr::constant(a * b),
            (Some(a), _) if a.is_zero() => Expr::zero(),
            (_, Some(b)) if b.is_zero() => Expr::zero(),
            (Some(a), _) if a.is_one() => rhs,
            (_, Some(b)) if b.is_one() => self,
            _ => Expr::from_node(Node::Mul(self, rhs)),
        }
    }
}

impl<'a> Add<&'a Expr> for Expr {
    type Output = Expr;
    fn add(self, rhs: &'a Expr) -> Expr {
        self + rhs.clone()
    }
}

impl<'a> Sub<&'a Expr> for Expr {
    type Output = Expr;
    fn sub(self, rhs: &'a Expr) -> Expr {
        self - rhs.clone()
    }
}

impl<'a> Mul<&'a Expr> for Expr {
    type Output = Expr;
    fn mul(self, rhs: &'a Expr) -> Expr {
        self * rhs.clone()
    }
}

impl AddAssign for Expr {
    fn add_assign(&mut self, rhs: Expr) {
        *self = self.clone() + rhs;
    }
}

impl<'a> AddAssign<&'a Expr> for Expr {
    fn add_assign(&mut self, rhs: &'a Expr) {
        *self = self.clone() + rhs.clone();
    }
}

impl SubAssign for Expr {
    fn sub_assign(&mut self, rhs: Expr) {
        *self = self.clone() - rhs;
    }
}

impl<'a> SubAssign<&'a Expr> for Expr {
    fn sub_assign(&mut self, rhs: &'a Expr) {
        *self = self.clone() - rhs.clone();
    }
}

impl Ring for Expr {
    /// Conjugates constants only; variables are treated as independent symbols.
    fn conj(&self) -> Self {
        match self.node() {
            Node::Const(c) => Expr::constant(c.conj()),
            _ => panic!("conjugation of a non-constant expression is not defined"),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> Q {
        Q::from(k)
    }

    #[test]
    fn jet_of_rational_function() {
        let (x, y) = (Expr::var(0), Expr::var(1));
        let e = x.clone().div(&(Expr::one() + x * y));
        let j = jet_eval(&e, &[q(1), q(1)], &[q(1), q(0)]).unwrap();
        assert_eq!(j.v, Q::ratio(1, 2));
        assert_eq!(j.d, Q::ratio(1, 4));
    }

    #[test]
    fn constants_have_zero_derivative() {
        let c = Expr::constant(Q::complex(3, 2, 1, 1));
        let j = jet_eval(&c, &[q(5)], &[q(1)]).unwrap();
        assert!(j.d.is_zero());
    }

    #[test]
    fn product_rule() {
        let e = Expr::var(0) * Expr::var(1);
        let j = jet_eval(&e, &[q(2), q(3)], &[q(1), q(1)]).unwrap();
        assert_eq!((j.v, j.d), (q(6), q(5)));
    }

    #[test]
    fn vanishing_denominator() {
        let e = Expr::one().div(&(Expr::var(0) - Expr::one()));
        assert_eq!(jet_eval(&e, &[q(1)], &[q(1)]), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn solve_node_and_its_derivative() {
        // u = 1/(1 - x y) as the solution of (1 - xy) u = 1.
        let a = Expr::one() - Expr::var(0) * Expr::var(1);
        let u = Expr::solve(&Matrix::new(1, 1, vec![a]), &[Expr::one()]);
        let at = [Q::ratio(1, 2), q(1)];
        assert_eq!(u[0].eval(&at).unwrap(), q(2));
        // ∂x u = y/(1-xy)² = 4.
        assert_eq!(u[0].partial(0).eval(&at).unwrap(), q(4));
    }
}
