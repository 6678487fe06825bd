//! Generalized Taylor expansion `c_ij = δ^j D̄^i F(0) / (i! j!)`.

use std::collections::BTreeMap;

use hermsym_exact::{Monomial, MultiPoly, Sampler, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{NhError, Result};
use crate::form::{NHForm, QIndex};
use crate::section::{LocalExpansion, PolarizedSection};

/// Multi-indices of length `n` and total degree `≤ max`, graded then
/// lexicographically descending.
pub fn multi_indices(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, n: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            rec(prefix, n, left - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, max, &mut out);
    out.sort_by_key(|i| i.iter().sum::<u32>());
    out
}

fn factorial(i: &[u32]) -> i64 {
    i.iter().map(|&k| (1..=k as i64).product::<i64>()).product()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorEntry {
    pub i: Vec<u32>,
    pub j: Vec<u32>,
    pub value: Vec<Q>,
}

/// Nonzero coefficients `c_ij` and the form they reconstruct.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorTable {
    pub max_i: u32,
    pub max_j: u32,
    pub entries: Vec<TaylorEntry>,
    pub reconstruction: NHForm,
}

/// Number of diagonal points the roundtrip is checked at.
pub const ROUNDTRIP_POINTS: usize = 20;

/// Taylor coefficients of a nearly holomorphic section of degree `≤ max_i`
/// whose coefficients have degree `≤ max_j`.
///
/// `D̄^iF` is expanded around the origin. Since `δ` differs from `∂_x` only by
/// a field vanishing to second order in `y`, `δ^jG(0)` is `j!` times the
/// coefficient of `x^j` in `G(x, 0)`.
pub fn taylor_coefficients(f: &PolarizedSection, max_i: u32, max_j: u32) -> Result<TaylorTable> {
    let s = f.space().clone();
    let n = s.dim();
    let zero = vec![Q::zero(); n];
    let order = (max_i + max_j + 1) as usize;
    let base = LocalExpansion::new(f, &zero, &zero, order)?;
    let xs = multi_indices(n, max_j);
    let y0 = vec![0u32; n];

    // D̄^i F for every |i| ≤ max_i, each grown from its parent i − e_k.
    let mut layer: BTreeMap<QIndex, LocalExpansion> = BTreeMap::new();
    layer.insert(vec![0; n], base);
    let mut entries = Vec::new();
    let mut reconstruction = NHForm::zero(s.clone(), f.bundle());
    for level in 0..=max_i {
        for (i, g) in &layer {
            let ifact = Q::from(factorial(i));
            let mut coeffs = vec![MultiPoly::zero(); f.exprs().len()];
            for j in &xs {
                let value: Vec<Q> = g.coefficient(j, &y0).into_iter().map(|c| c / ifact.clone()).collect();
                if value.iter().all(Zero::is_zero) {
                    continue;
                }
                let mono = Monomial::new(j.iter().map(|&e| e as u16).collect());
                for (p, v) in coeffs.iter_mut().zip(&value) {
                    p.add_term(mono.clone(), v.clone());
                }
                entries.push(TaylorEntry { i: i.clone(), j: j.clone(), value });
            }
            reconstruction.add_term(i.clone(), coeffs);
        }
        if level == max_i {
            break;
        }
        let mut next: BTreeMap<QIndex, LocalExpansion> = BTreeMap::new();
        for (i, g) in &layer {
            // Extend only along k ≥ the last nonzero slot, so each index is built once.
            let start = i.iter().rposition(|&e| e > 0).unwrap_or(0);
            let dbars = g.dbar_from(start);
            for (k, h) in dbars {
                let mut child = i.clone();
                child[k] += 1;
                next.insert(child, h);
            }
        }
        layer = next;
    }
    entries.sort_by(|a, b| {
        let key = |e: &TaylorEntry| (e.i.iter().sum::<u32>(), e.j.iter().sum::<u32>());
        key(a).cmp(&key(b)).then_with(|| b.i.cmp(&a.i)).then_with(|| b.j.cmp(&a.j))
    });
    Ok(TaylorTable { max_i, max_j, entries, reconstruction })
}

/// Compares a section with a reconstruction at seeded diagonal points.
pub fn check_roundtrip(f: &PolarizedSection, table: &TaylorTable, seed: u64, points: usize) -> Result<()> {
    let mut rng = Sampler::derived(seed, "taylor roundtrip");
    let n = f.space().dim();
    for _ in 0..points {
        let z = rng.vector(n);
        let lhs = f.eval(&z)?;
        let rhs = table.reconstruction.evaluate(&z);
        if lhs != rhs {
            return Err(NhError::ReconstructionMismatch(format!(
                "at z = {z:?}: section {lhs:?}, reconstruction {rhs:?} (max_i = {}, max_j = {})",
                table.max_i, table.max_j
            )));
        }
    }
    Ok(())
}

/// Taylor coefficients followed by the roundtrip check.
pub fn taylor_roundtrip(f: &PolarizedSection, max_i: u32, max_j: u32, seed: u64) -> Result<TaylorTable> {
    let table = taylor_coefficients(f, max_i, max_j)?;
    check_roundtrip(f, &table, seed, ROUNDTRIP_POINTS)?;
    Ok(table)
}
