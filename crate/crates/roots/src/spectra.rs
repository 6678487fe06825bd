//! Highest weights of `P_m(n⁻)`, of `P_m(n⁻) ⊗ n⁺`, and the spectra of the
//! tangent bundle and of line bundles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, RootError};
use crate::system::{RootSystemData, Weight};

/// `m₁ ≥ … ≥ m_r ≥ 0`.
pub type Signature = Vec<u32>;

pub fn check_signature(rs: &RootSystemData, m: &[u32]) -> Result<()> {
    if m.len() != rs.rank() || m.windows(2).any(|w| w[0] < w[1]) {
        return Err(RootError::InvalidSignature(m.to_vec()));
    }
    Ok(())
}

/// All signatures of length `r` with `|m| ≤ max_total`, ordered by `|m|` and
/// then lexicographically.
pub fn signatures(r: usize, max_total: u32) -> Vec<Signature> {
    fn rec(prefix: &mut Signature, r: usize, cap: u32, left: u32, out: &mut Vec<Signature>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=cap.min(left) {
            prefix.push(k);
            rec(prefix, r, k, left - k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), r, max_total, max_total, &mut out);
    out.sort_by(|a, b| {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    out
}

/// `γ_m = Σ mᵢγᵢ`.
pub fn gamma_m(rs: &RootSystemData, m: &[u32]) -> Weight {
    let mut out = vec![0; rs.ambient_dim()];
    for (g, &k) in rs.gammas().iter().zip(m) {
        for (o, x) in out.iter_mut().zip(g) {
            *o += k as i64 * x;
        }
    }
    out
}

/// `m` with `λ = γ_m` and `m` a signature, if there is one.
pub fn as_gamma_m(rs: &RootSystemData, lambda: &[i64]) -> Option<Signature> {
    // Strongly orthogonal roots are orthogonal, so the coefficients are projections.
    let mut m = Vec::with_capacity(rs.rank());
    for g in rs.gammas() {
        let (num, den) = (rs.inner(lambda, g), rs.inner(g, g));
        if num < 0 || num % den != 0 {
            return None;
        }
        m.push((num / den) as u32);
    }
    (m.windows(2).all(|w| w[0] >= w[1]) && gamma_m(rs, &m) == lambda).then_some(m)
}

/// Number of `i` with `mᵢ > m_{i+1}`, where `m_{r+1} = 0`.
pub fn descents(m: &[u32]) -> u32 {
    (0..m.len()).filter(|&i| m[i] > m.get(i + 1).copied().unwrap_or(0)).count() as u32
}

/// Signatures `|m| ≤ max_total` with their highest weights `γ_m`.
pub fn hks_weights(rs: &RootSystemData, max_total: u32) -> Vec<(Signature, Weight)> {
    signatures(rs.rank(), max_total)
        .into_iter()
        .map(|m| {
            let g = gamma_m(rs, &m);
            assert!(rs.is_compact_dominant(&g), "γ_{m:?} is not Φ_c-dominant");
            (m, g)
        })
        .collect()
}

fn add(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `Λ_m(n⁺)` as pairs `(γ_m + β, β)`. With `chain_condition = false` the
/// restriction on `β + αᵢ` is dropped.
pub fn lambda_m_entries(rs: &RootSystemData, m: &[u32], chain_condition: bool) -> Result<Vec<(Weight, Weight)>> {
    check_signature(rs, m)?;
    let g = gamma_m(rs, m);
    let l = rs.simple_roots().len();
    let silent: Vec<usize> = (1..l).filter(|&i| rs.pairing(&g, i) == Some(0)).collect();
    let mut out = Vec::new();
    for beta in rs.nc_positive() {
        let lambda = add(&g, beta);
        if !rs.is_compact_dominant(&lambda) {
            continue;
        }
        if chain_condition && silent.iter().any(|&i| rs.is_nc_positive(&add(beta, &rs.simple_roots()[i]))) {
            continue;
        }
        out.push((lambda, beta.clone()));
    }
    Ok(out)
}

pub fn lambda_m_set(rs: &RootSystemData, m: &[u32]) -> Result<Vec<Weight>> {
    Ok(lambda_m_entries(rs, m, true)?.into_iter().map(|(l, _)| l).collect())
}

/// Whether `γ_{m+e_j} ∈ Λ_m(n⁺)` exactly when `m_j < m_{j−1}` (with `m_0 = ∞`).
pub fn successor_rule_holds(rs: &RootSystemData, m: &[u32]) -> Result<bool> {
    let set = lambda_m_set(rs, m)?;
    Ok((0..m.len()).all(|j| {
        let mut next = m.to_vec();
        next[j] += 1;
        let expected = j == 0 || m[j] < m[j - 1];
        set.contains(&gamma_m(rs, &next)) == expected
    }))
}

/// Multiplicity of `E_{γ_m+β}` in `P_m(n⁻) ⊗ n⁺` from Kostant's criterion:
/// the weight must be Φ_c-dominant and the αᵢ-string above β must be shorter
/// than `γ_m(Hᵢ) + 1` for every compact simple root.
pub fn chain_multiplicity(rs: &RootSystemData, m: &[u32], beta: &[i64]) -> Result<u32> {
    check_signature(rs, m)?;
    if !rs.is_nc_positive(beta) {
        return Err(RootError::NotNoncompact(format!("{beta:?}")));
    }
    let g = gamma_m(rs, m);
    if !rs.is_compact_dominant(&add(&g, beta)) {
        return Ok(0);
    }
    let ok = (1..rs.simple_roots().len()).all(|i| {
        let bound = rs.pairing(&g, i).expect("γ_m is integral");
        (rs.chain_top(beta, i) as i64) < bound + 1
    });
    Ok(ok as u32)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub lambda: Weight,
    pub signature: Option<Signature>,
    pub multiplicity: u32,
    pub provisional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    pub space: String,
    pub bundle: String,
    pub max_total: u32,
    pub entries: Vec<WeightEntry>,
}

impl WeightTable {
    pub fn get(&self, lambda: &[i64]) -> Option<&WeightEntry> {
        self.entries.iter().find(|e| e.lambda == lambda)
    }

    pub fn settled(&self) -> impl Iterator<Item = &WeightEntry> {
        self.entries.iter().filter(|e| !e.provisional)
    }
}

/// Whether `λ` can also be reached from a signature just beyond the cut-off.
fn reachable_beyond(rs: &RootSystemData, lambda: &[i64], max_total: u32) -> bool {
    signatures(rs.rank(), max_total + 2).into_iter().filter(|m| m.iter().sum::<u32>() > max_total).any(|m| {
        let beta: Weight = lambda.iter().zip(gamma_m(rs, &m)).map(|(a, b)| a - b).collect();
        rs.is_nc_positive(&beta)
            && lambda_m_entries(rs, &m, true).expect("valid signature").iter().any(|(l, _)| l == lambda)
    })
}

/// Distinct weights of `∪_{|m| ≤ M} Λ_m(n⁺)`, in order of first appearance,
/// with the number of signatures producing each.
fn tangent_weights(rs: &RootSystemData, max_total: u32) -> Vec<(Weight, u32)> {
    let mut first: Vec<Weight> = Vec::new();
    let mut count: BTreeMap<Weight, u32> = BTreeMap::new();
    for m in signatures(rs.rank(), max_total) {
        for lambda in lambda_m_set(rs, &m).expect("valid signature") {
            let c = count.entry(lambda.clone()).or_insert(0);
            if *c == 0 {
                first.push(lambda);
            }
            *c += 1;
        }
    }
    first
        .into_iter()
        .map(|l| {
            let c = count[&l];
            (l, c)
        })
        .collect()
}

fn table(rs: &RootSystemData, bundle: &str, max_total: u32, entries: Vec<WeightEntry>) -> WeightTable {
    WeightTable { space: rs.spec().to_string(), bundle: bundle.into(), max_total, entries }
}

/// Tangent-bundle spectrum with multiplicities from the descent formula.
pub fn tangent_spectrum(rs: &RootSystemData, max_total: u32) -> WeightTable {
    let entries = tangent_weights(rs, max_total)
        .into_iter()
        .map(|(lambda, _)| {
            let signature = as_gamma_m(rs, &lambda);
            let multiplicity = signature.as_deref().map_or(1, descents);
            let provisional = reachable_beyond(rs, &lambda, max_total);
            WeightEntry { lambda, signature, multiplicity, provisional }
        })
        .collect();
    table(rs, "tangent", max_total, entries)
}

/// The same table by raw counting of `(m, β)` pairs.
pub fn coincidence_oracle(rs: &RootSystemData, max_total: u32) -> WeightTable {
    let entries = tangent_weights(rs, max_total)
        .into_iter()
        .map(|(lambda, count)| WeightEntry {
            signature: as_gamma_m(rs, &lambda),
            multiplicity: count,
            provisional: reachable_beyond(rs, &lambda, max_total),
            lambda,
        })
        .collect();
    table(rs, "tangent", max_total, entries)
}

/// Spectrum `γ_m + ν` of a line bundle whose fibre has weight `ν`.
pub fn line_bundle_spectrum(rs: &RootSystemData, nu: &[i64], max_total: u32) -> Result<WeightTable> {
    if nu.len() != rs.ambient_dim() {
        return Err(RootError::InvalidWeight(format!(
            "expected {} ambient coordinates, got {}",
            rs.ambient_dim(),
            nu.len()
        )));
    }
    // A character of L vanishes on its semisimple part.
    if let Some(alpha) = rs.compact_roots().into_iter().find(|a| rs.inner(nu, a) != 0) {
        return Err(RootError::InvalidWeight(format!("{nu:?} pairs nontrivially with the compact root {alpha:?}")));
    }
    let mut order: Vec<(Weight, Signature)> = Vec::new();
    let mut count: BTreeMap<Weight, u32> = BTreeMap::new();
    for (m, g) in hks_weights(rs, max_total) {
        let lambda = add(&g, nu);
        let c = count.entry(lambda.clone()).or_insert(0);
        if *c == 0 {
            order.push((lambda, m));
        }
        *c += 1;
    }
    let bundle = if nu.iter().all(|&x| x == 0) { "scalar" } else { "line" };
    let entries = order
        .into_iter()
        .map(|(lambda, m)| WeightEntry { multiplicity: count[&lambda], lambda, signature: Some(m), provisional: false })
        .collect();
    Ok(table(rs, bundle, max_total, entries))
}

/// Entries of two tables that disagree, ignoring provisional ones.
pub fn table_mismatches(a: &WeightTable, b: &WeightTable) -> Vec<String> {
    let mut out = Vec::new();
    for e in a.settled() {
        match b.get(&e.lambda) {
            Some(f) if f.multiplicity == e.multiplicity => {}
            Some(f) => out.push(format!("{:?}: {} vs {}", e.lambda, e.multiplicity, f.multiplicity)),
            None => out.push(format!("{:?}: missing from the second table", e.lambda)),
        }
    }
    for f in b.settled() {
        if a.get(&f.lambda).is_none() {
            out.push(format!("{:?}: missing from the first table", f.lambda));
        }
    }
    out
}
