//! Space grammar (`I:r,s`, `II:k`, `III:k`, `IV:k`, `V`, `VI`) and the
//! classification constants `(n, r, p)`.

use std::fmt;
use std::str::FromStr;

use crate::error::JordanError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::V => "V",
            Family::VI => "VI",
        }
    }

    /// Families with a concrete matrix model.
    pub fn is_classical(self) -> bool {
        !matches!(self, Family::V | Family::VI)
    }
}

/// A validated family and parameter tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    family: Family,
    params: Vec<usize>,
}

/// Dimension, rank and genus of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariants {
    pub dim: usize,
    pub rank: usize,
    pub genus: usize,
}

impl SpaceSpec {
    pub fn new(family: Family, params: &[usize]) -> Result<Self, JordanError> {
        let bad = |why: &str| Err(JordanError::InvalidParams(format!("{}{:?}: {why}", family.name(), params)));
        match (family, params) {
            (Family::I, [r, s]) => {
                if *r == 0 || *s == 0 {
                    return bad("r and s must be positive");
                }
                if r > s {
                    return bad("type I requires r <= s");
                }
            }
            (Family::I, _) => return bad("type I takes two parameters r,s"),
            (Family::II, [k]) if *k < 2 => return bad("type II requires k >= 2"),
            (Family::III, [k]) if *k < 1 => return bad("type III requires k >= 1"),
            (Family::IV, [k]) if *k < 3 => return bad("type IV requires k >= 3"),
            (Family::II | Family::III | Family::IV, [_]) => {}
            (Family::II | Family::III | Family::IV, _) => return bad("expected one parameter k"),
            (Family::V | Family::VI, []) => {}
            (Family::V | Family::VI, _) => return bad("exceptional spaces take no parameters"),
        }
        Ok(SpaceSpec { family, params: params.to_vec() })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    /// `(n, r, p)` from the classification table.
    pub fn invariants(&self) -> Invariants {
        let (dim, rank, genus) = match (self.family, self.params.as_slice()) {
            (Family::I, &[r, s]) => (r * s, r, r + s),
            (Family::II, &[k]) => (k * (k - 1) / 2, k / 2, 2 * k - 2),
            (Family::III, &[k]) => (k * (k + 1) / 2, k, k + 1),
            (Family::IV, &[k]) => (k, 2, k),
            (Family::V, _) => (16, 2, 12),
            (Family::VI, _) => (27, 3, 18),
            _ => unreachable!("validated in SpaceSpec::new"),
        };
        Invariants { dim, rank, genus }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.name())?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", ps.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SpaceSpec {
    type Err = JordanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (fam, rest) = match s.split_once(':') {
            Some((f, r)) => (f, Some(r)),
            None => (s, None),
        };
        let family = match fam {
            "I" => Family::I,
            "II" => Family::II,
            "III" => Family::III,
            "IV" => Family::IV,
            "V" => Family::V,
            "VI" => Family::VI,
            _ => return Err(JordanError::InvalidParams(format!("unknown space family in `{s}`"))),
        };
        let params = match rest {
            None => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| JordanError::InvalidParams(format!("bad parameters in `{s}`")))?,
        };
        SpaceSpec::new(family, &params)
    }
}

/// The spaces whose full Jordan kernels are exercised by default: type I with
/// `r + s <= 6`, `II:2..=5`, `III:1..=4` and `IV:3..=8`.
pub fn classical_catalogue() -> Vec<SpaceSpec> {
    let mut out = Vec::new();
    for r in 1..=3 {
        for s in r..=6 - r {
            out.push(SpaceSpec::new(Family::I, &[r, s]).expect("valid"));
        }
    }
    for k in 2..=5 {
        out.push(SpaceSpec::new(Family::II, &[k]).expect("valid"));
    }
    for k in 1..=4 {
        out.push(SpaceSpec::new(Family::III, &[k]).expect("valid"));
    }
    for k in 3..=8 {
        out.push(SpaceSpec::new(Family::IV, &[k]).expect("valid"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_roundtrip() {
        for s in ["I:2,3", "II:4", "III:3", "IV:5", "V", "VI"] {
            assert_eq!(s.parse::<SpaceSpec>().unwrap().to_string(), s);
        }
        assert!("I:0,3".parse::<SpaceSpec>().is_err());
        assert!("I:3,2".parse::<SpaceSpec>().is_err());
        assert!("VII".parse::<SpaceSpec>().is_err());
        assert!("IV:2".parse::<SpaceSpec>().is_err());
    }

    #[test]
    fn table_values() {
        let inv = |s: &str| s.parse::<SpaceSpec>().unwrap().invariants();
        assert_eq!(inv("I:2,3"), Invariants { dim: 6, rank: 2, genus: 5 });
        assert_eq!(inv("III:3"), Invariants { dim: 6, rank: 3, genus: 4 });
        assert_eq!(inv("IV:5"), Invariants { dim: 5, rank: 2, genus: 5 });
        assert_eq!(inv("VI"), Invariants { dim: 27, rank: 3, genus: 18 });
    }
}
