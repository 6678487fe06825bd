//! `hwv`: the highest weight polynomial `p_m` and the section `p_m(q(z))`.

use std::fmt::Write as _;

use hermsym_exact::{MultiPoly, Q};
use hermsym_nearly_holo::{hwv_section, CoeffValue, SectionFile};
use hermsym_roots::hwv_polynomial;
use serde::Serialize;

use crate::{csv_with_header, descriptor, join, json_with_header, parse_list, CliError, Format, Report, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyTerm {
    pub exponents: Vec<u16>,
    pub coeff: Q,
}

/// A polynomial on `n⁻` as a list of terms in graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyJson {
    pub variables: usize,
    pub terms: Vec<PolyTerm>,
}

impl PolyJson {
    pub fn new(p: &MultiPoly<Q>, n: usize) -> Self {
        let terms = p.terms().map(|(m, c)| PolyTerm { exponents: m.padded(n), coeff: c.clone() }).collect();
        PolyJson { variables: n, terms }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HwvReport {
    pub space: String,
    pub signature: Vec<u32>,
    pub polynomial: PolyJson,
    pub section: SectionFile,
}

pub fn hwv_report(cfg: &RunConfig, signature: &str) -> Result<HwvReport, CliError> {
    let spec = cfg.spec()?;
    let s = descriptor(&spec)?;
    let m: Vec<u32> = parse_list("signature", signature)?;
    let p = hwv_polynomial(&s, &m).map_err(|e| CliError::Config(e.to_string()))?;
    let f = hwv_section(s.clone(), &m).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(HwvReport {
        space: spec.to_string(),
        signature: m,
        polynomial: PolyJson::new(&p, s.dim()),
        section: SectionFile::from_form(&f),
    })
}

pub fn cmd_hwv(cfg: &RunConfig, signature: &str) -> Result<Report, CliError> {
    let h = hwv_report(cfg, signature)?;
    let header = cfg.header("hwv", &h.space);
    let body = match cfg.format_or(Format::Json) {
        Format::Json => json_with_header(&header, &h),
        Format::Csv => csv_with_header(
            &header,
            &["exponents", "coeff"],
            h.polynomial.terms.iter().map(|t| vec![join(&t.exponents, " "), t.coeff.to_string()]).collect(),
        ),
        Format::Text => {
            let mut out = header.comment_block();
            let _ = writeln!(out, "p_({}) on n⁻, {} variables:", join(&h.signature, ","), h.polynomial.variables);
            for t in &h.polynomial.terms {
                let _ = writeln!(out, "  {} · w^({})", t.coeff, join(&t.exponents, ","));
            }
            let _ = writeln!(out, "p_m(q(z)) in q-coordinates:");
            for t in &h.section.terms {
                let c = t
                    .coeff
                    .iter()
                    .map(|c| match &c.value {
                        CoeffValue::Scalar(v) => v.to_string(),
                        CoeffValue::Vector(v) => format!("({})", join(v, ", ")),
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
                let _ = writeln!(out, "  q^({})  {c}", join(&t.q_index, ","));
            }
            out
        }
    };
    Ok(Report::ok(body))
}
