//! `taylor`: generalized Taylor coefficients of a section file.

use std::fmt::Write as _;
use std::path::Path;

use hermsym_nearly_holo::{check_roundtrip, taylor_coefficients, Bundle, NhError, SectionFile, TaylorEntry};
use serde::Serialize;

use crate::{csv_with_header, descriptor, join, json_with_header, parse_spec, CliError, Format, Report, RunConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorReport {
    pub space: String,
    pub bundle: Bundle,
    pub max_i: u32,
    pub max_j: u32,
    pub entries: Vec<TaylorEntry>,
    pub roundtrip: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

pub fn read_section(path: &Path) -> Result<SectionFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Coefficients up to `max_i = max_j = order`, checked at `samples` points.
pub fn taylor_report(file: &SectionFile, cfg: &RunConfig) -> Result<TaylorReport, CliError> {
    let spec = parse_spec(&file.space)?;
    if let Some(given) = &cfg.space {
        if parse_spec(given)? != spec {
            return Err(CliError::Config(format!("section file is for {spec}, not {given}")));
        }
    }
    let s = descriptor(&spec)?;
    let form = file.to_form(s).map_err(|e| CliError::Config(e.to_string()))?;
    let f = form.polarize();
    let table = taylor_coefficients(&f, cfg.order, cfg.order).map_err(|e| CliError::Failure(e.to_string()))?;
    let mismatch = match check_roundtrip(&f, &table, cfg.seed, cfg.samples) {
        Ok(()) => None,
        Err(NhError::ReconstructionMismatch(m)) => Some(m),
        Err(e) => return Err(CliError::Failure(e.to_string())),
    };
    Ok(TaylorReport {
        space: spec.to_string(),
        bundle: form.bundle(),
        max_i: table.max_i,
        max_j: table.max_j,
        entries: table.entries,
        roundtrip: if mismatch.is_none() { "pass" } else { "fail" }.into(),
        mismatch,
    })
}

pub fn cmd_taylor(path: &Path, cfg: &RunConfig) -> Result<Report, CliError> {
    let file = read_section(path)?;
    let t = taylor_report(&file, cfg)?;
    let header = cfg.header("taylor", &t.space);
    let body = match cfg.format_or(Format::Json) {
        Format::Json => json_with_header(&header, &t),
        Format::Csv => {
            let mut s = csv_with_header(
                &header,
                &["i", "j", "value"],
                t.entries.iter().map(|e| vec![join(&e.i, " "), join(&e.j, " "), join(&e.value, " ")]).collect(),
            );
            let _ = writeln!(s, "# roundtrip: {}", t.roundtrip);
            s
        }
        Format::Text => {
            let mut out = header.comment_block();
            let _ = writeln!(out, "{} bundle, max_i = {}, max_j = {}", t.bundle.name(), t.max_i, t.max_j);
            for e in &t.entries {
                let _ = writeln!(out, "c[({}), ({})] = {}", join(&e.i, ","), join(&e.j, ","), join(&e.value, ", "));
            }
            let _ = writeln!(out, "roundtrip: {}", t.roundtrip);
            out
        }
    };
    if let Some(m) = &t.mismatch {
        eprintln!("reconstruction mismatch: {m}");
    }
    Ok(Report { body, exit: if t.mismatch.is_none() { 0 } else { 1 } })
}
