//! `decompose`: K-type tables of the scalar, line and tangent bundles.

use std::fmt::Write as _;

use hermsym_roots::{build_root_system, line_bundle_spectrum, tangent_spectrum, WeightTable};

use crate::{csv_with_header, join, json_with_header, parse_list, CliError, Format, Report, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BundleKind {
    Scalar,
    Line,
    Tangent,
}

/// The table for `bundle`; `nu` is read only for line bundles.
pub fn weight_table(bundle: BundleKind, cfg: &RunConfig, nu: Option<&str>) -> Result<WeightTable, CliError> {
    let spec = cfg.spec()?;
    let rs = build_root_system(&spec).map_err(|e| CliError::Config(e.to_string()))?;
    let nu: Vec<i64> = match (bundle, nu) {
        (BundleKind::Line, Some(s)) => parse_list("weight", s)?,
        (BundleKind::Line, None) => return Err(CliError::Config("a line bundle needs --nu".into())),
        _ => vec![0; rs.ambient_dim()],
    };
    match bundle {
        BundleKind::Tangent => Ok(tangent_spectrum(&rs, cfg.max_total)),
        _ => line_bundle_spectrum(&rs, &nu, cfg.max_total).map_err(|e| CliError::Config(e.to_string())),
    }
}

pub fn render_table(t: &WeightTable, cfg: &RunConfig, command: &str) -> String {
    let header = cfg.header(command, &t.space);
    let sig = |e: &hermsym_roots::WeightEntry| e.signature.as_ref().map_or(String::new(), |m| join(m, " "));
    match cfg.format_or(Format::Json) {
        Format::Json => json_with_header(&header, t),
        Format::Csv => csv_with_header(
            &header,
            &["lambda", "signature", "multiplicity", "provisional"],
            t.entries
                .iter()
                .map(|e| vec![join(&e.lambda, " "), sig(e), e.multiplicity.to_string(), e.provisional.to_string()])
                .collect(),
        ),
        Format::Text => {
            let mut out = header.comment_block();
            let _ = writeln!(out, "{} bundle, |m| ≤ {}", t.bundle, t.max_total);
            for e in &t.entries {
                let m = e.signature.as_ref().map_or("-".to_string(), |m| format!("γ_({})", join(m, ",")));
                let flag = if e.provisional { "  (provisional)" } else { "" };
                let _ = writeln!(out, "λ = ({})  {m}  multiplicity {}{flag}", join(&e.lambda, ", "), e.multiplicity);
            }
            out
        }
    }
}

pub fn cmd_decompose(bundle: BundleKind, cfg: &RunConfig, nu: Option<&str>) -> Result<Report, CliError> {
    let t = weight_table(bundle, cfg, nu)?;
    Ok(Report::ok(render_table(&t, cfg, &format!("decompose {}", t.bundle))))
}
