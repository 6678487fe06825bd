//! `describe`: invariants and model data of a space.

use std::fmt::Write as _;

use hermsym_roots::build_root_system;
use serde::Serialize;

use crate::{csv_with_header, descriptor, join, json_with_header, CliError, Format, Report, RunConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Description {
    pub family: String,
    pub params: Vec<usize>,
    pub n: usize,
    pub r: usize,
    pub p: usize,
    pub frame_size: usize,
    /// Terms of `Δ(x, y)`; absent without a matrix model.
    pub delta_terms: Option<usize>,
    pub root_system: String,
    pub root_level_only: bool,
}

pub fn describe_space(cfg: &RunConfig) -> Result<Description, CliError> {
    let spec = cfg.spec()?;
    let inv = spec.invariants();
    let rs = build_root_system(&spec).map_err(|e| CliError::Config(e.to_string()))?;
    let (frame_size, delta_terms) = if spec.family().is_classical() {
        let s = descriptor(&spec)?;
        (s.frame().len(), Some(s.delta_poly().num_terms()))
    } else {
        (rs.gammas().len(), None)
    };
    Ok(Description {
        family: spec.family().name().to_string(),
        params: spec.params().to_vec(),
        n: inv.dim,
        r: inv.rank,
        p: inv.genus,
        frame_size,
        delta_terms,
        root_system: rs.cartan_type().to_string(),
        root_level_only: !spec.family().is_classical(),
    })
}

pub fn cmd_describe(cfg: &RunConfig) -> Result<Report, CliError> {
    let d = describe_space(cfg)?;
    let spec = cfg.spec()?;
    let header = cfg.header("describe", &spec.to_string());
    let delta = d.delta_terms.map_or("n/a".to_string(), |t| t.to_string());
    let body = match cfg.format_or(Format::Text) {
        Format::Json => json_with_header(&header, &d),
        Format::Csv => {
            let rows = [
                ("family", d.family.clone()),
                ("params", join(&d.params, " ")),
                ("n", d.n.to_string()),
                ("r", d.r.to_string()),
                ("p", d.p.to_string()),
                ("frame_size", d.frame_size.to_string()),
                ("delta_terms", delta),
                ("root_system", d.root_system.clone()),
                ("root_level_only", d.root_level_only.to_string()),
            ];
            csv_with_header(&header, &["key", "value"], rows.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect())
        }
        Format::Text => {
            let mut out = header.comment_block();
            let _ = writeln!(out, "family: {}", d.family);
            let _ = writeln!(out, "params: {}", if d.params.is_empty() { "-".into() } else { join(&d.params, ",") });
            let _ = writeln!(out, "n = {}, r = {}, p = {}", d.n, d.r, d.p);
            let _ = writeln!(out, "frame size: {}", d.frame_size);
            let _ = writeln!(out, "Δ terms: {delta}");
            let _ = writeln!(out, "root system: {}", d.root_system);
            if d.root_level_only {
                let _ = writeln!(out, "note: no matrix model; root-level data only");
            }
            out
        }
    };
    Ok(Report::ok(body))
}
