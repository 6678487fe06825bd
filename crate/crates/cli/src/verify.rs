//! `verify`: seeded invariant suites.

use std::fmt::Write as _;

use hermsym_exact::{Sampler, Q};
use hermsym_jordan::checks::{CheckResult, Property};
use hermsym_jordan::{SpaceDescriptor, SpaceSpec};
use hermsym_nearly_holo::checks::diagonal_point;
use hermsym_nearly_holo::{delta_op, hwv_section};
use hermsym_roots::{
    build_root_system, coincidence_oracle, lambda_m_entries, line_bundle_spectrum, raising_annihilates, signatures,
    sl2_relations, table_mismatches, tangent_spectrum, torus_weight_check, RootSystemData,
};
use num_traits::Zero;
use serde::Serialize;

use crate::{csv_with_header, descriptor, json_with_header, CliError, Format, Report, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Jordan,
    Geometry,
    Nearlyholo,
    Lie,
    Roots,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Jordan => "jordan",
            Suite::Geometry => "geometry",
            Suite::Nearlyholo => "nearlyholo",
            Suite::Lie => "lie",
            Suite::Roots => "roots",
            Suite::All => "all",
        }
    }

    fn properties(self) -> Vec<Property> {
        match self {
            Suite::Jordan => hermsym_jordan::checks::properties(),
            Suite::Geometry => hermsym_geometry::checks::properties(),
            Suite::Nearlyholo => hermsym_nearly_holo::checks::properties(),
            Suite::Lie => hermsym_nearly_holo::checks::lie_properties(),
            Suite::Roots | Suite::All => Vec::new(),
        }
    }
}

const SAMPLED: [Suite; 4] = [Suite::Jordan, Suite::Geometry, Suite::Nearlyholo, Suite::Lie];

/// Result of one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub suite: String,
    pub property: String,
    pub samples: usize,
    pub status: Status,
    /// First counterexample, or why the property was skipped.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

impl Outcome {
    fn new(suite: &str, property: &str, samples: usize, result: CheckResult) -> Self {
        let (status, detail) = match result {
            Ok(()) => (Status::Pass, None),
            Err(e) => (Status::Fail, Some(e)),
        };
        Outcome { suite: suite.into(), property: property.into(), samples, status, detail }
    }

    fn skipped(suite: &str, property: &str, why: &str) -> Self {
        Outcome {
            suite: suite.into(),
            property: property.into(),
            samples: 0,
            status: Status::Skip,
            detail: Some(why.into()),
        }
    }
}

/// Runs a property on `samples` seeded draws, stopping at the first failure.
pub fn run_property(s: &SpaceDescriptor, suite: &str, p: &Property, seed: u64, samples: usize) -> Outcome {
    let mut rng = Sampler::derived(seed, &format!("{suite}/{}", p.name));
    for k in 0..samples {
        if let Err(e) = (p.check)(s, &mut rng) {
            return Outcome::new(suite, p.name, k + 1, Err(e));
        }
    }
    Outcome::new(suite, p.name, samples, Ok(()))
}

fn all_ok<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> CheckResult) -> (usize, CheckResult) {
    let mut count = 0;
    for it in items {
        count += 1;
        if let Err(e) = f(it) {
            return (count, Err(e));
        }
    }
    (count, Ok(()))
}

/// Root-level and highest-weight checks. Only the δ-closedness check samples,
/// drawing its points from `seed`.
pub fn roots_suite(spec: &SpaceSpec, seed: u64, max_total: u32) -> Result<Vec<Outcome>, CliError> {
    const S: &str = "roots";
    let rs = build_root_system(spec).map_err(|e| CliError::Config(e.to_string()))?;
    let inv = spec.invariants();
    let mut out = Vec::new();
    let mut push =
        |name: &str, (samples, result): (usize, CheckResult)| out.push(Outcome::new(S, name, samples, result));

    push("|Φ_nc⁺| = n and rank = r", (1, check_counts(&rs, inv.dim, inv.rank)));
    push(
        "noncompact roots have α₁-coefficient 1",
        all_ok(rs.nc_positive(), |b| match rs.root_coords(b) {
            Some(c) if c[0] == 1 => Ok(()),
            _ => Err(format!("β = {b:?}")),
        }),
    );
    push(
        "γ₁, …, γ_r strongly orthogonal",
        (
            rs.gammas().len(),
            if rs.pairwise_strongly_orthogonal(rs.gammas()) { Ok(()) } else { Err(format!("{:?}", rs.gammas())) },
        ),
    );

    let tangent = tangent_spectrum(&rs, max_total);
    let oracle = coincidence_oracle(&rs, max_total);
    let bad = table_mismatches(&tangent, &oracle);
    push(
        "tangent formula = coincidence oracle",
        (tangent.entries.len(), if bad.is_empty() { Ok(()) } else { Err(bad.join("; ")) }),
    );
    push(
        "tangent multiplicity ≤ n",
        all_ok(&tangent.entries, |e| {
            if e.multiplicity as usize <= inv.dim {
                Ok(())
            } else {
                Err(format!("λ = {:?} has multiplicity {}", e.lambda, e.multiplicity))
            }
        }),
    );
    let scalar = line_bundle_spectrum(&rs, &vec![0; rs.ambient_dim()], max_total)
        .map_err(|e| CliError::Config(e.to_string()))?;
    push(
        "scalar spectrum multiplicity free",
        all_ok(&scalar.entries, |e| {
            if e.multiplicity == 1 {
                Ok(())
            } else {
                Err(format!("λ = {:?} has multiplicity {}", e.lambda, e.multiplicity))
            }
        }),
    );
    push(
        "spectra dominant integral",
        all_ok(tangent.entries.iter().chain(&scalar.entries), |e| {
            if rs.is_dominant_integral(&e.lambda) {
                Ok(())
            } else {
                Err(format!("λ = {:?}", e.lambda))
            }
        }),
    );
    let sigs = signatures(rs.rank(), max_total);
    if rs.is_simply_laced() {
        push(
            "chain condition vacuous on a simply-laced system",
            all_ok(&sigs, |m| {
                let with = lambda_m_entries(&rs, m, true).map_err(|e| e.to_string())?;
                let without = lambda_m_entries(&rs, m, false).map_err(|e| e.to_string())?;
                if with == without {
                    Ok(())
                } else {
                    Err(format!("Λ_m differs at m = {m:?}"))
                }
            }),
        );
    } else {
        out.push(Outcome::skipped(S, "chain condition vacuous on a simply-laced system", "not simply laced"));
    }

    let hwv_names = [
        "sl₂ bridge relations",
        "p_m has torus eigenvalues 2m",
        "compact raising operators annihilate p_m",
        "p_m(q(z)) is δ-closed",
    ];
    if !spec.family().is_classical() {
        for name in hwv_names {
            out.push(Outcome::skipped(S, name, "no matrix model"));
        }
        return Ok(out);
    }
    let s = descriptor(spec)?;
    let mut push =
        |name: &str, (samples, result): (usize, CheckResult)| out.push(Outcome::new(S, name, samples, result));
    push(hwv_names[0], (s.rank(), sl2_relations(&s).map_err(|e| e.to_string())));
    push(
        hwv_names[1],
        all_ok(&sigs, |m| {
            let eig = torus_weight_check(&s, m).map_err(|e| e.to_string())?;
            let want: Vec<i64> = m.iter().map(|&k| 2 * k as i64).collect();
            if eig == want {
                Ok(())
            } else {
                Err(format!("m = {m:?}: eigenvalues {eig:?}"))
            }
        }),
    );
    if spec.family() == hermsym_jordan::Family::I {
        push(
            hwv_names[2],
            all_ok(&sigs, |m| match raising_annihilates(&s, m) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("m = {m:?}")),
                Err(e) => Err(e.to_string()),
            }),
        );
    } else {
        out.push(Outcome::skipped(S, hwv_names[2], "implemented for family I"));
    }
    let mut rng = Sampler::derived(seed, "roots/δ-closed");
    let mut push =
        |name: &str, (samples, result): (usize, CheckResult)| out.push(Outcome::new(S, name, samples, result));
    push(
        hwv_names[3],
        all_ok(&sigs, |m| {
            let f = hwv_section(s.clone(), m).map_err(|e| e.to_string())?.polarize();
            let z = diagonal_point(&s, &mut rng);
            for l in 0..s.dim() {
                let v = delta_op(&f, l).eval(&z).map_err(|e| e.to_string())?;
                if !v.iter().all(Q::is_zero) {
                    return Err(format!("δ_{l} p_{m:?}(q(z)) = {v:?} at z = {z:?}"));
                }
            }
            Ok(())
        }),
    );
    Ok(out)
}

fn check_counts(rs: &RootSystemData, n: usize, r: usize) -> CheckResult {
    if rs.nc_positive().len() == n && rs.rank() == r {
        Ok(())
    } else {
        Err(format!("|Φ_nc⁺| = {}, rank = {}; expected {n}, {r}", rs.nc_positive().len(), rs.rank()))
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<Outcome>, CliError> {
    let spec = cfg.spec()?;
    let mut out = Vec::new();
    let sampled: Vec<Suite> = match suite {
        Suite::All => SAMPLED.to_vec(),
        Suite::Roots => Vec::new(),
        other => vec![other],
    };
    if spec.family().is_classical() {
        let s = descriptor(&spec)?;
        for su in sampled {
            for p in su.properties() {
                out.push(run_property(&s, su.name(), &p, cfg.seed, cfg.samples));
            }
        }
    } else if suite == Suite::All {
        for su in sampled {
            out.push(Outcome::skipped(su.name(), "*", "no matrix model"));
        }
    } else if suite != Suite::Roots {
        return Err(CliError::Config(format!("{spec} is available at root level only; use the roots suite")));
    }
    if matches!(suite, Suite::Roots | Suite::All) {
        out.extend(roots_suite(&spec, cfg.seed, cfg.max_total)?);
    }
    Ok(out)
}

pub fn cmd_verify(suite: Suite, cfg: &RunConfig) -> Result<Report, CliError> {
    let spec = cfg.spec()?;
    let results = run_suite(suite, cfg)?;
    let failed = results.iter().filter(|o| o.status == Status::Fail).count();
    let passed = results.iter().filter(|o| o.status == Status::Pass).count();
    let header = cfg.header(&format!("verify {}", suite.name()), &spec.to_string());
    let body = match cfg.format_or(Format::Text) {
        Format::Json => {
            #[derive(Serialize)]
            struct Payload<'a> {
                suite: &'a str,
                passed: usize,
                failed: usize,
                results: &'a [Outcome],
            }
            json_with_header(&header, &Payload { suite: suite.name(), passed, failed, results: &results })
        }
        Format::Csv => csv_with_header(
            &header,
            &["suite", "property", "samples", "status", "detail"],
            results
                .iter()
                .map(|o| {
                    vec![
                        o.suite.clone(),
                        o.property.clone(),
                        o.samples.to_string(),
                        o.status.label().to_lowercase(),
                        o.detail.clone().unwrap_or_default(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut out = header.comment_block();
            for o in &results {
                let _ = write!(out, "{}  {}/{}  ({} samples)", o.status.label(), o.suite, o.property, o.samples);
                match (&o.status, &o.detail) {
                    (Status::Fail, Some(d)) => {
                        let _ = write!(out, "\n      first counterexample: {d}");
                    }
                    (Status::Skip, Some(d)) => {
                        let _ = write!(out, "  {d}");
                    }
                    _ => {}
                }
                out.push('\n');
            }
            let _ = writeln!(out, "{passed} passed, {failed} failed");
            out
        }
    };
    Ok(Report { body, exit: if failed == 0 { 0 } else { 1 } })
}
