//! Acceptance suite: one line per criterion, each with its runtime budget.
//!
//! Runs without the libtest harness so the verdict lines are always printed.
//! Numeric arguments select criteria, e.g. `cargo test --test acceptance -- 5 6`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hermsym_cli::roots_suite;
use hermsym_cli::verify::{run_property, Status};
use hermsym_exact::Sampler;
use hermsym_jordan::checks::Property;
use hermsym_jordan::{
    certify_delta, classical_catalogue, closed_form_delta, make_space, Family, SpaceDescriptor, SpaceSpec,
};
use hermsym_nearly_holo::{taylor_roundtrip, Bundle, NHForm};
use hermsym_roots::{
    build_root_system, coincidence_oracle, lambda_m_entries, line_bundle_spectrum, signatures, table_mismatches,
    tangent_spectrum, RootSystemData,
};

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Verdict,
}

const SEED: u64 = 2024;

fn spec(s: &str) -> SpaceSpec {
    s.parse().expect("valid space")
}

fn descriptor(s: &SpaceSpec) -> Arc<SpaceDescriptor> {
    make_space(s).expect("classical space")
}

fn roots(s: &SpaceSpec) -> RootSystemData {
    build_root_system(s).expect("root system")
}

/// Every space of the classification list: the classical catalogue and the two
/// exceptional ones.
fn all_spaces() -> Vec<SpaceSpec> {
    let mut out = classical_catalogue();
    out.push(spec("V"));
    out.push(spec("VI"));
    out
}

/// `(n, r, p)` as tabulated in the classification table.
fn table_row(s: &SpaceSpec) -> (usize, usize, usize) {
    let k = |i: usize| s.params()[i];
    match s.family() {
        Family::I => (k(0) * k(1), k(0).min(k(1)), k(0) + k(1)),
        Family::II => (k(0) * (k(0) - 1) / 2, k(0) / 2, 2 * k(0) - 2),
        Family::III => (k(0) * (k(0) + 1) / 2, k(0), k(0) + 1),
        Family::IV => (k(0), 2, k(0)),
        Family::V => (16, 2, 12),
        Family::VI => (27, 3, 18),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs every property on `samples` draws per space.
fn property_sweep(spaces: &[SpaceSpec], props: &[Property], suite: &str, samples: usize) -> Verdict {
    let mut checks = 0;
    for sp in spaces {
        let s = descriptor(sp);
        for p in props {
            let o = run_property(&s, suite, p, SEED, samples);
            if o.status != Status::Pass {
                return Err(format!("{sp}: {} after {} samples: {}", p.name, o.samples, o.detail.unwrap_or_default()));
            }
            checks += o.samples;
        }
    }
    Ok(format!("{} properties on {} spaces, {checks} samples", props.len(), spaces.len()))
}

fn c1_classification() -> Verdict {
    let mut symbolic = 0;
    let spaces = all_spaces();
    for sp in &spaces {
        let (n, r, p) = table_row(sp);
        let inv = sp.invariants();
        ensure((inv.dim, inv.rank, inv.genus) == (n, r, p), || format!("{sp}: invariants {inv:?}"))?;
        let rs = roots(sp);
        ensure(rs.nc_positive().len() == n && rs.rank() == r, || {
            format!("{sp}: root data gives n = {}, r = {}", rs.nc_positive().len(), rs.rank())
        })?;
        if !sp.family().is_classical() {
            continue;
        }
        let s = descriptor(sp);
        ensure((s.dim(), s.rank(), s.genus(), s.frame().len()) == (n, r, p, r), || {
            format!("{sp}: model gives n = {}, r = {}, p = {}", s.dim(), s.rank(), s.genus())
        })?;
        let cert = certify_delta(&s, SEED, 3).map_err(|e| format!("{sp}: {e}"))?;
        symbolic += cert.symbolic as usize;
        if let Some(delta) = closed_form_delta(&s) {
            ensure(&delta == s.delta_poly(), || format!("{sp}: Δ differs from det(1 − xy)"))?;
        }
    }
    Ok(format!("{} spaces; Det B = Δ^p certified, symbolic root extraction on {symbolic}", spaces.len()))
}

fn c2_jordan() -> Verdict {
    property_sweep(&classical_catalogue(), &hermsym_jordan::checks::properties(), "jordan", 100)
}

fn c3_geometry() -> Verdict {
    property_sweep(&classical_catalogue(), &hermsym_geometry::checks::properties(), "geometry", 50)
}

const CR_PROPERTIES: [&str; 4] =
    ["D̄_l q_k = δ_lk", "D̄ and δ commute", "symbolic and analytic D̄ agree", "D̄^(deg+1) annihilates forms"];

fn cr_spaces() -> Vec<SpaceSpec> {
    ["I:1,1", "I:1,2", "I:1,3", "I:2,2", "I:2,3", "II:4", "III:2", "III:3", "IV:3", "IV:4", "IV:5"]
        .into_iter()
        .map(spec)
        .collect()
}

fn c4_cauchy_riemann() -> Verdict {
    let props: Vec<Property> =
        hermsym_nearly_holo::checks::properties().into_iter().filter(|p| CR_PROPERTIES.contains(&p.name)).collect();
    ensure(props.len() == CR_PROPERTIES.len(), || "property names changed".into())?;
    property_sweep(&cr_spaces(), &props, "nearlyholo", 10)
}

const TAYLOR_SPACES: [&str; 17] = [
    "I:1,1", "I:1,2", "I:1,3", "I:1,4", "I:1,5", "I:2,2", "I:2,3", "I:3,3", "II:2", "II:3", "II:4", "III:1", "III:2",
    "III:3", "IV:3", "IV:4", "IV:5",
];

fn c5_taylor() -> Verdict {
    let mut forms = 0;
    for sp in TAYLOR_SPACES {
        let s = descriptor(&spec(sp));
        let mut rng = Sampler::derived(SEED, &format!("acceptance/taylor/{sp}"));
        for k in 0..25 {
            let bundle = if k % 2 == 0 { Bundle::Scalar } else { Bundle::Tangent };
            let f = NHForm::random(s.clone(), bundle, &mut rng, 3, 3, 3);
            let table = taylor_roundtrip(&f.polarize(), 3, 3, SEED + k).map_err(|e| format!("{sp}, form {k}: {e}"))?;
            ensure(table.reconstruction == f, || format!("{sp}, form {k}: reconstruction differs from the input"))?;
            forms += 1;
        }
    }
    Ok(format!("{forms} forms on {} spaces reconstructed exactly", TAYLOR_SPACES.len()))
}

fn rank_at_most_3() -> Vec<SpaceSpec> {
    classical_catalogue().into_iter().filter(|s| s.invariants().rank <= 3).collect()
}

fn c6_tangent() -> Verdict {
    let spaces = rank_at_most_3();
    let mut entries = 0;
    for sp in &spaces {
        let rs = roots(sp);
        let t = tangent_spectrum(&rs, 4);
        let bad = table_mismatches(&t, &coincidence_oracle(&rs, 4));
        ensure(bad.is_empty(), || format!("{sp}: {}", bad.join("; ")))?;
        entries += t.settled().count();
        match rs.rank() {
            1 => ensure(t.entries.iter().all(|e| e.multiplicity == 1), || format!("{sp}: rank 1 with multiplicity"))?,
            2 => {
                let e = t.entries.iter().find(|e| e.signature.as_deref() == Some(&[2, 1]));
                ensure(e.is_some_and(|e| e.multiplicity == 2 && !e.provisional), || {
                    format!("{sp}: γ_(2,1) entry {e:?}")
                })?
            }
            _ => {}
        }
    }
    Ok(format!("{} spaces, {entries} settled entries equal the oracle", spaces.len()))
}

fn chain_condition_differs(rs: &RootSystemData, max_total: u32) -> Option<Vec<u32>> {
    signatures(rs.rank(), max_total).into_iter().find(|m| {
        lambda_m_entries(rs, m, true).expect("valid signature")
            != lambda_m_entries(rs, m, false).expect("valid signature")
    })
}

fn c7_simply_laced() -> Verdict {
    let (mut laced, mut witness) = (0, None);
    for sp in all_spaces() {
        let rs = roots(&sp);
        let diff = chain_condition_differs(&rs, 3);
        if rs.is_simply_laced() {
            ensure(diff.is_none(), || format!("{sp} ({}): Λ_m differs at m = {diff:?}", rs.cartan_type()))?;
            laced += 1;
        } else if witness.is_none() {
            witness = diff.map(|m| format!("{sp} ({}) at m = {m:?}", rs.cartan_type()));
        }
    }
    let witness = witness.ok_or("the chain condition never matters on III or odd IV")?;
    Ok(format!("coincide on {laced} simply-laced systems; differ on {witness}"))
}

fn c8_highest_weight() -> Verdict {
    let spaces = rank_at_most_3();
    let mut checks = 0;
    for sp in &spaces {
        for o in roots_suite(sp, SEED, 3).map_err(|e| e.to_string())? {
            let hwv = ["sl₂", "p_m", "raising"].iter().any(|k| o.property.contains(k));
            if !hwv {
                continue;
            }
            match o.status {
                Status::Fail => return Err(format!("{sp}: {}: {}", o.property, o.detail.unwrap_or_default())),
                Status::Skip if sp.family() == Family::I || !o.property.contains("raising") => {
                    return Err(format!("{sp}: {} skipped", o.property))
                }
                _ => checks += o.samples,
            }
        }
    }
    Ok(format!("{} spaces, {checks} checks", spaces.len()))
}

fn c9_multiplicity_bound() -> Verdict {
    let mut tables = 0;
    for sp in all_spaces() {
        let rs = roots(&sp);
        let n = sp.invariants().dim as u32;
        let t = tangent_spectrum(&rs, 4);
        ensure(t.entries.iter().all(|e| e.multiplicity <= n), || format!("{sp}: tangent multiplicity above {n}"))?;
        // Σ Φ_nc⁺ is L-invariant, so it and its negative are characters.
        let sum: Vec<i64> = (0..rs.ambient_dim()).map(|i| rs.nc_positive().iter().map(|b| b[i]).sum()).collect();
        let neg: Vec<i64> = sum.iter().map(|x| -x).collect();
        for nu in [vec![0; rs.ambient_dim()], sum, neg] {
            let line = line_bundle_spectrum(&rs, &nu, 4).map_err(|e| format!("{sp}: {e}"))?;
            ensure(line.entries.iter().all(|e| e.multiplicity == 1), || format!("{sp}: line bundle ν = {nu:?}"))?;
            tables += 1;
        }
        tables += 1;
    }
    Ok(format!("{tables} tables"))
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "classification table", budget: Some(s(60)), run: c1_classification },
        Criterion { id: 2, title: "Jordan identity suite", budget: Some(s(120)), run: c2_jordan },
        Criterion { id: 3, title: "geometry suite", budget: Some(s(120)), run: c3_geometry },
        Criterion { id: 4, title: "Cauchy-Riemann calculus", budget: Some(s(120)), run: c4_cauchy_riemann },
        Criterion { id: 5, title: "generalized Taylor roundtrip", budget: Some(s(180)), run: c5_taylor },
        Criterion { id: 6, title: "tangent bundle decomposition", budget: Some(s(60)), run: c6_tangent },
        Criterion { id: 7, title: "simply-laced chain condition", budget: None, run: c7_simply_laced },
        Criterion { id: 8, title: "highest weight vectors", budget: Some(s(120)), run: c8_highest_weight },
        Criterion { id: 9, title: "multiplicity bound", budget: None, run: c9_multiplicity_bound },
    ]
}

fn main() -> ExitCode {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria() {
        if !selected.is_empty() && !selected.contains(&c.id) {
            continue;
        }
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let over = c.budget.is_some_and(|b| elapsed > b);
        let pass = verdict.is_ok() && !over;
        failed += !pass as usize;
        let budget = c.budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        let detail = match (&verdict, over) {
            (Ok(d), false) => d.clone(),
            (Ok(d), true) => format!("over budget; {d}"),
            (Err(e), _) => e.clone(),
        };
        println!(
            "criterion {}  {}  {}  [{:.1}s{budget}]  {detail}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
