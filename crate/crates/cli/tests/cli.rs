use std::path::PathBuf;
use std::process::{Command, Output};

use hermsym_cli::verify::{run_property, Status};
use hermsym_cli::{cmd_decompose, BundleKind, RunConfig};
use hermsym_exact::Sampler;
use hermsym_jordan::checks::{CheckResult, Property};
use hermsym_jordan::{space, SpaceDescriptor};
use hermsym_nearly_holo::{hwv_section, SectionFile};
use serde_json::Value;

fn hermsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hermsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn section(space: &str, q: &[u32], x: &[u32], value: &str) -> String {
    format!(
        r#"{{"space":"{space}","bundle":"scalar","terms":[{{"q_index":{q:?},"coeff":[{{"x_exponents":{x:?},"value":"{value}"}}]}}]}}"#
    )
}

// ---- describe ----

#[test]
fn describe_classical() {
    let o = hermsym(&["describe", "I:2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("n = 6, r = 2, p = 5"), "{out}");
    assert!(out.contains("frame size: 2"));
}

#[test]
fn describe_exceptional_is_root_level() {
    let o = hermsym(&["describe", "--space", "VI", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["n"].as_u64(), v["r"].as_u64(), v["p"].as_u64()), (Some(27), Some(3), Some(18)));
    assert_eq!(v["root_level_only"], Value::Bool(true));
    assert_eq!(v["delta_terms"], Value::Null);
    let text = stdout(&hermsym(&["describe", "V"]));
    assert!(text.contains("n = 16, r = 2, p = 12") && text.contains("root-level"), "{text}");
}

#[test]
fn describe_invalid_space() {
    let o = hermsym(&["describe", "I:0,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid parameters"));
    assert_eq!(hermsym(&["describe", "VII"]).status.code(), Some(2));
    assert_eq!(hermsym(&["describe"]).status.code(), Some(2));
}

// ---- verify ----

#[test]
fn verify_jordan_passes() {
    let o = hermsym(&["verify", "jordan", "--space", "I:2,2", "--samples", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS  jordan/quasi-inverse definition  (100 samples)"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_roots_matches_oracle() {
    let o = hermsym(&["verify", "roots", "--space", "I:2,2", "--max-total", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["failed"], 0);
    let results = v["results"].as_array().unwrap();
    let oracle = results.iter().find(|r| r["property"] == "tangent formula = coincidence oracle").unwrap();
    assert_eq!(oracle["status"], "pass");
}

#[test]
fn verify_all_on_iv3() {
    let o = hermsym(&["verify", "all", "--space", "IV:3", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for suite in ["jordan/", "geometry/", "nearlyholo/", "lie/", "roots/"] {
        assert!(out.contains(suite), "{suite} missing");
    }
}

#[test]
fn verify_config_errors() {
    assert_eq!(hermsym(&["verify", "jordan", "--space", "V"]).status.code(), Some(2));
    assert_eq!(hermsym(&["verify", "bogus", "--space", "I:1,1"]).status.code(), Some(2));
    assert_eq!(hermsym(&["verify", "jordan", "--space", "I:1,1", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(hermsym(&["verify", "jordan"]).status.code(), Some(2));
    // Exceptional spaces still run the root-level suite.
    assert_eq!(hermsym(&["verify", "roots", "--space", "V", "--max-total", "3"]).status.code(), Some(0));
}

fn always_fails(_: &SpaceDescriptor, rng: &mut Sampler) -> CheckResult {
    Err(format!("counterexample {}", rng.range(0, 0)))
}

fn passes(_: &SpaceDescriptor, _: &mut Sampler) -> CheckResult {
    Ok(())
}

#[test]
fn property_outcomes() {
    let s = space("I:1,1").unwrap();
    let bad = run_property(&s, "t", &Property { name: "bad", check: always_fails }, 0, 10);
    assert_eq!((bad.status, bad.samples), (Status::Fail, 1));
    assert_eq!(bad.detail.as_deref(), Some("counterexample 0"));
    let good = run_property(&s, "t", &Property { name: "good", check: passes }, 0, 10);
    assert_eq!((good.status, good.samples, good.detail), (Status::Pass, 10, None));
}

// ---- decompose ----

#[test]
fn tangent_table_has_double_gamma_21() {
    let o = hermsym(&["decompose", "tangent", "--space", "I:2,2", "--max-total", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["bundle"], "tangent");
    assert_eq!(v["max_total"], 3);
    let e = v["entries"].as_array().unwrap().iter().find(|e| e["signature"] == serde_json::json!([2, 1])).unwrap();
    assert_eq!(e["multiplicity"], 2);
}

#[test]
fn scalar_tables_rank_two() {
    for sp in ["I:2,2", "I:2,4", "II:4", "III:2", "IV:5", "V"] {
        let o = hermsym(&["decompose", "scalar", "--space", sp, "--max-total", "2"]);
        assert_eq!(o.status.code(), Some(0), "{sp}");
        let entries = json(&o)["entries"].as_array().unwrap().clone();
        assert_eq!(entries.len(), 4, "{sp}");
        assert!(entries.iter().all(|e| e["multiplicity"] == 1), "{sp}");
    }
}

#[test]
fn line_with_zero_weight_is_scalar() {
    let cfg = RunConfig { space: Some("III:3".into()), max_total: 3, ..RunConfig::default() };
    let scalar = cmd_decompose(BundleKind::Scalar, &cfg, None).unwrap();
    let line = cmd_decompose(BundleKind::Line, &cfg, Some("0,0,0")).unwrap();
    assert_eq!(line.body.replace("decompose scalar", ""), scalar.body.replace("decompose scalar", ""));
}

#[test]
fn invalid_weights() {
    for nu in ["1", "1,0,0,0", "a,b,c,d"] {
        let o = hermsym(&["decompose", "line", "--space", "I:2,2", "--nu", nu]);
        assert_eq!(o.status.code(), Some(2), "ν = {nu}");
    }
    assert_eq!(hermsym(&["decompose", "line", "--space", "I:2,2"]).status.code(), Some(2));
    assert_eq!(hermsym(&["decompose", "line", "--space", "I:2,2", "--nu", "-1,-1,0,0"]).status.code(), Some(0));
}

#[test]
fn csv_table_mirrors_json() {
    let args = ["decompose", "tangent", "--space", "II:4", "--max-total", "3"];
    let v = json(&hermsym(&args));
    let csv_out = stdout(&hermsym(&[&args[..], &["--format", "csv"]].concat()));
    let body: String = csv_out.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["lambda", "signature", "multiplicity", "provisional"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(rows.len(), entries.len());
    for (row, e) in rows.iter().zip(entries) {
        let lambda: Vec<i64> = row[0].split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(serde_json::json!(lambda), e["lambda"]);
        assert_eq!(row[2], e["multiplicity"].to_string());
    }
}

// ---- taylor ----

#[test]
fn taylor_constant_section() {
    let path = scratch("const.json", &section("I:2,2", &[0; 4], &[0; 4], "3/2"));
    let o = hermsym(&["taylor", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["i"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(entries[0]["j"], serde_json::json!([0, 0, 0, 0]));
    assert_eq!(entries[0]["value"], serde_json::json!(["3/2"]));
    assert_eq!(v["roundtrip"], "pass");
}

#[test]
fn taylor_q_coordinate() {
    let path = scratch("q1.json", &section("I:1,1", &[1], &[0], "1"));
    let v = json(&hermsym(&["taylor", path.to_str().unwrap(), "--order", "3"]));
    assert_eq!(v["entries"], serde_json::json!([{ "i": [1], "j": [0], "value": ["1"] }]));
}

#[test]
fn taylor_degree_above_order_fails() {
    let path = scratch("xq.json", &section("I:1,1", &[1], &[1], "1"));
    let o = hermsym(&["taylor", path.to_str().unwrap(), "--order", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reconstruction mismatch"));
    assert_eq!(json(&o)["roundtrip"], "fail");
    let ok = hermsym(&["taylor", path.to_str().unwrap(), "--order", "1"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn taylor_input_errors() {
    assert_eq!(hermsym(&["taylor", "/nonexistent/section.json"]).status.code(), Some(2));
    let garbage = scratch("garbage.json", "{ not json");
    assert_eq!(hermsym(&["taylor", garbage.to_str().unwrap()]).status.code(), Some(2));
    let path = scratch("q1b.json", &section("I:1,1", &[1], &[0], "1"));
    assert_eq!(hermsym(&["taylor", path.to_str().unwrap(), "--space", "I:1,2"]).status.code(), Some(2));
    let short = scratch("short.json", &section("I:2,2", &[1], &[0], "1"));
    assert_eq!(hermsym(&["taylor", short.to_str().unwrap()]).status.code(), Some(2));
}

// ---- hwv ----

#[test]
fn hwv_rank_one() {
    let o = hermsym(&["hwv", "--space", "I:1,1", "--signature", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["polynomial"], serde_json::json!({ "variables": 1, "terms": [{ "exponents": [1], "coeff": "1" }] }));
    let file: SectionFile = serde_json::from_value(v["section"].clone()).unwrap();
    let s = space("I:1,1").unwrap();
    assert_eq!(file.to_form(s.clone()).unwrap(), hwv_section(s, &[1]).unwrap());
}

#[test]
fn hwv_section_feeds_taylor() {
    let v = json(&hermsym(&["hwv", "--space", "I:2,2", "--signature", "2,1"]));
    let path = scratch("hwv21.json", &v["section"].to_string());
    let o = hermsym(&["taylor", path.to_str().unwrap(), "--order", "3"]);
    assert_eq!(o.status.code(), Some(0));
    // Constant coefficients: every entry has j = 0 and |i| = 3.
    for e in json(&o)["entries"].as_array().unwrap() {
        assert_eq!(e["j"], serde_json::json!([0, 0, 0, 0]));
        assert_eq!(e["i"].as_array().unwrap().iter().map(|k| k.as_u64().unwrap()).sum::<u64>(), 3);
    }
}

#[test]
fn hwv_errors() {
    assert_eq!(hermsym(&["hwv", "--space", "I:2,2", "--signature", "1,2"]).status.code(), Some(2));
    assert_eq!(hermsym(&["hwv", "--space", "I:2,2", "--signature", "1"]).status.code(), Some(2));
    assert_eq!(hermsym(&["hwv", "--space", "VI", "--signature", "1,0,0"]).status.code(), Some(2));
}

// ---- reports ----

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["verify", "nearlyholo", "--space", "I:1,2", "--samples", "3", "--seed", "11", "--format", "json"],
        vec!["decompose", "tangent", "--space", "III:2", "--format", "csv"],
        vec!["hwv", "--space", "II:4", "--signature", "1,1", "--format", "text"],
    ] {
        let (a, b) = (hermsym(&args), hermsym(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn header_block() {
    let v = json(&hermsym(&["describe", "--space", "II:5", "--seed", "3", "--samples", "9", "--format", "json"]));
    assert_eq!(v["header"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["header"]["space"], "II:5");
    assert_eq!((v["header"]["seed"].as_u64(), v["header"]["samples"].as_u64()), (Some(3), Some(9)));
    let text = stdout(&hermsym(&["decompose", "scalar", "--space", "I:1,2", "--format", "text"]));
    assert!(text.starts_with("# hermsym "));
    assert!(text.contains("# space: I:1,2\n# seed: 0\n# samples: 20\n"));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("hermsym-out-{}.json", std::process::id()));
    let args = ["decompose", "scalar", "--space", "IV:4", "--max-total", "2"];
    let o = hermsym(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), hermsym(&args).stdout);
    std::fs::remove_file(path).unwrap();
}
