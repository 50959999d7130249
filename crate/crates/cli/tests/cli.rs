use std::path::PathBuf;
use std::process::Command as Process;

use frobcat::scenario::{build, parse};
use frobcat::{load_path, main_with, run, Cli, Command, InputError, Overrides, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use proptest::prelude::*;
use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn fixture_json(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn run_json(doc: &Value, cmd: Command) -> (Value, i32) {
    let sc = build(parse(&doc.to_string()).unwrap(), Overrides::default()).unwrap();
    let out = run(&sc, cmd).unwrap();
    (serde_json::from_str(&out.report).unwrap(), out.exit)
}

fn run_fixture(name: &str, cmd: Command) -> (Value, i32) {
    let sc = load_path(&fixture(name), Overrides::default()).unwrap();
    let out = run(&sc, cmd).unwrap();
    (serde_json::from_str(&out.report).unwrap(), out.exit)
}

fn failing_checks(v: &Value) -> Vec<String> {
    v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|g| g["entries"].as_array().unwrap())
        .filter(|e| e["status"] == "fail")
        .map(|e| e["check"].as_str().unwrap().to_string())
        .collect()
}

fn cli(cmd: Command, path: PathBuf) -> Cli {
    Cli { command: cmd, scenario: path, depth: None, budget: None, seed: None, out: None }
}

#[test]
fn fixtures_validate() {
    for name in ["dual_numbers", "path_algebra", "gorenstein", "broken_w", "broken_bimodule"] {
        let (v, exit) = run_fixture(name, Command::Validate);
        assert_eq!(exit, EXIT_PASS, "{name}: {:?}", failing_checks(&v));
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn corrupted_table_fails_associativity() {
    let (v, exit) = run_fixture("corrupt_table", Command::Validate);
    assert_eq!(exit, EXIT_FAIL);
    assert!(failing_checks(&v).contains(&"associativity".to_string()));
    // other commands refuse to run on it
    let (v, exit) = run_fixture("corrupt_table", Command::Ext);
    assert_eq!(exit, EXIT_INPUT);
    assert_eq!(v["status"], "fail");
}

#[test]
fn window_sizes() {
    let (v, _) = run_fixture("dual_numbers", Command::Validate);
    // 0, k, k+k, A
    assert_eq!(v["windows"]["dual"], json!({"size": 4, "exhaustive": true}));
    // four listed objects and 27 enumerated classes
    assert_eq!(v["comma_window"], json!({"size": 31, "exhaustive": true}));
    let (v, _) = run_fixture("path_algebra", Command::Validate);
    assert_eq!(v["windows"]["path"]["size"], 7);
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse("{\n  \"name\": \"x\",\n  \"algebras\": [}\n").unwrap_err();
    match err {
        InputError::Parse { line, .. } => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
    let dir = std::env::temp_dir().join(format!("frobcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ \"name\": 3 }").unwrap();
    assert_eq!(main_with(&cli(Command::Validate, path)), EXIT_INPUT);
    assert_eq!(main_with(&cli(Command::Validate, dir.join("missing.json"))), EXIT_INPUT);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_fields_are_rejected() {
    let mut doc = fixture_json("dual_numbers");
    doc["windos"] = json!({});
    assert!(matches!(parse(&doc.to_string()), Err(InputError::Parse { .. })));
}

#[test]
fn unresolved_references_are_input_errors() {
    let mut doc = fixture_json("dual_numbers");
    doc["lift"]["a"] = json!("nowhere");
    let err = build(parse(&doc.to_string()).unwrap(), Overrides::default()).unwrap_err();
    assert!(matches!(err, InputError::Unresolved(_)), "{err}");

    let mut doc = fixture_json("dual_numbers");
    doc["windows"]["comma"]["objects"][0]["X"] = json!("missing");
    let err = build(parse(&doc.to_string()).unwrap(), Overrides::default()).unwrap_err();
    assert!(matches!(err, InputError::Unresolved(_)), "{err}");
}

#[test]
fn invalid_module_and_comma_object_are_reported() {
    let mut doc = fixture_json("dual_numbers");
    // x acting as the identity on a one-dimensional module breaks x^2 = 0
    doc["modules"]["bad"] = json!({"algebra_id": "dual", "dim": 1, "actions": [[[1]], [[1]]]});
    let (v, exit) = run_json(&doc, Command::Validate);
    assert_eq!(exit, EXIT_FAIL);
    assert!(!failing_checks(&v).is_empty());

    let mut doc = fixture_json("dual_numbers");
    // phi: T(A) = A -> k must be A-linear; the projection onto x is not
    doc["windows"]["comma"]["objects"][3]["phi"] = json!([[0, 1]]);
    let (v, exit) = run_json(&doc, Command::Validate);
    assert_eq!(exit, EXIT_FAIL);
    assert_eq!(failing_checks(&v), vec!["comma-object-valid"]);
}

#[test]
fn non_gorenstein_bound_fails_validation() {
    let mut doc = fixture_json("path_algebra");
    doc["pairs"]["left"] = json!({"algebra": "path", "builtin": "gp", "bound": 0});
    let (v, exit) = run_json(&doc, Command::Validate);
    assert_eq!(exit, EXIT_FAIL);
    assert_eq!(failing_checks(&v), vec!["gorenstein-bound"]);
}

#[test]
fn overrides_reach_the_report() {
    let sc = load_path(&fixture("dual_numbers"), Overrides { depth: Some(2), budget: Some(512), seed: Some(7) }).unwrap();
    let v: Value = serde_json::from_str(&run(&sc, Command::Tor).unwrap().report).unwrap();
    assert_eq!((v["depth"].clone(), v["budget"].clone(), v["seed"].clone()), (json!(2), json!(512), json!(7)));
    let g = &v["groups"][0]["entries"][0];
    assert_eq!((g["depth"].clone(), g["budget"].clone()), (json!(2), json!(512)));
}

#[test]
fn every_entry_is_labelled() {
    fn walk(v: &Value, n: &mut usize) {
        match v {
            Value::Object(m) => {
                if m.contains_key("check") {
                    *n += 1;
                    for key in ["check", "window", "depth", "budget", "subject", "status"] {
                        assert!(m.contains_key(key), "entry without {key}: {v}");
                    }
                }
                m.values().for_each(|x| walk(x, n));
            }
            Value::Array(a) => a.iter().for_each(|x| walk(x, n)),
            _ => {}
        }
    }
    let (v, _) = run_fixture("dual_numbers", Command::RecollementVerify);
    let mut n = 0;
    walk(&v, &mut n);
    assert!(n > 100);
}

#[test]
fn recollement_report_layout() {
    let (v, _) = run_fixture("dual_numbers", Command::RecollementVerify);
    let keys: Vec<&String> = v["recollement"].as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["adjunctions", "fully_faithful", "hypotheses", "im_eq_ker", "status", "step1", "strong_upgrade"]
    );
    let names: Vec<&str> = v["recollement"]["adjunctions"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["q-z_a", "z_a-u_a", "t_b-u_b", "u_b-s"]);
}

#[test]
fn refused_recollement_skips_everything_after_the_hypotheses() {
    let (v, exit) = run_fixture("broken_bimodule", Command::RecollementVerify);
    assert_eq!(exit, EXIT_FAIL);
    let r = &v["recollement"];
    assert_eq!(r["hypotheses"]["status"], "fail");
    assert_eq!(r["step1"]["status"], "skipped");
    assert_eq!(r["strong_upgrade"]["triangulated"], false);
}

#[test]
fn stable_hom_table() {
    let (v, exit) = run_fixture("dual_numbers", Command::Stable);
    assert_eq!(exit, EXIT_PASS);
    let rows = v["stable_hom"]["left"].as_array().unwrap();
    let row = |x: &str, y: &str| rows.iter().find(|r| r["X"] == x && r["Y"] == y).unwrap().clone();
    // names follow the enumeration: dual#1 = k, dual#2 = k+k, dual#3 = A
    assert_eq!(row("dual#1", "dual#1"), json!({"X": "dual#1", "Y": "dual#1", "hom_dim": 1, "w_subspace_dim": 0, "stable_dim": 1}));
    assert_eq!(row("dual#2", "dual#2")["stable_dim"], 4);
    assert_eq!(row("dual#3", "dual#3"), json!({"X": "dual#3", "Y": "dual#3", "hom_dim": 2, "w_subspace_dim": 2, "stable_dim": 0}));
    assert_eq!(row("dual#1", "dual#3"), json!({"X": "dual#1", "Y": "dual#3", "hom_dim": 1, "w_subspace_dim": 1, "stable_dim": 0}));
    let sigma = v["suspensions"]["left"].as_array().unwrap();
    let k = sigma.iter().find(|s| s["X"] == "dual#1").unwrap();
    assert_eq!(k["matches"], json!(["dual#1"]));
}

#[test]
fn tor_dimensions() {
    let (v, _) = run_fixture("broken_bimodule", Command::Tor);
    // k tensored over the dual numbers with k: every Tor_i(k, k) is one-dimensional
    let rows = v["tor"].as_array().unwrap();
    let k = rows.iter().find(|r| r["Y"] == "dual#1").unwrap();
    assert_eq!(k["dims"], json!([1, 1, 1, 1, 1]));
    let kk = rows.iter().find(|r| r["Y"] == "dual#2").unwrap();
    assert_eq!(kk["dims"], json!([2, 2, 2, 2, 2]));
    let a = rows.iter().find(|r| r["Y"] == "dual#3").unwrap();
    assert_eq!(a["dims"], json!([1, 0, 0, 0, 0]));
}

#[test]
fn convert_round_trips() {
    let (v, exit) = run_fixture("dual_numbers", Command::Convert);
    assert_eq!(exit, EXIT_PASS);
    assert_eq!(v["algebra"]["dim"], 6);
    assert_eq!(v["modules"].as_object().unwrap().len(), 31);
    // the converted algebra loads as a scenario of its own
    let doc = json!({"name": "lambda", "algebras": {"lambda": v["algebra"]}, "modules": v["modules"]});
    let (v, exit) = run_json(&doc, Command::Validate);
    assert_eq!(exit, EXIT_PASS, "{:?}", failing_checks(&v));
}

#[test]
fn binary_exit_codes_and_out_file() {
    let bin = env!("CARGO_BIN_EXE_frobcat");
    let status = Process::new(bin).args(["validate", "--scenario"]).arg(fixture("corrupt_table")).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_FAIL));
    assert!(String::from_utf8_lossy(&status.stdout).contains("associativity"));

    let status = Process::new(bin).args(["nonsense", "--scenario"]).arg(fixture("dual_numbers")).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_INPUT));

    let out = std::env::temp_dir().join(format!("frobcat-out-{}.json", std::process::id()));
    let status = Process::new(bin)
        .args(["tor", "--depth", "2", "--scenario"])
        .arg(fixture("dual_numbers"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_PASS));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "tor");
    assert_eq!(v["depth"], 2);
    std::fs::remove_file(&out).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The same seed gives the same bytes, and on exhaustive windows the
    /// verdicts do not depend on the seed at all.
    #[test]
    fn reports_depend_only_on_inputs(seed in 0u64..1000) {
        let o = Overrides { depth: Some(3), budget: None, seed: Some(seed) };
        let a = run(&load_path(&fixture("dual_numbers"), o).unwrap(), Command::FrobeniusCheck).unwrap();
        let b = run(&load_path(&fixture("dual_numbers"), o).unwrap(), Command::FrobeniusCheck).unwrap();
        prop_assert_eq!(&a.report, &b.report);
        let base = Overrides { seed: Some(0), ..o };
        let c = run(&load_path(&fixture("dual_numbers"), base).unwrap(), Command::FrobeniusCheck).unwrap();
        prop_assert_eq!(a.report.replace(&format!("\"seed\": {seed}"), "\"seed\": 0"), c.report);
    }
}
