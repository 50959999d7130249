//! End-to-end acceptance run over the fixture corpus. Prints one line per
//! criterion and exits nonzero when any of them fails.

use std::path::PathBuf;
use std::process::Command as Process;
use std::sync::Arc;

use frobcat::{load_path, run, Command, Overrides, Scenario, EXIT_FAIL, EXIT_PASS};
use frobcat_core::algrep::ModCat;
use frobcat_core::category::AbelianCategory;
use frobcat_core::classes::{injective_envelope, universal_map_into, FrobeniusPair};
use frobcat_core::homalg::ext;
use frobcat_core::search::Verdict;
use frobcat_core::stable::{complete_triangle, is_stable_iso, stable_hom, stable_hom_via, stably_isomorphic, suspend};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn load(name: &str, depth: Option<usize>) -> Scenario {
    load_path(&fixture(name), Overrides { depth, budget: None, seed: Some(0) }).expect("fixture loads")
}

/// Runs a command and returns the report text, its parsed form and the exit code.
fn report(name: &str, cmd: Command, depth: Option<usize>) -> (String, Value, i32) {
    let out = run(&load(name, depth), cmd).expect("command runs");
    let v: Value = serde_json::from_str(&out.report).expect("report is JSON");
    (out.report, v, out.exit)
}

fn group<'v>(v: &'v Value, name: &str) -> Option<&'v Value> {
    v["groups"].as_array()?.iter().find(|g| g["name"] == name)
}

fn entries(g: &Value) -> impl Iterator<Item = &Value> {
    g["entries"].as_array().into_iter().flatten()
}

fn has_failure(v: &Value, check: &str) -> bool {
    fn walk(v: &Value, check: &str) -> bool {
        match v {
            Value::Object(m) => {
                (m.get("check").and_then(Value::as_str) == Some(check) && m.get("status").and_then(Value::as_str) == Some("fail"))
                    || m.values().any(|x| walk(x, check))
            }
            Value::Array(a) => a.iter().any(|x| walk(x, check)),
            _ => false,
        }
    }
    walk(v, check)
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ext_comparison() -> Outcome {
    let (_, v, exit) = report("dual_numbers", Command::Ext, Some(3));
    ensure(exit == EXIT_PASS, format!("exit {exit}"))?;
    let mut compared = 0;
    for name in ["ext-zero-embedding", "ext-tensor-embedding"] {
        let g = group(&v, name).ok_or(format!("missing {name}"))?;
        ensure(g["status"] == "pass", format!("{name} is {}", g["status"]))?;
        let degrees: std::collections::BTreeSet<u64> = entries(g).filter_map(|e| e["degree"].as_u64()).collect();
        ensure(degrees == (0..=3).collect(), format!("{name} degrees {degrees:?}"))?;
        compared += entries(g).filter(|e| e["status"] == "pass").count();
    }

    // third route: the same Ext over the triangular matrix algebra
    let sc = load("dual_numbers", Some(3));
    let c = sc.comma.as_ref().unwrap();
    let lambda = Arc::new(c.lambda_algebra());
    let lcat = ModCat::new(lambda.clone());
    let objs: Vec<_> = sc.comma_window.iter().map(|(_, b)| b.clone()).filter(|b| c.dim(b) > 0).take(6).collect();
    ensure(objs.len() <= 6, "window too large")?;
    let r = sc.window("dual");
    let sources: Vec<_> = r.iter().map(|(_, m)| m.clone()).filter(|m| m.dim() > 0).collect();
    for x in &sources {
        for b in &objs {
            for i in 0..=3 {
                let module = ext(c.r(), x, b.x(), i).dim;
                let via_lambda = ext(&lcat, &c.to_lambda(&lambda, &c.z_a(x)), &c.to_lambda(&lambda, b), i).dim;
                let via_tensor = ext(&lcat, &c.to_lambda(&lambda, &c.t_b(x)), &c.to_lambda(&lambda, b), i).dim;
                let module_y = ext(c.s(), x, b.y(), i).dim;
                ensure(module == via_lambda, format!("zero embedding degree {i}: {module} vs {via_lambda}"))?;
                ensure(module_y == via_tensor, format!("tensor embedding degree {i}: {module_y} vs {via_tensor}"))?;
            }
        }
    }
    Ok(format!("{compared} comparisons, degrees 0..=3, cross-checked over the matrix algebra"))
}

fn lifted_window() -> Outcome {
    let (_, v, exit) = report("dual_numbers", Command::FrobeniusCheck, Some(4));
    ensure(exit == EXIT_PASS, format!("exit {exit}"))?;
    let sc = load("dual_numbers", Some(4));
    ensure(sc.comma_exhaustive, "comma window not exhaustive")?;
    let g = group(&v, "lifted-window").ok_or("missing lifted-window")?;
    ensure(g["status"] == "pass", "lifted window check failed")?;
    for check in [
        "x-extensions",
        "x-kernels-of-epis",
        "x-summands",
        "w-summands",
        "cogenerator",
        "w-in-x",
        "w-ext-orthogonal",
        "x-cap-xperp-is-w",
    ] {
        ensure(entries(g).any(|e| e["check"] == check), format!("no {check} entries"))?;
    }
    let rec = group(&v, "recovery").ok_or("missing recovery")?;
    ensure(rec["status"] == "pass", "recovery failed")?;
    Ok(format!("{} objects, {} entries, recovery agrees", sc.comma_window.len(), entries(g).count()))
}

fn recollement(v: &Value) -> &Value {
    &v["recollement"]
}

fn dual_recollement() -> Outcome {
    let (_, v, exit) = report("dual_numbers", Command::RecollementVerify, None);
    ensure(exit == EXIT_PASS, format!("exit {exit}"))?;
    let r = recollement(&v);
    ensure(r["status"] == "pass", "status")?;
    let up = &r["strong_upgrade"];
    ensure(up["strong_a"] == true && up["strong_b"] == true && up["strong_lifted"] == true, "strong flags")?;
    ensure(up["triangulated"] == true && up["checks"]["status"] == "pass", "triangulated upgrade")?;
    ensure(r["adjunctions"].as_array().map(Vec::len) == Some(4), "four adjunction groups")?;
    ensure(r["fully_faithful"].as_array().map(Vec::len) == Some(3), "three fully faithful groups")?;
    Ok("all groups pass, triangulated".into())
}

fn path_recollement() -> Outcome {
    let (_, v, exit) = report("path_algebra", Command::RecollementVerify, None);
    ensure(exit == EXIT_PASS, format!("exit {exit}"))?;
    let r = recollement(&v);
    ensure(r["status"] == "pass", "right triangulated checks")?;
    let up = &r["strong_upgrade"];
    ensure(up["strong_a"] == false && up["strong_b"] == false && up["strong_lifted"] == false, "strong flags")?;
    ensure(up["triangulated"] == false, "claims the triangulated upgrade")?;
    ensure(up["checks"]["status"] == "skipped", "upgrade checks should be skipped")?;
    Ok("right triangulated, not strong, no upgrade claimed".into())
}

fn gp_cross_check() -> Outcome {
    let (_, v, exit) = report("gorenstein", Command::Gp, None);
    ensure(exit == EXIT_PASS, format!("exit {exit}"))?;
    let g = group(&v, "gp-cross-check").ok_or("missing gp-cross-check")?;
    ensure(g["status"] == "pass", "memberships disagree")?;
    let yes = entries(g).filter(|e| e["detail"] == "comma Yes, module Yes").count();
    let no = entries(g).filter(|e| e["detail"] == "comma No, module No").count();
    ensure(yes > 0 && no > 0, "window does not separate the classes")?;
    ensure(yes + no == entries(g).count(), "undetermined memberships")?;
    Ok(format!("{yes} members and {no} non-members agree at depth {}", v["depth"]))
}

fn stable_sanity() -> Outcome {
    let sc = load("dual_numbers", None);
    let pair = &sc.pairs["left"];
    let cat = pair.cat();
    let (k, a) = (sc.modules["k"].clone(), sc.modules["A"].clone());

    let end = stable_hom(pair, &k, &k).map_err(|e| e.to_string())?;
    ensure(end.dim() == 1, format!("stable End(k) has dim {}", end.dim()))?;

    let sigma = suspend(pair, &k).map_err(|e| e.to_string())?;
    let (v, _) = stably_isomorphic(pair, sigma.object(), &k).map_err(|e| e.to_string())?;
    ensure(v == Verdict::Yes, "suspension of k is not k")?;

    let f = cat.hom(&k, &a).morphism(0);
    ensure(cat.is_mono(&f), "socle inclusion")?;
    let g = cat.cokernel(&f);
    let tri = complete_triangle(pair, &f, &g).map_err(|e| e.to_string())?;
    let (v, _) = is_stable_iso(pair, &tri.h).map_err(|e| e.to_string())?;
    ensure(v == Verdict::Yes, "connecting map is not a stable isomorphism")?;

    let window: Vec<_> = sc.window("dual").into_iter().map(|(_, m)| m).collect();
    for x in &window {
        let env = injective_envelope(cat, x);
        let univ = universal_map_into(cat, x, &pair.w_generators());
        for y in &window {
            ensure(stable_hom_via(cat, &env, y).w == stable_hom_via(cat, &univ, y).w, "W(X, Y) depends on the approximation")?;
        }
    }
    let (_, v, exit) = report("dual_numbers", Command::Stable, None);
    ensure(exit == EXIT_PASS, format!("stable command exit {exit}"))?;
    let rows = v["stable_hom"]["left"].as_array().cloned().unwrap_or_default();
    ensure(rows.iter().any(|r| r["X"] == r["Y"] && r["stable_dim"] == 1), "report table lacks End(k)")?;
    let g = group(&v, "stable:left").ok_or("missing stable group")?;
    ensure(entries(g).any(|e| e["check"] == "w-subspace-choice-independent"), "no choice-independence entries")?;
    Ok("End(k) = 1, Sigma k ~ k, connecting map invertible, W(X, Y) independent".into())
}

fn negative_controls() -> Outcome {
    let (_, v, exit) = report("broken_w", Command::FrobeniusCheck, None);
    ensure(exit == EXIT_FAIL, format!("broken W exit {exit}"))?;
    ensure(has_failure(&v, "w-summands"), "no w-summands failure")?;
    for cmd in [Command::FrobeniusCheck, Command::RecollementVerify] {
        let (_, v, exit) = report("broken_bimodule", cmd, None);
        ensure(exit == EXIT_FAIL, format!("broken bimodule {} exit {exit}", cmd.name()))?;
        ensure(has_failure(&v, "hyp-ltor-vanish"), format!("no hyp-ltor-vanish failure from {}", cmd.name()))?;
    }
    Ok("w-summands and hyp-ltor-vanish reported, exit 1".into())
}

fn determinism() -> Outcome {
    let runs: [(&str, Command, Option<usize>); 8] = [
        ("dual_numbers", Command::Ext, Some(3)),
        ("dual_numbers", Command::FrobeniusCheck, Some(4)),
        ("dual_numbers", Command::RecollementVerify, None),
        ("path_algebra", Command::RecollementVerify, None),
        ("gorenstein", Command::Gp, None),
        ("dual_numbers", Command::Stable, None),
        ("broken_w", Command::FrobeniusCheck, None),
        ("broken_bimodule", Command::RecollementVerify, None),
    ];
    for (name, cmd, depth) in runs {
        let (a, _, _) = report(name, cmd, depth);
        let (b, _, _) = report(name, cmd, depth);
        ensure(a == b, format!("{name} {} differs between runs", cmd.name()))?;
    }
    // through the binary, into files
    let dir = std::env::temp_dir().join(format!("frobcat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut outs = Vec::new();
    for i in 0..2 {
        let out = dir.join(format!("run{i}.json"));
        let status = Process::new(env!("CARGO_BIN_EXE_frobcat"))
            .args(["recollement-verify", "--seed", "0", "--scenario"])
            .arg(fixture("dual_numbers"))
            .arg("--out")
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), format!("binary exit {status}"))?;
        outs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(outs[0] == outs[1], "binary reports differ")?;
    Ok(format!("{} reports byte-identical with seed 0", runs.len() + 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Ext over the comma category matches module Ext", ext_comparison),
        ("lifted pair passes the window axioms", lifted_window),
        ("dual numbers recollement is triangulated", dual_recollement),
        ("path algebra recollement is right triangulated only", path_recollement),
        ("Gorenstein projective memberships agree", gp_cross_check),
        ("stable category sanity", stable_sanity),
        ("broken fixtures fail as designated", negative_controls),
        ("reports are deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("criterion {}: PASS  {title} ({note}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title} ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
