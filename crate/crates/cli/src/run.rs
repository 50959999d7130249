//! The commands. Each one turns a loaded scenario into a JSON report with
//! an aggregate status.

use std::collections::BTreeMap;
use std::sync::Arc;

use frobcat_core::algrep::{ModCat, Module};
use frobcat_core::category::{AbelianCategory, Morphism};
use frobcat_core::classes::{builtin_gp, frobenius_window_check, FrobeniusPair, ModPair, Obj, WindowCheck};
use frobcat_core::comma::{CommaCat, CommaObject};
use frobcat_core::homalg::{derived_tensor, ext_from_resolution, resolve, yoneda_realize};
use frobcat_core::lift::{lift_hypotheses, recover_components, LiftedPair};
use frobcat_core::recollement::{gp_cross_check, verify_recollement, RecollementReport, RecollementWindows};
use frobcat_core::report::{CheckGroup, ReportEntry, Scope, Status};
use frobcat_core::search::Verdict;
use frobcat_core::stable::{complete_triangle, is_stable_iso, is_stably_zero, stable_hom, stable_window_check, stably_isomorphic, suspend};
use serde_json::{json, Map, Value};

use crate::scenario::{InputError, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Ext,
    Tor,
    FrobeniusCheck,
    Stable,
    RecollementVerify,
    Gp,
    Convert,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Ext => "ext",
            Command::Tor => "tor",
            Command::FrobeniusCheck => "frobenius-check",
            Command::Stable => "stable",
            Command::RecollementVerify => "recollement-verify",
            Command::Gp => "gp",
            Command::Convert => "convert",
        }
    }
}

/// Exit codes of the tool.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub exit: i32,
    /// Pretty-printed JSON with sorted keys.
    pub report: String,
}

/// Groups plus free-form tables, assembled into the report envelope.
#[derive(Default)]
struct Body {
    groups: Vec<CheckGroup>,
    extra: Map<String, Value>,
    status: Option<Status>,
}

impl Body {
    fn group(&mut self, g: CheckGroup) {
        self.groups.push(g);
    }

    fn put(&mut self, key: &str, v: Value) {
        self.extra.insert(key.to_string(), v);
    }

    fn status(&self) -> Status {
        if let Some(s) = self.status {
            return s;
        }
        combine(self.groups.iter().map(|g| g.status))
    }
}

fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    let all: Vec<Status> = statuses.into_iter().collect();
    if all.contains(&Status::Fail) {
        Status::Fail
    } else if all.contains(&Status::Undetermined) {
        Status::Undetermined
    } else {
        Status::Pass
    }
}

fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass | Status::Skipped => EXIT_PASS,
        Status::Fail | Status::Undetermined => EXIT_FAIL,
    }
}

fn envelope(sc: &Scenario, cmd: Command, body: Body) -> (Status, String) {
    let status = body.status();
    let mut doc = body.extra;
    doc.insert("command".into(), json!(cmd.name()));
    doc.insert("scenario".into(), json!(sc.name));
    doc.insert("depth".into(), json!(sc.depth));
    doc.insert("budget".into(), json!(sc.budget));
    doc.insert("seed".into(), json!(sc.seed));
    doc.insert("status".into(), serde_json::to_value(status).expect("status serializes"));
    doc.insert("groups".into(), serde_json::to_value(&body.groups).expect("groups serialize"));
    let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes");
    (status, text + "\n")
}

/// Runs one command. An invalid scenario yields its validation report and
/// the input-error exit code for every command except `validate`.
pub fn run(sc: &Scenario, cmd: Command) -> Result<Outcome, InputError> {
    let mut body = Body::default();
    if !sc.is_valid() || cmd == Command::Validate {
        validate(sc, &mut body);
        let (status, report) = envelope(sc, cmd, body);
        let exit = if cmd == Command::Validate { exit_code(status) } else { EXIT_INPUT };
        return Ok(Outcome { status, exit, report });
    }
    match cmd {
        Command::Validate => unreachable!("handled above"),
        Command::Ext => ext_cmd(sc, &mut body)?,
        Command::Tor => tor_cmd(sc, &mut body)?,
        Command::FrobeniusCheck => frobenius_cmd(sc, &mut body)?,
        Command::Stable => stable_cmd(sc, &mut body)?,
        Command::RecollementVerify => recollement_cmd(sc, &mut body)?,
        Command::Gp => gp_cmd(sc, &mut body)?,
        Command::Convert => convert_cmd(sc, &mut body)?,
    }
    let (status, report) = envelope(sc, cmd, body);
    Ok(Outcome { status, exit: exit_code(status), report })
}

fn validate(sc: &Scenario, body: &mut Body) {
    body.group(CheckGroup::new("validation", sc.validation.clone()));
    for (name, entries) in &sc.pair_reports {
        if !entries.is_empty() {
            body.group(CheckGroup::new(format!("cotorsion:{name}"), entries.clone()));
        }
    }
    let windows: Map<String, Value> = sc
        .windows
        .iter()
        .map(|(id, w)| (id.clone(), json!({"size": w.modules.len(), "exhaustive": w.exhaustive})))
        .collect();
    body.put("windows", Value::Object(windows));
    if sc.comma.is_some() {
        body.put("comma_window", json!({"size": sc.comma_window.len(), "exhaustive": sc.comma_exhaustive}));
    }
}

fn comma(sc: &Scenario) -> Result<&CommaCat, InputError> {
    sc.comma.as_ref().ok_or_else(|| InputError::Invalid("this command needs a bimodule".into()))
}

fn algebra_id(sc: &Scenario, cat: &ModCat) -> String {
    sc.algebras
        .iter()
        .find(|(_, a)| Arc::ptr_eq(a, cat.algebra()))
        .map(|(k, _)| k.clone())
        .expect("categories are built over scenario algebras")
}

fn nonzero<O: Clone>(objs: &[(String, O)], dim: impl Fn(&O) -> usize, limit: usize) -> Vec<(String, O)> {
    objs.iter().filter(|(_, o)| dim(o) > 0).take(limit).cloned().collect()
}

fn modules(named: &[(String, Module)]) -> Vec<Module> {
    named.iter().map(|(_, m)| m.clone()).collect()
}

fn comma_objects(sc: &Scenario) -> Vec<CommaObject> {
    sc.comma_window.iter().map(|(_, o)| o.clone()).collect()
}

fn dims_of<C: AbelianCategory>(cat: &C, x: &C::Obj, ys: &[(String, C::Obj)], depth: usize) -> Vec<(String, Vec<usize>)> {
    let res = resolve(cat, x, depth);
    ys.iter()
        .map(|(n, y)| (n.clone(), (0..=depth).map(|i| ext_from_resolution(cat, &res, y, i).dim).collect()))
        .collect()
}

fn ext_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let depth = sc.depth;
    let mut tables = Map::new();
    for id in sc.algebras.keys() {
        let cat = sc.cat(id);
        let w = nonzero(&sc.window(id), |m: &Module| m.dim(), sc.ext_limit);
        let mut rows = Vec::new();
        for (xn, x) in &w {
            for (yn, dims) in dims_of(&cat, x, &w, depth) {
                rows.push(json!({"X": xn, "Y": yn, "dims": dims}));
            }
        }
        tables.insert(id.clone(), Value::Array(rows));
    }
    body.put("ext", Value::Object(tables));

    let Some(c) = sc.comma.as_ref() else { return Ok(()) };
    let scope = sc.scope("ext-comparison");
    let cw = nonzero(&sc.comma_window, |b: &CommaObject| c.dim(b), sc.ext_limit);
    let rw = nonzero(&sc.window(&algebra_id(sc, c.r())), |m: &Module| m.dim(), sc.ext_limit);
    let sw = nonzero(&sc.window(&algebra_id(sc, c.s())), |m: &Module| m.dim(), sc.ext_limit);

    // ((X, 0), N) against Ext(X, N_1)
    let mut out = Vec::new();
    for (xn, x) in &rw {
        let comma_side = dims_of(c, &c.z_a(x), &cw, depth);
        let targets: Vec<(String, Module)> = cw.iter().map(|(n, b)| (n.clone(), b.x().clone())).collect();
        let module_side = dims_of(c.r(), x, &targets, depth);
        compare(&scope, "ext-zero-embedding", xn, &comma_side, &module_side, &mut out);
    }
    body.group(CheckGroup::new("ext-zero-embedding", out));

    // ((T(Y), Y), N) against Ext(Y, N_2), where higher derived functors vanish on Y
    let mut out = Vec::new();
    for (yn, y) in &sw {
        let l = derived_tensor(c.functor(), c.s(), c.r(), y, depth).map_err(|e| InputError::Invalid(e.to_string()))?;
        if let Some(n) = (1..=depth).find(|&n| l[n].dim() > 0) {
            out.push(
                scope
                    .entry("ext-tensor-embedding", yn.clone(), Status::Skipped)
                    .with_degree(n)
                    .with_detail("derived tensor nonzero"),
            );
            continue;
        }
        let comma_side = dims_of(c, &c.t_b(y), &cw, depth);
        let targets: Vec<(String, Module)> = cw.iter().map(|(n, b)| (n.clone(), b.y().clone())).collect();
        let module_side = dims_of(c.s(), y, &targets, depth);
        compare(&scope, "ext-tensor-embedding", yn, &comma_side, &module_side, &mut out);
    }
    body.group(CheckGroup::new("ext-tensor-embedding", out));
    Ok(())
}

fn compare(
    scope: &Scope,
    check: &str,
    source: &str,
    comma_side: &[(String, Vec<usize>)],
    module_side: &[(String, Vec<usize>)],
    out: &mut Vec<ReportEntry>,
) {
    for ((n, lhs), (_, rhs)) in comma_side.iter().zip(module_side) {
        for (i, (a, b)) in lhs.iter().zip(rhs).enumerate() {
            let mut e = scope
                .entry(check, format!("{source},{n}"), Status::from_bool(a == b))
                .with_degree(i)
                .with_dimension(*a);
            if a != b {
                e = e.with_detail(format!("comma {a}, module {b}"));
            }
            out.push(e);
        }
    }
}

/// The two pairs of the lift, its `S`-window and the lifted pair when the hypotheses hold.
struct Lift {
    a: ModPair,
    b: ModPair,
    s_window: Vec<Module>,
    lifted: Result<LiftedPair, Vec<ReportEntry>>,
}

fn lift(sc: &Scenario) -> Result<Lift, InputError> {
    let (an, bn) = sc.lift.as_ref().ok_or_else(|| InputError::Invalid("this command needs a lift".into()))?;
    let c = comma(sc)?;
    let (a, b) = (sc.pairs[an].clone(), sc.pairs[bn].clone());
    let s_window = modules(&sc.window(&algebra_id(sc, c.s())));
    let scope = sc.scope("lift");
    let lifted = LiftedPair::new(c.clone(), a.clone(), b.clone(), &s_window, &scope)
        .map_err(|_| lift_hypotheses(c, &a, &b, &s_window, &scope));
    Ok(Lift { a, b, s_window, lifted })
}

/// Hypotheses the lifted pair depends on; the others are reported as levels.
const REQUIRED: [&str; 2] = ["hyp-ltor-vanish", "hyp-t-v-in-w-hat"];

fn required(entries: &[ReportEntry]) -> Vec<ReportEntry> {
    entries.iter().filter(|e| REQUIRED.contains(&e.check.as_str())).cloned().collect()
}

fn tor_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let c = comma(sc)?;
    let mut rows = Vec::new();
    for (yn, y) in sc.window(&algebra_id(sc, c.s())) {
        let l = derived_tensor(c.functor(), c.s(), c.r(), &y, sc.depth).map_err(|e| InputError::Invalid(e.to_string()))?;
        rows.push(json!({"Y": yn, "dims": l.iter().map(|m| m.dim()).collect::<Vec<_>>()}));
    }
    body.put("tor", Value::Array(rows));
    if sc.lift.is_some() {
        let l = lift(sc)?;
        let entries = lift_hypotheses(c, &l.a, &l.b, &l.s_window, &sc.scope("lift"));
        body.group(CheckGroup::new("lift-hypotheses", required(&entries)));
    }
    Ok(())
}

fn frobenius_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let opts = WindowCheck::default();
    for (name, pair) in &sc.pairs {
        let window = modules(&sc.window(&sc.pair_algebra(name)));
        let mut entries = sc.pair_reports.get(name).cloned().unwrap_or_default();
        entries.extend(frobenius_window_check(pair, &window, &sc.scope(format!("pair {name}")), &opts));
        body.group(CheckGroup::new(format!("pair:{name}"), entries));
    }
    if sc.lift.is_none() {
        return Ok(());
    }
    let c = comma(sc)?;
    let l = lift(sc)?;
    match &l.lifted {
        Err(entries) => {
            body.group(CheckGroup::new("lift-hypotheses", required(entries)));
            body.group(CheckGroup::skipped("lifted-window", &sc.scope("comma"), "hypotheses failed"));
        }
        Ok(lp) => {
            body.group(CheckGroup::new("lift-hypotheses", required(lp.hypotheses())));
            body.put("theorem_level", json!(lp.theorem_level()));
            body.put("proposition_level", json!(lp.proposition_level()));
            let scope = sc.scope("comma");
            body.group(CheckGroup::new("lifted-window", frobenius_window_check(lp, &comma_objects(sc), &scope, &opts)));
            let r_window = modules(&sc.window(&algebra_id(sc, c.r())));
            body.group(CheckGroup::new("recovery", recover_components(lp, &r_window, &l.s_window, &scope)));
        }
    }
    Ok(())
}

/// The universal map from `x` into copies of the targets.
fn universal_into<C: AbelianCategory>(cat: &C, x: &C::Obj, targets: &[C::Obj]) -> Option<Morphism<C::Obj>> {
    let maps: Vec<Morphism<C::Obj>> = targets.iter().flat_map(|t| cat.hom(x, t).morphisms()).collect();
    if maps.is_empty() {
        return None;
    }
    let objs: Vec<C::Obj> = maps.iter().map(|m| m.target.clone()).collect();
    Some(cat.into_sum(&cat.direct_sum(&objs), &maps))
}

fn stable_report<P: FrobeniusPair>(
    pair: &P,
    label: &str,
    named: &[(String, Obj<P>)],
    limit: usize,
    scope: &Scope,
) -> (CheckGroup, Value, Value) {
    let cat = pair.category();
    let window: Vec<(String, Obj<P>)> = named
        .iter()
        .filter(|(_, o)| cat.dim(o) > 0 && pair.in_x(o).is_yes())
        .take(limit)
        .cloned()
        .collect();
    let objs: Vec<Obj<P>> = window.iter().map(|(_, o)| o.clone()).collect();
    let mut entries = Vec::new();

    let mut table = Vec::new();
    for (xn, x) in &window {
        for (yn, y) in &window {
            match stable_hom(pair, x, y) {
                Ok(h) => table.push(json!({
                    "X": xn, "Y": yn, "hom_dim": h.hom_dim(), "w_subspace_dim": h.w_dim(), "stable_dim": h.dim()
                })),
                Err(e) => entries.push(scope.entry("stable-hom", format!("{xn},{yn}"), Status::Fail).with_detail(e.to_string())),
            }
        }
    }

    let mut suspensions = Vec::new();
    for (xn, x) in &window {
        let Ok(s) = suspend(pair, x) else { continue };
        let matches: Vec<&String> = window
            .iter()
            .filter(|(_, y)| matches!(stably_isomorphic(pair, s.object(), y), Ok((Verdict::Yes, _))))
            .map(|(n, _)| n)
            .collect();
        let zero = is_stably_zero(pair, s.object()) == Verdict::Yes;
        suspensions.push(json!({"X": xn, "suspension_dim": cat.dim(s.object()), "stably_zero": zero, "matches": matches}));
    }

    let gens = pair.w_generators();
    let alternative = |x: &Obj<P>| {
        let iota = pair.right_approx(x).ok()?;
        let u = universal_into(cat, x, &gens)?;
        let sum = cat.direct_sum(&[iota.target.clone(), u.target.clone()]);
        Some(cat.into_sum(&sum, &[iota, u]))
    };
    entries.extend(stable_window_check(pair, &objs, &alternative, scope));
    entries.extend(triangles(pair, &window, scope));
    (CheckGroup::new(format!("stable:{label}"), entries), Value::Array(table), Value::Array(suspensions))
}

/// Triangles from the non-split extensions between window objects. A middle
/// term that is stably zero forces the connecting map to be a stable isomorphism.
fn triangles<P: FrobeniusPair>(pair: &P, window: &[(String, Obj<P>)], scope: &Scope) -> Vec<ReportEntry> {
    let cat = pair.category();
    let mut out = Vec::new();
    for (xn, x) in window {
        let res = resolve(cat, x, 1);
        for (yn, y) in window {
            for (k, cocycle) in ext_from_resolution(cat, &res, y, 1).representatives().iter().enumerate() {
                let subject = format!("{yn}>{xn}#{k}");
                let ses = match yoneda_realize(cat, &res, cocycle) {
                    Ok(s) => s,
                    Err(e) => {
                        out.push(scope.entry("triangle-completes", &subject, Status::Fail).with_detail(e.to_string()));
                        continue;
                    }
                };
                if !pair.in_x(&ses.f.target).is_yes() {
                    continue;
                }
                let tri = match complete_triangle(pair, &ses.f, &ses.g) {
                    Ok(t) => t,
                    Err(e) => {
                        out.push(scope.entry("triangle-completes", &subject, Status::Fail).with_detail(e.to_string()));
                        continue;
                    }
                };
                out.push(scope.entry("triangle-completes", &subject, Status::Pass));
                if is_stably_zero(pair, &ses.f.target) == Verdict::Yes {
                    let status = match is_stable_iso(pair, &tri.h) {
                        Ok((v, _)) => Status::from_verdict(v),
                        Err(_) => Status::Fail,
                    };
                    out.push(scope.entry("connecting-iso", &subject, status));
                }
            }
        }
    }
    out
}

fn stable_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let mut tables = Map::new();
    let mut sigmas = Map::new();
    for (name, pair) in &sc.pairs {
        let window = sc.window(&sc.pair_algebra(name));
        let (g, t, s) = stable_report(pair, name, &window, sc.stable_limit, &sc.scope(format!("pair {name}")));
        body.group(g);
        tables.insert(name.clone(), t);
        sigmas.insert(name.clone(), s);
    }
    if sc.lift.is_some() {
        let l = lift(sc)?;
        match &l.lifted {
            Ok(lp) => {
                let (g, t, s) = stable_report(lp, "lifted", &sc.comma_window, sc.stable_limit, &sc.scope("comma"));
                body.group(g);
                tables.insert("lifted".into(), t);
                sigmas.insert("lifted".into(), s);
            }
            Err(entries) => body.group(CheckGroup::new("lift-hypotheses", required(entries))),
        }
    }
    body.put("stable_hom", Value::Object(tables));
    body.put("suspensions", Value::Object(sigmas));
    Ok(())
}

fn recollement_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let c = comma(sc)?;
    let l = lift(sc)?;
    let scope = sc.scope("recollement");
    let report = match &l.lifted {
        Err(entries) => RecollementReport::refused(entries.clone(), l.a.is_strong(), l.b.is_strong(), &scope),
        Ok(lp) => {
            let windows = RecollementWindows {
                r: modules(&sc.window(&algebra_id(sc, c.r()))),
                s: l.s_window.clone(),
                comma: comma_objects(sc),
            };
            verify_recollement(lp, &windows, &scope)
        }
    };
    body.status = Some(report.status);
    body.put("recollement", serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}

fn gp_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let c = comma(sc)?;
    let bound = sc.lambda_bound.ok_or_else(|| InputError::Invalid("gp needs a lambda_bound".into()))?;
    let l = lift(sc)?;
    let lp = match &l.lifted {
        Ok(lp) => lp,
        Err(entries) => {
            body.group(CheckGroup::new("lift-hypotheses", required(entries)));
            return Ok(());
        }
    };
    let scope = sc.scope("comma");
    let lambda = ModCat::new(Arc::new(c.lambda_algebra()));
    match builtin_gp(&lambda, bound, sc.depth, sc.cfg()) {
        Ok(pair) => body.group(gp_cross_check(lp, &pair, &comma_objects(sc), &scope)),
        Err(e) => body.group(CheckGroup::new(
            "gp-cross-check",
            vec![scope.entry("gorenstein-bound", "lambda", Status::Fail).with_detail(e.to_string())],
        )),
    }
    Ok(())
}

fn convert_cmd(sc: &Scenario, body: &mut Body) -> Result<(), InputError> {
    let c = comma(sc)?;
    let alg = Arc::new(c.lambda_algebra());
    let mut spec = json!({"p": alg.p(), "dim": alg.dim(), "table": alg.table(), "unit": alg.unit()});
    if let Some(es) = alg.idempotents() {
        spec["idempotents"] = json!(es);
    }
    if let Some(j) = alg.radical() {
        spec["radical"] = json!(j.basis_vectors());
    }
    body.put("algebra", spec);

    let scope = sc.scope("comma");
    let cfg = sc.cfg();
    let mut mods = BTreeMap::new();
    let mut entries = Vec::new();
    for (name, b) in &sc.comma_window {
        let n = c.to_lambda(&alg, b);
        let actions: Vec<Vec<Vec<u32>>> = n.actions().iter().map(|a| a.to_rows()).collect();
        mods.insert(name.clone(), json!({"algebra_id": "lambda", "dim": n.dim(), "actions": actions}));
        let problems = n.validate();
        let mut e = scope.entry("lambda-module-valid", name, Status::from_bool(problems.is_empty()));
        if !problems.is_empty() {
            e = e.with_detail(problems.join("; "));
        }
        entries.push(e);
        let status = match c.from_lambda(&n) {
            Ok(back) => Status::from_verdict(c.is_isomorphic(&back, b, &cfg).0),
            Err(err) => {
                entries.push(scope.entry("round-trip", name, Status::Fail).with_detail(err.to_string()));
                continue;
            }
        };
        entries.push(scope.entry("round-trip", name, status));
    }
    body.put("modules", json!(mods));
    body.group(CheckGroup::new("conversion", entries));
    Ok(())
}
