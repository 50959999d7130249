//! Scenario files: algebras by structure constants, modules, one bimodule,
//! named Frobenius pairs, an optional lift and the object windows.

use std::collections::BTreeMap;
use std::sync::Arc;

use frobcat_core::algrep::{Algebra, Bimodule, ModCat, Module};
use frobcat_core::category::AbelianCategory;
use frobcat_core::classes::{
    builtin_gp, builtin_mod_inj, cotorsion_to_frobenius, ModClass, ModPair, RightApprox,
};
use frobcat_core::comma::{CommaCat, CommaObject};
use frobcat_core::exactla::FpMatrix;
use frobcat_core::report::{ReportEntry, Scope, Status};
use frobcat_core::search::SearchConfig;
use frobcat_core::window::{comma_window, enumerate_window};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub const DEFAULT_DEPTH: usize = 4;
pub const DEFAULT_BUDGET: u64 = 4096;
pub const DEFAULT_MAX_DIM: usize = 2;
pub const DEFAULT_EXT_LIMIT: usize = 6;
pub const DEFAULT_STABLE_LIMIT: usize = 8;

type Rows = Vec<Vec<u32>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub p: u32,
    pub dim: usize,
    pub table: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
    #[serde(default)]
    pub idempotents: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub radical: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(rename = "algebra_id", alias = "algebra")]
    pub algebra: String,
    pub dim: usize,
    /// One matrix per algebra basis element, as rows.
    pub actions: Vec<Rows>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum BimoduleSpec {
    /// `copies` copies of the regular bimodule.
    Regular {
        regular: String,
        #[serde(default = "one")]
        copies: usize,
    },
    Explicit {
        left_algebra: String,
        right_algebra: String,
        dim: usize,
        left_actions: Vec<Rows>,
        right_actions: Vec<Rows>,
    },
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSpec {
    All,
    Zero,
    Projectives,
    Injectives,
    Gp(usize),
    Explicit(Vec<String>),
    SumsOf(Vec<String>),
    RightPerp(Vec<String>),
    Intersection(Box<ClassSpec>, Box<ClassSpec>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RightSpec {
    InjectiveEnvelope,
    Universal(Vec<String>),
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum StableMode {
    #[default]
    Approximation,
    Enumerated,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CotorsionSpec {
    pub x: ClassSpec,
    pub y: ClassSpec,
    pub window: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSpec {
    pub x: ClassSpec,
    pub w: ClassSpec,
    pub w_generators: Vec<String>,
    pub right: RightSpec,
    #[serde(default)]
    pub strong: bool,
    #[serde(default)]
    pub stable: StableMode,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub algebra: String,
    #[serde(default)]
    pub builtin: Option<String>,
    /// Gorenstein bound for `builtin: "gp"`.
    #[serde(default)]
    pub bound: Option<usize>,
    #[serde(default)]
    pub cotorsion: Option<CotorsionSpec>,
    #[serde(default)]
    pub custom: Option<CustomSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftSpec {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModWindowSpec {
    #[serde(default)]
    pub max_dim: Option<usize>,
    #[serde(default)]
    pub modules: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommaSpec {
    #[serde(rename = "X")]
    pub x: String,
    #[serde(rename = "Y")]
    pub y: String,
    pub phi: Rows,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommaWindowSpec {
    #[serde(default)]
    pub x_max_dim: Option<usize>,
    #[serde(default)]
    pub y_max_dim: Option<usize>,
    #[serde(default)]
    pub objects: Vec<CommaSpec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowsSpec {
    /// Keyed by algebra id.
    #[serde(default)]
    pub modules: BTreeMap<String, ModWindowSpec>,
    #[serde(default)]
    pub comma: Option<CommaWindowSpec>,
    /// Objects per window for the Ext comparison.
    #[serde(default)]
    pub ext_limit: Option<usize>,
    /// Objects per window for stable Hom tables and triangle checks.
    #[serde(default)]
    pub stable_limit: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GpSpec {
    /// Gorenstein bound used for the triangular matrix algebra.
    pub lambda_bound: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub bimodule: Option<BimoduleSpec>,
    #[serde(default)]
    pub pairs: BTreeMap<String, PairSpec>,
    #[serde(default)]
    pub lift: Option<LiftSpec>,
    #[serde(default)]
    pub windows: WindowsSpec,
    #[serde(default)]
    pub gp: Option<GpSpec>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub depth: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

/// A module window with its non-exhaustiveness flag.
#[derive(Debug, Clone)]
pub struct ModWindow {
    pub algebra: String,
    pub modules: Vec<(String, Module)>,
    pub exhaustive: bool,
}

/// A loaded scenario. `validation` lists every structural check; the other
/// fields are only meaningful when none of them failed.
#[derive(Debug)]
pub struct Scenario {
    pub name: String,
    pub depth: usize,
    pub budget: u64,
    pub seed: u64,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub modules: BTreeMap<String, Module>,
    pub comma: Option<CommaCat>,
    pub pairs: BTreeMap<String, ModPair>,
    /// Window entries reported by cotorsion constructions.
    pub pair_reports: BTreeMap<String, Vec<ReportEntry>>,
    pub lift: Option<(String, String)>,
    pub windows: BTreeMap<String, ModWindow>,
    pub comma_window: Vec<(String, CommaObject)>,
    pub comma_exhaustive: bool,
    pub lambda_bound: Option<usize>,
    pub ext_limit: usize,
    pub stable_limit: usize,
    pub validation: Vec<ReportEntry>,
}

impl Scenario {
    pub fn cfg(&self) -> SearchConfig {
        SearchConfig::new(self.budget, self.seed)
    }

    pub fn scope(&self, window: impl Into<String>) -> Scope {
        Scope::new(window, self.depth, self.budget)
    }

    pub fn is_valid(&self) -> bool {
        self.validation.iter().all(|e| e.status != Status::Fail)
    }

    pub fn cat(&self, algebra: &str) -> ModCat {
        ModCat::new(self.algebras[algebra].clone())
    }

    pub fn window(&self, algebra: &str) -> Vec<(String, Module)> {
        self.windows.get(algebra).map(|w| w.modules.clone()).unwrap_or_default()
    }

    pub fn pair_algebra(&self, name: &str) -> String {
        let pair = &self.pairs[name];
        self.algebras
            .iter()
            .find(|(_, a)| Arc::ptr_eq(a, pair.cat().algebra()))
            .map(|(k, _)| k.clone())
            .expect("pairs are built over scenario algebras")
    }
}

pub fn parse(text: &str) -> Result<ScenarioFile, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn load_path(path: &std::path::Path, overrides: Overrides) -> Result<Scenario, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read { path: path.display().to_string(), source })?;
    build(parse(&text)?, overrides)
}

fn matrix(p: u32, rows: usize, cols: usize, data: &Rows, what: &str) -> Result<FpMatrix, InputError> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(InputError::Invalid(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    FpMatrix::from_rows(p, cols, data).map_err(|e| InputError::Invalid(format!("{what}: {e}")))
}

fn check_name(failure: &str) -> String {
    failure.split(':').next().unwrap_or(failure).trim().to_string()
}

struct Builder<'s> {
    scope: Scope,
    algebras: &'s BTreeMap<String, Arc<Algebra>>,
    modules: &'s BTreeMap<String, Module>,
}

impl Builder<'_> {
    fn algebra(&self, id: &str) -> Result<Arc<Algebra>, InputError> {
        self.algebras.get(id).cloned().ok_or_else(|| InputError::Unresolved(format!("algebra {id}")))
    }

    fn module(&self, id: &str, algebra: &Arc<Algebra>) -> Result<Module, InputError> {
        let m = self.modules.get(id).ok_or_else(|| InputError::Unresolved(format!("module {id}")))?;
        if !Arc::ptr_eq(m.algebra(), algebra) {
            return Err(InputError::Invalid(format!("module {id} lives over another algebra")));
        }
        Ok(m.clone())
    }

    fn modules(&self, ids: &[String], algebra: &Arc<Algebra>) -> Result<Vec<Module>, InputError> {
        ids.iter().map(|id| self.module(id, algebra)).collect()
    }

    fn class(&self, spec: &ClassSpec, algebra: &Arc<Algebra>) -> Result<ModClass, InputError> {
        Ok(match spec {
            ClassSpec::All => ModClass::All,
            ClassSpec::Zero => ModClass::Zero,
            ClassSpec::Projectives => ModClass::Projectives,
            ClassSpec::Injectives => ModClass::Injectives,
            ClassSpec::Gp(bound) => ModClass::GorensteinProjective { bound: *bound },
            ClassSpec::Explicit(ids) => ModClass::Explicit(self.modules(ids, algebra)?),
            ClassSpec::SumsOf(ids) => ModClass::SumsOf(self.modules(ids, algebra)?),
            ClassSpec::RightPerp(ids) => ModClass::RightPerp(self.modules(ids, algebra)?),
            ClassSpec::Intersection(a, b) => {
                ModClass::Intersection(Box::new(self.class(a, algebra)?), Box::new(self.class(b, algebra)?))
            }
        })
    }

    /// `Ok(Err(entry))` is a validation failure rather than an input error.
    fn pair(
        &self,
        name: &str,
        spec: &PairSpec,
        depth: usize,
        cfg: SearchConfig,
        window: &[Module],
    ) -> Result<Result<(ModPair, Vec<ReportEntry>), ReportEntry>, InputError> {
        let alg = self.algebra(&spec.algebra)?;
        let cat = ModCat::new(alg.clone());
        let chosen = [spec.builtin.is_some(), spec.cotorsion.is_some(), spec.custom.is_some()];
        if chosen.iter().filter(|&&b| b).count() != 1 {
            return Err(InputError::Invalid(format!("pair {name}: give exactly one of builtin, cotorsion, custom")));
        }
        if let Some(b) = &spec.builtin {
            return match b.as_str() {
                "mod_inj" => Ok(Ok((builtin_mod_inj(&cat, depth, cfg), Vec::new()))),
                "gp" => {
                    let d = spec.bound.ok_or_else(|| InputError::Invalid(format!("pair {name}: gp needs a bound")))?;
                    Ok(builtin_gp(&cat, d, depth, cfg)
                        .map(|p| (p, Vec::new()))
                        .map_err(|e| self.scope.entry("gorenstein-bound", format!("pair {name}"), Status::Fail).with_detail(e.to_string())))
                }
                other => Err(InputError::Invalid(format!("pair {name}: unknown builtin {other}"))),
            };
        }
        if let Some(c) = &spec.cotorsion {
            let x = self.class(&c.x, &alg)?;
            let y = self.class(&c.y, &alg)?;
            let mut w = self.modules(&c.window, &alg)?;
            if w.is_empty() {
                w = window.to_vec();
            }
            let scope = Scope::new(format!("pair {name}"), depth, cfg.budget);
            return Ok(cotorsion_to_frobenius(&cat, x, y, &w, &scope, cfg)
                .map_err(|e| self.scope.entry("cotorsion", format!("pair {name}"), Status::Fail).with_detail(e.to_string())));
        }
        let c = spec.custom.as_ref().expect("one builder chosen");
        let right = match &c.right {
            RightSpec::InjectiveEnvelope => RightApprox::InjectiveEnvelope,
            RightSpec::Universal(ids) => RightApprox::Universal(self.modules(ids, &alg)?),
        };
        let mut pair = ModPair::new(
            cat,
            name,
            self.class(&c.x, &alg)?,
            self.class(&c.w, &alg)?,
            self.modules(&c.w_generators, &alg)?,
            right,
            c.strong,
            depth,
            cfg,
        );
        if c.stable == StableMode::Enumerated {
            pair = pair.with_enumerated_stable();
        }
        Ok(Ok((pair, Vec::new())))
    }
}

pub fn build(file: ScenarioFile, overrides: Overrides) -> Result<Scenario, InputError> {
    let depth = overrides.depth.or(file.depth).unwrap_or(DEFAULT_DEPTH);
    let budget = overrides.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET);
    let seed = overrides.seed.or(file.seed).unwrap_or(0);
    let cfg = SearchConfig::new(budget, seed);
    let scope = Scope::new("scenario", depth, budget);
    let mut validation = Vec::new();

    let mut algebras = BTreeMap::new();
    for (id, a) in &file.algebras {
        let mut alg = Algebra::new(a.p, a.dim, a.table.clone(), a.unit.clone()).map_err(|e| InputError::Invalid(format!("algebra {id}: {e}")))?;
        if let Some(es) = &a.idempotents {
            alg = alg.with_idempotents(es.clone()).map_err(|e| InputError::Invalid(format!("algebra {id}: {e}")))?;
        }
        if let Some(j) = &a.radical {
            alg = alg.with_radical(j.clone()).map_err(|e| InputError::Invalid(format!("algebra {id}: {e}")))?;
        }
        let failures = alg.validate();
        let subject = format!("algebra {id}");
        if failures.is_empty() {
            validation.push(scope.entry("algebra-valid", &subject, Status::Pass));
        }
        for f in failures {
            validation.push(scope.entry(check_name(&f), &subject, Status::Fail).with_detail(f));
        }
        algebras.insert(id.clone(), Arc::new(alg));
    }
    if algebras.values().map(|a| a.p()).collect::<std::collections::BTreeSet<_>>().len() > 1 {
        return Err(InputError::Invalid("all algebras must share one field".into()));
    }
    let algebras_ok = validation.iter().all(|e| e.status != Status::Fail);

    let mut modules = BTreeMap::new();
    for (id, m) in &file.modules {
        let alg = algebras.get(&m.algebra).ok_or_else(|| InputError::Unresolved(format!("algebra {} of module {id}", m.algebra)))?;
        if m.actions.len() != alg.dim() {
            return Err(InputError::Invalid(format!("module {id}: one action per basis element of {}", m.algebra)));
        }
        let actions = m
            .actions
            .iter()
            .enumerate()
            .map(|(i, a)| matrix(alg.p(), m.dim, m.dim, a, &format!("module {id} action {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        let module = Module::from_actions(alg.clone(), m.dim, actions).map_err(|e| InputError::Invalid(format!("module {id}: {e}")))?;
        let subject = format!("module {id}");
        let failures = if algebras_ok { module.validate() } else { Vec::new() };
        if failures.is_empty() {
            validation.push(scope.entry("module-valid", &subject, Status::from_bool(algebras_ok)));
        }
        for f in failures {
            validation.push(scope.entry(check_name(&f), &subject, Status::Fail).with_detail(f));
        }
        modules.insert(id.clone(), module);
    }

    let mut scenario = Scenario {
        name: file.name.clone(),
        depth,
        budget,
        seed,
        algebras,
        modules,
        comma: None,
        pairs: BTreeMap::new(),
        pair_reports: BTreeMap::new(),
        lift: None,
        windows: BTreeMap::new(),
        comma_window: Vec::new(),
        comma_exhaustive: true,
        lambda_bound: file.gp.as_ref().map(|g| g.lambda_bound),
        ext_limit: file.windows.ext_limit.unwrap_or(DEFAULT_EXT_LIMIT),
        stable_limit: file.windows.stable_limit.unwrap_or(DEFAULT_STABLE_LIMIT),
        validation: Vec::new(),
    };
    if !algebras_ok {
        scenario.validation = validation;
        return Ok(scenario);
    }
    let b = Builder { scope: scope.clone(), algebras: &scenario.algebras, modules: &scenario.modules };

    // windows over each algebra: enumerated classes, then listed modules
    let mut windows = BTreeMap::new();
    for (id, spec) in &file.windows.modules {
        let alg = b.algebra(id)?;
        let mut mods = Vec::new();
        let mut exhaustive = true;
        if let Some(d) = spec.max_dim {
            let w = enumerate_window(&alg, d, &cfg);
            exhaustive = w.exhaustive;
            mods.extend(w.objects.into_iter().enumerate().map(|(i, m)| (format!("{id}#{i}"), m)));
        }
        for m in &spec.modules {
            mods.push((m.clone(), b.module(m, &alg)?));
        }
        windows.insert(id.clone(), ModWindow { algebra: id.clone(), modules: mods, exhaustive });
    }
    for (id, alg) in b.algebras {
        if !windows.contains_key(id) {
            let w = enumerate_window(alg, DEFAULT_MAX_DIM, &cfg);
            let modules = w.objects.into_iter().enumerate().map(|(i, m)| (format!("{id}#{i}"), m)).collect();
            windows.insert(id.clone(), ModWindow { algebra: id.clone(), modules, exhaustive: w.exhaustive });
        }
    }

    let mut comma = None;
    if let Some(bm) = &file.bimodule {
        let built = match bm {
            BimoduleSpec::Regular { regular, copies } => {
                let alg = b.algebra(regular)?;
                let reg = Bimodule::regular(alg);
                let mut out = reg.clone();
                for _ in 1..(*copies).max(1) {
                    out = out.direct_sum(&reg).map_err(|e| InputError::Invalid(format!("bimodule: {e}")))?;
                }
                Ok(out)
            }
            BimoduleSpec::Explicit { left_algebra, right_algebra, dim, left_actions, right_actions } => {
                let (l, r) = (b.algebra(left_algebra)?, b.algebra(right_algebra)?);
                if left_actions.len() != l.dim() || right_actions.len() != r.dim() {
                    return Err(InputError::Invalid("bimodule: one action per basis element".into()));
                }
                let p = l.p();
                let la = left_actions
                    .iter()
                    .map(|a| matrix(p, *dim, *dim, a, "bimodule left action"))
                    .collect::<Result<Vec<_>, _>>()?;
                let ra = right_actions
                    .iter()
                    .map(|a| matrix(p, *dim, *dim, a, "bimodule right action"))
                    .collect::<Result<Vec<_>, _>>()?;
                Bimodule::new(l, r, *dim, la, ra)
            }
        };
        match built {
            Ok(bimodule) => {
                validation.push(scope.entry("bimodule-valid", "bimodule", Status::Pass));
                let (l, r) = (bimodule.left().clone(), bimodule.right().clone());
                let t = frobcat_core::algrep::TensorFunctor::new(bimodule);
                comma = Some(CommaCat::new(t, ModCat::new(l), ModCat::new(r)).map_err(|e| InputError::Invalid(format!("comma category: {e}")))?);
            }
            Err(e) => validation.push(scope.entry("bimodule-actions", "bimodule", Status::Fail).with_detail(e.to_string())),
        }
    }

    let mut pairs = BTreeMap::new();
    let mut pair_reports = BTreeMap::new();
    for (pname, spec) in &file.pairs {
        let w: Vec<Module> = windows.get(&spec.algebra).map(|w: &ModWindow| w.modules.iter().map(|(_, m)| m.clone()).collect()).unwrap_or_default();
        match b.pair(pname, spec, depth, cfg, &w)? {
            Ok((pair, report)) => {
                validation.push(scope.entry("pair-built", format!("pair {pname}"), Status::Pass));
                pairs.insert(pname.clone(), pair);
                pair_reports.insert(pname.clone(), report);
            }
            Err(entry) => validation.push(entry),
        }
    }

    let mut lift = None;
    if let Some(l) = &file.lift {
        for n in [&l.a, &l.b] {
            if !file.pairs.contains_key(n) {
                return Err(InputError::Unresolved(format!("pair {n}")));
            }
        }
        let c = comma.as_ref().ok_or_else(|| InputError::Invalid("lift needs a bimodule".into()))?;
        let ok_sides = |pair: Option<&ModPair>, alg: &Arc<Algebra>| pair.map(|p| Arc::ptr_eq(p.cat().algebra(), alg)).unwrap_or(true);
        if !ok_sides(pairs.get(&l.a), c.r().algebra()) || !ok_sides(pairs.get(&l.b), c.s().algebra()) {
            return Err(InputError::Invalid("lift: pair a must live over the left algebra and pair b over the right".into()));
        }
        lift = Some((l.a.clone(), l.b.clone()));
    }

    let mut comma_objs = Vec::new();
    let mut comma_exhaustive = true;
    if let Some(spec) = &file.windows.comma {
        let c = comma.as_ref().ok_or_else(|| InputError::Invalid("comma window needs a bimodule".into()))?;
        for (i, o) in spec.objects.iter().enumerate() {
            let x = b.module(&o.x, c.r().algebra())?;
            let y = b.module(&o.y, c.s().algebra())?;
            let ty = c.apply_t(&y);
            let phi = matrix(c.p(), x.dim(), ty.module.dim(), &o.phi, &format!("comma object {i}"))?;
            let subject = format!("({}, {}, phi#{i})", o.x, o.y);
            match c.object(x, y, phi) {
                Ok(obj) => {
                    validation.push(scope.entry("comma-object-valid", &subject, Status::Pass));
                    comma_objs.push((subject, obj));
                }
                Err(e) => validation.push(scope.entry("comma-object-valid", &subject, Status::Fail).with_detail(e.to_string())),
            }
        }
        if let (Some(dx), Some(dy)) = (spec.x_max_dim, spec.y_max_dim) {
            let xs = enumerate_window(c.r().algebra(), dx, &cfg);
            let ys = enumerate_window(c.s().algebra(), dy, &cfg);
            let w = comma_window(c, &xs.objects, &ys.objects, &cfg);
            comma_exhaustive = xs.exhaustive && ys.exhaustive && w.exhaustive;
            comma_objs.extend(w.objects.into_iter().enumerate().map(|(i, o)| (format!("comma#{i}"), o)));
        } else if spec.x_max_dim.is_some() || spec.y_max_dim.is_some() {
            return Err(InputError::Invalid("comma window: give both x_max_dim and y_max_dim".into()));
        }
    }

    scenario.windows = windows;
    scenario.comma = comma;
    scenario.pairs = pairs;
    scenario.pair_reports = pair_reports;
    scenario.lift = lift;
    scenario.comma_window = comma_objs;
    scenario.comma_exhaustive = comma_exhaustive;
    scenario.validation = validation;
    Ok(scenario)
}
