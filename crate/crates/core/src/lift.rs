//! Frobenius pairs in the comma category lifted from pairs on both sides:
//! `X` is the class of `(X, Y, phi)` with `Y` in the lifted `Y`-side class,
//! `phi` monic and `Coker phi` in the `X`-side class, and likewise for `W`.

use crate::algrep::Module;
use crate::category::{AbelianCategory, Morphism};
use crate::classes::{hat_membership, FrobeniusPair, HatClass, ModPair};
use crate::comma::{CommaCat, CommaMorphism, CommaObject};
use crate::error::{Error, Result};
use crate::homalg::derived_tensor;
use crate::report::{ReportEntry, Scope, Status};
use crate::search::{SearchConfig, Verdict};

#[derive(Clone, Debug)]
pub struct LiftedPair {
    comma: CommaCat,
    a: ModPair,
    b: ModPair,
    depth: usize,
    cfg: SearchConfig,
    hypotheses: Vec<ReportEntry>,
}

/// Hypothesis checks on a window of `S`-modules. `Y` objects come from the
/// window, `V` objects from the window and the generators of the `B`-side `W`.
pub fn lift_hypotheses(comma: &CommaCat, a: &ModPair, b: &ModPair, s_window: &[Module], scope: &Scope) -> Vec<ReportEntry> {
    let depth = scope.depth;
    let cfg = a.search();
    let mut out = Vec::new();
    let ys: Vec<(String, Module)> = s_window
        .iter()
        .enumerate()
        .filter(|(_, y)| b.in_x(y).is_yes())
        .map(|(i, y)| (format!("#{i}"), y.clone()))
        .collect();
    let mut vs: Vec<(String, Module)> = s_window
        .iter()
        .enumerate()
        .filter(|(_, y)| b.in_w(y).is_yes())
        .map(|(i, y)| (format!("#{i}"), y.clone()))
        .collect();
    vs.extend(b.w_generators().into_iter().enumerate().map(|(i, v)| (format!("gen{i}"), v)));

    for (name, y) in &ys {
        let status = match derived_tensor(comma.functor(), comma.s(), comma.r(), y, depth) {
            Ok(l) => {
                let bad: Vec<usize> = (1..=depth).filter(|&n| l[n].dim() > 0).collect();
                let mut e = scope.entry("hyp-ltor-vanish", name.clone(), Status::from_bool(bad.is_empty()));
                if let Some(&n) = bad.first() {
                    e = e.with_degree(n).with_dimension(l[n].dim()).with_detail(format!("L_{n}T nonzero"));
                }
                out.push(e);
                continue;
            }
            Err(_) => Status::Fail,
        };
        out.push(scope.entry("hyp-ltor-vanish", name.clone(), status));
    }
    let hat = HatClass { base: a.w_class().clone(), generators: a.w_generators(), bound: depth };
    for (name, v) in &vs {
        let tv = comma.apply_t(v).module;
        out.push(scope.entry("hyp-t-v-in-w", name.clone(), Status::from_verdict(a.in_w(&tv))));
        let (verdict, witness) = hat_membership(a.cat(), &hat, &tv, depth, cfg);
        let mut e = scope.entry("hyp-t-v-in-w-hat", name.clone(), Status::from_verdict(verdict));
        if let Some(w) = witness {
            e = e.with_dimension(w.length()).with_detail("resolution length");
        }
        out.push(e);
    }
    for (name, y) in &ys {
        let ty = comma.apply_t(y).module;
        out.push(scope.entry("hyp-t-y-in-x", name.clone(), Status::from_verdict(a.in_x(&ty))));
    }
    out
}

fn passes(entries: &[ReportEntry], check: &str) -> bool {
    entries.iter().filter(|e| e.check == check).all(|e| e.status == Status::Pass)
}

impl LiftedPair {
    /// Refuses unless higher derived functors vanish on `Y` and `T(V)` lies in the hat class of `W`.
    pub fn new(comma: CommaCat, a: ModPair, b: ModPair, s_window: &[Module], scope: &Scope) -> Result<Self> {
        let pair = Self::new_unchecked(comma, a, b, s_window, scope);
        let failed: Vec<String> = pair
            .hypotheses
            .iter()
            .filter(|e| (e.check == "hyp-ltor-vanish" || e.check == "hyp-t-v-in-w-hat") && e.status != Status::Pass)
            .map(|e| format!("{} {}", e.check, e.subject))
            .collect();
        if failed.is_empty() {
            Ok(pair)
        } else {
            Err(Error::Hypothesis(failed.join(", ")))
        }
    }

    /// Builds the pair whatever the hypothesis checks say; they stay on record.
    pub fn new_unchecked(comma: CommaCat, a: ModPair, b: ModPair, s_window: &[Module], scope: &Scope) -> Self {
        let hypotheses = lift_hypotheses(&comma, &a, &b, s_window, scope);
        let cfg = *a.search();
        Self { comma, a, b, depth: scope.depth, cfg, hypotheses }
    }

    pub fn comma(&self) -> &CommaCat {
        &self.comma
    }

    pub fn pair_a(&self) -> &ModPair {
        &self.a
    }

    pub fn pair_b(&self) -> &ModPair {
        &self.b
    }

    pub fn hypotheses(&self) -> &[ReportEntry] {
        &self.hypotheses
    }

    /// `T(V) in W`, `T(Y) in X` and derived vanishing all hold on the window.
    pub fn theorem_level(&self) -> bool {
        ["hyp-ltor-vanish", "hyp-t-v-in-w", "hyp-t-y-in-x"].iter().all(|c| passes(&self.hypotheses, c))
    }

    /// Derived vanishing and `T(V)` in the hat class of `W`.
    pub fn proposition_level(&self) -> bool {
        ["hyp-ltor-vanish", "hyp-t-v-in-w-hat"].iter().all(|c| passes(&self.hypotheses, c))
    }
}

impl FrobeniusPair for LiftedPair {
    type Cat = CommaCat;

    fn category(&self) -> &CommaCat {
        &self.comma
    }

    fn label(&self) -> String {
        format!("lift({}, {})", self.a.label(), self.b.label())
    }

    fn depth(&self) -> usize {
        self.depth
    }

    fn search(&self) -> &SearchConfig {
        &self.cfg
    }

    fn in_x(&self, x: &CommaObject) -> Verdict {
        self.comma.membership_b(|m| self.a.in_x(m), |m| self.b.in_x(m), x)
    }

    fn in_w(&self, x: &CommaObject) -> Verdict {
        self.comma.membership_b(|m| self.a.in_w(m), |m| self.b.in_w(m), x)
    }

    /// The middle row `(T(V'), V') -> (T(V') (+) W', V') -> (W', 0)` receiving `B`.
    fn right_approx(&self, x: &CommaObject) -> Result<CommaMorphism> {
        let c = &self.comma;
        let r = c.r();
        let beta = self.b.right_approx(x.y())?;
        let pi = c.q(x);
        let iota = self.a.right_approx(&pi.target)?;
        let tv = c.apply_t(&beta.target);
        let sum = r.direct_sum(&[tv.module.clone(), iota.target.clone()]);
        let middle = c.object_with_image(sum.object.clone(), beta.target.clone(), tv.clone(), sum.injections[0].matrix.clone());
        let t_beta = Morphism::new(x.ty().module.clone(), tv.module.clone(), c.t_matrix(&beta.matrix, x.ty(), &tv));
        let a1 = r
            .extend_along(&x.phi_morphism(), &t_beta)
            .ok_or_else(|| Error::Inconsistent("T(beta) does not extend along phi".into()))?;
        let a = r.into_sum(&sum, &[a1, r.compose(&iota, &pi)]);
        let f = c.parts_unchecked(x, &middle, &a.matrix, &beta.matrix);
        if !c.is_valid(&f) || !c.is_mono(&f) {
            return Err(Error::Inconsistent("assembled approximation is not a monomorphism".into()));
        }
        Ok(f)
    }

    /// `(T(V) (+) W, V, incl) -> B` built from left approximations on both sides.
    fn left_approx(&self, x: &CommaObject) -> Result<CommaMorphism> {
        let c = &self.comma;
        let r = c.r();
        let beta = self.b.left_approx(x.y())?;
        let pi = c.q(x);
        let rho = self.a.left_approx(&pi.target)?;
        let tv = c.apply_t(&beta.source);
        let sum = r.direct_sum(&[tv.module.clone(), rho.source.clone()]);
        let middle = c.object_with_image(sum.object.clone(), beta.source.clone(), tv.clone(), sum.injections[0].matrix.clone());
        let a1 = Morphism::new(tv.module.clone(), x.x().clone(), x.phi().mul(&c.t_matrix(&beta.matrix, &tv, x.ty())));
        let a2 = r
            .factor_through(&pi, &rho)
            .ok_or_else(|| Error::Inconsistent("W does not lift along Coker phi".into()))?;
        let a = r.from_sum(&sum, &[a1, a2]);
        let f = c.parts_unchecked(&middle, x, &a.matrix, &beta.matrix);
        if !c.is_valid(&f) || !c.is_epi(&f) {
            return Err(Error::Inconsistent("assembled approximation is not an epimorphism".into()));
        }
        Ok(f)
    }

    fn is_strong(&self) -> bool {
        self.a.is_strong() && self.b.is_strong()
    }

    fn w_generators(&self) -> Vec<CommaObject> {
        let mut out: Vec<CommaObject> = self.b.w_generators().iter().map(|v| self.comma.t_b(v)).collect();
        out.extend(self.a.w_generators().iter().map(|w| self.comma.z_a(w)));
        out
    }

    fn enumerated_stable(&self) -> bool {
        self.a.enumerated_stable() || self.b.enumerated_stable()
    }
}

/// The classes recovered from the lifted one: `X` with `(X, 0)` in it and
/// `Y` with `(T(Y), Y)` in it, compared against the inputs.
pub fn recover_components(pair: &LiftedPair, r_window: &[Module], s_window: &[Module], scope: &Scope) -> Vec<ReportEntry> {
    let c = pair.comma();
    let mut out = Vec::new();
    for (i, x) in r_window.iter().enumerate() {
        let ok = pair.in_x(&c.z_a(x)) == pair.pair_a().in_x(x);
        out.push(scope.entry("recover-x", format!("#{i}"), Status::from_bool(ok)));
    }
    for (i, y) in s_window.iter().enumerate() {
        let ok = pair.in_x(&c.t_b(y)) == pair.pair_b().in_x(y);
        out.push(scope.entry("recover-y", format!("#{i}"), Status::from_bool(ok)));
    }
    out
}
