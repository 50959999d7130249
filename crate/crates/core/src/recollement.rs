//! The six stable functors between the stable category of the lifted pair and
//! those of its two component pairs, and window checks of the recollement
//! conditions: the adjoint pairs through their explicit correspondences,
//! full faithfulness, `Im Z_A = Ker U_B`, compatibility with suspension and,
//! for strong pairs, `Sigma Omega ~ id` in all three stable categories.

use serde::Serialize;

use crate::algrep::{ModMorphism, Module};
use crate::category::{AbelianCategory, Morphism};
use crate::classes::{FrobeniusPair, ModPair, Obj};
use crate::comma::{CommaMorphism, CommaObject};
use crate::error::{Error, Result};
use crate::exactla::FpMatrix;
use crate::lift::LiftedPair;
use crate::report::{CheckGroup, ReportEntry, Scope, Status};
use crate::stable::{
    complete_triangle, is_stable_iso, is_stably_zero, is_stably_zero_morphism, omega_sigma_unit, sigma_omega_counit,
    stable_hom_unchecked, stably_isomorphic, suspend, StableHom,
};

type Named<O> = Vec<(String, O)>;
type ObjFn<'f, A, B> = &'f dyn Fn(&A) -> Result<B>;
type MorFn<'f, A, B> = &'f dyn Fn(&Morphism<A>) -> Result<Morphism<B>>;

/// A stable functor given on objects and on morphism representatives.
pub struct Functor<'f, A, B> {
    pub name: &'static str,
    pub obj: ObjFn<'f, A, B>,
    pub mor: MorFn<'f, A, B>,
}

/// `F -| G` through `phi: Hom(F c, d) -> Hom(c, G d)` and its inverse `psi`.
/// `phi` receives `c`, `G d` and the morphism; `psi` receives `F c`, `d` and the morphism.
pub struct Adjunction<'f, C, D> {
    pub name: &'static str,
    pub left: Functor<'f, C, D>,
    pub right: Functor<'f, D, C>,
    #[allow(clippy::type_complexity)]
    pub phi: &'f dyn Fn(&C, &C, &Morphism<D>) -> Result<Morphism<C>>,
    #[allow(clippy::type_complexity)]
    pub psi: &'f dyn Fn(&D, &D, &Morphism<C>) -> Result<Morphism<D>>,
}

/// The functors built from a lifted pair.
pub struct Recollement<'a> {
    lifted: &'a LiftedPair,
}

impl<'a> Recollement<'a> {
    pub fn new(lifted: &'a LiftedPair) -> Self {
        Self { lifted }
    }

    pub fn lifted(&self) -> &LiftedPair {
        self.lifted
    }

    /// `s(Y) = (W, Y, sigma)` for the approximation `sigma: T(Y) -> W` on the `A` side.
    pub fn sbar(&self, y: &Module) -> Result<CommaObject> {
        let c = self.lifted.comma();
        let ty = c.apply_t(y);
        let sigma = self.lifted.pair_a().right_approx(&ty.module)?;
        Ok(c.object_with_image(sigma.target.clone(), y.clone(), ty, sigma.matrix))
    }

    /// `(f, g): B -> t` with `f phi = phi_t T(g)`, solved along the monic `phi`.
    pub fn lift_into(&self, b: &CommaObject, t: &CommaObject, g: &ModMorphism) -> Result<CommaMorphism> {
        let c = self.lifted.comma();
        let tg = c.t_matrix(&g.matrix, b.ty(), t.ty());
        let rhs = Morphism::new(b.ty().module.clone(), t.x().clone(), t.phi().mul(&tg));
        let f = c
            .r()
            .extend_along(&b.phi_morphism(), &rhs)
            .ok_or_else(|| Error::Inconsistent("T(g) does not extend along the structure map".into()))?;
        Ok(c.parts_unchecked(b, t, &f.matrix, &g.matrix))
    }

    pub fn sbar_morphism(&self, g: &ModMorphism) -> Result<CommaMorphism> {
        let s = self.sbar(&g.source)?;
        let t = self.sbar(&g.target)?;
        self.lift_into(&s, &t, g)
    }

    pub fn qbar(&self, b: &CommaObject) -> Module {
        self.lifted.comma().q(b).target
    }

    /// `(pi, 0): B -> Z_A(Coker phi)`.
    pub fn to_cokernel(&self, b: &CommaObject) -> CommaMorphism {
        let c = self.lifted.comma();
        let pi = c.q(b);
        let za = c.z_a(&pi.target);
        c.parts_unchecked(b, &za, &pi.matrix, &FpMatrix::zeros(c.p(), 0, b.y().dim()))
    }
}

fn members<P: FrobeniusPair>(pair: &P, window: &[(String, Obj<P>)]) -> Named<Obj<P>> {
    window.iter().filter(|(_, o)| pair.in_x(o).is_yes()).cloned().collect()
}

fn fail(scope: &Scope, check: &str, subject: &str, err: &Error) -> ReportEntry {
    scope.entry(check, subject, Status::Fail).with_detail(err.to_string())
}

fn shom<P: FrobeniusPair>(pair: &P, x: &Obj<P>, y: &Obj<P>) -> Result<StableHom<Obj<P>>> {
    stable_hom_unchecked(pair, x, y)
}

/// First morphism `x -> y` that is stably nonzero, if any.
fn sample_morphism<P: FrobeniusPair>(pair: &P, x: &Obj<P>, y: &Obj<P>) -> Option<Morphism<Obj<P>>> {
    shom(pair, x, y).ok().and_then(|h| h.basis().into_iter().next())
}

/// A stably nonzero morphism from `xs[i]` to the next object after it that admits one.
fn sample_out<P: FrobeniusPair>(pair: &P, xs: &[(String, Obj<P>)], i: usize) -> Option<(usize, Morphism<Obj<P>>)> {
    (1..=xs.len()).map(|k| (i + k) % xs.len()).find_map(|j| sample_morphism(pair, &xs[i].1, &xs[j].1).map(|m| (j, m)))
}

/// A stably nonzero morphism into `xs[i]` from the next object after it that admits one.
fn sample_in<P: FrobeniusPair>(pair: &P, xs: &[(String, Obj<P>)], i: usize) -> Option<(usize, Morphism<Obj<P>>)> {
    (1..=xs.len()).map(|k| (i + k) % xs.len()).find_map(|j| sample_morphism(pair, &xs[j].1, &xs[i].1).map(|m| (j, m)))
}

fn same_class<O: Clone>(h: &StableHom<O>, f: &FpMatrix, g: &FpMatrix) -> bool {
    h.is_zero(&f.sub(g))
}

/// Well-definedness, bijectivity and sampled naturality of one adjoint pair.
pub fn check_adjunction<C: FrobeniusPair, D: FrobeniusPair>(
    cp: &C,
    dp: &D,
    adj: &Adjunction<'_, Obj<C>, Obj<D>>,
    cs: &[(String, Obj<C>)],
    ds: &[(String, Obj<D>)],
    scope: &Scope,
) -> CheckGroup {
    let (ccat, dcat) = (cp.category(), dp.category());
    let cs = members(cp, cs);
    let ds = members(dp, ds);
    let mut out = Vec::new();
    for (ci, (cn, c)) in cs.iter().enumerate() {
        let fc = match (adj.left.obj)(c) {
            Ok(o) => o,
            Err(e) => {
                out.push(fail(scope, "functor-defined", &format!("{}({cn})", adj.left.name), &e));
                continue;
            }
        };
        for (di, (dn, d)) in ds.iter().enumerate() {
            let subject = format!("{cn},{dn}");
            let size = ccat.dim(c) + dcat.dim(d);
            let r = (|| -> Result<Vec<ReportEntry>> {
                let gd = (adj.right.obj)(d)?;
                let h1 = shom(dp, &fc, d)?;
                let h2 = shom(cp, c, &gd)?;
                let mut entries = Vec::new();
                // W goes to W in both directions
                let mut defined = true;
                for w in h1.w.basis_vectors() {
                    defined &= h2.is_zero(&(adj.phi)(c, &gd, &h1.hom.element(&w))?.matrix);
                }
                for w in h2.w.basis_vectors() {
                    defined &= h1.is_zero(&(adj.psi)(&fc, d, &h2.hom.element(&w))?.matrix);
                }
                entries.push(scope.entry("well-defined", &subject, Status::from_bool(defined)).with_dimension(size));
                let mut inverse = h1.dim() == h2.dim();
                for m in h1.basis() {
                    let back = (adj.psi)(&fc, d, &(adj.phi)(c, &gd, &m)?)?;
                    inverse &= same_class(&h1, &back.matrix, &m.matrix);
                }
                for m in h2.basis() {
                    let back = (adj.phi)(c, &gd, &(adj.psi)(&fc, d, &m)?)?;
                    inverse &= same_class(&h2, &back.matrix, &m.matrix);
                }
                entries.push(
                    scope
                        .entry("bijective", &subject, Status::from_bool(inverse))
                        .with_dimension(size)
                        .with_detail(format!("dims {} and {}", h1.dim(), h2.dim())),
                );
                // naturality in d along a stably nonzero d -> d'
                if let Some((j, h)) = sample_out(dp, &ds, di) {
                    let d2 = &ds[j].1;
                    let gd2 = (adj.right.obj)(d2)?;
                    let target = shom(cp, c, &gd2)?;
                    let gh = (adj.right.mor)(&h)?;
                    let mut ok = true;
                    for m in h1.basis() {
                        let lhs = (adj.phi)(c, &gd2, &dcat.compose(&h, &m))?;
                        let rhs = ccat.compose(&gh, &(adj.phi)(c, &gd, &m)?);
                        ok &= same_class(&target, &lhs.matrix, &rhs.matrix);
                    }
                    entries.push(scope.entry("natural-in-target", &subject, Status::from_bool(ok)).with_dimension(size));
                }
                // naturality in c along a stably nonzero c' -> c
                if let Some((j, h)) = sample_in(cp, &cs, ci) {
                    let c2 = &cs[j].1;
                    let target = shom(cp, c2, &gd)?;
                    let fh = (adj.left.mor)(&h)?;
                    let mut ok = true;
                    for m in h1.basis() {
                        let lhs = (adj.phi)(c2, &gd, &dcat.compose(&m, &fh))?;
                        let rhs = ccat.compose(&(adj.phi)(c, &gd, &m)?, &h);
                        ok &= same_class(&target, &lhs.matrix, &rhs.matrix);
                    }
                    entries.push(scope.entry("natural-in-source", &subject, Status::from_bool(ok)).with_dimension(size));
                }
                Ok(entries)
            })();
            match r {
                Ok(es) => out.extend(es),
                Err(e) => out.push(fail(scope, "correspondence-defined", &subject, &e).with_dimension(size)),
            }
        }
    }
    CheckGroup::new(adj.name, out)
}

/// The induced map on stable Hom-spaces is well defined and bijective on every window pair.
pub fn check_fully_faithful<C: FrobeniusPair, D: FrobeniusPair>(
    cp: &C,
    dp: &D,
    f: &Functor<'_, Obj<C>, Obj<D>>,
    window: &[(String, Obj<C>)],
    scope: &Scope,
) -> CheckGroup {
    let ccat = cp.category();
    let xs = members(cp, window);
    let mut out = Vec::new();
    for (an, a) in &xs {
        for (bn, b) in &xs {
            let subject = format!("{an},{bn}");
            let size = ccat.dim(a) + ccat.dim(b);
            let r = (|| -> Result<Vec<ReportEntry>> {
                let (fa, fb) = ((f.obj)(a)?, (f.obj)(b)?);
                let h1 = shom(cp, a, b)?;
                let h2 = shom(dp, &fa, &fb)?;
                let mut defined = true;
                for w in h1.w.basis_vectors() {
                    defined &= h2.is_zero(&(f.mor)(&h1.hom.element(&w))?.matrix);
                }
                let mut cols = Vec::new();
                for m in h1.basis() {
                    cols.push(h2.class_of(&(f.mor)(&m)?.matrix));
                }
                let induced = FpMatrix::from_columns(ccat.p(), h2.dim(), &cols);
                let bijective = h1.dim() == h2.dim() && (h1.dim() == 0 || induced.is_invertible());
                Ok(vec![
                    scope.entry("ff-well-defined", &subject, Status::from_bool(defined)).with_dimension(size),
                    scope
                        .entry("ff-bijective", &subject, Status::from_bool(bijective))
                        .with_dimension(size)
                        .with_detail(format!("dims {} and {}", h1.dim(), h2.dim())),
                ])
            })();
            match r {
                Ok(es) => out.extend(es),
                Err(e) => out.push(fail(scope, "ff-defined", &subject, &e).with_dimension(size)),
            }
        }
    }
    CheckGroup::new(f.name, out)
}

/// `F(Sigma X) ~ Sigma F(X)` for a functor exact on the `X` class: the image
/// of `X -> W_X -> Sigma X` is completed to a triangle whose connecting map
/// must be a stable isomorphism. Identities and sampled composites are preserved.
fn check_exact_functor<C: FrobeniusPair, D: FrobeniusPair>(
    cp: &C,
    dp: &D,
    f: &Functor<'_, Obj<C>, Obj<D>>,
    window: &[(String, Obj<C>)],
    scope: &Scope,
) -> Vec<ReportEntry> {
    let dcat = dp.category();
    let xs = members(cp, window);
    let mut out = Vec::new();
    for (n, x) in &xs {
        let subject = format!("{}({n})", f.name);
        let r = (|| -> Result<Status> {
            let s = suspend(cp, x)?;
            let (fi, fp) = ((f.mor)(&s.iota)?, (f.mor)(&s.pi)?);
            if !dcat.is_short_exact(&fi, &fp) || !is_stably_zero(dp, &fi.target).is_yes() {
                return Ok(Status::Fail);
            }
            let tri = complete_triangle(dp, &fi, &fp)?;
            Ok(Status::from_verdict(is_stable_iso(dp, &tri.h)?.0))
        })();
        out.push(match r {
            Ok(s) => scope.entry("sigma-commutes", &subject, s),
            Err(e) => fail(scope, "sigma-commutes", &subject, &e),
        });
    }
    out.extend(check_functoriality(cp, dp, f, &xs, scope));
    out
}

fn check_functoriality<C: FrobeniusPair, D: FrobeniusPair>(
    cp: &C,
    dp: &D,
    f: &Functor<'_, Obj<C>, Obj<D>>,
    xs: &[(String, Obj<C>)],
    scope: &Scope,
) -> Vec<ReportEntry> {
    let (ccat, dcat) = (cp.category(), dp.category());
    let mut out = Vec::new();
    for (i, (n, x)) in xs.iter().enumerate() {
        let r = (|| -> Result<bool> {
            let fid = (f.mor)(&ccat.identity(x))?;
            let h = shom(dp, &fid.source, &fid.target)?;
            Ok(same_class(&h, &fid.matrix, &dcat.identity(&fid.source).matrix))
        })();
        out.push(match r {
            Ok(ok) => scope.entry("preserves-identity", format!("{}({n})", f.name), Status::from_bool(ok)),
            Err(e) => fail(scope, "preserves-identity", &format!("{}({n})", f.name), &e),
        });
        let Some((j, u)) = sample_out(cp, xs, i) else {
            continue;
        };
        let (m, y) = &xs[j];
        let Some(v) = sample_morphism(cp, y, x).or_else(|| cp.category().hom(y, x).morphisms().into_iter().next()) else {
            continue;
        };
        let subject = format!("{}({n},{m})", f.name);
        let r = (|| -> Result<bool> {
            let whole = (f.mor)(&ccat.compose(&v, &u))?;
            let parts = dcat.compose(&(f.mor)(&v)?, &(f.mor)(&u)?);
            let h = shom(dp, &whole.source, &whole.target)?;
            Ok(same_class(&h, &whole.matrix, &parts.matrix))
        })();
        out.push(match r {
            Ok(ok) => scope.entry("preserves-composites", &subject, Status::from_bool(ok)),
            Err(e) => fail(scope, "preserves-composites", &subject, &e),
        });
    }
    out
}

/// Windows of the three categories.
#[derive(Clone, Debug)]
pub struct RecollementWindows {
    pub r: Vec<Module>,
    pub s: Vec<Module>,
    pub comma: Vec<CommaObject>,
}

fn named<O: Clone>(prefix: &str, objs: &[O]) -> Named<O> {
    objs.iter().enumerate().map(|(i, o)| (format!("{prefix}#{i}"), o.clone())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongUpgrade {
    pub strong_a: bool,
    pub strong_b: bool,
    pub strong_lifted: bool,
    /// Set only when all pairs are strong and every check passed.
    pub triangulated: bool,
    pub checks: CheckGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecollementReport {
    pub hypotheses: CheckGroup,
    pub step1: CheckGroup,
    pub adjunctions: Vec<CheckGroup>,
    pub fully_faithful: Vec<CheckGroup>,
    pub im_eq_ker: CheckGroup,
    pub strong_upgrade: StrongUpgrade,
    pub status: Status,
}

impl RecollementReport {
    pub fn groups(&self) -> Vec<&CheckGroup> {
        let mut out = vec![&self.hypotheses, &self.step1];
        out.extend(self.adjunctions.iter());
        out.extend(self.fully_faithful.iter());
        out.push(&self.im_eq_ker);
        out.push(&self.strong_upgrade.checks);
        out
    }

    /// A report for a lifted pair that was refused: only the hypotheses ran.
    pub fn refused(hypotheses: Vec<ReportEntry>, strong_a: bool, strong_b: bool, scope: &Scope) -> Self {
        let skip = |name: &str| CheckGroup::skipped(name, scope, "hypotheses failed");
        Self {
            hypotheses: CheckGroup::new("hypotheses", hypotheses),
            step1: skip("step1"),
            adjunctions: vec![skip("q-z_a"), skip("z_a-u_a"), skip("t_b-u_b"), skip("u_b-s")],
            fully_faithful: vec![skip("Z_A"), skip("T_B"), skip("s")],
            im_eq_ker: skip("im-eq-ker"),
            strong_upgrade: StrongUpgrade {
                strong_a,
                strong_b,
                strong_lifted: strong_a && strong_b,
                triangulated: false,
                checks: skip("strong-upgrade"),
            },
            status: Status::Fail,
        }
    }

    /// Every entry across all groups.
    pub fn entries(&self) -> impl Iterator<Item = &ReportEntry> {
        self.groups().into_iter().flat_map(|g| g.entries.iter())
    }
}

fn hypotheses_group(lifted: &LiftedPair, scope: &Scope) -> CheckGroup {
    let mut entries = lifted.hypotheses().to_vec();
    entries.push(scope.entry("theorem-level", "pair", Status::from_bool(lifted.theorem_level())));
    entries.push(scope.entry("proposition-level", "pair", Status::from_bool(lifted.proposition_level())));
    CheckGroup::new("hypotheses", entries)
}

fn step1_group(rec: &Recollement<'_>, rw: &Named<Module>, sw: &Named<Module>, cw: &Named<CommaObject>, scope: &Scope) -> CheckGroup {
    let lifted = rec.lifted();
    let (pa, pb) = (lifted.pair_a(), lifted.pair_b());
    let c = lifted.comma();
    let mut out = Vec::new();
    let q_obj = |b: &CommaObject| Ok(rec.qbar(b));
    let q_mor = |f: &CommaMorphism| Ok(c.q_morphism(f));
    out.extend(check_exact_functor(lifted, pa, &Functor { name: "q", obj: &q_obj, mor: &q_mor }, cw, scope));
    let za_obj = |x: &Module| Ok(c.z_a(x));
    let za_mor = |f: &ModMorphism| Ok(c.z_a_morphism(f));
    out.extend(check_exact_functor(pa, lifted, &Functor { name: "Z_A", obj: &za_obj, mor: &za_mor }, rw, scope));
    let ua_obj = |b: &CommaObject| Ok(b.x().clone());
    let ua_mor = |f: &CommaMorphism| Ok(c.component_a(f));
    out.extend(check_exact_functor(lifted, pa, &Functor { name: "U_A", obj: &ua_obj, mor: &ua_mor }, cw, scope));
    let tb_obj = |y: &Module| Ok(c.t_b(y));
    let tb_mor = |g: &ModMorphism| Ok(c.t_b_morphism(g));
    out.extend(check_exact_functor(pb, lifted, &Functor { name: "T_B", obj: &tb_obj, mor: &tb_mor }, sw, scope));
    let ub_obj = |b: &CommaObject| Ok(b.y().clone());
    let ub_mor = |f: &CommaMorphism| Ok(c.component_b(f));
    out.extend(check_exact_functor(lifted, pb, &Functor { name: "U_B", obj: &ub_obj, mor: &ub_mor }, cw, scope));

    // s is not exact; compare objects and check functoriality
    let ys = members(pb, sw);
    for (n, y) in &ys {
        let subject = format!("s({n})");
        let r = (|| -> Result<Vec<ReportEntry>> {
            let sy = rec.sbar(y)?;
            let in_x = scope.entry("s-lands-in-x", &subject, Status::from_verdict(lifted.in_x(&sy)));
            let sigma_y = suspend(pb, y)?;
            let left = suspend(lifted, &sy)?;
            let right = rec.sbar(sigma_y.object())?;
            let iso = stably_isomorphic(lifted, left.object(), &right)?.0;
            Ok(vec![in_x, scope.entry("sigma-commutes", &subject, Status::from_verdict(iso))])
        })();
        match r {
            Ok(es) => out.extend(es),
            Err(e) => out.push(fail(scope, "sigma-commutes", &subject, &e)),
        }
    }
    let s_obj = |y: &Module| rec.sbar(y);
    let s_mor = |g: &ModMorphism| rec.sbar_morphism(g);
    out.extend(check_functoriality(pb, lifted, &Functor { name: "s", obj: &s_obj, mor: &s_mor }, &ys, scope));
    // two lifts of the same g differ by (k, 0) with k sigma = 0, which must be stably zero
    for (n1, y1) in &ys {
        for (n2, y2) in &ys {
            let subject = format!("s({n1},{n2})");
            let r = (|| -> Result<bool> {
                let (s1, s2) = (rec.sbar(y1)?, rec.sbar(y2)?);
                let r = c.r();
                let pi = r.cokernel(&s1.phi_morphism());
                let zero = FpMatrix::zeros(c.p(), y2.dim(), y1.dim());
                let mut ok = true;
                for k in r.hom_basis(&pi.target, s2.x()) {
                    let diff = c.parts_unchecked(&s1, &s2, &k.mul(&pi.matrix), &zero);
                    ok &= is_stably_zero_morphism(lifted, &diff)?;
                }
                Ok(ok)
            })();
            out.push(match r {
                Ok(ok) => scope.entry("s-lift-independent", &subject, Status::from_bool(ok)),
                Err(e) => fail(scope, "s-lift-independent", &subject, &e),
            });
        }
    }
    // composite vanishing
    for (n, x) in members(pa, rw) {
        let ok = c.z_a(&x).y().dim() == 0;
        out.push(scope.entry("u_b-z_a-vanishes", &n, Status::from_bool(ok)));
    }
    for (n, y) in &ys {
        let v = is_stably_zero(pa, &rec.qbar(&c.t_b(y)));
        out.push(scope.entry("q-t_b-vanishes", n, Status::from_verdict(v)));
    }
    let mut vs: Named<Module> = sw.iter().filter(|(_, y)| pb.in_w(y).is_yes()).cloned().collect();
    vs.extend(pb.w_generators().into_iter().enumerate().map(|(i, v)| (format!("gen{i}"), v)));
    for (n, v) in &vs {
        let status = match rec.sbar(v) {
            Ok(sv) => Status::from_verdict(is_stably_zero(lifted, &sv)),
            Err(e) => {
                out.push(fail(scope, "s-kills-w", n, &e));
                continue;
            }
        };
        out.push(scope.entry("s-kills-w", n, status));
    }
    CheckGroup::new("step1", out)
}

fn adjunction_groups(rec: &Recollement<'_>, rw: &Named<Module>, sw: &Named<Module>, cw: &Named<CommaObject>, scope: &Scope) -> Vec<CheckGroup> {
    let lifted = rec.lifted();
    let (pa, pb) = (lifted.pair_a(), lifted.pair_b());
    let c = lifted.comma();
    let p = c.p();

    let q_obj = |b: &CommaObject| Ok(rec.qbar(b));
    let q_mor = |f: &CommaMorphism| Ok(c.q_morphism(f));
    let za_obj = |x: &Module| Ok(c.z_a(x));
    let za_mor = |f: &ModMorphism| Ok(c.z_a_morphism(f));
    let ua_obj = |b: &CommaObject| Ok(b.x().clone());
    let ua_mor = |f: &CommaMorphism| Ok(c.component_a(f));
    let tb_obj = |y: &Module| Ok(c.t_b(y));
    let tb_mor = |g: &ModMorphism| Ok(c.t_b_morphism(g));
    let ub_obj = |b: &CommaObject| Ok(b.y().clone());
    let ub_mor = |f: &CommaMorphism| Ok(c.component_b(f));
    let s_obj = |y: &Module| rec.sbar(y);
    let s_mor = |g: &ModMorphism| rec.sbar_morphism(g);

    // Hom(Coker phi, X) = Hom(B, Z_A X): a |-> (a pi, 0)
    let q_phi = |b: &CommaObject, zx: &CommaObject, a: &ModMorphism| -> Result<CommaMorphism> {
        let pi = c.q(b);
        Ok(c.parts_unchecked(b, zx, &a.matrix.mul(&pi.matrix), &FpMatrix::zeros(p, 0, b.y().dim())))
    };
    let q_psi = |coker: &Module, x: &Module, f: &CommaMorphism| -> Result<ModMorphism> {
        let pi = c.q(&f.source);
        let a = c.component_a(f);
        let d = c
            .r()
            .descend(&pi, &Morphism::new(f.source.x().clone(), x.clone(), a.matrix))
            .ok_or_else(|| Error::Inconsistent("map does not vanish on the image of phi".into()))?;
        Ok(Morphism::new(coker.clone(), x.clone(), d.matrix))
    };
    // Hom(Z_A X, B) = Hom(X, U_A B): (a, 0) |-> a
    let za_phi = |x: &Module, ub: &Module, f: &CommaMorphism| -> Result<ModMorphism> {
        Ok(Morphism::new(x.clone(), ub.clone(), c.component_a(f).matrix))
    };
    let za_psi = |zx: &CommaObject, b: &CommaObject, a: &ModMorphism| -> Result<CommaMorphism> {
        Ok(c.parts_unchecked(zx, b, &a.matrix, &FpMatrix::zeros(p, b.y().dim(), 0)))
    };
    // Hom(T_B Y, B) = Hom(Y, U_B B): (a, b) |-> b, g |-> (phi T(g), g)
    let tb_phi = |y: &Module, ub: &Module, f: &CommaMorphism| -> Result<ModMorphism> {
        Ok(Morphism::new(y.clone(), ub.clone(), c.component_b(f).matrix))
    };
    let tb_psi = |ty: &CommaObject, b: &CommaObject, g: &ModMorphism| -> Result<CommaMorphism> {
        let tg = c.t_matrix(&g.matrix, ty.ty(), b.ty());
        Ok(c.parts_unchecked(ty, b, &b.phi().mul(&tg), &g.matrix))
    };
    // Hom(U_B B, Y) = Hom(B, s Y): g |-> lift of (sigma T(g), g), (f, g) |-> g
    let s_phi = |b: &CommaObject, sy: &CommaObject, g: &ModMorphism| -> Result<CommaMorphism> {
        rec.lift_into(b, sy, &Morphism::new(b.y().clone(), sy.y().clone(), g.matrix.clone()))
    };
    let s_psi = |yb: &Module, y: &Module, f: &CommaMorphism| -> Result<ModMorphism> {
        Ok(Morphism::new(yb.clone(), y.clone(), c.component_b(f).matrix))
    };

    vec![
        check_adjunction(
            lifted,
            pa,
            &Adjunction {
                name: "q-z_a",
                left: Functor { name: "q", obj: &q_obj, mor: &q_mor },
                right: Functor { name: "Z_A", obj: &za_obj, mor: &za_mor },
                phi: &q_phi,
                psi: &q_psi,
            },
            cw,
            rw,
            scope,
        ),
        check_adjunction(
            pa,
            lifted,
            &Adjunction {
                name: "z_a-u_a",
                left: Functor { name: "Z_A", obj: &za_obj, mor: &za_mor },
                right: Functor { name: "U_A", obj: &ua_obj, mor: &ua_mor },
                phi: &za_phi,
                psi: &za_psi,
            },
            rw,
            cw,
            scope,
        ),
        check_adjunction(
            pb,
            lifted,
            &Adjunction {
                name: "t_b-u_b",
                left: Functor { name: "T_B", obj: &tb_obj, mor: &tb_mor },
                right: Functor { name: "U_B", obj: &ub_obj, mor: &ub_mor },
                phi: &tb_phi,
                psi: &tb_psi,
            },
            sw,
            cw,
            scope,
        ),
        check_adjunction(
            lifted,
            pb,
            &Adjunction {
                name: "u_b-s",
                left: Functor { name: "U_B", obj: &ub_obj, mor: &ub_mor },
                right: Functor { name: "s", obj: &s_obj, mor: &s_mor },
                phi: &s_phi,
                psi: &s_psi,
            },
            cw,
            sw,
            scope,
        ),
    ]
}

fn fully_faithful_groups(rec: &Recollement<'_>, rw: &Named<Module>, sw: &Named<Module>, scope: &Scope) -> Vec<CheckGroup> {
    let lifted = rec.lifted();
    let c = lifted.comma();
    let za_obj = |x: &Module| Ok(c.z_a(x));
    let za_mor = |f: &ModMorphism| Ok(c.z_a_morphism(f));
    let tb_obj = |y: &Module| Ok(c.t_b(y));
    let tb_mor = |g: &ModMorphism| Ok(c.t_b_morphism(g));
    let s_obj = |y: &Module| rec.sbar(y);
    let s_mor = |g: &ModMorphism| rec.sbar_morphism(g);
    vec![
        check_fully_faithful(lifted.pair_a(), lifted, &Functor { name: "Z_A", obj: &za_obj, mor: &za_mor }, rw, scope),
        check_fully_faithful(lifted.pair_b(), lifted, &Functor { name: "T_B", obj: &tb_obj, mor: &tb_mor }, sw, scope),
        check_fully_faithful(lifted.pair_b(), lifted, &Functor { name: "s", obj: &s_obj, mor: &s_mor }, sw, scope),
    ]
}

/// `B` lies in the kernel of `U_B` exactly when it is stably isomorphic to
/// `Z_A(Coker phi)`; in that case `T(Y) -> X` splits and `(pi, 0)` is the isomorphism.
fn im_eq_ker_group(rec: &Recollement<'_>, rw: &Named<Module>, cw: &Named<CommaObject>, scope: &Scope) -> CheckGroup {
    let lifted = rec.lifted();
    let c = lifted.comma();
    let mut objs = members(lifted, cw);
    objs.extend(members(lifted.pair_a(), rw).into_iter().map(|(n, x)| (format!("Z_A({n})"), c.z_a(&x))));
    let mut out = Vec::new();
    for (n, b) in &objs {
        let size = c.dim(b);
        let in_kernel = is_stably_zero(lifted.pair_b(), b.y());
        let r = (|| -> Result<ReportEntry> {
            let iso = is_stable_iso(lifted, &rec.to_cokernel(b))?.0;
            if in_kernel.is_yes() {
                let split = c.r().extend_along(&b.phi_morphism(), &c.r().identity(&b.ty().module)).is_some();
                if !split {
                    return Ok(scope
                        .entry("kernel-splits", n, Status::Fail)
                        .with_detail("T(Y) -> X has no retraction")
                        .with_dimension(size));
                }
                Ok(scope.entry("kernel-in-image", n, Status::from_verdict(iso)).with_dimension(size))
            } else if in_kernel.is_no() {
                Ok(scope.entry("image-in-kernel", n, Status::from_verdict(iso.not())).with_dimension(size))
            } else {
                Ok(scope.entry("kernel-in-image", n, Status::Undetermined).with_dimension(size))
            }
        })();
        out.push(match r {
            Ok(e) => e,
            Err(e) => fail(scope, "kernel-in-image", n, &e).with_dimension(size),
        });
    }
    CheckGroup::new("im-eq-ker", out)
}

fn strong_upgrade(rec: &Recollement<'_>, rw: &Named<Module>, sw: &Named<Module>, cw: &Named<CommaObject>, scope: &Scope) -> StrongUpgrade {
    let lifted = rec.lifted();
    let (pa, pb) = (lifted.pair_a(), lifted.pair_b());
    let (strong_a, strong_b, strong_lifted) = (pa.is_strong(), pb.is_strong(), lifted.is_strong());
    if !strong_lifted {
        return StrongUpgrade {
            strong_a,
            strong_b,
            strong_lifted,
            triangulated: false,
            checks: CheckGroup::skipped("strong-upgrade", scope, "pair not strong"),
        };
    }
    let mut out = Vec::new();
    out.extend(loop_checks(pa, "A", rw, scope));
    out.extend(loop_checks(pb, "B", sw, scope));
    out.extend(loop_checks(lifted, "comma", cw, scope));
    let checks = CheckGroup::new("strong-upgrade", out);
    let triangulated = checks.status == Status::Pass;
    StrongUpgrade { strong_a, strong_b, strong_lifted, triangulated, checks }
}

fn loop_checks<P: FrobeniusPair>(pair: &P, side: &str, window: &Named<Obj<P>>, scope: &Scope) -> Vec<ReportEntry> {
    let mut out = Vec::new();
    for (n, x) in members(pair, window) {
        let subject = format!("{side}:{n}");
        for (check, map) in [("omega-sigma-unit", omega_sigma_unit(pair, &x)), ("sigma-omega-counit", sigma_omega_counit(pair, &x))] {
            out.push(match map.and_then(|f| is_stable_iso(pair, &f)) {
                Ok((v, _)) => scope.entry(check, &subject, Status::from_verdict(v)),
                Err(e) => fail(scope, check, &subject, &e),
            });
        }
    }
    out
}

/// All recollement checks on the given windows.
pub fn verify_recollement(lifted: &LiftedPair, windows: &RecollementWindows, scope: &Scope) -> RecollementReport {
    let rec = Recollement::new(lifted);
    let rw = named("R", &windows.r);
    let sw = named("S", &windows.s);
    let cw = named("B", &windows.comma);
    let hypotheses = hypotheses_group(lifted, scope);
    let step1 = step1_group(&rec, &rw, &sw, &cw, scope);
    let adjunctions = adjunction_groups(&rec, &rw, &sw, &cw, scope);
    let fully_faithful = fully_faithful_groups(&rec, &rw, &sw, scope);
    let im_eq_ker = im_eq_ker_group(&rec, &rw, &cw, scope);
    let strong_upgrade = strong_upgrade(&rec, &rw, &sw, &cw, scope);
    let mut report = RecollementReport {
        hypotheses,
        step1,
        adjunctions,
        fully_faithful,
        im_eq_ker,
        strong_upgrade,
        status: Status::Pass,
    };
    let statuses: Vec<Status> = report.groups().iter().map(|g| g.status).collect();
    report.status = if statuses.contains(&Status::Fail) {
        Status::Fail
    } else if statuses.contains(&Status::Undetermined) {
        Status::Undetermined
    } else {
        Status::Pass
    };
    report
}

/// Membership in the lifted class against membership of the corresponding
/// module over the triangular matrix algebra, both at the same depth.
pub fn gp_cross_check(lifted: &LiftedPair, lambda_pair: &ModPair, window: &[CommaObject], scope: &Scope) -> CheckGroup {
    let c = lifted.comma();
    let lambda = lambda_pair.cat().algebra().clone();
    let mut out = Vec::new();
    for (i, b) in window.iter().enumerate() {
        let comma_side = lifted.in_x(b);
        let module_side = lambda_pair.in_x(&c.to_lambda(&lambda, b));
        let status = if comma_side == module_side { Status::Pass } else { Status::Fail };
        out.push(
            scope
                .entry("membership-agrees", format!("B#{i}"), status)
                .with_dimension(c.dim(b))
                .with_detail(format!("comma {comma_side:?}, module {module_side:?}")),
        );
    }
    CheckGroup::new("gp-cross-check", out)
}
