//! Stable categories `X / W` of left Frobenius pairs, computed on demand:
//! stable Hom-spaces, suspension, loops, triangles and stable isomorphisms.

use crate::category::{scan_for, AbelianCategory, HomSpace, Morphism};
use crate::classes::{FrobeniusPair, Obj};
use crate::error::{Error, Result};
use crate::exactla::{quotient_map, FpMatrix, QuotientMap, Subspace};
use crate::report::{ReportEntry, Scope, Status};
use crate::search::{SearchConfig, Verdict};

/// `Hom(X, Y)` with the subspace of maps factoring through `W`.
#[derive(Clone, Debug)]
pub struct StableHom<O> {
    pub hom: HomSpace<O>,
    /// Coordinates inside `hom`.
    pub w: Subspace,
    quotient: QuotientMap,
}

impl<O: Clone> StableHom<O> {
    pub fn hom_dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn w_dim(&self) -> usize {
        self.w.dim()
    }

    pub fn dim(&self) -> usize {
        self.quotient.quotient_dim
    }

    pub fn class_of(&self, f: &FpMatrix) -> Vec<u32> {
        self.quotient.projection.mul_vec(&self.hom.coords(f))
    }

    pub fn is_zero(&self, f: &FpMatrix) -> bool {
        self.w.contains(&self.hom.coords(f))
    }

    pub fn representative(&self, class: &[u32]) -> Morphism<O> {
        self.hom.element(&self.quotient.section.mul_vec(class))
    }

    /// Representatives of a basis of the stable space.
    pub fn basis(&self) -> Vec<Morphism<O>> {
        (0..self.dim()).map(|j| self.hom.element(&self.quotient.section.column(j))).collect()
    }

    /// Stable Hom as a space of its own: classes with representatives.
    pub fn as_hom_space(&self, p: u32) -> HomSpace<O> {
        let reps: Vec<FpMatrix> = self.basis().into_iter().map(|m| m.matrix).collect();
        let (rows, cols) = self.hom.shape();
        HomSpace::from_spanning(p, self.hom.source.clone(), self.hom.target.clone(), rows, cols, &reps)
    }
}

fn build<O: Clone>(p: u32, hom: HomSpace<O>, spanning: &[FpMatrix]) -> StableHom<O> {
    let vecs: Vec<Vec<u32>> = spanning.iter().map(|m| hom.coords(m)).collect();
    let w = Subspace::from_vectors(p, hom.dim(), &vecs);
    let quotient = quotient_map(hom.dim(), &w);
    StableHom { hom, w, quotient }
}

/// `W(X, Y)` as `Hom(W_X, Y) . iota` for a given monomorphism `iota: X -> W_X` into `W`.
pub fn stable_hom_via<C: AbelianCategory>(cat: &C, iota: &Morphism<C::Obj>, y: &C::Obj) -> StableHom<C::Obj> {
    let hom = cat.hom(&iota.source, y);
    let spanning: Vec<FpMatrix> = cat.hom_basis(&iota.target, y).iter().map(|g| g.mul(&iota.matrix)).collect();
    build(cat.p(), hom, &spanning)
}

/// `W(X, Y)` spanned by composites through the listed objects.
pub fn stable_hom_enumerated<C: AbelianCategory>(cat: &C, gens: &[C::Obj], x: &C::Obj, y: &C::Obj) -> StableHom<C::Obj> {
    let hom = cat.hom(x, y);
    let mut spanning = Vec::new();
    for w in gens {
        let into = cat.hom_basis(x, w);
        if into.is_empty() {
            continue;
        }
        for g in cat.hom_basis(w, y) {
            for f in &into {
                spanning.push(g.mul(f));
            }
        }
    }
    build(cat.p(), hom, &spanning)
}

/// Stable Hom-space in the pair's own mode. Does not check memberships.
pub fn stable_hom_unchecked<P: FrobeniusPair>(pair: &P, x: &Obj<P>, y: &Obj<P>) -> Result<StableHom<Obj<P>>> {
    let cat = pair.category();
    if pair.enumerated_stable() {
        return Ok(stable_hom_enumerated(cat, &pair.w_generators(), x, y));
    }
    let iota = pair.right_approx(x)?;
    Ok(stable_hom_via(cat, &iota, y))
}

pub fn stable_hom<P: FrobeniusPair>(pair: &P, x: &Obj<P>, y: &Obj<P>) -> Result<StableHom<Obj<P>>> {
    for o in [x, y] {
        if !pair.in_x(o).is_yes() {
            return Err(Error::Membership(format!("object not in the X class of {}", pair.label())));
        }
    }
    stable_hom_unchecked(pair, x, y)
}

pub fn is_stably_zero_morphism<P: FrobeniusPair>(pair: &P, f: &Morphism<Obj<P>>) -> Result<bool> {
    Ok(stable_hom_unchecked(pair, &f.source, &f.target)?.is_zero(&f.matrix))
}

/// `id_X` factors through `W`.
pub fn is_stably_zero<P: FrobeniusPair>(pair: &P, x: &Obj<P>) -> Verdict {
    let cat = pair.category();
    match stable_hom_unchecked(pair, x, x) {
        Ok(h) => Verdict::from_bool(h.is_zero(&cat.identity(x).matrix)),
        Err(_) => Verdict::Undetermined,
    }
}

/// Exact test: solves for `g` with `gf - id` and `fg - id` factoring through `W`.
pub fn is_stable_iso<P: FrobeniusPair>(pair: &P, f: &Morphism<Obj<P>>) -> Result<(Verdict, Option<Morphism<Obj<P>>>)> {
    let cat = pair.category();
    let back = cat.hom(&f.target, &f.source);
    let wx = stable_hom_unchecked(pair, &f.source, &f.source)?;
    let wy = stable_hom_unchecked(pair, &f.target, &f.target)?;
    stable_inverse(cat, f, &back, &wx, &wy)
}

fn stable_inverse<C: AbelianCategory>(
    cat: &C,
    f: &Morphism<C::Obj>,
    back: &HomSpace<C::Obj>,
    wx: &StableHom<C::Obj>,
    wy: &StableHom<C::Obj>,
) -> Result<(Verdict, Option<Morphism<C::Obj>>)> {
    let p = cat.p();
    let (nx, ny) = (cat.dim(&f.source), cat.dim(&f.target));
    let rows = nx * nx + ny * ny;
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for g in back.basis() {
        let mut c = g.mul(&f.matrix).data().to_vec();
        c.extend_from_slice(f.matrix.mul(g).data());
        cols.push(c);
    }
    for v in wx.w.basis_vectors() {
        let mut c = wx.hom.element(&v).matrix.neg().data().to_vec();
        c.extend(std::iter::repeat_n(0, ny * ny));
        cols.push(c);
    }
    for v in wy.w.basis_vectors() {
        let mut c = vec![0; nx * nx];
        c.extend_from_slice(wy.hom.element(&v).matrix.neg().data());
        cols.push(c);
    }
    let mut rhs = FpMatrix::identity(p, nx).data().to_vec();
    rhs.extend_from_slice(FpMatrix::identity(p, ny).data());
    let system = FpMatrix::from_columns(p, rows, &cols);
    match system.solve(&rhs)? {
        Some(sol) => Ok((Verdict::Yes, Some(back.element(&sol[..back.dim()])))),
        None => Ok((Verdict::No, None)),
    }
}

/// Searches stable `Hom(X, Y)` for a stable isomorphism.
pub fn stably_isomorphic<P: FrobeniusPair>(pair: &P, x: &Obj<P>, y: &Obj<P>) -> Result<(Verdict, Option<Morphism<Obj<P>>>)> {
    let cat = pair.category();
    let zx = is_stably_zero(pair, x);
    let zy = is_stably_zero(pair, y);
    if zx.is_yes() || zy.is_yes() {
        let both = zx.is_yes() && zy.is_yes();
        return Ok((Verdict::from_bool(both), both.then(|| cat.zero_morphism(x, y))));
    }
    let hxy = stable_hom_unchecked(pair, x, y)?;
    let ex = stable_hom_unchecked(pair, x, x)?;
    let ey = stable_hom_unchecked(pair, y, y)?;
    let hyx = stable_hom_unchecked(pair, y, x)?;
    if hxy.dim() != ex.dim() || ex.dim() != ey.dim() || hyx.dim() != ex.dim() {
        return Ok((Verdict::No, None));
    }
    let space = hxy.as_hom_space(cat.p());
    let back = cat.hom(y, x);
    let mut err = None;
    let found = scan_for(cat.p(), &space, pair.search(), |f| match stable_inverse(cat, f, &back, &ex, &ey) {
        Ok((v, _)) => v.is_yes(),
        Err(e) => {
            err = Some(e);
            false
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// `0 -> X -iota-> W -pi-> Sigma X -> 0`.
#[derive(Clone, Debug)]
pub struct Suspension<O> {
    pub iota: Morphism<O>,
    pub pi: Morphism<O>,
}

impl<O> Suspension<O> {
    pub fn object(&self) -> &O {
        &self.pi.target
    }
}

pub fn suspend<P: FrobeniusPair>(pair: &P, x: &Obj<P>) -> Result<Suspension<Obj<P>>> {
    let iota = pair.right_approx(x)?;
    let pi = pair.category().cokernel(&iota);
    Ok(Suspension { iota, pi })
}

/// Suspension built from a given approximation.
pub fn suspend_via<C: AbelianCategory>(cat: &C, iota: &Morphism<C::Obj>) -> Suspension<C::Obj> {
    Suspension { iota: iota.clone(), pi: cat.cokernel(iota) }
}

/// `Sigma f`: extend `iota_Y f` along `iota_X`, then pass to cokernels.
pub fn suspend_morphism<C: AbelianCategory>(
    cat: &C,
    sx: &Suspension<C::Obj>,
    sy: &Suspension<C::Obj>,
    f: &Morphism<C::Obj>,
) -> Result<Morphism<C::Obj>> {
    let h = cat
        .extend_along(&sx.iota, &cat.compose(&sy.iota, f))
        .ok_or_else(|| Error::Inconsistent("morphism does not extend along the approximation".into()))?;
    cat.descend(&sx.pi, &cat.compose(&sy.pi, &h))
        .ok_or_else(|| Error::Inconsistent("extension does not descend".into()))
}

/// `0 -> Omega X -incl-> W -pi-> X -> 0` for strong pairs.
#[derive(Clone, Debug)]
pub struct Loop<O> {
    pub incl: Morphism<O>,
    pub pi: Morphism<O>,
}

impl<O> Loop<O> {
    pub fn object(&self) -> &O {
        &self.incl.source
    }
}

pub fn loop_object<P: FrobeniusPair>(pair: &P, x: &Obj<P>) -> Result<Loop<Obj<P>>> {
    if !pair.is_strong() {
        return Err(Error::NotStrong);
    }
    let pi = pair.left_approx(x)?;
    let incl = pair.category().kernel(&pi);
    Ok(Loop { incl, pi })
}

/// The canonical `X -> Omega Sigma X`: lift `W_X -> Sigma X` through the
/// left approximation of `Sigma X` and restrict to `X`.
pub fn omega_sigma_unit<P: FrobeniusPair>(pair: &P, x: &Obj<P>) -> Result<Morphism<Obj<P>>> {
    let cat = pair.category();
    let s = suspend(pair, x)?;
    let l = loop_object(pair, s.object())?;
    let u = cat
        .factor_through(&l.pi, &s.pi)
        .ok_or_else(|| Error::Hypothesis("W does not lift along the left approximation".into()))?;
    cat.lift_through_mono(&l.incl, &cat.compose(&u, &s.iota))
        .ok_or_else(|| Error::Inconsistent("restriction misses the loop object".into()))
}

/// The canonical `Sigma Omega X -> X`: extend `Omega X -> W` along the right
/// approximation of `Omega X` and pass to cokernels.
pub fn sigma_omega_counit<P: FrobeniusPair>(pair: &P, x: &Obj<P>) -> Result<Morphism<Obj<P>>> {
    let cat = pair.category();
    let l = loop_object(pair, x)?;
    let s = suspend(pair, l.object())?;
    let v = cat
        .extend_along(&s.iota, &l.incl)
        .ok_or_else(|| Error::Hypothesis("loop inclusion does not extend along the approximation".into()))?;
    cat.descend(&s.pi, &cat.compose(&l.pi, &v))
        .ok_or_else(|| Error::Inconsistent("comparison does not descend".into()))
}

/// `X1 -f-> X2 -g-> X3 -h-> Sigma X1`.
#[derive(Clone, Debug)]
pub struct RightTriangle<O> {
    pub f: Morphism<O>,
    pub g: Morphism<O>,
    pub h: Morphism<O>,
    pub suspension: Suspension<O>,
}

/// Completes `0 -> X1 -f-> X2 -g-> X3 -> 0`: `a` with `a f = iota`, then `h` with `h g = pi a`.
pub fn complete_triangle<P: FrobeniusPair>(
    pair: &P,
    f: &Morphism<Obj<P>>,
    g: &Morphism<Obj<P>>,
) -> Result<RightTriangle<Obj<P>>> {
    let cat = pair.category();
    if !cat.is_short_exact(f, g) {
        return Err(Error::InvalidMorphism("sequence is not short exact".into()));
    }
    for o in [&f.source, &f.target, &g.target] {
        if !pair.in_x(o).is_yes() {
            return Err(Error::Membership("triangle term not in X".into()));
        }
    }
    let suspension = suspend(pair, &f.source)?;
    let a = cat
        .extend_along(f, &suspension.iota)
        .ok_or_else(|| Error::Hypothesis("approximation does not extend: Ext^1 into W nonzero".into()))?;
    let h = cat
        .descend(g, &cat.compose(&suspension.pi, &a))
        .ok_or_else(|| Error::Inconsistent("connecting map does not descend".into()))?;
    Ok(RightTriangle { f: f.clone(), g: g.clone(), h, suspension })
}

/// The standard triangle of `u: X -> Y` through `0 -> X -> W_X (+) Y -> C -> 0`.
pub fn cone<P: FrobeniusPair>(pair: &P, u: &Morphism<Obj<P>>) -> Result<RightTriangle<Obj<P>>> {
    let cat = pair.category();
    let iota = pair.right_approx(&u.source)?;
    let sum = cat.direct_sum(&[iota.target.clone(), u.target.clone()]);
    let f = cat.into_sum(&sum, &[iota, u.clone()]);
    let g = cat.cokernel(&f);
    complete_triangle(pair, &f, &g)
}

fn label(i: usize) -> String {
    format!("#{i}")
}

/// Window checks of the stable structure: choice independence of `W(X, Y)`
/// and of `Sigma`, the cokernel criterion, and `Sigma Omega ~ id ~ Omega Sigma`
/// for strong pairs.
pub fn stable_window_check<P: FrobeniusPair>(
    pair: &P,
    window: &[Obj<P>],
    alternative: &dyn Fn(&Obj<P>) -> Option<Morphism<Obj<P>>>,
    scope: &Scope,
) -> Vec<ReportEntry> {
    let cat = pair.category();
    let mut out = Vec::new();
    let xs: Vec<usize> = (0..window.len()).filter(|&i| pair.in_x(&window[i]).is_yes()).collect();
    let gens = pair.w_generators();
    for &i in &xs {
        let x = &window[i];
        let Ok(iota) = pair.right_approx(x) else {
            out.push(scope.entry("stable-approximation", label(i), Status::Fail));
            continue;
        };
        let alt = alternative(x);
        for &j in &xs {
            let y = &window[j];
            let a = stable_hom_via(cat, &iota, y);
            let e = stable_hom_enumerated(cat, &gens, x, y);
            let mut same = a.w == e.w;
            if let Some(alt) = &alt {
                same &= stable_hom_via(cat, alt, y).w == a.w;
            }
            out.push(
                scope
                    .entry("w-subspace-choice-independent", format!("#{i},#{j}"), Status::from_bool(same))
                    .with_dimension(a.dim()),
            );
        }
        if let Some(alt) = &alt {
            let s1 = suspend_via(cat, &iota);
            let s2 = suspend_via(cat, alt);
            let v = stably_isomorphic(pair, s1.object(), s2.object()).map(|r| r.0).unwrap_or(Verdict::No);
            out.push(scope.entry("suspension-choice-independent", label(i), Status::from_verdict(v)));
        }
    }
    // a morphism with surjective restriction on Hom(-, W) has cokernel in X
    let cfg = SearchConfig::new(pair.search().budget.min(64), pair.search().seed);
    for &i in &xs {
        for &j in &xs {
            let hom = cat.hom(&window[i], &window[j]);
            let (elems, _) = crate::category::enumerate_elements(cat.p(), &hom, &cfg);
            let mut status = Verdict::Yes;
            let mut tested = 0;
            for f in &elems {
                let surjective = gens.iter().all(|w| {
                    let into1 = cat.hom(&window[i], w);
                    let images: Vec<Vec<u32>> =
                        cat.hom_basis(&window[j], w).iter().map(|g| into1.coords(&g.mul(&f.matrix))).collect();
                    Subspace::from_vectors(cat.p(), into1.dim(), &images).dim() == into1.dim()
                });
                if surjective {
                    tested += 1;
                    status = status.and(pair.in_x(&cat.cokernel(f).target));
                }
            }
            if tested > 0 {
                out.push(scope.entry("cokernel-criterion", format!("#{i},#{j}"), Status::from_verdict(status)));
            }
        }
    }
    if pair.is_strong() {
        for &i in &xs {
            let x = &window[i];
            let sigma_omega = loop_object(pair, x)
                .and_then(|l| suspend(pair, l.object()))
                .and_then(|s| stably_isomorphic(pair, s.object(), x));
            let omega_sigma = suspend(pair, x)
                .and_then(|s| loop_object(pair, s.object()))
                .and_then(|l| stably_isomorphic(pair, l.object(), x));
            for (check, r) in [("sigma-omega-id", sigma_omega), ("omega-sigma-id", omega_sigma)] {
                let status = match r {
                    Ok((v, _)) => Status::from_verdict(v),
                    Err(_) => Status::Fail,
                };
                out.push(scope.entry(check, label(i), status));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algrep::algebra::examples::*;
    use crate::algrep::{ModCat, Module};
    use crate::classes::{builtin_mod_inj, injective_generators, universal_map_into, ModPair};

    fn dual() -> (ModCat, ModPair, Module, Module) {
        let a = Arc::new(truncated_polynomial(2, 2));
        let cat = ModCat::new(a.clone());
        let k = Module::new(a.clone(), 1, vec![FpMatrix::identity(2, 1), FpMatrix::zeros(2, 1, 1)]).unwrap();
        let pair = builtin_mod_inj(&cat, 3, SearchConfig::default());
        (cat, pair, k, Module::regular(a))
    }

    #[test]
    fn stable_hom_examples() {
        let (cat, pair, k, a) = dual();
        let h = stable_hom(&pair, &k, &k).unwrap();
        assert_eq!((h.hom_dim(), h.w_dim(), h.dim()), (1, 0, 1));
        assert_eq!(stable_hom(&pair, &a, &k).unwrap().dim(), 0);
        assert_eq!(stable_hom(&pair, &k, &cat.zero_object()).unwrap().dim(), 0);
        assert_eq!(is_stably_zero(&pair, &a), Verdict::Yes);
        assert_eq!(is_stably_zero(&pair, &k), Verdict::No);
        assert_eq!(is_stable_iso(&pair, &cat.identity(&k)).unwrap().0, Verdict::Yes);
    }

    #[test]
    fn suspension_and_loops() {
        let (cat, pair, k, a) = dual();
        let s = suspend(&pair, &k).unwrap();
        assert!(stably_isomorphic(&pair, s.object(), &k).unwrap().0.is_yes());
        assert_eq!(cat.dim(suspend(&pair, &a).unwrap().object()), 0);
        let l = loop_object(&pair, &k).unwrap();
        assert!(cat.is_isomorphic(l.object(), &k, &SearchConfig::default()).0.is_yes());
        assert!(is_stably_zero(&pair, loop_object(&pair, &a).unwrap().object()).is_yes());
        for x in [k.clone(), a.clone()] {
            assert!(is_stable_iso(&pair, &omega_sigma_unit(&pair, &x).unwrap()).unwrap().0.is_yes());
            assert!(is_stable_iso(&pair, &sigma_omega_counit(&pair, &x).unwrap()).unwrap().0.is_yes());
        }
        let kk = cat.direct_sum(&[k.clone(), a.clone()]).object;
        let sum_first = suspend(&pair, &kk).unwrap();
        let parts = cat.direct_sum(&[s.object().clone(), suspend(&pair, &a).unwrap().object().clone()]).object;
        assert!(stably_isomorphic(&pair, sum_first.object(), &parts).unwrap().0.is_yes());
    }

    #[test]
    fn triangles() {
        let (cat, pair, k, a) = dual();
        // 0 -> k -> A -> k -> 0
        let f = Morphism::new(k.clone(), a.clone(), FpMatrix::from_rows(2, 1, &[vec![0], vec![1]]).unwrap());
        let g = cat.cokernel(&f);
        let t = complete_triangle(&pair, &f, &g).unwrap();
        assert!(is_stable_iso(&pair, &t.h).unwrap().0.is_yes());
        // split sequence: zero connecting map
        let sum = cat.direct_sum(&[k.clone(), k.clone()]);
        let t = complete_triangle(&pair, &sum.injections[0], &sum.projections[1]).unwrap();
        assert!(is_stably_zero_morphism(&pair, &t.h).unwrap());
        // the standard triangle of g rotates onto Sigma k
        let c = cone(&pair, &g).unwrap();
        let sk = suspend(&pair, &k).unwrap();
        assert!(stably_isomorphic(&pair, &c.g.target, sk.object()).unwrap().0.is_yes());
    }

    #[test]
    fn choices_agree_on_a_window() {
        let (cat, pair, k, a) = dual();
        let window = vec![cat.zero_object(), k.clone(), a.clone(), cat.direct_sum(&[k.clone(), a.clone()]).object];
        let gens = injective_generators(&cat);
        let alt = |x: &Module| Some(universal_map_into(&cat, x, &gens));
        let scope = Scope::new("dual", 3, 4096);
        let report = stable_window_check(&pair, &window, &alt, &scope);
        let bad: Vec<_> = report.iter().filter(|e| e.status != Status::Pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(report.iter().any(|e| e.check == "sigma-omega-id"));
    }
}
