//! Finite-dimensional abelian categories in which every object has an
//! underlying `F_p`-vector space and every morphism an underlying matrix.
//! Composition, sums and ranks are computed on those matrices; only Hom
//! bases, kernels, cokernels, biproducts and projective covers are category
//! specific. Everything else (factorizations, pushouts, isomorphism search)
//! is written once here.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{FpMatrix, Subspace};
use crate::search::{nth_vector, SearchConfig, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<O> {
    pub source: O,
    pub target: O,
    /// `dim target x dim source`
    pub matrix: FpMatrix,
}

impl<O: Clone> Morphism<O> {
    pub fn new(source: O, target: O, matrix: FpMatrix) -> Self {
        Self { source, target, matrix }
    }

    pub fn with_matrix(&self, matrix: FpMatrix) -> Self {
        Self { source: self.source.clone(), target: self.target.clone(), matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Clone, Debug)]
pub struct Biproduct<O> {
    pub object: O,
    pub injections: Vec<Morphism<O>>,
    pub projections: Vec<Morphism<O>>,
}

/// Decomposition of an object along an idempotent endomorphism `e`.
#[derive(Clone, Debug)]
pub struct Splitting<O> {
    /// Inclusion of the image of `e`.
    pub image: Morphism<O>,
    pub image_retraction: Morphism<O>,
    /// Inclusion of the kernel of `e`.
    pub kernel: Morphism<O>,
    pub kernel_retraction: Morphism<O>,
}

/// A Hom-space with a basis in reduced echelon form on the flattened
/// matrices, so coordinates are read off at the pivot entries.
#[derive(Clone, Debug)]
pub struct HomSpace<O> {
    pub source: O,
    pub target: O,
    rows: usize,
    cols: usize,
    p: u32,
    basis: Vec<FpMatrix>,
    pivots: Vec<usize>,
}

impl<O: Clone> HomSpace<O> {
    pub fn from_spanning(p: u32, source: O, target: O, rows: usize, cols: usize, spanning: &[FpMatrix]) -> Self {
        let flat: Vec<Vec<u32>> = spanning.iter().map(|m| m.data().to_vec()).collect();
        let sub = Subspace::from_vectors(p, rows * cols, &flat);
        let basis = sub
            .basis_vectors()
            .into_iter()
            .map(|v| FpMatrix::new(p, rows, cols, v).expect("shape is consistent"))
            .collect();
        Self { source, target, rows, cols, p, basis, pivots: sub.pivots().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(dim target, dim source)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }

    pub fn morphism(&self, i: usize) -> Morphism<O> {
        Morphism::new(self.source.clone(), self.target.clone(), self.basis[i].clone())
    }

    pub fn morphisms(&self) -> Vec<Morphism<O>> {
        (0..self.dim()).map(|i| self.morphism(i)).collect()
    }

    pub fn element(&self, coords: &[u32]) -> Morphism<O> {
        let mut m = FpMatrix::zeros(self.p, self.rows, self.cols);
        for (b, &c) in self.basis.iter().zip(coords) {
            m.add_scaled(b, c);
        }
        Morphism::new(self.source.clone(), self.target.clone(), m)
    }

    /// Coordinates of a matrix known to lie in the space.
    pub fn coords(&self, m: &FpMatrix) -> Vec<u32> {
        self.pivots.iter().map(|&i| m.data()[i]).collect()
    }

    pub fn contains(&self, m: &FpMatrix) -> bool {
        m.shape() == (self.rows, self.cols) && self.element(&self.coords(m)).matrix == *m
    }
}

pub trait AbelianCategory {
    type Obj: Clone + fmt::Debug + PartialEq;

    fn p(&self) -> u32;
    fn zero_object(&self) -> Self::Obj;
    /// Dimension of the underlying vector space.
    fn dim(&self, x: &Self::Obj) -> usize;
    fn is_morphism(&self, x: &Self::Obj, y: &Self::Obj, m: &FpMatrix) -> bool;
    fn hom_basis(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<FpMatrix>;
    /// Inclusion of the kernel.
    fn kernel(&self, f: &Morphism<Self::Obj>) -> Morphism<Self::Obj>;
    /// Projection onto the cokernel.
    fn cokernel(&self, f: &Morphism<Self::Obj>) -> Morphism<Self::Obj>;
    fn direct_sum(&self, xs: &[Self::Obj]) -> Biproduct<Self::Obj>;
    /// An epimorphism from a projective object.
    fn projective_cover(&self, x: &Self::Obj) -> Morphism<Self::Obj>;

    fn identity(&self, x: &Self::Obj) -> Morphism<Self::Obj> {
        Morphism::new(x.clone(), x.clone(), FpMatrix::identity(self.p(), self.dim(x)))
    }

    fn zero_morphism(&self, x: &Self::Obj, y: &Self::Obj) -> Morphism<Self::Obj> {
        Morphism::new(x.clone(), y.clone(), FpMatrix::zeros(self.p(), self.dim(y), self.dim(x)))
    }

    /// `g . f`
    fn compose(&self, g: &Morphism<Self::Obj>, f: &Morphism<Self::Obj>) -> Morphism<Self::Obj> {
        debug_assert_eq!(self.dim(&g.source), self.dim(&f.target));
        Morphism::new(f.source.clone(), g.target.clone(), g.matrix.mul(&f.matrix))
    }

    fn add(&self, f: &Morphism<Self::Obj>, g: &Morphism<Self::Obj>) -> Morphism<Self::Obj> {
        f.with_matrix(f.matrix.add(&g.matrix))
    }

    fn sub(&self, f: &Morphism<Self::Obj>, g: &Morphism<Self::Obj>) -> Morphism<Self::Obj> {
        f.with_matrix(f.matrix.sub(&g.matrix))
    }

    fn neg(&self, f: &Morphism<Self::Obj>) -> Morphism<Self::Obj> {
        f.with_matrix(f.matrix.neg())
    }

    /// Checked constructor.
    fn morphism(&self, x: &Self::Obj, y: &Self::Obj, m: FpMatrix) -> Result<Morphism<Self::Obj>> {
        if m.shape() != (self.dim(y), self.dim(x)) {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.dim(y),
                self.dim(x)
            )));
        }
        if !self.is_morphism(x, y, &m) {
            return Err(Error::InvalidMorphism("matrix does not commute with the structure".into()));
        }
        Ok(Morphism::new(x.clone(), y.clone(), m))
    }

    fn is_valid(&self, f: &Morphism<Self::Obj>) -> bool {
        f.matrix.shape() == (self.dim(&f.target), self.dim(&f.source))
            && self.is_morphism(&f.source, &f.target, &f.matrix)
    }

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> HomSpace<Self::Obj> {
        let basis = self.hom_basis(x, y);
        HomSpace::from_spanning(self.p(), x.clone(), y.clone(), self.dim(y), self.dim(x), &basis)
    }

    fn is_zero_object(&self, x: &Self::Obj) -> bool {
        self.dim(x) == 0
    }

    fn is_mono(&self, f: &Morphism<Self::Obj>) -> bool {
        f.rank() == self.dim(&f.source)
    }

    fn is_epi(&self, f: &Morphism<Self::Obj>) -> bool {
        f.rank() == self.dim(&f.target)
    }

    fn is_iso(&self, f: &Morphism<Self::Obj>) -> bool {
        self.dim(&f.source) == self.dim(&f.target) && self.is_epi(f)
    }

    /// Some `h` with `g . h = f`, where `g: B -> C` and `f: A -> C`.
    fn factor_through(&self, g: &Morphism<Self::Obj>, f: &Morphism<Self::Obj>) -> Option<Morphism<Self::Obj>> {
        let hom = self.hom(&f.source, &g.source);
        let cols: Vec<Vec<u32>> = hom.basis().iter().map(|h| g.matrix.mul(h).data().to_vec()).collect();
        let system = FpMatrix::from_columns(self.p(), f.matrix.data().len(), &cols);
        let c = system.solve(f.matrix.data()).ok()??;
        Some(hom.element(&c))
    }

    /// Some `h` with `h . g = f`, where `g: A -> B` and `f: A -> C`.
    fn extend_along(&self, g: &Morphism<Self::Obj>, f: &Morphism<Self::Obj>) -> Option<Morphism<Self::Obj>> {
        let hom = self.hom(&g.target, &f.target);
        let cols: Vec<Vec<u32>> = hom.basis().iter().map(|h| h.mul(&g.matrix).data().to_vec()).collect();
        let system = FpMatrix::from_columns(self.p(), f.matrix.data().len(), &cols);
        let c = system.solve(f.matrix.data()).ok()??;
        Some(hom.element(&c))
    }

    /// The unique `hbar` with `hbar . pi = h` for an epimorphism `pi`, if `h` kills `ker pi`.
    fn descend(&self, pi: &Morphism<Self::Obj>, h: &Morphism<Self::Obj>) -> Option<Morphism<Self::Obj>> {
        let s = pi.matrix.right_inverse()?;
        let hbar = h.matrix.mul(&s);
        (hbar.mul(&pi.matrix) == h.matrix).then(|| Morphism::new(pi.target.clone(), h.target.clone(), hbar))
    }

    /// The unique `h'` with `iota . h' = h` for a monomorphism `iota`, if `h` lands in its image.
    fn lift_through_mono(&self, iota: &Morphism<Self::Obj>, h: &Morphism<Self::Obj>) -> Option<Morphism<Self::Obj>> {
        let l = iota.matrix.left_inverse()?;
        let lifted = l.mul(&h.matrix);
        (iota.matrix.mul(&lifted) == h.matrix).then(|| Morphism::new(h.source.clone(), iota.source.clone(), lifted))
    }

    fn is_split_mono(&self, f: &Morphism<Self::Obj>) -> bool {
        self.is_mono(f) && self.extend_along(f, &self.identity(&f.source)).is_some()
    }

    fn is_split_epi(&self, f: &Morphism<Self::Obj>) -> bool {
        self.is_epi(f) && self.factor_through(f, &self.identity(&f.target)).is_some()
    }

    fn is_projective(&self, x: &Self::Obj) -> bool {
        self.is_split_epi(&self.projective_cover(x))
    }

    /// Image factorization `f = incl . onto`.
    fn image(&self, f: &Morphism<Self::Obj>) -> (Morphism<Self::Obj>, Morphism<Self::Obj>) {
        let incl = self.kernel(&self.cokernel(f));
        let onto = self.lift_through_mono(&incl, f).expect("a morphism factors through its image");
        (incl, onto)
    }

    /// `sum_i maps[i] . p_i : (+) X_i -> Y`.
    fn from_sum(&self, sum: &Biproduct<Self::Obj>, maps: &[Morphism<Self::Obj>]) -> Morphism<Self::Obj> {
        let target = maps[0].target.clone();
        let mut m = FpMatrix::zeros(self.p(), self.dim(&target), self.dim(&sum.object));
        for (f, p) in maps.iter().zip(&sum.projections) {
            m.add_scaled(&f.matrix.mul(&p.matrix), 1);
        }
        Morphism::new(sum.object.clone(), target, m)
    }

    /// `sum_i j_i . maps[i] : X -> (+) Y_i`.
    fn into_sum(&self, sum: &Biproduct<Self::Obj>, maps: &[Morphism<Self::Obj>]) -> Morphism<Self::Obj> {
        let source = maps[0].source.clone();
        let mut m = FpMatrix::zeros(self.p(), self.dim(&sum.object), self.dim(&source));
        for (f, j) in maps.iter().zip(&sum.injections) {
            m.add_scaled(&j.matrix.mul(&f.matrix), 1);
        }
        Morphism::new(source, sum.object.clone(), m)
    }

    /// Pushout of `f: A -> B` and `g: A -> C`; returns `(B -> P, C -> P)`.
    fn pushout(&self, f: &Morphism<Self::Obj>, g: &Morphism<Self::Obj>) -> (Morphism<Self::Obj>, Morphism<Self::Obj>) {
        let sum = self.direct_sum(&[f.target.clone(), g.target.clone()]);
        let map = self.into_sum(&sum, &[f.clone(), self.neg(g)]);
        let pi = self.cokernel(&map);
        (self.compose(&pi, &sum.injections[0]), self.compose(&pi, &sum.injections[1]))
    }

    /// Pullback of `f: B -> D` and `g: C -> D`; returns `(P -> B, P -> C)`.
    fn pullback(&self, f: &Morphism<Self::Obj>, g: &Morphism<Self::Obj>) -> (Morphism<Self::Obj>, Morphism<Self::Obj>) {
        let sum = self.direct_sum(&[f.source.clone(), g.source.clone()]);
        let map = self.from_sum(&sum, &[f.clone(), self.neg(g)]);
        let iota = self.kernel(&map);
        (self.compose(&sum.projections[0], &iota), self.compose(&sum.projections[1], &iota))
    }

    /// Exactness of `0 -> A -f-> B -g-> C -> 0`, certified by ranks.
    fn is_short_exact(&self, f: &Morphism<Self::Obj>, g: &Morphism<Self::Obj>) -> bool {
        let (a, b, c) = (self.dim(&f.source), self.dim(&f.target), self.dim(&g.target));
        self.dim(&g.source) == b
            && g.matrix.mul(&f.matrix).is_zero()
            && f.rank() == a
            && g.rank() == c
            && b == a + c
    }

    fn split_idempotent(&self, e: &Morphism<Self::Obj>) -> Result<Splitting<Self::Obj>> {
        if e.source != e.target || e.matrix.mul(&e.matrix) != e.matrix {
            return Err(Error::NotIdempotent);
        }
        let id = self.identity(&e.source);
        let complement = self.sub(&id, e);
        let image = self.kernel(&complement);
        let kernel = self.kernel(e);
        let image_retraction = self.lift_through_mono(&image, e).ok_or(Error::NotIdempotent)?;
        let kernel_retraction = self.lift_through_mono(&kernel, &complement).ok_or(Error::NotIdempotent)?;
        Ok(Splitting { image, image_retraction, kernel, kernel_retraction })
    }

    /// Semi-decision for `x ~= y` with an explicit witness when found.
    fn is_isomorphic(&self, x: &Self::Obj, y: &Self::Obj, cfg: &SearchConfig) -> (Verdict, Option<Morphism<Self::Obj>>) {
        if self.dim(x) != self.dim(y) {
            return (Verdict::No, None);
        }
        if x == y {
            return (Verdict::Yes, Some(self.identity(x)));
        }
        let hom = self.hom(x, y);
        let back = self.hom_basis(y, x).len();
        if hom.dim() != back || hom.dim() != self.hom_basis(x, x).len() || back != self.hom_basis(y, y).len() {
            return (Verdict::No, None);
        }
        scan_for(self.p(), &hom, cfg, |f| self.is_iso(f))
    }

    /// Representatives of the isomorphism classes in `objs`, in first-seen order.
    /// Pairs whose comparison is undetermined are kept apart; the flag reports that.
    fn dedup_isomorphic(&self, objs: Vec<Self::Obj>, cfg: &SearchConfig) -> (Vec<Self::Obj>, bool) {
        let mut reps: Vec<Self::Obj> = Vec::new();
        let mut exact = true;
        'next: for x in objs {
            for r in &reps {
                match self.is_isomorphic(r, &x, cfg).0 {
                    Verdict::Yes => continue 'next,
                    Verdict::Undetermined => exact = false,
                    Verdict::No => {}
                }
            }
            reps.push(x);
        }
        (reps, exact)
    }
}

/// Scans a Hom-space for an element satisfying `pred`: exhaustively when
/// `p^dim` fits the budget, otherwise by seeded random sampling.
pub fn scan_for<O: Clone>(
    p: u32,
    hom: &HomSpace<O>,
    cfg: &SearchConfig,
    mut pred: impl FnMut(&Morphism<O>) -> bool,
) -> (Verdict, Option<Morphism<O>>) {
    let k = hom.dim();
    if let Some(n) = cfg.exhaustive_count(p, k) {
        // high indices first: those combine many basis elements
        for idx in (0..n).rev() {
            let f = hom.element(&nth_vector(p, k, idx));
            if pred(&f) {
                return (Verdict::Yes, Some(f));
            }
        }
        return (Verdict::No, None);
    }
    let mut rng = cfg.rng();
    for _ in 0..cfg.budget {
        let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let f = hom.element(&c);
        if pred(&f) {
            return (Verdict::Yes, Some(f));
        }
    }
    (Verdict::Undetermined, None)
}

/// Every element of a Hom-space when `p^dim` fits the budget, else a seeded sample.
/// The flag says whether the list is exhaustive.
pub fn enumerate_elements<O: Clone>(p: u32, hom: &HomSpace<O>, cfg: &SearchConfig) -> (Vec<Morphism<O>>, bool) {
    let k = hom.dim();
    if let Some(n) = cfg.exhaustive_count(p, k) {
        return ((0..n).map(|i| hom.element(&nth_vector(p, k, i))).collect(), true);
    }
    let mut rng = cfg.rng();
    let out = (0..cfg.budget)
        .map(|_| {
            let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            hom.element(&c)
        })
        .collect();
    (out, false)
}
