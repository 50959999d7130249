use std::sync::Arc;

use crate::category::{AbelianCategory, Biproduct, Morphism};
use crate::error::{Error, Result};
use crate::exactla::{quotient_map, FpMatrix, Subspace};

use super::algebra::Algebra;
use super::module::{Module, ProjectiveSummand};
use super::tensor::{TensorFunctor, TensorImage};

pub type ModMorphism = Morphism<Module>;

/// How projective covers choose generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CoverStrategy {
    /// Generators of `e_t X` modulo `e_t J X` for the supplied idempotents and
    /// radical (unit and zero when absent).
    #[default]
    Reduced,
    /// One free generator per basis vector of `X`.
    Basis,
}

/// The category of finite-dimensional left modules over one algebra.
#[derive(Clone, Debug)]
pub struct ModCat {
    algebra: Arc<Algebra>,
    strategy: CoverStrategy,
}

impl ModCat {
    pub fn new(algebra: Arc<Algebra>) -> Self {
        Self { algebra, strategy: CoverStrategy::Reduced }
    }

    pub fn with_strategy(algebra: Arc<Algebra>, strategy: CoverStrategy) -> Self {
        Self { algebra, strategy }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn strategy(&self) -> CoverStrategy {
        self.strategy
    }

    /// Module category over the opposite algebra, same strategy.
    pub fn opposite(&self) -> ModCat {
        Self { algebra: self.algebra.opposite_arc(), strategy: self.strategy }
    }

    pub fn regular(&self) -> Module {
        Module::regular(self.algebra.clone())
    }

    /// The indecomposable-ish projectives `A e_t`, one per cover idempotent.
    pub fn projective_generators(&self) -> Vec<Module> {
        self.algebra
            .cover_idempotents()
            .into_iter()
            .map(|e| Module::projective(self.algebra.clone(), &[e]))
            .collect()
    }

    pub fn check_same(&self, m: &Module) -> Result<()> {
        if Arc::ptr_eq(m.algebra(), &self.algebra) || **m.algebra() == *self.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// The linear system whose null space is `Hom(x, y)`, unknowns `f[r][c] -> r * dim x + c`.
    pub fn hom_equations(&self, x: &Module, y: &Module) -> FpMatrix {
        let (m, n) = (x.dim(), y.dim());
        let gens = self.algebra.generators();
        let p = self.algebra.p();
        let mut eq = FpMatrix::zeros(p, gens.len() * n * m, n * m);
        for (gi, &g) in gens.iter().enumerate() {
            let a = x.action(g);
            let b = y.action(g);
            for r in 0..n {
                for c in 0..m {
                    let row = (gi * n + r) * m + c;
                    for k in 0..m {
                        let v = a.get(k, c);
                        if v != 0 {
                            let idx = r * m + k;
                            eq.set(row, idx, (eq.get(row, idx) + v) % p);
                        }
                    }
                    for k in 0..n {
                        let v = b.get(r, k);
                        if v != 0 {
                            let idx = k * m + c;
                            eq.set(row, idx, (eq.get(row, idx) + p - v) % p);
                        }
                    }
                }
            }
        }
        eq
    }

    /// The map `A e -> y` sending `e` to `z`, for one projective summand.
    fn summand_map(y: &Module, summand: &ProjectiveSummand, z: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..summand.basis.cols())
            .map(|l| y.act(&summand.basis.column(l)).mul_vec(z))
            .collect();
        FpMatrix::from_columns(y.p(), y.dim(), &cols)
    }

    /// The map from a crate-built projective sending the generator of summand `t` to `zs[t]`.
    pub fn map_from_projective(&self, proj: &Module, y: &Module, zs: &[Vec<u32>]) -> ModMorphism {
        let summands = proj.projective_summands().expect("source must be a tagged projective");
        let mut m = FpMatrix::zeros(self.algebra.p(), y.dim(), proj.dim());
        for (s, z) in summands.iter().zip(zs) {
            m.set_block(0, s.offset, &Self::summand_map(y, s, z));
        }
        Morphism::new(proj.clone(), y.clone(), m)
    }

    /// `D(f): D(N) -> D(M)` over the opposite algebra.
    pub fn dual_morphism(&self, f: &ModMorphism) -> ModMorphism {
        Morphism::new(f.target.dual(), f.source.dual(), f.matrix.transpose())
    }

    /// `T(g)` for a tensor functor whose source category is this one.
    pub fn tensor_morphism(
        &self,
        t: &TensorFunctor,
        g: &ModMorphism,
        src: &TensorImage,
        tgt: &TensorImage,
    ) -> ModMorphism {
        Morphism::new(src.module.clone(), tgt.module.clone(), t.apply_matrix(&g.matrix, src, tgt))
    }

    fn cover_generators(&self, x: &Module) -> Vec<(Vec<u32>, Vec<u32>)> {
        let p = self.algebra.p();
        let n = x.dim();
        match self.strategy {
            CoverStrategy::Basis => {
                let unit = self.algebra.unit().to_vec();
                (0..n)
                    .map(|i| {
                        let mut z = vec![0; n];
                        z[i] = 1;
                        (unit.clone(), z)
                    })
                    .collect()
            }
            CoverStrategy::Reduced => {
                let jx = match self.algebra.radical() {
                    Some(j) if j.dim() > 0 => {
                        let blocks: Vec<FpMatrix> = j.basis_vectors().iter().map(|v| x.act(v)).collect();
                        let stacked = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.hstack(b));
                        stacked.column_space()
                    }
                    _ => Subspace::zero(p, n),
                };
                let mut out = Vec::new();
                for e in self.algebra.cover_idempotents() {
                    let ex = x.act(&e);
                    let mut span = ex.mul(&jx.basis_columns()).column_space();
                    for v in ex.column_space().basis_vectors() {
                        if !span.contains(&v) {
                            span = span.sum(&Subspace::from_vectors(p, n, std::slice::from_ref(&v)));
                            out.push((e.clone(), v));
                        }
                    }
                }
                out
            }
        }
    }
}

impl AbelianCategory for ModCat {
    type Obj = Module;

    fn p(&self) -> u32 {
        self.algebra.p()
    }

    fn zero_object(&self) -> Module {
        Module::zero(self.algebra.clone())
    }

    fn dim(&self, x: &Module) -> usize {
        x.dim()
    }

    fn is_morphism(&self, x: &Module, y: &Module, m: &FpMatrix) -> bool {
        m.shape() == (y.dim(), x.dim())
            && self
                .algebra
                .generators()
                .iter()
                .all(|&g| m.mul(x.action(g)) == y.action(g).mul(m))
    }

    fn hom_basis(&self, x: &Module, y: &Module) -> Vec<FpMatrix> {
        if x.dim() == 0 || y.dim() == 0 {
            return Vec::new();
        }
        if let Some(summands) = x.projective_summands() {
            let mut out = Vec::new();
            for s in summands {
                for z in y.act(&s.idempotent).column_space().basis_vectors() {
                    let mut m = FpMatrix::zeros(self.p(), y.dim(), x.dim());
                    m.set_block(0, s.offset, &Self::summand_map(y, s, &z));
                    out.push(m);
                }
            }
            return out;
        }
        let (n, m) = (y.dim(), x.dim());
        self.hom_equations(x, y)
            .kernel_vectors()
            .into_iter()
            .map(|v| FpMatrix::new(self.p(), n, m, v).expect("kernel vector has n*m entries"))
            .collect()
    }

    fn kernel(&self, f: &ModMorphism) -> ModMorphism {
        let k = f.matrix.kernel_basis().basis_columns();
        let module = f.source.restrict(&k);
        Morphism::new(module, f.source.clone(), k)
    }

    fn cokernel(&self, f: &ModMorphism) -> ModMorphism {
        let q = quotient_map(f.target.dim(), &f.matrix.column_space());
        let actions = f.target.actions().iter().map(|a| q.projection.mul(a).mul(&q.section)).collect();
        let module = Module::raw(self.algebra.clone(), q.quotient_dim, actions, None);
        Morphism::new(f.target.clone(), module, q.projection)
    }

    fn direct_sum(&self, xs: &[Module]) -> Biproduct<Module> {
        let p = self.p();
        let total: usize = xs.iter().map(|x| x.dim()).sum();
        let actions = (0..self.algebra.dim())
            .map(|i| {
                let parts: Vec<&FpMatrix> = xs.iter().map(|x| x.action(i)).collect();
                FpMatrix::block_diag(&parts, p)
            })
            .collect();
        let tag = xs.iter().all(|x| x.projective_summands().is_some()).then(|| {
            let mut out = Vec::new();
            let mut off = 0;
            for x in xs {
                for s in x.projective_summands().unwrap() {
                    out.push(ProjectiveSummand { offset: s.offset + off, ..s.clone() });
                }
                off += x.dim();
            }
            out
        });
        let object = Module::raw(self.algebra.clone(), total, actions, tag);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut off = 0;
        for x in xs {
            let mut j = FpMatrix::zeros(p, total, x.dim());
            j.set_block(off, 0, &FpMatrix::identity(p, x.dim()));
            projections.push(Morphism::new(object.clone(), x.clone(), j.transpose()));
            injections.push(Morphism::new(x.clone(), object.clone(), j));
            off += x.dim();
        }
        Biproduct { object, injections, projections }
    }

    fn projective_cover(&self, x: &Module) -> ModMorphism {
        let gens = self.cover_generators(x);
        let idempotents: Vec<Vec<u32>> = gens.iter().map(|(e, _)| e.clone()).collect();
        let zs: Vec<Vec<u32>> = gens.into_iter().map(|(_, z)| z).collect();
        let proj = Module::projective(self.algebra.clone(), &idempotents);
        self.map_from_projective(&proj, x, &zs)
    }
}
