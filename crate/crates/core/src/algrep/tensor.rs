use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{quotient_map, FpMatrix, Subspace};

use super::algebra::Algebra;
use super::module::Module;

/// An `R`-`S`-bimodule. Right actions compose contravariantly:
/// `rho(s_j) rho(s_i) = sum_k c_ijk rho(s_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_actions: Vec<FpMatrix>,
    right_actions: Vec<FpMatrix>,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_actions: Vec<FpMatrix>,
        right_actions: Vec<FpMatrix>,
    ) -> Result<Self> {
        if left.p() != right.p() {
            return Err(Error::AlgebraMismatch);
        }
        if left_actions.len() != left.dim() || right_actions.len() != right.dim() {
            return Err(Error::DimensionMismatch("one action matrix per algebra basis element".into()));
        }
        if left_actions.iter().chain(&right_actions).any(|a| a.shape() != (dim, dim)) {
            return Err(Error::DimensionMismatch(format!("bimodule actions must be {dim}x{dim}")));
        }
        let b = Self { left, right, dim, left_actions, right_actions };
        let failures = b.validate();
        if failures.is_empty() {
            Ok(b)
        } else {
            Err(Error::InvalidModule(failures.join("; ")))
        }
    }

    /// `R` as an `R`-`R`-bimodule.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let d = algebra.dim();
        let left_actions = (0..d).map(|i| algebra.left_mult(i)).collect();
        let right_actions = (0..d).map(|j| algebra.right_mult_by(&algebra.basis_vector(j))).collect();
        Self { left: algebra.clone(), right: algebra, dim: d, left_actions, right_actions }
    }

    /// Direct sum of bimodules over the same pair of algebras.
    pub fn direct_sum(&self, other: &Bimodule) -> Result<Self> {
        if *self.left != *other.left || *self.right != *other.right {
            return Err(Error::AlgebraMismatch);
        }
        let p = self.p();
        let zip = |a: &[FpMatrix], b: &[FpMatrix]| -> Vec<FpMatrix> {
            a.iter().zip(b).map(|(x, y)| FpMatrix::block_diag(&[x, y], p)).collect()
        };
        Ok(Self {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: self.dim + other.dim,
            left_actions: zip(&self.left_actions, &other.left_actions),
            right_actions: zip(&self.right_actions, &other.right_actions),
        })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let left = Module::raw(self.left.clone(), self.dim, self.left_actions.clone(), None);
        failures.extend(left.validate().into_iter().map(|f| format!("left action {f}")));
        let right = self.as_right_module();
        failures.extend(right.validate().into_iter().map(|f| format!("right action {f}")));
        'outer: for l in &self.left_actions {
            for r in &self.right_actions {
                if l.mul(r) != r.mul(l) {
                    failures.push("bimodule: left and right actions do not commute".into());
                    break 'outer;
                }
            }
        }
        failures
    }

    pub fn p(&self) -> u32 {
        self.left.p()
    }

    pub fn left(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_actions(&self) -> &[FpMatrix] {
        &self.left_actions
    }

    pub fn right_actions(&self) -> &[FpMatrix] {
        &self.right_actions
    }

    pub fn as_left_module(&self) -> Module {
        Module::raw(self.left.clone(), self.dim, self.left_actions.clone(), None)
    }

    /// The right `S`-structure as a left module over `S^op`.
    pub fn as_right_module(&self) -> Module {
        Module::raw(self.right.opposite_arc(), self.dim, self.right_actions.clone(), None)
    }
}

/// `T(Y) = M (x)_S Y` with the quotient data needed to push maps through it.
#[derive(Clone, Debug)]
pub struct TensorImage {
    pub module: Module,
    /// From `M (x)_k Y` (index `a * dim Y + b`) onto `T(Y)`.
    pub projection: FpMatrix,
    pub section: FpMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFunctor {
    bimodule: Bimodule,
}

impl TensorFunctor {
    pub fn new(bimodule: Bimodule) -> Self {
        Self { bimodule }
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn source_algebra(&self) -> &Arc<Algebra> {
        self.bimodule.right()
    }

    pub fn target_algebra(&self) -> &Arc<Algebra> {
        self.bimodule.left()
    }

    pub fn apply(&self, y: &Module) -> Result<TensorImage> {
        if *y.algebra().as_ref() != *self.bimodule.right().as_ref() {
            return Err(Error::AlgebraMismatch);
        }
        let b = &self.bimodule;
        let p = b.p();
        let e = b.dim();
        let n = y.dim();
        let id_m = FpMatrix::identity(p, e);
        let id_y = FpMatrix::identity(p, n);
        let mut relations = Subspace::zero(p, e * n);
        for &s in b.right().generators() {
            let rel = b.right_actions()[s].kron(&id_y).sub(&id_m.kron(y.action(s)));
            relations = relations.sum(&rel.column_space());
        }
        let q = quotient_map(e * n, &relations);
        let actions = b
            .left_actions()
            .iter()
            .map(|l| q.projection.mul(&l.kron(&id_y)).mul(&q.section))
            .collect();
        let module = Module::raw(b.left().clone(), q.quotient_dim, actions, None);
        Ok(TensorImage { module, projection: q.projection, section: q.section })
    }

    /// `T(g)` for a linear map `g: Y -> Y'` given the two tensor images.
    pub fn apply_matrix(&self, g: &FpMatrix, src: &TensorImage, tgt: &TensorImage) -> FpMatrix {
        let id_m = FpMatrix::identity(self.bimodule.p(), self.bimodule.dim());
        tgt.projection.mul(&id_m.kron(g)).mul(&src.section)
    }
}

#[cfg(test)]
mod tests {
    use super::super::algebra::examples::*;
    use super::*;

    #[test]
    fn regular_bimodule_is_valid() {
        let a = Arc::new(a2_path(3));
        let b = Bimodule::regular(a.clone());
        assert!(b.validate().is_empty(), "{:?}", b.validate());
        assert!(b.direct_sum(&b).unwrap().validate().is_empty());
    }

    #[test]
    fn tensor_with_regular_preserves_dimension() {
        let a = Arc::new(truncated_polynomial(2, 2));
        let t = TensorFunctor::new(Bimodule::regular(a.clone()));
        let r = Module::regular(a.clone());
        let img = t.apply(&r).unwrap();
        assert_eq!(img.module.dim(), 2);
        assert!(img.module.validate().is_empty());
    }
}
