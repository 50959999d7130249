use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::FpMatrix;

use super::algebra::Algebra;

/// One summand `A e` of a projective module built by the crate. `basis`
/// holds, as columns, the elements of `A` forming the summand's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSummand {
    pub idempotent: Vec<u32>,
    pub basis: FpMatrix,
    pub offset: usize,
}

/// Left module given by one action matrix per algebra basis element.
/// Cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleInner>);

struct ModuleInner {
    algebra: Arc<Algebra>,
    dim: usize,
    actions: Vec<FpMatrix>,
    projective: Option<Vec<ProjectiveSummand>>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim={}", self.dim())?;
        if let Some(s) = &self.0.projective {
            write!(f, ", projective summands={}", s.len())?;
        }
        write!(f, ")")
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.same_algebra(other) && self.dim() == other.dim() && self.0.actions == other.0.actions)
    }
}

impl Eq for Module {}

impl Module {
    /// Validating constructor.
    pub fn new(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        let m = Self::from_actions(algebra, dim, actions)?;
        let failures = m.validate();
        if failures.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidModule(failures.join("; ")))
        }
    }

    /// Shape-checked constructor that skips the multiplicativity check.
    pub fn from_actions(algebra: Arc<Algebra>, dim: usize, actions: Vec<FpMatrix>) -> Result<Self> {
        if actions.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                algebra.dim()
            )));
        }
        if actions.iter().any(|a| a.shape() != (dim, dim) || a.p() != algebra.p()) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {dim}x{dim} over F_{}", algebra.p())));
        }
        Ok(Self::raw(algebra, dim, actions, None))
    }

    pub(crate) fn raw(
        algebra: Arc<Algebra>,
        dim: usize,
        actions: Vec<FpMatrix>,
        projective: Option<Vec<ProjectiveSummand>>,
    ) -> Self {
        Module(Arc::new(ModuleInner { algebra, dim, actions, projective }))
    }

    pub fn validate(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let a = self.algebra();
        if self.act(a.unit()) != FpMatrix::identity(a.p(), self.dim()) {
            failures.push("unit: the unit does not act as identity".into());
        }
        'outer: for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action(i).mul(self.action(j));
                let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
                if lhs != self.act(&prod) {
                    failures.push(format!("multiplicativity: rho(b{i}) rho(b{j}) != rho(b{i} b{j})"));
                    break 'outer;
                }
            }
        }
        failures
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let p = algebra.p();
        let actions = vec![FpMatrix::zeros(p, 0, 0); algebra.dim()];
        Self::raw(algebra, 0, actions, Some(Vec::new()))
    }

    /// The regular module `A`, tagged as the projective `A * 1`.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let unit = algebra.unit().to_vec();
        Self::projective(algebra, &[unit])
    }

    /// `A e_1 (+) ... (+) A e_t`, tagged with its generators.
    pub fn projective(algebra: Arc<Algebra>, idempotents: &[Vec<u32>]) -> Self {
        let p = algebra.p();
        let mut summands = Vec::new();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for e in idempotents {
            let basis = algebra.left_ideal_of(e).basis_columns();
            let r = basis.cols();
            let left = basis.left_inverse().unwrap_or_else(|| FpMatrix::zeros(p, 0, algebra.dim()));
            let actions: Vec<FpMatrix> =
                (0..algebra.dim()).map(|i| left.mul(&algebra.left_mult(i)).mul(&basis)).collect();
            blocks.push(actions);
            summands.push(ProjectiveSummand { idempotent: e.clone(), basis, offset });
            offset += r;
        }
        let actions = (0..algebra.dim())
            .map(|i| {
                let parts: Vec<&FpMatrix> = blocks.iter().map(|b| &b[i]).collect();
                FpMatrix::block_diag(&parts, p)
            })
            .collect();
        Self::raw(algebra, offset, actions, Some(summands))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0.algebra, &other.0.algebra) || *self.0.algebra == *other.0.algebra
    }

    pub fn p(&self) -> u32 {
        self.0.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn action(&self, i: usize) -> &FpMatrix {
        &self.0.actions[i]
    }

    pub fn actions(&self) -> &[FpMatrix] {
        &self.0.actions
    }

    /// Summand data when the module was built as a projective by this crate.
    pub fn projective_summands(&self) -> Option<&[ProjectiveSummand]> {
        self.0.projective.as_deref()
    }

    /// The action of an arbitrary algebra element.
    pub fn act(&self, x: &[u32]) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p(), self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(self.action(i), c);
            }
        }
        m
    }

    /// Transports the structure along an invertible change of basis `g`,
    /// giving actions `g rho g^-1`.
    pub fn conjugate(&self, g: &FpMatrix) -> Option<Module> {
        let inv = g.inverse()?;
        let actions = self.actions().iter().map(|a| g.mul(a).mul(&inv)).collect();
        Some(Self::raw(self.algebra().clone(), self.dim(), actions, None))
    }

    /// Submodule on the columns of `basis` (assumed invariant, full column rank).
    pub fn restrict(&self, basis: &FpMatrix) -> Module {
        let left = basis
            .left_inverse()
            .unwrap_or_else(|| FpMatrix::zeros(self.p(), 0, self.dim()));
        let actions = self.actions().iter().map(|a| left.mul(a).mul(basis)).collect();
        Self::raw(self.algebra().clone(), basis.cols(), actions, None)
    }

    /// Linear dual over the opposite algebra, acting by transposes.
    pub fn dual(&self) -> Module {
        let op = self.algebra().opposite_arc();
        let actions = self.actions().iter().map(|a| a.transpose()).collect();
        Self::raw(op, self.dim(), actions, None)
    }
}

#[cfg(test)]
mod tests {
    use super::super::algebra::examples::*;
    use super::*;

    #[test]
    fn regular_module_is_valid() {
        let a = Arc::new(truncated_polynomial(2, 2));
        let r = Module::regular(a.clone());
        assert_eq!(r.dim(), 2);
        assert!(r.validate().is_empty());
    }

    #[test]
    fn path_algebra_projectives() {
        let a = Arc::new(a2_path(2));
        let p1 = Module::projective(a.clone(), &[vec![1, 0, 0]]);
        let p2 = Module::projective(a.clone(), &[vec![0, 1, 0]]);
        assert_eq!((p1.dim(), p2.dim()), (2, 1));
        assert!(p1.validate().is_empty() && p2.validate().is_empty());
    }

    #[test]
    fn invalid_action_is_rejected() {
        let a = Arc::new(truncated_polynomial(2, 2));
        let x = FpMatrix::identity(2, 1);
        let res = Module::new(a.clone(), 1, vec![FpMatrix::identity(2, 1), x]);
        assert!(matches!(res, Err(Error::InvalidModule(_))));
        let res = Module::new(a, 1, vec![FpMatrix::identity(2, 2)]);
        assert!(matches!(res, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn dual_is_a_module_over_the_opposite() {
        let a = Arc::new(a2_path(2));
        let d = Module::regular(a.clone()).dual();
        assert!(d.validate().is_empty());
        assert_eq!(d.dual().algebra().as_ref(), a.as_ref());
    }
}
