//! Algebras by structure constants, their modules, bimodules and the tensor functor.

pub mod algebra;
pub mod modcat;
pub mod module;
pub mod tensor;

pub use algebra::Algebra;
pub use modcat::{CoverStrategy, ModCat, ModMorphism};
pub use module::{Module, ProjectiveSummand};
pub use tensor::{Bimodule, TensorFunctor, TensorImage};
