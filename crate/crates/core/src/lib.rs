//! Exact computations with comma categories of module categories over
//! finite-dimensional algebras, left Frobenius pairs, their stable
//! categories, and recollements between them.

pub mod algrep;
pub mod category;
pub mod classes;
pub mod comma;
pub mod error;
pub mod exactla;
pub mod homalg;
pub mod lift;
pub mod recollement;
pub mod report;
pub mod search;
pub mod stable;
pub mod window;

pub use error::{Error, Result};
