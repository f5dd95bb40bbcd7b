//! Exact computations with 2-term silting complexes over finite-dimensional
//! quiver algebras: endomorphism algebras, the induced algebra map onto the
//! endomorphism algebra of the dual silting complex, and the associated
//! torsion pairs.

pub mod error;
pub mod algebra;
pub mod linalg;
pub mod fdmodule;
pub mod complex;
pub mod silting;
pub mod induced;
pub mod torsion;

pub use error::{Error, Result};
