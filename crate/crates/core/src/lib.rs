//! Exact verification of triangulated-diagram axioms in the stable module
//! category of `Z/p^m`.

pub mod arith;
pub mod diagram;
pub mod error;
pub mod gallery;
pub mod module;
pub mod stable;

pub use arith::{smith_normal_form, valuation, Matrix, Scalar, SnfResult, Valuation};
pub use error::{OctaError, Result};

/// Integer matrix over machine integers, the entry type used by the
/// module and diagram layers.
pub type IntMatrix = Matrix<i64>;
/// Smith normal form result over machine integers.
pub type IntSnf = SnfResult<i64>;
