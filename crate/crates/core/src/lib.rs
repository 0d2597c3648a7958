//! Exact construction and deformation analysis of multiparameter quantum
//! gl(N) R-matrices.
//!
//! Operators are sparse and input-major: `A[(i,j),(k,l)]` is the coefficient
//! of output basis tensor `(k,l)` in the image of input `(i,j)`, and a row
//! tensor `t` is acted on as `tA`. Indices are 1-based.

pub mod classical_limit;
pub mod deformations;
pub mod error;
pub mod esoteric;
pub mod lattice;
pub mod linalg;
pub mod par;
pub mod relations;
pub mod scalars;
pub mod standard_p;
pub mod tensorspace;

pub use error::{Error, Result};
pub use scalars::{Cyc, Jet, Monomial, Rational, Ring};
pub use standard_p::ParamSet;
pub use tensorspace::{PairOp, TripleOp};
