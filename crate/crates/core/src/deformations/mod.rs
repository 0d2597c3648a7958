//! Elementary deformations, their parameter constraints, and the exact
//! first-order solver used to cross-check the classification.

mod builders;
mod oracle;
mod spec;

pub use builders::*;
pub use oracle::*;
pub use spec::{DeformationSpec, Side, Variant};
