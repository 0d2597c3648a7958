//! Exact scalars: rationals, the cyclotomic field Q(w) with w^3 = 1, jets
//! truncated at h^2, and exponent monomials for the constraint solver.

mod cyc;
mod jet;
mod monomial;
mod text;

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Zero};

pub use cyc::Cyc;
pub use jet::Jet;
pub use monomial::Monomial;
pub use text::{format_scalar, parse_scalar, rational_from_json, rational_to_json, scalar_from_json, scalar_to_json};

pub use num::BigInt;
pub use num::BigRational as Rational;

/// Commutative ring with exact arithmetic, as needed by operator algebra.
///
/// `try_inv` returns `None` for non-units; for a field that is exactly zero.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + 'static
{
    fn mul_ref(&self, other: &Self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn from_cyc(c: &Cyc) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_cyc(&Cyc::from_int(k))
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul_ref(&base);
        }
        Some(out)
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn rat(s: &str) -> Rational {
    s.trim().parse().unwrap_or_else(|_| panic!("bad rational literal {s:?}"))
}

pub fn ri(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}
