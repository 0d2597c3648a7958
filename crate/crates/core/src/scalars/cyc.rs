use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num::{One, Zero};

use super::{ri, Rational, Ring};
use crate::error::{Error, Result};

/// Element `u + v*w` of Q(w), where `w` is a primitive cube root of unity.
///
/// Products are reduced with `w^2 = -1 - w`, so the pair `(u, v)` is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc {
    u: Rational,
    v: Rational,
}

impl Cyc {
    pub fn new(u: Rational, v: Rational) -> Self {
        Cyc { u, v }
    }

    pub fn rational(u: Rational) -> Self {
        Cyc { u, v: Rational::zero() }
    }

    pub fn from_int(k: i64) -> Self {
        Cyc::rational(ri(k))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Cyc::rational(ri(num) / ri(den))
    }

    /// The primitive cube root of unity `w`.
    pub fn omega() -> Self {
        Cyc { u: Rational::zero(), v: Rational::one() }
    }

    pub fn re(&self) -> &Rational {
        &self.u
    }

    pub fn om(&self) -> &Rational {
        &self.v
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.u)
    }

    /// Galois conjugate: `w -> w^2`.
    pub fn conj(&self) -> Self {
        Cyc { u: &self.u - &self.v, v: -&self.v }
    }

    /// Field norm `u^2 - uv + v^2`.
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - &self.u * &self.v + &self.v * &self.v
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.v.is_zero() {
            return Ok(Cyc::rational(self.u.recip()));
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Cyc { u: c.u / &n, v: c.v / n })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyc { u: &self.u * r, v: &self.v * r }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Cyc::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            k >>= 1;
        }
        Ok(out)
    }
}

impl Zero for Cyc {
    fn zero() -> Self {
        Cyc::default()
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}

impl One for Cyc {
    fn one() -> Self {
        Cyc::rational(Rational::one())
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, o: Cyc) -> Cyc {
        Cyc { u: self.u + o.u, v: self.v + o.v }
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, o: &Cyc) -> Cyc {
        Cyc { u: &self.u + &o.u, v: &self.v + &o.v }
    }
}

impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, o: Cyc) -> Cyc {
        Cyc { u: self.u - o.u, v: self.v - o.v }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, o: &Cyc) -> Cyc {
        Cyc { u: &self.u - &o.u, v: &self.v - &o.v }
    }
}

impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, o: Cyc) -> Cyc {
        self.mul_ref(&o)
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, o: &Cyc) -> Cyc {
        self.mul_ref(o)
    }
}

impl Div for Cyc {
    type Output = Cyc;
    /// Panics on division by zero; use [`Cyc::checked_div`] for a `Result`.
    fn div(self, o: Cyc) -> Cyc {
        self.checked_div(&o).expect("division by zero in Q(w)")
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { u: -self.u, v: -self.v }
    }
}

impl<'a> Neg for &'a Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { u: -&self.u, v: -&self.v }
    }
}

impl<'a> AddAssign<&'a Cyc> for Cyc {
    fn add_assign(&mut self, o: &Cyc) {
        self.u += &o.u;
        if !o.v.is_zero() {
            self.v += &o.v;
        }
    }
}

impl<'a> SubAssign<&'a Cyc> for Cyc {
    fn sub_assign(&mut self, o: &Cyc) {
        self.u -= &o.u;
        if !o.v.is_zero() {
            self.v -= &o.v;
        }
    }
}

impl Ring for Cyc {
    fn mul_ref(&self, o: &Cyc) -> Cyc {
        // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
        if self.v.is_zero() && o.v.is_zero() {
            return Cyc::rational(&self.u * &o.u);
        }
        if self.v.is_zero() {
            return o.scale(&self.u);
        }
        if o.v.is_zero() {
            return self.scale(&o.u);
        }
        let ac = &self.u * &o.u;
        let bd = &self.v * &o.v;
        let ad = &self.u * &o.v;
        let bc = &self.v * &o.u;
        Cyc { u: &ac - &bd, v: ad + bc - bd }
    }

    fn try_inv(&self) -> Option<Cyc> {
        self.inv().ok()
    }

    fn from_cyc(c: &Cyc) -> Cyc {
        c.clone()
    }
}

impl From<Rational> for Cyc {
    fn from(r: Rational) -> Self {
        Cyc::rational(r)
    }
}

impl From<i64> for Cyc {
    fn from(k: i64) -> Self {
        Cyc::from_int(k)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_scalar(self))
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn c(u: &str, v: &str) -> Cyc {
        Cyc::new(rat(u), rat(v))
    }

    #[test]
    fn omega_squared_is_minus_one_minus_omega() {
        let w = Cyc::omega();
        assert_eq!(w.mul_ref(&w), c("-1", "-1"));
        assert_eq!(w.pow(3).unwrap(), Cyc::one());
    }

    #[test]
    fn norm_of_two_plus_omega() {
        // (2 + w)(2 + w^2) = (2 + w)(1 - w) = 3
        assert_eq!(c("2", "1").mul_ref(&c("1", "-1")), Cyc::from_int(3));
        assert_eq!(c("2", "1").norm(), rat("3"));
    }

    #[test]
    fn inverse_of_omega() {
        assert_eq!(Cyc::omega().inv().unwrap(), c("-1", "-1"));
        assert_eq!(Cyc::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conj_is_square() {
        let w = Cyc::omega();
        assert_eq!(w.conj(), w.mul_ref(&w));
    }
}
