use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Zero};

use super::{Cyc, Ring};
use crate::error::{Error, Result};

/// Truncated power series `c0 + c1 h + c2 h^2`; products drop `h^3` and above.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Jet {
    pub c: [Cyc; 3],
}

impl Jet {
    pub fn new(c0: Cyc, c1: Cyc, c2: Cyc) -> Self {
        Jet { c: [c0, c1, c2] }
    }

    pub fn constant(c0: Cyc) -> Self {
        Jet::new(c0, Cyc::zero(), Cyc::zero())
    }

    /// `c0 + c1 h`.
    pub fn linear(c0: Cyc, c1: Cyc) -> Self {
        Jet::new(c0, c1, Cyc::zero())
    }

    /// The jet variable `h`.
    pub fn h() -> Self {
        Jet::linear(Cyc::zero(), Cyc::one())
    }

    pub fn coeff(&self, k: usize) -> &Cyc {
        &self.c[k]
    }

    pub fn inv(&self) -> Result<Self> {
        let [c0, c1, c2] = &self.c;
        let i0 = c0.inv().map_err(|_| Error::NotInvertible)?;
        let i0sq = i0.mul_ref(&i0);
        let d1 = -c1.mul_ref(&i0sq);
        let d2 = c1.mul_ref(c1).mul_ref(&i0sq).mul_ref(&i0) - c2.mul_ref(&i0sq);
        Ok(Jet::new(i0, d1, d2))
    }
}

impl Zero for Jet {
    fn zero() -> Self {
        Jet::default()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Jet {
    fn one() -> Self {
        Jet::constant(Cyc::one())
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        self += &o;
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, o: Jet) -> Jet {
        self -= &o;
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        self.mul_ref(&o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let [a, b, c] = self.c;
        Jet::new(-a, -b, -c)
    }
}

impl<'a> AddAssign<&'a Jet> for Jet {
    fn add_assign(&mut self, o: &Jet) {
        for (x, y) in self.c.iter_mut().zip(&o.c) {
            *x += y;
        }
    }
}

impl<'a> SubAssign<&'a Jet> for Jet {
    fn sub_assign(&mut self, o: &Jet) {
        for (x, y) in self.c.iter_mut().zip(&o.c) {
            *x -= y;
        }
    }
}

impl Ring for Jet {
    fn mul_ref(&self, o: &Jet) -> Jet {
        let [a0, a1, a2] = &self.c;
        let [b0, b1, b2] = &o.c;
        Jet::new(
            a0.mul_ref(b0),
            a0.mul_ref(b1) + a1.mul_ref(b0),
            a0.mul_ref(b2) + a1.mul_ref(b1) + a2.mul_ref(b0),
        )
    }

    fn try_inv(&self) -> Option<Jet> {
        self.inv().ok()
    }

    fn from_cyc(c: &Cyc) -> Jet {
        Jet::constant(c.clone())
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {} h | {} h^2]", self.c[0], self.c[1], self.c[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(a: i64, b: i64, c: i64) -> Jet {
        Jet::new(Cyc::from_int(a), Cyc::from_int(b), Cyc::from_int(c))
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(j(1, 1, 0).mul_ref(&j(1, -1, 0)), j(1, 0, -1));
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(j(1, 1, 0).inv().unwrap(), j(1, -1, 1));
        assert_eq!(j(0, 1, 0).inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn product_with_parameter() {
        let p = 7;
        assert_eq!(j(1, p, 0).mul_ref(&j(1, 1, 0)), j(1, 1 + p, p));
    }
}
