use std::collections::BTreeMap;
use std::fmt;

use super::{Cyc, Ring};
use crate::error::{Error, Result};

/// Element of the free abelian group on symbols `a, u1, u2, ...`.
///
/// With `a_mod3` set, the exponent of `a` lives in Z/3 (stored in `0..3`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<String, i64>,
    a_mod3: bool,
}

impl Monomial {
    pub fn one(a_mod3: bool) -> Self {
        Monomial { exps: BTreeMap::new(), a_mod3 }
    }

    pub fn var(sym: &str, e: i64, a_mod3: bool) -> Self {
        let mut m = Monomial::one(a_mod3);
        m.set(sym, e);
        m
    }

    pub fn a_mod3(&self) -> bool {
        self.a_mod3
    }

    pub fn exp(&self, sym: &str) -> i64 {
        self.exps.get(sym).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &BTreeMap<String, i64> {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    fn set(&mut self, sym: &str, e: i64) {
        let e = if self.a_mod3 && sym == "a" { e.rem_euclid(3) } else { e };
        if e == 0 {
            self.exps.remove(sym);
        } else {
            self.exps.insert(sym.to_string(), e);
        }
    }

    pub fn mul(&self, o: &Monomial) -> Result<Monomial> {
        if self.a_mod3 != o.a_mod3 {
            return Err(Error::IncompatibleMonoids);
        }
        let mut out = self.clone();
        for (s, e) in &o.exps {
            let cur = out.exp(s);
            out.set(s, cur + e);
        }
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> Monomial {
        let mut out = Monomial::one(self.a_mod3);
        for (s, e) in &self.exps {
            out.set(s, e * k);
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// Evaluates at the given symbol values; missing symbols are an error.
    pub fn eval<S: Ring>(&self, values: &BTreeMap<String, S>) -> Result<S> {
        let mut out = S::one();
        for (s, e) in &self.exps {
            let v = values
                .get(s)
                .ok_or_else(|| Error::Param(format!("no value for symbol {s}")))?;
            let p = v.pow_i(*e).ok_or(Error::DivisionByZero)?;
            out = out.mul_ref(&p);
        }
        Ok(out)
    }

    pub fn eval_cyc(&self, values: &BTreeMap<String, Cyc>) -> Result<Cyc> {
        self.eval(values)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}{}", if self.a_mod3 { " (a mod 3)" } else { "" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_add() {
        let x = Monomial::var("a", 1, false).mul(&Monomial::var("u1", 2, false)).unwrap();
        let y = Monomial::var("a", 2, false).mul(&Monomial::var("u1", -2, false)).unwrap();
        assert_eq!(x.mul(&y).unwrap(), Monomial::var("a", 3, false));
    }

    #[test]
    fn a_reduces_mod_three() {
        let x = Monomial::var("a", 1, true);
        let y = Monomial::var("a", 2, true);
        assert!(x.mul(&y).unwrap().is_one());
    }

    #[test]
    fn disjoint_supports() {
        let m = Monomial::var("u1", 1, false).mul(&Monomial::var("u2", 1, false)).unwrap();
        assert_eq!(m.to_string(), "u1*u2");
    }

    #[test]
    fn flag_mismatch() {
        let r = Monomial::one(true).mul(&Monomial::one(false));
        assert_eq!(r, Err(Error::IncompatibleMonoids));
    }
}
