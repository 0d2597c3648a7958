use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{BigInt, Cyc, Rational};
use crate::error::{Error, Result};

fn fmt_rat(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_w(v: &Rational) -> String {
    if v.is_one() {
        "w".into()
    } else if (-v).is_one() {
        "-w".into()
    } else {
        format!("{}w", fmt_rat(v))
    }
}

/// Text form: `2`, `-1/4`, `w`, `1/4 + 1/2w`, `-1 - w`.
pub fn format_scalar(c: &Cyc) -> String {
    let (u, v) = (c.re(), c.om());
    match (u.is_zero(), v.is_zero()) {
        (_, true) => fmt_rat(u),
        (true, false) => fmt_w(v),
        (false, false) => {
            if v.is_negative() {
                format!("{} - {}", fmt_rat(u), fmt_w(&-v))
            } else {
                format!("{} + {}", fmt_rat(u), fmt_w(v))
            }
        }
    }
}

fn parse_rat(s: &str) -> Result<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::Format(format!("bad rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

/// Inverse of [`format_scalar`]; also accepts surrounding parentheses.
pub fn parse_scalar(s: &str) -> Result<Cyc> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .map(str::to_string)
        .unwrap_or(t);
    if t.is_empty() {
        return Err(Error::Format("empty scalar".into()));
    }
    let Some(body) = t.strip_suffix('w') else {
        return Ok(Cyc::rational(parse_rat(&t)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .filter(|&(i, ch)| i > 0 && (ch == '+' || ch == '-'))
        .map(|(i, _)| i)
        .last();
    let (re, om) = match split {
        Some(i) => (parse_rat(&body[..i])?, &body[i..]),
        None => (Rational::zero(), body),
    };
    let om = match om {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        x => parse_rat(x)?,
    };
    Ok(Cyc::new(re, om))
}

fn int_json(i: &BigInt) -> Value {
    match i64::try_from(i) {
        Ok(k) => json!(k),
        Err(_) => json!(i.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Format(format!("non-integer number {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Format(format!("bad integer {s:?}"))),
        _ => Err(Error::Format(format!("expected integer, got {v}"))),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    json!([int_json(r.numer()), int_json(r.denom())])
}

/// Reads `[num, den]`, a bare integer, or a text rational.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Array(a) if a.len() == 2 => {
            let d = int_from_json(&a[1])?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(int_from_json(&a[0])?, d))
        }
        Value::Number(_) => Ok(Rational::from_integer(int_from_json(v)?)),
        Value::String(s) => parse_rat(s),
        _ => Err(Error::Format(format!("expected rational [num, den], got {v}"))),
    }
}

/// `{"r":[n,d]}` for rationals, `{"c":[[n1,d1],[n2,d2]]}` otherwise.
pub fn scalar_to_json(c: &Cyc) -> Value {
    match c.as_rational() {
        Some(r) => json!({ "r": rational_to_json(r) }),
        None => json!({ "c": [rational_to_json(c.re()), rational_to_json(c.om())] }),
    }
}

/// Accepts the tagged object forms, plus bare numbers and text scalars for convenience.
pub fn scalar_from_json(v: &Value) -> Result<Cyc> {
    match v {
        Value::Object(m) => {
            if let Some(r) = m.get("r") {
                Ok(Cyc::rational(rational_from_json(r)?))
            } else if let Some(Value::Array(c)) = m.get("c") {
                if c.len() != 2 {
                    return Err(Error::Format("\"c\" needs two rationals".into()));
                }
                Ok(Cyc::new(rational_from_json(&c[0])?, rational_from_json(&c[1])?))
            } else {
                Err(Error::Format(format!("expected {{\"r\":..}} or {{\"c\":..}}, got {v}")))
            }
        }
        Value::Number(_) => Ok(Cyc::rational(rational_from_json(v)?)),
        Value::String(s) => parse_scalar(s),
        _ => Err(Error::Format(format!("expected scalar, got {v}"))),
    }
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        scalar_to_json(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        scalar_from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn text_round_trip() {
        for s in ["2", "-1/4", "w", "-w", "1/4 + 1/2w", "-1 - w", "3/7w", "0"] {
            let c = parse_scalar(s).unwrap();
            assert_eq!(format_scalar(&c), s);
        }
        assert_eq!(parse_scalar("(1/4 + 1/2w)").unwrap(), Cyc::new(rat("1/4"), rat("1/2")));
    }

    #[test]
    fn json_forms() {
        let c = Cyc::new(rat("1/4"), rat("-1/2"));
        let v = scalar_to_json(&c);
        assert_eq!(v.to_string(), r#"{"c":[[1,4],[-1,2]]}"#);
        assert_eq!(scalar_from_json(&v).unwrap(), c);
        assert_eq!(scalar_to_json(&Cyc::frac(-3, 6)).to_string(), r#"{"r":[-1,2]}"#);
    }

    #[test]
    fn big_integers_survive() {
        let big = Cyc::rational(Rational::from_integer(BigInt::from(10).pow(30)));
        assert_eq!(scalar_from_json(&scalar_to_json(&big)).unwrap(), big);
    }
}
