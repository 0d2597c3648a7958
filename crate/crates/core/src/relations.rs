//! Quadratic relations of the quantum plane, anti-plane and their cross
//! commutation, and degree-3 dimension counts.
//!
//! Relations are read off the columns of `P - 1` (plane) and `P + a`
//! (anti-plane): column `(k,l)` gives `sum_{(i,j)} A[(i,j),(k,l)] g^i g^j = 0`.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::scalars::{format_scalar, parse_scalar, Cyc, Ring};
use crate::tensorspace::{shift, PairOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X(u8),
    Theta(u8),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i) => write!(f, "x{i}"),
            Gen::Theta(i) => write!(f, "t{i}"),
        }
    }
}

pub type Word = [Gen; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Plane,
    Antiplane,
    Cross,
}

/// `sum c * w = 0`, with the first (smallest) word carrying coefficient 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub kind: Kind,
    pub terms: Vec<(Word, Cyc)>,
}

impl Relation {
    /// Normalizes and validates; `None` for the zero relation.
    pub fn new(kind: Kind, mut terms: Vec<(Word, Cyc)>) -> Option<Self> {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let lead = terms.first()?.1.inv().ok()?;
        for t in terms.iter_mut() {
            t.1 = t.1.mul_ref(&lead);
        }
        Some(Relation { kind, terms })
    }

    pub fn coeff(&self, w: &Word) -> Cyc {
        self.terms
            .iter()
            .find(|(x, _)| x == w)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Cyc::zero)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, ([g, h], c)) in self.terms.iter().enumerate() {
            let word = format!("{g}*{h}");
            let (neg, mag) = match c.as_rational() {
                Some(r) if r < &num::zero() => (true, -c.clone()),
                _ => (false, c.clone()),
            };
            let coef = if mag.is_one() { String::new() } else { format!("({})*", format_scalar(&mag)) };
            match (pos, neg) {
                (0, false) => write!(f, "{coef}{word}")?,
                (0, true) => write!(f, "-{coef}{word}")?,
                (_, false) => write!(f, " + {coef}{word}")?,
                (_, true) => write!(f, " - {coef}{word}")?,
            }
        }
        write!(f, " = 0")
    }
}

fn parse_gen(s: &str) -> Result<Gen> {
    let bad = || Error::Format(format!("bad generator {s:?}"));
    let (ctor, rest): (fn(u8) -> Gen, &str) = if let Some(r) = s.strip_prefix('x') {
        (Gen::X, r)
    } else if let Some(r) = s.strip_prefix('t') {
        (Gen::Theta, r)
    } else {
        return Err(bad());
    };
    rest.parse::<u8>().map(ctor).map_err(|_| bad())
}

fn parse_term(t: &str) -> Result<(Word, Cyc)> {
    let t = t.trim();
    let (coef, word) = if t.starts_with('(') {
        let close = t.find(')').ok_or_else(|| Error::Format(format!("unclosed coefficient in {t:?}")))?;
        let rest = t[close + 1..].trim_start();
        let rest = rest
            .strip_prefix('*')
            .ok_or_else(|| Error::Format(format!("expected '*' after coefficient in {t:?}")))?;
        (parse_scalar(&t[1..close])?, rest.trim())
    } else {
        (Cyc::one(), t)
    };
    let mut it = word.split('*').map(str::trim);
    match (it.next(), it.next(), it.next()) {
        (Some(g), Some(h), None) => Ok(([parse_gen(g)?, parse_gen(h)?], coef)),
        _ => Err(Error::Format(format!("expected a two-letter word in {t:?}"))),
    }
}

/// Parses one line of the text form, e.g. `x1*x2 - (2)*x2*x1 = 0`.
pub fn parse_relation(line: &str) -> Result<Relation> {
    let lhs = line
        .trim()
        .strip_suffix("= 0")
        .ok_or_else(|| Error::Format(format!("relation must end with \"= 0\": {line:?}")))?
        .trim();
    let mut terms = Vec::new();
    let (mut depth, mut start, mut sign) = (0i32, 0usize, Cyc::one());
    let bytes = lhs.as_bytes();
    let push = |seg: &str, sign: &Cyc, terms: &mut Vec<(Word, Cyc)>| -> Result<()> {
        if seg.trim().is_empty() {
            return Ok(());
        }
        let (w, c) = parse_term(seg)?;
        terms.push((w, c.mul_ref(sign)));
        Ok(())
    };
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                push(&lhs[start..i], &sign, &mut terms)?;
                sign = if b == b'-' { -Cyc::one() } else { Cyc::one() };
                start = i + 1;
            }
            _ => {}
        }
    }
    push(&lhs[start..], &sign, &mut terms)?;
    let kind = match terms.first().map(|t| t.0) {
        Some([Gen::X(_), Gen::X(_)]) => Kind::Plane,
        Some([Gen::Theta(_), Gen::Theta(_)]) => Kind::Antiplane,
        Some(_) => Kind::Cross,
        None => return Err(Error::Format("empty relation".into())),
    };
    let ok = terms.iter().all(|([g, h], _)| match kind {
        Kind::Plane => matches!((g, h), (Gen::X(_), Gen::X(_))),
        Kind::Antiplane => matches!((g, h), (Gen::Theta(_), Gen::Theta(_))),
        Kind::Cross => matches!((g, h), (Gen::X(_), Gen::Theta(_)) | (Gen::Theta(_), Gen::X(_))),
    });
    if !ok {
        return Err(Error::Format(format!("mixed word kinds in {line:?}")));
    }
    Relation::new(kind, terms).ok_or_else(|| Error::Format(format!("zero relation {line:?}")))
}

fn word_index(n: usize, i: u8, j: u8) -> usize {
    (i as usize - 1) * n + (j as usize - 1)
}

fn index_word(n: usize, idx: usize) -> (u8, u8) {
    ((idx / n + 1) as u8, (idx % n + 1) as u8)
}

/// Column space of `A`, as vectors over input words.
pub fn column_space(a: &PairOp) -> Echelon {
    let n = a.n();
    let mut cols: Vec<Vec<(usize, Cyc)>> = vec![Vec::new(); n * n];
    for ([i, j], [k, l], v) in a.iter() {
        cols[word_index(n, k, l)].push((word_index(n, i, j), v.clone()));
    }
    let mut e = Echelon::new();
    for mut c in cols {
        c.sort_by_key(|x| x.0);
        e.insert(c);
    }
    e
}

fn relations_of(a: &PairOp, kind: Kind) -> Vec<Relation> {
    let n = a.n();
    let g = |i: u8| if kind == Kind::Plane { Gen::X(i) } else { Gen::Theta(i) };
    column_space(a)
        .into_rref()
        .into_values()
        .filter_map(|row| {
            let terms = row
                .into_iter()
                .map(|(idx, c)| {
                    let (i, j) = index_word(n, idx);
                    ([g(i), g(j)], c)
                })
                .collect();
            Relation::new(kind, terms)
        })
        .collect()
}

/// Reduced basis of the plane relations `xx(P - 1) = 0`.
pub fn plane_relations(p: &PairOp) -> Vec<Relation> {
    relations_of(&shift(p, &-Cyc::one()), Kind::Plane)
}

fn check_a(a: &Cyc) -> Result<()> {
    if a.is_zero() || (a + &Cyc::one()).is_zero() {
        return Err(Error::Param("a must not be 0 or -1".into()));
    }
    Ok(())
}

/// Reduced basis of the anti-plane relations `tt(P + a) = 0`.
pub fn antiplane_relations(p: &PairOp, a: &Cyc) -> Result<Vec<Relation>> {
    check_a(a)?;
    Ok(relations_of(&shift(p, a), Kind::Antiplane))
}

/// `a x^i t^j - sum_{(k,l)} P[(k,l),(i,j)] t^k x^l = 0` for every `(i,j)`.
pub fn cross_relations(p: &PairOp, a: &Cyc) -> Result<Vec<Relation>> {
    if a.is_zero() {
        return Err(Error::Param("a must not be 0".into()));
    }
    let n = p.n() as u8;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut terms = vec![([Gen::X(i), Gen::Theta(j)], a.clone())];
            for k in 1..=n {
                for l in 1..=n {
                    if let Some(v) = p.get([k, l], [i, j]) {
                        terms.push(([Gen::Theta(k), Gen::X(l)], -v.clone()));
                    }
                }
            }
            out.extend(Relation::new(Kind::Cross, terms));
        }
    }
    Ok(out)
}

/// Rank of `{rho (x) e_m, e_m (x) rho}` subtracted from `n^3`.
fn degree3(space: Echelon, n: usize) -> usize {
    let rows: Vec<SparseVec> = space.into_rref().into_values().collect();
    let mut e = Echelon::new();
    for rho in &rows {
        for m in 0..n {
            let mut left: SparseVec = rho.iter().map(|(w, c)| (w * n + m, c.clone())).collect();
            left.sort_by_key(|x| x.0);
            e.insert(left);
            let right: SparseVec = rho.iter().map(|(w, c)| (m * n * n + w, c.clone())).collect();
            e.insert(right);
        }
    }
    n * n * n - e.rank()
}

/// Degree-3 dimensions of the plane and anti-plane algebras.
pub fn degree3_dims(p: &PairOp, a: &Cyc) -> Result<(usize, usize)> {
    check_a(a)?;
    let n = p.n();
    let plane = degree3(column_space(&shift(p, &-Cyc::one())), n);
    let anti = degree3(column_space(&shift(p, a)), n);
    Ok((plane, anti))
}

/// Coefficient vector over the `n^2` words of a plane or anti-plane relation.
pub fn relation_vector(r: &Relation, n: usize) -> SparseVec {
    let mut v: SparseVec = r
        .terms
        .iter()
        .map(|([g, h], c)| {
            let (i, j) = match (g, h) {
                (Gen::X(i) | Gen::Theta(i), Gen::X(j) | Gen::Theta(j)) => (*i, *j),
            };
            (word_index(n, i, j), c.clone())
        })
        .collect();
    v.sort_by_key(|x| x.0);
    v
}

/// Coefficient vector over `x t` words (first `n^2`) then `t x` words.
pub fn cross_vector(r: &Relation, n: usize) -> SparseVec {
    let mut v: SparseVec = r
        .terms
        .iter()
        .map(|(w, c)| {
            let idx = match *w {
                [Gen::X(i), Gen::Theta(j)] => word_index(n, i, j),
                [Gen::Theta(k), Gen::X(l)] => n * n + word_index(n, k, l),
                _ => panic!("not a cross word"),
            };
            (idx, c.clone())
        })
        .collect();
    v.sort_by_key(|x| x.0);
    v
}

/// Renders one relation per line.
pub fn render(rels: &[Relation]) -> String {
    rels.iter().map(|r| format!("{r}\n")).collect()
}

pub fn parse_all(text: &str) -> Result<Vec<Relation>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(no, l)| parse_relation(l).map_err(|e| Error::Format(format!("line {}: {e}", no + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard_p::{build_standard_p, ParamSet};
    use std::collections::BTreeMap;

    fn p23() -> (PairOp, Cyc) {
        let q = BTreeMap::from([((1, 2), Cyc::from_int(2))]);
        let pr = ParamSet::new(2, Cyc::from_int(3), q).unwrap();
        (build_standard_p(&pr), pr.a().clone())
    }

    #[test]
    fn plane_n2() {
        let (p, _) = p23();
        let r = plane_relations(&p);
        assert_eq!(render(&r), "x1*x2 - (2)*x2*x1 = 0\n");
    }

    #[test]
    fn antiplane_n2() {
        let (p, a) = p23();
        let r = antiplane_relations(&p, &a).unwrap();
        assert_eq!(render(&r), "t1*t1 = 0\nt1*t2 + (6)*t2*t1 = 0\nt2*t2 = 0\n");
    }

    #[test]
    fn classical_relations() {
        let s = PairOp::flip(3);
        let r = plane_relations(&s);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|x| x.terms.len() == 2 && x.terms[1].1 == -Cyc::one()));
        let t = antiplane_relations(&s, &Cyc::one()).unwrap();
        assert_eq!(t.len(), 6);
        let c = cross_relations(&s, &Cyc::one()).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c[1].to_string(), "x1*t2 - t2*x1 = 0");
    }

    #[test]
    fn cross_n2() {
        let (p, a) = p23();
        let c = cross_relations(&p, &a).unwrap();
        // 3 x1 t2 = -2 t1 x2 + 6 t2 x1, divided by 3
        assert_eq!(c[1].to_string(), "x1*t2 + (2/3)*t1*x2 - (2)*t2*x1 = 0");
        assert_eq!(c[0].to_string(), "x1*t1 - (1/3)*t1*x1 = 0");
    }

    #[test]
    fn degree3_classical() {
        assert_eq!(degree3_dims(&PairOp::flip(3), &Cyc::one()).unwrap(), (10, 1));
    }

    #[test]
    fn text_round_trip() {
        for line in ["x1*x2 - (2)*x2*x1 = 0", "t2*t2 - (1/4)*t3*t1 = 0", "x1*t2 + (1/4 + 1/2w)*t1*x2 = 0"] {
            let r = parse_relation(line).unwrap();
            assert_eq!(r.to_string(), line);
        }
        assert!(parse_relation("x1*t2 + x1*x1 = 0").is_err());
    }
}
