//! Parameter sets, the standard generalized symmetry `P`, and its checks.

use std::collections::BTreeMap;

use num::One;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{scalar_from_json, scalar_to_json, Cyc, Rational, Ring};
use crate::tensorspace::{shift, Legs, PairOp, TripleOp};

/// Dimension `n`, Hecke parameter `a`, and `q^{ij}` for `i < j`.
///
/// `q^{ji} = 1/q^{ij}` and `q^{ii} = 1` are derived, never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet<S = Cyc> {
    n: usize,
    a: S,
    q: BTreeMap<(u8, u8), S>,
}

impl<S: Ring> ParamSet<S> {
    /// All `q^{ij} = 1`.
    pub fn uniform(n: usize, a: S) -> Result<Self> {
        Self::new(n, a, BTreeMap::new())
    }

    /// Missing pairs default to 1; keys must satisfy `i < j <= n`.
    pub fn new(n: usize, a: S, q: BTreeMap<(u8, u8), S>) -> Result<Self> {
        if !(2..=255).contains(&n) {
            return Err(Error::Param(format!("dimension {n} must be at least 2")));
        }
        if a.is_zero() || (a.clone() + S::one()).is_zero() {
            return Err(Error::Param("a must not be 0 or -1".into()));
        }
        let mut full = BTreeMap::new();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                full.insert((i, j), S::one());
            }
        }
        for ((i, j), v) in q {
            if !(1 <= i && i < j && j as usize <= n) {
                return Err(Error::Param(format!("q index ({i},{j}) needs 1 <= i < j <= {n}")));
            }
            if v.try_inv().is_none() {
                return Err(Error::Param(format!("q^{{{i}{j}}} must be invertible")));
            }
            full.insert((i, j), v);
        }
        Ok(ParamSet { n, a, q: full })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    /// Stored upper-triangular values.
    pub fn q_upper(&self) -> &BTreeMap<(u8, u8), S> {
        &self.q
    }

    /// `q^{ij}` for any pair.
    pub fn q(&self, i: u8, j: u8) -> S {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => S::one(),
            Less => self.q[&(i, j)].clone(),
            Greater => self.q[&(j, i)].try_inv().expect("validated invertible"),
        }
    }

    /// `q^{ij}` if `i < j`, else `q^{ij}/a`.
    pub fn hat_q(&self, i: u8, j: u8) -> S {
        let q = self.q(i, j);
        if i < j {
            q
        } else {
            q.mul_ref(&self.a.try_inv().expect("a != 0"))
        }
    }

    /// `r^{ij} = a q^{ij}`.
    pub fn r(&self, i: u8, j: u8) -> S {
        self.a.mul_ref(&self.q(i, j))
    }

    pub fn with_q(&self, i: u8, j: u8, v: S) -> Result<Self> {
        let mut q = self.q.clone();
        q.insert((i, j), v);
        Self::new(self.n, self.a.clone(), q)
    }

    pub fn with_a(&self, a: S) -> Result<Self> {
        Self::new(self.n, a, self.q.clone())
    }
}

impl ParamSet<Cyc> {
    /// Random nonzero rational `q`'s with numerators and denominators in `1..=bound`.
    pub fn random<R: Rng>(n: usize, a: Cyc, bound: i64, rng: &mut R) -> Result<Self> {
        let mut q = BTreeMap::new();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                q.insert((i, j), random_rational(bound, rng));
            }
        }
        Self::new(n, a, q)
    }

    pub fn to_json(&self) -> Value {
        let q: Vec<Value> = self
            .q
            .iter()
            .map(|((i, j), v)| json!({ "i": i, "j": j, "val": scalar_to_json(v) }))
            .collect();
        json!({ "n": self.n, "a": scalar_to_json(&self.a), "q": q })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Format("params: missing integer \"n\"".into()))? as usize;
        let a = scalar_from_json(v.get("a").ok_or_else(|| Error::Format("params: missing \"a\"".into()))?)
            .map_err(|e| Error::Format(format!("params.a: {e}")))?;
        let mut q = BTreeMap::new();
        if let Some(list) = v.get("q") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Format("params.q: expected an array".into()))?;
            for (pos, e) in list.iter().enumerate() {
                let idx = |k: &str| {
                    e.get(k)
                        .and_then(Value::as_u64)
                        .filter(|&x| x <= 255)
                        .map(|x| x as u8)
                        .ok_or_else(|| Error::Format(format!("params.q[{pos}]: missing \"{k}\"")))
                };
                let (i, j) = (idx("i")?, idx("j")?);
                let val = scalar_from_json(
                    e.get("val")
                        .ok_or_else(|| Error::Format(format!("params.q[{pos}]: missing \"val\"")))?,
                )
                .map_err(|err| Error::Format(format!("params.q[{pos}].val: {err}")))?;
                q.insert((i, j), val);
            }
        }
        Self::new(n, a, q)
    }
}

pub fn random_rational<R: Rng>(bound: i64, rng: &mut R) -> Cyc {
    let num = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=bound);
    Cyc::rational(Rational::new(num.into(), den.into()))
}

/// The standard `P`: on each block `{(i,j),(j,i)}`, `i < j`,
/// `(i,j) -> q^{ji} (j,i) + (1-a) (i,j)` and `(j,i) -> a q^{ij} (i,j)`;
/// `(i,i) -> (i,i)`.
pub fn build_standard_p<S: Ring>(params: &ParamSet<S>) -> PairOp<S> {
    let n = params.n() as u8;
    let a = params.a();
    let mut p = PairOp::zero(params.n());
    for i in 1..=n {
        p.set([i, i], [i, i], S::one());
        for j in i + 1..=n {
            p.set([i, j], [j, i], params.q(j, i));
            p.set([i, j], [i, j], S::one() - a.clone());
            p.set([j, i], [i, j], a.mul_ref(&params.q(i, j)));
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairReport<S: Ring = Cyc> {
    pub pass: bool,
    pub residual: PairOp<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TripleReport<S: Ring = Cyc> {
    pub pass: bool,
    pub residual: TripleOp<S>,
}

impl<S: Ring> PairReport<S> {
    fn of(residual: PairOp<S>) -> Self {
        PairReport { pass: residual.is_zero(), residual }
    }
}

impl<S: Ring> TripleReport<S> {
    fn of(residual: TripleOp<S>) -> Self {
        TripleReport { pass: residual.is_zero(), residual }
    }
}

fn check_a<S: Ring>(a: &S) -> Result<()> {
    if a.is_zero() || (a.clone() + S::one()).is_zero() {
        return Err(Error::Param("a must not be 0 or -1".into()));
    }
    Ok(())
}

/// `(P - 1)(P + a)`.
pub fn check_hecke<S: Ring>(p: &PairOp<S>, a: &S) -> Result<PairReport<S>> {
    check_a(a)?;
    let res = shift(p, &-S::one()).compose(&shift(p, a))?;
    Ok(PairReport::of(res))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidForm {
    /// `P12 P23 P12 = P23 P12 P23`
    Braid,
    /// `R12 R13 R23 = R23 R13 R12`
    Qybe,
}

/// `P12 P23 P12 - P23 P12 P23`.
pub fn braid_residual<S: Ring>(p: &PairOp<S>) -> TripleOp<S> {
    let (a, b) = (p.lift(Legs::L12), p.lift(Legs::L23));
    let lhs = a.compose(&b).and_then(|x| x.compose(&a)).expect("same dimension");
    let rhs = b.compose(&a).and_then(|x| x.compose(&b)).expect("same dimension");
    lhs.sub(&rhs).expect("same dimension")
}

/// `R12 R13 R23 - R23 R13 R12`.
pub fn qybe_residual<S: Ring>(r: &PairOp<S>) -> TripleOp<S> {
    let (a, b, c) = (r.lift(Legs::L12), r.lift(Legs::L13), r.lift(Legs::L23));
    let lhs = a.compose(&b).and_then(|x| x.compose(&c)).expect("same dimension");
    let rhs = c.compose(&b).and_then(|x| x.compose(&a)).expect("same dimension");
    lhs.sub(&rhs).expect("same dimension")
}

pub fn check_braid<S: Ring>(op: &PairOp<S>, form: BraidForm) -> TripleReport<S> {
    TripleReport::of(match form {
        BraidForm::Braid => braid_residual(op),
        BraidForm::Qybe => qybe_residual(op),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BraidFactorReport<S: Ring = Cyc> {
    /// `braid_123 (P12 - 1)`
    pub minus_one: TripleOp<S>,
    /// `braid_123 (P12 + a)`
    pub plus_a: TripleOp<S>,
    /// Both vanish, equivalently the braid relation holds (as `a != -1`).
    pub pass: bool,
}

pub fn check_braid_factors<S: Ring>(p: &PairOp<S>, a: &S) -> Result<BraidFactorReport<S>> {
    check_a(a)?;
    let braid = braid_residual(p);
    let m = shift(p, &-S::one()).lift(Legs::L12);
    let pa = shift(p, a).lift(Legs::L12);
    let minus_one = braid.compose(&m)?;
    let plus_a = braid.compose(&pa)?;
    let pass = minus_one.is_zero() && plus_a.is_zero();
    Ok(BraidFactorReport { minus_one, plus_a, pass })
}

/// `R[(i,j),(l,k)] = P[(i,j),(k,l)]`; the same map in both directions.
pub fn convert_p_r<S: Ring>(op: &PairOp<S>) -> PairOp<S> {
    op.flip_output()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlReport {
    pub pass: bool,
    /// `(j, holds, (prod_i q^{ij})^2 a^{2j} / a^{n+1})`
    pub per_j: Vec<(u8, bool, Cyc)>,
}

/// Squared form `(prod_i q^{ij})^2 a^{2j} = a^{n+1}` for every `j`.
pub fn check_sl_condition(params: &ParamSet<Cyc>) -> SlReport {
    let n = params.n() as u8;
    let a = params.a();
    let rhs = a.pow(n as i64 + 1).expect("a != 0");
    let per_j: Vec<(u8, bool, Cyc)> = (1..=n)
        .map(|j| {
            let prod = (1..=n).fold(Cyc::one(), |acc, i| acc.mul_ref(&params.q(i, j)));
            let lhs = prod.mul_ref(&prod).mul_ref(&a.pow(2 * j as i64).expect("a != 0"));
            let ratio = lhs.checked_div(&rhs).expect("a != 0");
            (j, ratio.is_one(), ratio)
        })
        .collect();
    SlReport { pass: per_j.iter().all(|e| e.1), per_j }
}

/// JSON form of an operator residual: sorted entry list.
pub fn residual_json<const K: usize>(op: &crate::tensorspace::Operator<Cyc, K>) -> Value {
    op.to_json()["entries"].clone()
}

pub fn pair_report_json(r: &PairReport) -> Value {
    json!({ "pass": r.pass, "residual_entries": residual_json(&r.residual) })
}

pub fn triple_report_json(r: &TripleReport) -> Value {
    json!({ "pass": r.pass, "residual_entries": residual_json(&r.residual) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn params(n: usize, a: i64, qs: &[((u8, u8), &str)]) -> ParamSet {
        let q = qs.iter().map(|(k, v)| (*k, Cyc::rational(rat(v)))).collect();
        ParamSet::new(n, Cyc::from_int(a), q).unwrap()
    }

    #[test]
    fn classical_point_is_flip() {
        let p = build_standard_p(&params(2, 1, &[]));
        assert_eq!(p, PairOp::flip(2));
    }

    #[test]
    fn two_by_two_entries() {
        let p = build_standard_p(&params(2, 3, &[((1, 2), "2")]));
        assert_eq!(p.nnz(), 5);
        assert_eq!(p.entry([1, 1], [1, 1]), Cyc::one());
        assert_eq!(p.entry([2, 2], [2, 2]), Cyc::one());
        assert_eq!(p.entry([1, 2], [1, 2]), Cyc::from_int(-2));
        assert_eq!(p.entry([1, 2], [2, 1]), Cyc::frac(1, 2));
        assert_eq!(p.entry([2, 1], [1, 2]), Cyc::from_int(6));
        // P^2 = (1-a) P + a
        let lhs = p.compose(&p).unwrap();
        let rhs = p.scale(&Cyc::from_int(-2)).add(&PairOp::scalar(2, &Cyc::from_int(3))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn entry_count_n3() {
        let p = build_standard_p(&params(3, 5, &[((1, 2), "2"), ((1, 3), "-3/7"), ((2, 3), "4")]));
        assert_eq!(p.nnz(), 12);
    }

    #[test]
    fn hecke_and_braid() {
        let pr = params(4, 5, &[((1, 2), "2"), ((1, 3), "-3/7"), ((2, 4), "4"), ((3, 4), "11/3")]);
        let p = build_standard_p(&pr);
        assert!(check_hecke(&p, pr.a()).unwrap().pass);
        assert!(check_braid(&p, BraidForm::Braid).pass);
        assert!(check_braid(&convert_p_r(&p), BraidForm::Qybe).pass);
        let mut bad = p.clone();
        bad.add_entry([1, 2], [2, 1], &Cyc::one());
        let rep = check_hecke(&bad, pr.a()).unwrap();
        assert!(!rep.pass && !rep.residual.is_zero());
        assert!(check_hecke(&p, &Cyc::from_int(-1)).is_err());
    }

    #[test]
    fn flip_hecke_and_braid_factors() {
        let s = PairOp::<Cyc>::flip(3);
        assert!(check_hecke(&s, &Cyc::one()).unwrap().pass);
        let t = check_braid_factors(&s, &Cyc::from_int(2)).unwrap();
        assert!(t.pass && t.minus_one.is_zero() && t.plus_a.is_zero());
    }

    #[test]
    fn braid_factors_detect_perturbation() {
        let pr = params(3, 2, &[((1, 2), "3"), ((2, 3), "-5")]);
        let mut p = build_standard_p(&pr);
        assert!(check_braid_factors(&p, pr.a()).unwrap().pass);
        p.add_entry([1, 3], [3, 1], &Cyc::one());
        assert!(!check_braid_factors(&p, pr.a()).unwrap().pass);
    }

    #[test]
    fn convert_is_involution() {
        let s = PairOp::<Cyc>::flip(2);
        assert_eq!(convert_p_r(&s), PairOp::identity(2));
        assert_eq!(convert_p_r(&PairOp::<Cyc>::identity(2)), s);
        let p = build_standard_p(&params(3, 2, &[((1, 2), "3")]));
        assert_eq!(convert_p_r(&convert_p_r(&p)), p);
    }

    #[test]
    fn sl_condition() {
        assert!(check_sl_condition(&params(3, 1, &[])).pass);
        // squared form (q^{21})^2 a^2 = a^3 at a = 4 gives q^{12} = 1/2
        let r = check_sl_condition(&params(2, 4, &[((1, 2), "1/2")]));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn block_eigenstructure() {
        let pr = params(3, 7, &[((1, 2), "2/5"), ((1, 3), "-3"), ((2, 3), "9")]);
        let p = build_standard_p(&pr);
        for i in 1..=3u8 {
            for j in i + 1..=3 {
                let m = |x: [u8; 2], y: [u8; 2]| p.entry(x, y);
                let tr = m([i, j], [i, j]) + m([j, i], [j, i]);
                let det = m([i, j], [i, j]) * m([j, i], [j, i]) - m([i, j], [j, i]) * m([j, i], [i, j]);
                assert_eq!(tr, Cyc::from_int(-6));
                assert_eq!(det, Cyc::from_int(-7));
            }
        }
    }

    #[test]
    fn json_round_trip_defaults_missing() {
        let v: Value = serde_json::from_str(r#"{"n":3,"a":{"r":[2,1]},"q":[{"i":1,"j":3,"val":{"r":[1,2]}}]}"#).unwrap();
        let p = ParamSet::from_json(&v).unwrap();
        assert_eq!(p.q(1, 2), Cyc::one());
        assert_eq!(p.q(3, 1), Cyc::from_int(2));
        assert_eq!(ParamSet::from_json(&p.to_json()).unwrap(), p);
    }
}
