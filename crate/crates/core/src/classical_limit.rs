//! Classical limit: `a = 1 + h`, `q^{ij} = 1 + h p^{ij}`, and `R = 1 - h r + O(h^2)`.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::deformations::{build_p1_with, constraints, DeformationSpec, Variant};
use crate::error::{Error, Result};
use crate::scalars::{rational_from_json, rational_to_json, Cyc, Jet, Rational, Ring};
use crate::standard_p::{build_standard_p, convert_p_r, ParamSet, TripleReport};
use crate::tensorspace::{Legs, PairOp, TripleOp};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalParams {
    n: usize,
    p: BTreeMap<(u8, u8), Rational>,
    pub epsilon: Rational,
}

impl ClassicalParams {
    /// Missing `p^{ij}` default to 0; keys must satisfy `i < j <= n`.
    pub fn new(n: usize, p: BTreeMap<(u8, u8), Rational>, epsilon: Rational) -> Result<Self> {
        if n == 0 || n > 255 {
            return Err(Error::Param(format!("dimension {n} out of range")));
        }
        if let Some((i, j)) = p.keys().find(|(i, j)| !(1 <= *i && i < j && *j as usize <= n)) {
            return Err(Error::Param(format!("p key ({i},{j}) must satisfy 1 <= i < j <= {n}")));
        }
        Ok(ClassicalParams { n, p, epsilon })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, BTreeMap::new(), Rational::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Antisymmetric extension: `p^{ii} = 0`, `p^{ji} = -p^{ij}`.
    pub fn p(&self, i: u8, j: u8) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Rational::zero(),
            Less => self.p.get(&(i, j)).cloned().unwrap_or_else(Rational::zero),
            Greater => -self.p(j, i),
        }
    }

    pub fn with_p(mut self, i: u8, j: u8, v: Rational) -> Result<Self> {
        self.p.insert((i, j), v);
        Self::new(self.n, self.p, self.epsilon)
    }

    /// The jet-valued parameters `a = 1 + h`, `q^{ij} = 1 + h p^{ij}`.
    pub fn jet_params(&self) -> ParamSet<Jet> {
        let q = (1..=self.n as u8)
            .flat_map(|i| (i + 1..=self.n as u8).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), Jet::linear(Cyc::one(), Cyc::rational(self.p(i, j)))))
            .collect();
        ParamSet::new(self.n, Jet::linear(Cyc::one(), Cyc::one()), q).expect("jet parameters are valid")
    }

    pub fn to_json(&self) -> Value {
        let p: Vec<Value> = self
            .p
            .iter()
            .map(|((i, j), v)| json!({ "i": i, "j": j, "val": rational_to_json(v) }))
            .collect();
        json!({ "n": self.n, "p": p, "epsilon": rational_to_json(&self.epsilon) })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["n"].as_u64().ok_or_else(|| Error::Format("\"n\" must be a positive integer".into()))? as usize;
        let mut p = BTreeMap::new();
        if let Some(list) = v.get("p") {
            let list = list.as_array().ok_or_else(|| Error::Format("\"p\" must be a list".into()))?;
            for (idx, e) in list.iter().enumerate() {
                let ix = |k: &str| {
                    e[k].as_u64()
                        .filter(|x| *x <= 255)
                        .map(|x| x as u8)
                        .ok_or_else(|| Error::Format(format!("p[{idx}].{k} must be an index")))
                };
                p.insert((ix("i")?, ix("j")?), rational_from_json(&e["val"])?);
            }
        }
        let epsilon = match v.get("epsilon") {
            Some(e) => rational_from_json(e)?,
            None => Rational::zero(),
        };
        Self::new(n, p, epsilon)
    }
}

/// Order-`h` coefficients of `lhs / a^x` for each constraint of `spec`, on the jet parameters.
pub fn linearized_constraints(params: &ClassicalParams, spec: &DeformationSpec) -> Result<Vec<(u8, Cyc)>> {
    let jp = params.jet_params();
    constraints(params.n, spec)?
        .iter()
        .map(|c| {
            let mut lhs = Jet::one();
            for &(x, y, e) in &c.factors {
                lhs = lhs.mul_ref(&jp.q(x, y).pow_i(e).ok_or(Error::NotInvertible)?);
            }
            let rhs = jp.a().pow_i(c.a_exp).ok_or(Error::NotInvertible)?;
            let ratio = lhs.mul_ref(&rhs.inv()?);
            Ok((c.m, ratio.coeff(1).clone()))
        })
        .collect()
}

/// `r` read off `R = 1 - h r + O(h^2)`, with `R` converted from `P + eps P1`.
pub fn r_from_r_jet(params: &ClassicalParams, spec: Option<&DeformationSpec>) -> Result<PairOp> {
    let jp = params.jet_params();
    let mut p = build_standard_p(&jp);
    if let Some(spec) = spec {
        if !spec.is_principal() {
            return Err(Error::Spec("the exceptional series has no expansion around a = 1".into()));
        }
        if let Some((m, c)) = linearized_constraints(params, spec)?.into_iter().find(|(_, c)| !c.is_zero()) {
            return Err(Error::Constraint(format!("order-h constraint at m={m} has residual {c}")));
        }
        let mu = Jet::linear(Cyc::zero(), spec.amplitude.scale(&params.epsilon));
        p = p.add(&build_p1_with(&jp, spec, &mu)?)?;
    }
    let r = convert_p_r(&p);
    if r.map(|x| x.coeff(0).clone()) != PairOp::identity(params.n) {
        return Err(Error::Convention("order-0 part of R is not the identity".into()));
    }
    Ok(r.map(|x| -x.coeff(1).clone()))
}

/// `sum_{i<j} [in (i,j), out (j,i)] = 1`, `[in (i,j), out (i,j)] = p^{ij}`,
/// `[in (j,i), out (j,i)] = -(1 + p^{ij})`.
pub fn build_r0(params: &ClassicalParams) -> PairOp {
    let n = params.n as u8;
    let mut r = PairOp::zero(params.n);
    for i in 1..=n {
        for j in i + 1..=n {
            let p = Cyc::rational(params.p(i, j));
            r.set([i, j], [j, i], Cyc::one());
            r.set([i, j], [i, j], p.clone());
            r.set([j, i], [j, i], -(Cyc::one() + p));
        }
    }
    r
}

/// `[in (l,k), out (j,i)] = 1`, `[in (k,l), out (i,j)] = -1`.
pub fn build_delta_r(n: usize, spec: &DeformationSpec) -> Result<PairOp> {
    if !matches!(spec.variant, Variant::Principal { .. }) {
        return Err(Error::Spec("only the principal series has a classical limit".into()));
    }
    let (k, i, j, l) = spec.indices(n)?;
    let mut d = PairOp::zero(n);
    d.add_entry([l, k], [j, i], &Cyc::one());
    d.add_entry([k, l], [i, j], &-Cyc::one());
    Ok(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BdReport {
    pub pass: bool,
    /// `(m, p^{lm} + p^{km} + p^{mi} + p^{mj}, expected)`
    pub per_m: Vec<(u8, Rational, Rational)>,
}

/// `p^{lm} + p^{km} + p^{mi} + p^{mj} = s (d_mj - d_mi)`, `s = +1` in case 1, `-1` in case 2.
pub fn check_bd(params: &ClassicalParams, spec: &DeformationSpec) -> Result<BdReport> {
    let Variant::Principal { case, .. } = spec.variant else {
        return Err(Error::Spec("the condition is stated for the principal series".into()));
    };
    let (k, i, j, l) = spec.indices(params.n)?;
    let s = if case == 1 { 1 } else { -1 };
    let d = |x: u8, y: u8| (x == y) as i64;
    let per_m: Vec<_> = (1..=params.n as u8)
        .map(|m| {
            let lhs = params.p(l, m) + params.p(k, m) + params.p(m, i) + params.p(m, j);
            (m, lhs, Rational::from_integer((s * (d(m, j) - d(m, i))).into()))
        })
        .collect();
    Ok(BdReport { pass: per_m.iter().all(|(_, x, y)| x == y), per_m })
}

/// `[r12, r13] + [r12, r23] + [r13, r23]`.
pub fn cybe_residual(r: &PairOp) -> TripleOp {
    let (a, b, c) = (r.lift(Legs::L12), r.lift(Legs::L13), r.lift(Legs::L23));
    let t = |x: &TripleOp, y: &TripleOp| x.commutator(y).expect("same dimension");
    t(&a, &b).add(&t(&a, &c)).and_then(|s| s.add(&t(&b, &c))).expect("same dimension")
}

pub fn check_cybe(r: &PairOp) -> TripleReport {
    let residual = cybe_residual(r);
    TripleReport { pass: residual.is_zero(), residual }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipComparison {
    Equal,
    EqualAfterFlip,
    Different,
}

impl FlipComparison {
    pub fn as_str(self) -> &'static str {
        match self {
            FlipComparison::Equal => "equal",
            FlipComparison::EqualAfterFlip => "equal_after_flip",
            FlipComparison::Different => "different",
        }
    }
}

pub fn compare_up_to_flip(r1: &PairOp, r2: &PairOp) -> Result<FlipComparison> {
    if r1.n() != r2.n() {
        return Err(Error::Shape(format!("dimensions {} and {} differ", r1.n(), r2.n())));
    }
    Ok(if r1 == r2 {
        FlipComparison::Equal
    } else if *r1 == r2.flip_conjugate() {
        FlipComparison::EqualAfterFlip
    } else {
        FlipComparison::Different
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, ri};

    fn cp(n: usize, ps: &[((u8, u8), i64)]) -> ClassicalParams {
        ClassicalParams::new(n, ps.iter().map(|(k, v)| (*k, ri(*v))).collect(), Rational::zero()).unwrap()
    }

    fn bd_family() -> ClassicalParams {
        cp(4, &[((2, 4), 1), ((3, 4), -1)])
    }

    #[test]
    fn n2_extraction() {
        let r = r_from_r_jet(&cp(2, &[]), None).unwrap();
        assert_eq!(r.nnz(), 2);
        assert_eq!(r.entry([1, 2], [2, 1]), Cyc::one());
        assert_eq!(r.entry([2, 1], [2, 1]), Cyc::from_int(-1));
        let r = r_from_r_jet(&cp(2, &[((1, 2), 3)]), None).unwrap();
        assert_eq!(r.entry([1, 2], [1, 2]), Cyc::from_int(3));
        assert_eq!(r.entry([2, 1], [2, 1]), Cyc::from_int(-4));
    }

    #[test]
    fn r0_entries() {
        let r = build_r0(&cp(2, &[((1, 2), 3)]));
        assert_eq!(r.nnz(), 3);
        assert_eq!(r.entry([1, 2], [2, 1]), Cyc::one());
        assert_eq!(build_r0(&cp(3, &[((1, 2), 1), ((1, 3), 2), ((2, 3), 5)])).nnz(), 9);
        assert_eq!(compare_up_to_flip(&r_from_r_jet(&cp(2, &[((1, 2), 3)]), None).unwrap(), &r).unwrap(), FlipComparison::Equal);
    }

    #[test]
    fn delta_r_shape() {
        let d = build_delta_r(4, &DeformationSpec::principal(1, 2, 3)).unwrap();
        assert_eq!(d.nnz(), 2);
        assert_eq!(d.entry([4, 1], [3, 2]), Cyc::one());
        assert_eq!(d.entry([1, 4], [2, 3]), Cyc::from_int(-1));
        assert!(d.add(&d.flip_conjugate()).unwrap().is_zero());
        let ex = DeformationSpec::exceptional(crate::deformations::Side::Upper, 1, 3);
        assert!(matches!(build_delta_r(3, &ex), Err(Error::Spec(_))));
    }

    #[test]
    fn bd_condition() {
        let spec = DeformationSpec::principal(1, 2, 3);
        assert!(check_bd(&bd_family(), &spec).unwrap().pass);
        let bad = bd_family().with_p(2, 4, ri(0)).unwrap();
        let rep = check_bd(&bad, &spec).unwrap();
        assert!(!rep.pass);
        assert!(rep.per_m.iter().any(|(m, x, y)| *m == 2 && x != y));
    }

    #[test]
    fn deformed_r_satisfies_cybe() {
        let spec = DeformationSpec::principal(1, 2, 3);
        let mut params = bd_family();
        params.epsilon = rat("3/2");
        let r = r_from_r_jet(&params, Some(&spec)).unwrap();
        let expect = build_r0(&params).add(&build_delta_r(4, &spec).unwrap().scale(&Cyc::frac(3, 2))).unwrap();
        assert_eq!(r, expect);
        assert!(check_cybe(&r).pass);
        let bad = bd_family().with_p(2, 4, ri(0)).unwrap();
        assert!(matches!(r_from_r_jet(&bad, Some(&spec)), Err(Error::Constraint(_))));
    }

    #[test]
    fn cybe_perturbation_fails() {
        let mut r = build_r0(&cp(3, &[((1, 2), 2)]));
        assert!(check_cybe(&r).pass);
        r.set([1, 2], [2, 1], Cyc::zero());
        assert!(!check_cybe(&r).pass);
    }

    #[test]
    fn flip_comparison() {
        let mut a = PairOp::zero(2);
        a.set([1, 2], [2, 2], Cyc::one());
        assert_eq!(compare_up_to_flip(&a, &a).unwrap(), FlipComparison::Equal);
        assert_eq!(compare_up_to_flip(&a.flip_conjugate(), &a).unwrap(), FlipComparison::EqualAfterFlip);
        assert!(compare_up_to_flip(&a, &PairOp::zero(3)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut p = bd_family();
        p.epsilon = rat("-2/3");
        let v = p.to_json();
        assert_eq!(ClassicalParams::from_json(&v).unwrap(), p);
        assert_eq!(v["p"][0], json!({"i": 2, "j": 4, "val": [1, 1]}));
    }
}
