use std::collections::BTreeMap;

use num::One;
use serde_json::{json, Value};

use super::spec::{DeformationSpec, Side, Variant};
use crate::error::{Error, Result};
use crate::lattice::LatticeSystem;
use crate::scalars::{Cyc, Monomial, Ring};
use crate::standard_p::ParamSet;
use crate::tensorspace::PairOp;

fn is_unit_or_neg<S: Ring>(a: &S) -> bool {
    (a.clone() - S::one()).is_zero() || (a.clone() + S::one()).is_zero()
}

/// Elementary `P1` with amplitude `mu`, for any coefficient ring.
///
/// Principal: `[in (k,l), out (j,i)] = mu`, `[in (l,k), out (i,j)] = -a hat_q^{ij} q^{kl} mu`.
/// Exceptional upper: `[in (k,k), out (j,i)] = mu`, `[in (k,k), out (i,j)] = -a q^{ij} mu`.
/// Exceptional lower: `[in (j,i), out (k,k)] = mu`, `[in (i,j), out (k,k)] = -q^{ji} mu`.
pub fn build_p1_with<S: Ring>(params: &ParamSet<S>, spec: &DeformationSpec, mu: &S) -> Result<PairOp<S>> {
    let (k, i, j, l) = spec.indices(params.n())?;
    let a = params.a();
    if is_unit_or_neg(a) {
        return Err(Error::Param("elementary deformations need a^2 != 1".into()));
    }
    let mut p1 = PairOp::zero(params.n());
    match spec.variant {
        Variant::Principal { .. } => {
            let c = -a.mul_ref(&params.hat_q(i, j)).mul_ref(&params.q(k, l));
            p1.add_entry([k, l], [j, i], mu);
            p1.add_entry([l, k], [i, j], &c.mul_ref(mu));
        }
        Variant::Exceptional { side, .. } => {
            let cube = a.mul_ref(a).mul_ref(a);
            if !(cube - S::one()).is_zero() {
                return Err(Error::Param("the exceptional series needs a^3 = 1".into()));
            }
            match side {
                Side::Upper => {
                    p1.set([k, k], [j, i], mu.clone());
                    p1.set([k, k], [i, j], -a.mul_ref(&params.q(i, j)).mul_ref(mu));
                }
                Side::Lower => {
                    p1.set([j, i], [k, k], mu.clone());
                    p1.set([i, j], [k, k], -params.q(j, i).mul_ref(mu));
                }
            }
        }
    }
    Ok(p1)
}

pub fn build_p1(params: &ParamSet, spec: &DeformationSpec) -> Result<PairOp> {
    build_p1_with(params, spec, &spec.amplitude)
}

/// One multiplicative constraint `prod (q^{xy})^e = a^x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub m: u8,
    pub factors: Vec<(u8, u8, i64)>,
    pub a_exp: i64,
}

fn delta(x: u8, y: u8) -> i64 {
    (x == y) as i64
}

/// Principal-shaped constraints for an arbitrary quadruple:
/// `q^{im} q^{jm} q^{mk} q^{ml} = a^{s (d_mi - d_mj)}`, `s = +1` (case 1) or `-1` (case 2).
pub fn principal_constraints(n: usize, (k, i, j, l): (u8, u8, u8, u8), case: u8) -> Vec<Constraint> {
    let s = if case == 1 { 1 } else { -1 };
    (1..=n as u8)
        .map(|m| Constraint {
            m,
            factors: vec![(i, m, 1), (j, m, 1), (m, k, 1), (m, l, 1)],
            a_exp: s * (delta(m, i) - delta(m, j)),
        })
        .collect()
}

/// The constraint system an elementary deformation requires.
pub fn constraints(n: usize, spec: &DeformationSpec) -> Result<Vec<Constraint>> {
    let quad = spec.indices(n)?;
    let (k, i, j, _) = quad;
    Ok(match spec.variant {
        Variant::Principal { case, .. } => principal_constraints(n, quad, case),
        Variant::Exceptional { side, .. } => (1..=n as u8)
            .map(|m| {
                let a_exp = match side {
                    Side::Upper => delta(m, i) - delta(m, j),
                    Side::Lower if k + 1 == i => delta(m, k) - delta(m, i),
                    Side::Lower => -(delta(m, k) - delta(m, j)),
                };
                Constraint { m, factors: vec![(k, m, 2), (m, j, 1), (m, i, 1)], a_exp }
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Class4Invariants {
    pub x: Cyc,
    pub y: Cyc,
    pub u: Cyc,
    pub v: Cyc,
    /// `(1/a, 1/a, 1, 1)` when `k < i < j < l`, `(a, a, 1, 1)` when `i < k < l < j`.
    pub expected: Option<[Cyc; 4]>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub pass: bool,
    /// `(m, lhs / a^x)`
    pub per_m: Vec<(u8, Cyc)>,
    pub class4: Option<Class4Invariants>,
}

fn eval_constraint(params: &ParamSet, c: &Constraint) -> Result<Cyc> {
    let mut lhs = Cyc::one();
    for &(x, y, e) in &c.factors {
        lhs = lhs.mul_ref(&params.q(x, y).pow(e)?);
    }
    lhs.checked_div(&params.a().pow(c.a_exp)?)
}

/// `x = q^{ij} q^{jk} q^{jl}`, `y = q^{ij} q^{ki} q^{li}`, `u = q^{kl} q^{lj} q^{li}`, `v = q^{kl} q^{ik} q^{jk}`.
pub fn class4_invariants(params: &ParamSet, (k, i, j, l): (u8, u8, u8, u8)) -> Class4Invariants {
    let q = |x, y| params.q(x, y);
    let x = q(i, j) * q(j, k) * q(j, l);
    let y = q(i, j) * q(k, i) * q(l, i);
    let u = q(k, l) * q(l, j) * q(l, i);
    let v = q(k, l) * q(i, k) * q(j, k);
    let a = params.a().clone();
    let expected = if k < i && i < j && j < l {
        let ia = a.inv().expect("a != 0");
        Some([ia.clone(), ia, Cyc::one(), Cyc::one()])
    } else if i < k && k < l && l < j {
        Some([a.clone(), a, Cyc::one(), Cyc::one()])
    } else {
        None
    };
    let pass = expected.as_ref().is_some_and(|e| e == &[x.clone(), y.clone(), u.clone(), v.clone()]);
    Class4Invariants { x, y, u, v, expected, pass }
}

pub fn check_constraints(params: &ParamSet, spec: &DeformationSpec) -> Result<ConstraintReport> {
    let quad = spec.indices(params.n())?;
    let per_m = constraints(params.n(), spec)?
        .iter()
        .map(|c| Ok((c.m, eval_constraint(params, c)?)))
        .collect::<Result<Vec<_>>>()?;
    let (k, i, j, l) = quad;
    let distinct = k != i && k != j && k != l && i != j && i != l && j != l;
    let class4 = (params.n() == 4 && spec.is_principal() && distinct).then(|| class4_invariants(params, quad));
    let pass = per_m.iter().all(|(_, r)| r.is_one());
    Ok(ConstraintReport { pass, per_m, class4 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AConstraint {
    None,
    CubeRootOfUnity,
}

/// Monomial parametrization of a constraint variety.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamFamily {
    pub n: usize,
    /// `a` followed by `u1, u2, ...`
    pub free: Vec<String>,
    pub assign: BTreeMap<(u8, u8), Monomial>,
    pub a_constraint: AConstraint,
    /// `Some((i,j))` when `u_t` is literally the free parameter `q^{ij}`.
    pub generator_of: Vec<Option<(u8, u8)>>,
    pub notes: Vec<String>,
}

fn pairs(n: usize) -> Vec<(u8, u8)> {
    let n = n as u8;
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Solves a list of multiplicative constraints in exponent space.
pub fn solve_system(n: usize, cons: &[Constraint], a_mod3: bool) -> Result<ParamFamily> {
    let ps = pairs(n);
    let col: BTreeMap<(u8, u8), usize> = ps.iter().enumerate().map(|(c, p)| (*p, c)).collect();
    let rows: Vec<Vec<i64>> = cons
        .iter()
        .map(|c| {
            let mut r = vec![0i64; ps.len()];
            for &(x, y, e) in &c.factors {
                match x.cmp(&y) {
                    std::cmp::Ordering::Less => r[col[&(x, y)]] += e,
                    std::cmp::Ordering::Greater => r[col[&(y, x)]] -= e,
                    std::cmp::Ordering::Equal => {}
                }
            }
            r
        })
        .collect();
    let sys = LatticeSystem {
        rows,
        rhs: cons.iter().map(|c| c.a_exp).collect(),
        ncols: ps.len(),
        rhs_mod3: a_mod3,
    };
    let sol = sys.solve().ok_or_else(|| Error::Infeasible("no exponent solution".into()))?;
    let names: Vec<String> = (1..=sol.kernel.len()).map(|t| format!("u{t}")).collect();
    let mut assign = BTreeMap::new();
    for (c, p) in ps.iter().enumerate() {
        let mut m = Monomial::var("a", sol.particular[c], a_mod3);
        for (t, kv) in sol.kernel.iter().enumerate() {
            m = m.mul(&Monomial::var(&names[t], kv[c], a_mod3))?;
        }
        assign.insert(*p, m);
    }
    let generator_of = match &sol.free_columns {
        Some(f) => f.iter().map(|&c| Some(ps[c])).collect(),
        None => vec![None; sol.kernel.len()],
    };
    let mut free = vec!["a".to_string()];
    free.extend(names);
    let mut notes = vec!["a^2 != 1".to_string()];
    if a_mod3 {
        notes.push("a^3 = 1, a != 1".into());
    }
    Ok(ParamFamily {
        n,
        free,
        assign,
        a_constraint: if a_mod3 { AConstraint::CubeRootOfUnity } else { AConstraint::None },
        generator_of,
        notes,
    })
}

pub fn solve_constraints(n: usize, spec: &DeformationSpec) -> Result<ParamFamily> {
    let cons = constraints(n, spec)?;
    solve_system(n, &cons, !spec.is_principal())
}

impl ParamFamily {
    /// Substitutes `a` and `u1, u2, ...` (in order).
    pub fn instantiate(&self, a: &Cyc, u: &[Cyc]) -> Result<ParamSet> {
        if u.len() != self.free.len() - 1 {
            return Err(Error::Param(format!("family has {} free generators, got {}", self.free.len() - 1, u.len())));
        }
        if self.a_constraint == AConstraint::CubeRootOfUnity
            && (a.is_one() || !a.pow(3)?.is_one())
        {
            return Err(Error::Param("family requires a^3 = 1, a != 1".into()));
        }
        let mut values: BTreeMap<String, Cyc> = BTreeMap::new();
        values.insert("a".into(), a.clone());
        for (name, v) in self.free[1..].iter().zip(u) {
            values.insert(name.clone(), v.clone());
        }
        let q = self
            .assign
            .iter()
            .map(|(p, m)| Ok((*p, m.eval_cyc(&values)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ParamSet::new(self.n, a.clone(), q)
    }

    pub fn to_json(&self) -> Value {
        let assign: Vec<Value> = self
            .assign
            .iter()
            .map(|((i, j), m)| {
                let mono: serde_json::Map<String, Value> =
                    m.exps().iter().map(|(s, e)| (s.clone(), json!(e))).collect();
                json!({ "i": i, "j": j, "mono": mono })
            })
            .collect();
        let gens: Vec<Value> = self
            .generator_of
            .iter()
            .enumerate()
            .map(|(t, g)| match g {
                Some((i, j)) => json!({ "sym": format!("u{}", t + 1), "q": [i, j] }),
                None => json!({ "sym": format!("u{}", t + 1), "q": null }),
            })
            .collect();
        json!({
            "n": self.n,
            "free": self.free,
            "assign": assign,
            "a_mod3": self.a_constraint == AConstraint::CubeRootOfUnity,
            "generators": gens,
            "notes": self.notes,
        })
    }

    /// Human-readable listing, one `q^{ij} = ...` per line.
    pub fn describe(&self) -> String {
        let mut out = format!("free: {}\n", self.free.join(", "));
        for (t, g) in self.generator_of.iter().enumerate() {
            if let Some((i, j)) = g {
                out += &format!("  u{} = q^{{{i}{j}}}\n", t + 1);
            }
        }
        for ((i, j), m) in &self.assign {
            out += &format!("q^{{{i}{j}}} = {m}\n");
        }
        if self.a_constraint == AConstraint::CubeRootOfUnity {
            out += "a^3 = 1\n";
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn c(s: &str) -> Cyc {
        Cyc::rational(rat(s))
    }

    fn reference() -> ParamSet {
        let q = [((1, 2), "3"), ((1, 3), "5"), ((2, 3), "7"), ((1, 4), "15"), ((2, 4), "42"), ((3, 4), "5/14")]
            .into_iter()
            .map(|(p, v)| (p, c(v)))
            .collect();
        ParamSet::new(4, Cyc::from_int(2), q).unwrap()
    }

    #[test]
    fn principal_entries() {
        let p1 = build_p1(&reference(), &DeformationSpec::principal(1, 2, 3)).unwrap();
        assert_eq!(p1.nnz(), 2);
        assert_eq!(p1.entry([1, 4], [3, 2]), Cyc::one());
        assert_eq!(p1.entry([4, 1], [2, 3]), Cyc::from_int(-210));
    }

    #[test]
    fn preconditions() {
        assert!(ParamSet::uniform(4, Cyc::from_int(-1)).is_err());
        let one = ParamSet::uniform(4, Cyc::one()).unwrap();
        assert!(matches!(build_p1(&one, &DeformationSpec::principal(1, 2, 3)), Err(Error::Param(_))));
        let two = ParamSet::uniform(3, Cyc::from_int(2)).unwrap();
        assert!(matches!(
            build_p1(&two, &DeformationSpec::exceptional(Side::Upper, 1, 3)),
            Err(Error::Param(_))
        ));
        let zero = DeformationSpec::principal(1, 2, 3).with_amplitude(num::Zero::zero());
        assert!(matches!(build_p1(&reference(), &zero), Err(Error::Spec(_))));
    }

    #[test]
    fn exceptional_entries() {
        let w = Cyc::omega();
        let q = BTreeMap::from([((2, 3), c("2")), ((1, 3), c("1/2")), ((1, 2), w.scale(&rat("1/4")))]);
        let pr = ParamSet::new(3, w.clone(), q).unwrap();
        let p1 = build_p1(&pr, &DeformationSpec::exceptional(Side::Upper, 1, 3)).unwrap();
        assert_eq!(p1.entry([3, 3], [2, 1]), Cyc::one());
        assert_eq!(p1.entry([3, 3], [1, 2]), -(w.clone() * pr.q(1, 2)));
        assert!(check_constraints(&pr, &DeformationSpec::exceptional(Side::Upper, 1, 3)).unwrap().pass);
    }

    #[test]
    fn reference_constraints_and_invariants() {
        let spec = DeformationSpec::principal(1, 2, 3);
        let r = check_constraints(&reference(), &spec).unwrap();
        assert!(r.pass);
        let inv = r.class4.unwrap();
        assert_eq!((inv.x.clone(), inv.y.clone()), (c("1/2"), c("1/2")));
        assert_eq!((inv.u.clone(), inv.v.clone()), (c("1"), c("1")));
        assert!(inv.pass);
        let bad = reference().with_q(3, 4, Cyc::one()).unwrap();
        let r = check_constraints(&bad, &spec).unwrap();
        let failing: Vec<u8> = r.per_m.iter().filter(|(_, x)| !x.is_one()).map(|(m, _)| *m).collect();
        assert_eq!(failing, vec![3, 4]);
    }

    #[test]
    fn reference_family() {
        let fam = solve_constraints(4, &DeformationSpec::principal(1, 2, 3)).unwrap();
        assert_eq!(fam.free.len(), 4);
        let m = |i, j| fam.assign[&(i, j)].clone();
        let a = Monomial::var("a", 1, false);
        assert_eq!(m(1, 4), m(1, 2).mul(&m(1, 3)).unwrap());
        assert_eq!(m(2, 4), a.mul(&m(1, 2)).unwrap().mul(&m(2, 3)).unwrap());
        assert_eq!(m(3, 4), a.inv().mul(&m(1, 3)).unwrap().mul(&m(2, 3).inv()).unwrap());
        let pr = fam.instantiate(&Cyc::from_int(3), &[c("2"), c("-5/3"), c("7")]).unwrap();
        assert!(check_constraints(&pr, &DeformationSpec::principal(1, 2, 3)).unwrap().pass);
    }

    #[test]
    fn exceptional_family() {
        let spec = DeformationSpec::exceptional(Side::Upper, 1, 3);
        let fam = solve_constraints(3, &spec).unwrap();
        assert_eq!(fam.a_constraint, AConstraint::CubeRootOfUnity);
        assert_eq!(fam.free.len(), 2);
        let m = |i, j| fam.assign[&(i, j)].clone();
        assert_eq!(m(1, 3), m(2, 3).inv());
        assert_eq!(m(1, 2), Monomial::var("a", 1, true).mul(&m(2, 3).pow(-2)).unwrap());
        assert!(fam.instantiate(&Cyc::from_int(2), &[c("2")]).is_err());
    }

    #[test]
    fn n2_has_no_principal_family() {
        assert!(matches!(solve_constraints(2, &DeformationSpec::principal(1, 1, 1)), Err(Error::Spec(_))));
    }
}
