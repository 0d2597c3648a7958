//! Esoteric quantum gl(2n-1): an exact multi-parameter deformation of the
//! standard structure at `q^{ij} = 1/q` (`i + j != 2n`), `q^{i i'} = 1/q^2`,
//! `a = q^2`, where `i' = 2n - i`.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::relations::{
    antiplane_relations, column_space, cross_relations, cross_vector, plane_relations, relation_vector, Gen, Kind,
    Relation,
};
use crate::scalars::{scalar_from_json, scalar_to_json, Cyc, Ring};
use crate::standard_p::{
    build_standard_p, check_braid, check_hecke, convert_p_r, BraidForm, PairReport, ParamSet, TripleReport,
};
use crate::tensorspace::{shift, PairOp};

#[derive(Debug, Clone, PartialEq)]
pub struct EsotericSpec {
    n: usize,
    q: Cyc,
    mu: Vec<Cyc>,
}

impl EsotericSpec {
    /// `mu` holds `mu_1 .. mu_{n-1}`. The zero-prefix rule is checked by [`esoteric_coeffs`].
    pub fn new(n: usize, q: Cyc, mu: Vec<Cyc>) -> Result<Self> {
        if !(2..=127).contains(&n) {
            return Err(Error::Spec(format!("n = {n} must be at least 2")));
        }
        let q2 = q.mul_ref(&q);
        if q.is_zero() || q2.mul_ref(&q2).is_one() {
            return Err(Error::Spec("q must be nonzero with q^4 != 1".into()));
        }
        if mu.len() != n - 1 {
            return Err(Error::Spec(format!("expected {} values of mu, got {}", n - 1, mu.len())));
        }
        Ok(EsotericSpec { n, q, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vector dimension `2n - 1`.
    pub fn dim(&self) -> usize {
        2 * self.n - 1
    }

    pub fn q(&self) -> &Cyc {
        &self.q
    }

    pub fn mu(&self) -> &[Cyc] {
        &self.mu
    }

    /// `a = q^2`.
    pub fn a(&self) -> Cyc {
        self.q.mul_ref(&self.q)
    }

    pub fn prime(&self, i: u8) -> u8 {
        2 * self.n as u8 - i
    }

    /// Number of leading zero `mu`s; errors if a zero follows a nonzero value.
    pub fn cutoff(&self) -> Result<usize> {
        let k = self.mu.iter().take_while(|m| m.is_zero()).count();
        if let Some(p) = self.mu[k..].iter().position(Zero::is_zero) {
            return Err(Error::Spec(format!(
                "mu_{} = 0 forces mu_{} = 0",
                k + p + 1,
                k + p
            )));
        }
        Ok(k)
    }

    /// The undeformed parameter point.
    pub fn base_params(&self) -> ParamSet {
        let dim = self.dim() as u8;
        let iq = self.q.inv().expect("q != 0");
        let q = (1..=dim)
            .flat_map(|i| (i + 1..=dim).map(move |j| (i, j)))
            .map(|(i, j)| {
                let v = if i + j == 2 * self.n as u8 { iq.mul_ref(&iq) } else { iq.clone() };
                ((i, j), v)
            })
            .collect();
        ParamSet::new(self.dim(), self.a(), q).expect("q^4 != 1 keeps the parameters valid")
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "q": scalar_to_json(&self.q), "mu": self.mu.iter().map(scalar_to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["n"].as_u64().ok_or_else(|| Error::Format("\"n\" must be an integer".into()))? as usize;
        let q = scalar_from_json(v.get("q").ok_or_else(|| Error::Format("missing \"q\"".into()))?)?;
        let mu = v["mu"]
            .as_array()
            .ok_or_else(|| Error::Format("\"mu\" must be a list".into()))?
            .iter()
            .map(scalar_from_json)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, q, mu)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EsotericCoeffs {
    /// `mu'_i = -q^{2(i-n)} mu_i`, for `i = 1 .. n-1`.
    pub mu_prime: Vec<Cyc>,
    /// `lambda_{ij} = (1 - q^2) q^{2(i-j)} mu_i / mu_j`, for `k < i < j < n`.
    pub lambda: BTreeMap<(u8, u8), Cyc>,
    /// `lambda'_{ij} = (q^2 - 1) mu_i / mu_j`.
    pub lambda_prime: BTreeMap<(u8, u8), Cyc>,
}

pub fn esoteric_coeffs(spec: &EsotericSpec) -> Result<EsotericCoeffs> {
    let k = spec.cutoff()?;
    let n = spec.n as i64;
    let q2 = spec.a();
    let mu = |i: u8| &spec.mu[i as usize - 1];
    let mu_prime = (1..n)
        .map(|i| -q2.pow(i - n).expect("q != 0").mul_ref(&spec.mu[i as usize - 1]))
        .collect();
    let mut lambda = BTreeMap::new();
    let mut lambda_prime = BTreeMap::new();
    for i in k as u8 + 1..n as u8 {
        for j in i + 1..n as u8 {
            let ratio = mu(i).checked_div(mu(j))?;
            let l = (Cyc::one() - q2.clone()).mul_ref(&q2.pow(i as i64 - j as i64)?).mul_ref(&ratio);
            lambda.insert((i, j), l);
            lambda_prime.insert((i, j), (q2.clone() - Cyc::one()).mul_ref(&ratio));
        }
    }
    Ok(EsotericCoeffs { mu_prime, lambda, lambda_prime })
}

/// Where the `lambda` terms go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaPlacement {
    /// `lambda'` at `[in (i,i'), out (j,j')]`, `lambda` at `[in (i',i), out (j',j)]`.
    Corrected,
    /// `lambda'` on `M_i^j (x) M_{i'}^{j'}` and `q^2 lambda` on `M_{i'}^{j'} (x) M_i^j`, as
    /// usually written down. Fails the braid relation once `lambda` terms appear.
    Printed,
}

/// `R = R0 + R1` with the given coefficients.
pub fn build_esoteric_r_from(spec: &EsotericSpec, c: &EsotericCoeffs, placement: LambdaPlacement) -> Result<PairOp> {
    let k = spec.cutoff()?;
    let n = spec.n as u8;
    let dim = spec.dim() as u8;
    let q = &spec.q;
    let q2 = spec.a();
    let mut r = PairOp::zero(spec.dim());
    for i in 1..=dim {
        r.add_m_term((i, i), (i, i), &Cyc::one());
        for j in i + 1..=dim {
            r.add_m_term((i, j), (j, i), &(Cyc::one() - q2.clone()));
        }
        for j in 1..=dim {
            if i != j && i + j != 2 * n {
                r.add_m_term((i, i), (j, j), q);
            }
        }
    }
    for i in 1..n {
        let ip = spec.prime(i);
        r.add_m_term((i, i), (ip, ip), &Cyc::one());
        r.add_m_term((ip, ip), (i, i), &q2);
    }
    for i in k as u8 + 1..n {
        let ip = spec.prime(i);
        r.add_m_term((n, i), (n, ip), &c.mu_prime[i as usize - 1]);
        r.add_m_term((n, ip), (n, i), &spec.mu[i as usize - 1]);
    }
    for (&(i, j), lam) in &c.lambda {
        let lamp = &c.lambda_prime[&(i, j)];
        let (ip, jp) = (spec.prime(i), spec.prime(j));
        match placement {
            LambdaPlacement::Corrected => {
                r.add_entry([i, ip], [j, jp], lamp);
                r.add_entry([ip, i], [jp, j], lam);
            }
            LambdaPlacement::Printed => {
                r.add_m_term((j, i), (jp, ip), lamp);
                r.add_m_term((jp, ip), (j, i), &q2.mul_ref(lam));
            }
        }
    }
    Ok(r)
}

pub fn build_esoteric_r(spec: &EsotericSpec) -> Result<PairOp> {
    build_esoteric_r_from(spec, &esoteric_coeffs(spec)?, LambdaPlacement::Corrected)
}

/// The generalized symmetry `P` of the esoteric `R`.
pub fn build_esoteric_p(spec: &EsotericSpec) -> Result<PairOp> {
    Ok(convert_p_r(&build_esoteric_r(spec)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EsotericReport {
    pub braid: TripleReport,
    pub hecke: PairReport,
    pub pass: bool,
}

/// Braid and Hecke (with `a = q^2`) for an arbitrary `R` of dimension `spec.dim()`.
pub fn check_esoteric_r(spec: &EsotericSpec, r: &PairOp) -> Result<EsotericReport> {
    let p = convert_p_r(r);
    let braid = check_braid(&p, BraidForm::Braid);
    let hecke = check_hecke(&p, &spec.a())?;
    let pass = braid.pass && hecke.pass;
    Ok(EsotericReport { braid, hecke, pass })
}

pub fn check_esoteric(spec: &EsotericSpec) -> Result<EsotericReport> {
    check_esoteric_r(spec, &build_esoteric_r(spec)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationMatch {
    pub label: String,
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EsotericRelations {
    /// The expected deformed relations, each tested against the extracted span.
    pub deformed: Vec<RelationMatch>,
    /// Commonly quoted alternative forms that are not relations of this `R`.
    pub alternatives: Vec<RelationMatch>,
    /// Expected relations (undeformed ones plus `deformed`) span exactly the extracted ones.
    pub plane_equal: bool,
    pub antiplane_equal: bool,
    pub cross_equal: bool,
    pub pass: bool,
}

fn relation(kind: Kind, terms: Vec<([Gen; 2], Cyc)>) -> Relation {
    let mut merged: BTreeMap<[Gen; 2], Cyc> = BTreeMap::new();
    for (w, c) in terms {
        *merged.entry(w).or_insert_with(Cyc::zero) += &c;
    }
    Relation::new(kind, merged.into_iter().collect()).expect("nonzero relation")
}

fn touches_antidiagonal(r: &Relation, n: u8) -> bool {
    r.terms.iter().any(|([g, h], _)| {
        let (Gen::X(i) | Gen::Theta(i), Gen::X(j) | Gen::Theta(j)) = (g, h);
        i + j == 2 * n
    })
}

struct Space {
    span: Echelon,
    expected: Echelon,
    kind: Kind,
    n: usize,
}

impl Space {
    fn new(kind: Kind, n: usize, span: Echelon) -> Self {
        Space { span, expected: Echelon::new(), kind, n }
    }

    fn vector(&self, r: &Relation) -> Vec<(usize, Cyc)> {
        match self.kind {
            Kind::Cross => cross_vector(r, self.n),
            _ => relation_vector(r, self.n),
        }
    }

    fn expect(&mut self, r: &Relation) -> bool {
        let v = self.vector(r);
        self.expected.insert(v.clone());
        self.span.contains(v)
    }

    fn holds(&self, r: &Relation) -> bool {
        self.span.contains(self.vector(r))
    }

    fn equal(&self) -> bool {
        self.expected.rank() == self.span.rank()
    }
}

fn cross_span(p: &PairOp, a: &Cyc, n: usize) -> Result<Echelon> {
    let mut e = Echelon::new();
    for r in cross_relations(p, a)? {
        e.insert(cross_vector(&r, n));
    }
    Ok(e)
}

/// Compares the plane, anti-plane and cross relations of the built `R` with
/// their expected deformed forms (and the undeformed relations away from the
/// anti-diagonal pairs `{j, j'}`), as subspaces.
pub fn esoteric_relations(spec: &EsotericSpec) -> Result<EsotericRelations> {
    let c = esoteric_coeffs(spec)?;
    let k = spec.cutoff()? as u8;
    let n = spec.n as u8;
    let dim = spec.dim();
    let a = spec.a();
    let iq2 = a.inv()?;
    let p = build_esoteric_p(spec)?;
    let base = build_standard_p(&spec.base_params());

    let mut plane = Space::new(Kind::Plane, dim, column_space(&shift(&p, &-Cyc::one())));
    let mut anti = Space::new(Kind::Antiplane, dim, column_space(&shift(&p, &a)));
    let mut cross = Space::new(Kind::Cross, dim, cross_span(&p, &a, dim)?);
    let mut all_hold = true;

    for r in plane_relations(&base).iter().filter(|r| !touches_antidiagonal(r, n)) {
        all_hold &= plane.expect(r);
    }
    for r in antiplane_relations(&base, &a)?.iter().filter(|r| !touches_antidiagonal(r, n)) {
        all_hold &= anti.expect(r);
    }
    for r in cross_relations(&base, &a)?.iter().filter(|r| !touches_antidiagonal(r, n)) {
        all_hold &= cross.expect(r);
    }

    let (x, t) = (Gen::X, Gen::Theta);
    let pr = |i: u8| spec.prime(i);
    let lam = |i: u8, j: u8| c.lambda.get(&(i, j)).cloned().unwrap_or_else(Cyc::zero);
    let lamp = |i: u8, j: u8| c.lambda_prime.get(&(i, j)).cloned().unwrap_or_else(Cyc::zero);
    let mut deformed = Vec::new();
    let mut alternatives = Vec::new();

    for j in 1..n {
        let jp = pr(j);
        let lower = (k + 1..j).collect::<Vec<u8>>();

        let mut terms = vec![([x(j), x(jp)], Cyc::one()), ([x(jp), x(j)], -iq2.clone())];
        terms.extend(lower.iter().map(|&i| ([x(pr(i)), x(i)], -iq2.mul_ref(&lam(i, j)))));
        let r = relation(Kind::Plane, terms);
        deformed.push(RelationMatch { label: format!("plane x^{j} x^{jp}"), holds: plane.expect(&r), relation: r });

        let mut terms = vec![([t(j), t(jp)], Cyc::one()), ([t(jp), t(j)], Cyc::one())];
        terms.extend(lower.iter().map(|&i| ([t(pr(i)), t(i)], lam(i, j))));
        let r = relation(Kind::Antiplane, terms);
        deformed.push(RelationMatch { label: format!("antiplane t^{j} t^{jp}"), holds: anti.expect(&r), relation: r });

        let mut terms = vec![
            ([x(j), t(jp)], Cyc::one()),
            ([t(jp), x(j)], -iq2.clone()),
            ([t(j), x(jp)], Cyc::one() - iq2.clone()),
        ];
        terms.extend(lower.iter().map(|&i| ([t(pr(i)), x(i)], -iq2.mul_ref(&lam(i, j)))));
        let r = relation(Kind::Cross, terms);
        deformed.push(RelationMatch { label: format!("cross x^{j} t^{jp}"), holds: cross.expect(&r), relation: r });

        let mut terms = vec![([t(j), x(jp)], Cyc::one()), ([x(jp), t(j)], -Cyc::one())];
        terms.extend(lower.iter().map(|&i| ([t(i), x(pr(i))], iq2.mul_ref(&lamp(i, j)))));
        let r = relation(Kind::Cross, terms);
        deformed.push(RelationMatch { label: format!("cross t^{j} x^{jp}"), holds: cross.expect(&r), relation: r });

        if lower.is_empty() {
            continue;
        }
        let mut terms = vec![([x(j), x(jp)], Cyc::one()), ([x(jp), x(j)], -iq2.clone())];
        terms.extend(lower.iter().map(|&i| ([x(i), x(pr(i))], lamp(i, j))));
        let r = relation(Kind::Plane, terms);
        alternatives.push(RelationMatch { label: format!("plane x^{j} x^{jp}, lambda' form"), holds: plane.holds(&r), relation: r });

        let mut terms = vec![([t(j), t(jp)], Cyc::one()), ([t(jp), t(j)], -Cyc::one())];
        terms.extend(lower.iter().map(|&i| ([t(pr(i)), t(i)], lam(i, j))));
        let r = relation(Kind::Antiplane, terms);
        alternatives.push(RelationMatch { label: format!("antiplane t^{j} t^{jp}, commutator form"), holds: anti.holds(&r), relation: r });

        let mut terms = vec![([t(n), x(jp)], Cyc::one()), ([x(jp), t(n)], -Cyc::one())];
        terms.extend(lower.iter().map(|&i| ([t(i), x(pr(i))], lamp(i, j))));
        let r = relation(Kind::Cross, terms);
        alternatives.push(RelationMatch { label: format!("cross [t^{n}, x^{jp}]"), holds: cross.holds(&r), relation: r });
    }

    let above = || (k + 1..n).map(|i| (i, pr(i)));
    let mut terms = vec![([t(n), t(n)], Cyc::one())];
    terms.extend(above().map(|(i, ip)| ([t(ip), t(i)], c.mu_prime[i as usize - 1].clone())));
    let r = relation(Kind::Antiplane, terms);
    deformed.push(RelationMatch { label: format!("antiplane t^{n} t^{n}"), holds: anti.expect(&r), relation: r });

    let mut terms = vec![([x(n), t(n)], a.clone()), ([t(n), x(n)], -Cyc::one())];
    for (i, ip) in above() {
        terms.push(([t(i), x(ip)], -spec.mu[i as usize - 1].clone()));
        terms.push(([t(ip), x(i)], -c.mu_prime[i as usize - 1].clone()));
    }
    let r = relation(Kind::Cross, terms);
    deformed.push(RelationMatch { label: format!("cross x^{n} t^{n}"), holds: cross.expect(&r), relation: r });

    all_hold &= deformed.iter().all(|m| m.holds);
    let (plane_equal, antiplane_equal, cross_equal) = (plane.equal(), anti.equal(), cross.equal());
    Ok(EsotericRelations {
        deformed,
        alternatives,
        plane_equal,
        antiplane_equal,
        cross_equal,
        pass: all_hold && plane_equal && antiplane_equal && cross_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::parse_relation;
    use crate::scalars::rat;

    fn spec(n: usize, q: &str, mu: &[i64]) -> EsotericSpec {
        EsotericSpec::new(n, Cyc::rational(rat(q)), mu.iter().map(|&m| Cyc::from_int(m)).collect()).unwrap()
    }

    #[test]
    fn coefficients() {
        let c = esoteric_coeffs(&spec(3, "2", &[1, 1])).unwrap();
        assert_eq!(c.mu_prime, vec![Cyc::frac(-1, 16), Cyc::frac(-1, 4)]);
        assert_eq!(c.lambda[&(1, 2)], Cyc::frac(-3, 4));
        assert_eq!(c.lambda_prime[&(1, 2)], Cyc::from_int(3));
        let c = esoteric_coeffs(&spec(2, "2", &[1])).unwrap();
        assert_eq!(c.mu_prime, vec![Cyc::frac(-1, 4)]);
        assert!(c.lambda.is_empty());
        assert!(matches!(esoteric_coeffs(&spec(3, "2", &[1, 0])), Err(Error::Spec(_))));
    }

    #[test]
    fn gl3_entries() {
        let s = spec(2, "2", &[1]);
        let r1 = build_esoteric_r(&s).unwrap().sub(&build_esoteric_r(&spec(2, "2", &[0])).unwrap()).unwrap();
        assert_eq!(r1.nnz(), 2);
        assert_eq!(r1.entry([3, 1], [2, 2]), Cyc::frac(-1, 4));
        assert_eq!(r1.entry([1, 3], [2, 2]), Cyc::one());
    }

    #[test]
    fn gl5_term_count() {
        let s = spec(3, "2", &[1, 1]);
        let r1 = build_esoteric_r(&s).unwrap().sub(&build_esoteric_r(&spec(3, "2", &[0, 0])).unwrap()).unwrap();
        assert_eq!(r1.nnz(), 6);
    }

    #[test]
    fn undeformed_is_standard() {
        let s = spec(3, "5/7", &[0, 0]);
        assert_eq!(build_esoteric_p(&s).unwrap(), build_standard_p(&s.base_params()));
    }

    #[test]
    fn exact_for_small_n() {
        for (n, mu) in [(2, vec![1]), (3, vec![1, 1]), (3, vec![0, 2]), (4, vec![2, -1, 3])] {
            for q in ["2", "3", "5/7"] {
                assert!(check_esoteric(&spec(n, q, &mu)).unwrap().pass, "n={n} q={q} mu={mu:?}");
            }
        }
    }

    #[test]
    fn lambda_override_breaks_braid() {
        let s = spec(3, "2", &[1, 1]);
        let mut c = esoteric_coeffs(&s).unwrap();
        c.lambda.insert((1, 2), Cyc::one());
        let r = build_esoteric_r_from(&s, &c, LambdaPlacement::Corrected).unwrap();
        assert!(!check_esoteric_r(&s, &r).unwrap().pass);
    }

    #[test]
    fn printed_placement_fails_gl5() {
        let s = spec(3, "2", &[1, 1]);
        let r = build_esoteric_r_from(&s, &esoteric_coeffs(&s).unwrap(), LambdaPlacement::Printed).unwrap();
        assert!(!check_esoteric_r(&s, &r).unwrap().braid.pass);
        let s = spec(2, "2", &[1]);
        let r = build_esoteric_r_from(&s, &esoteric_coeffs(&s).unwrap(), LambdaPlacement::Printed).unwrap();
        assert!(check_esoteric_r(&s, &r).unwrap().pass);
    }

    #[test]
    fn gl3_relations() {
        let s = spec(2, "2", &[1]);
        let rep = esoteric_relations(&s).unwrap();
        assert!(rep.pass, "{rep:?}");
        let p = build_esoteric_p(&s).unwrap();
        let anti = antiplane_relations(&p, &s.a()).unwrap();
        assert!(anti.contains(&parse_relation("t2*t2 - (1/4)*t3*t1 = 0").unwrap()));
        let plane = plane_relations(&p);
        assert!(plane.contains(&parse_relation("x1*x3 - (1/4)*x3*x1 = 0").unwrap()));
    }

    #[test]
    fn gl5_gl7_relations() {
        for s in [spec(3, "2", &[1, 3]), spec(4, "5/7", &[2, -1, 3]), spec(4, "2", &[0, 1, 1])] {
            let rep = esoteric_relations(&s).unwrap();
            assert!(rep.pass, "{rep:?}");
            assert!(rep.alternatives.iter().all(|m| !m.holds));
        }
    }

    #[test]
    fn undeformed_relations() {
        let rep = esoteric_relations(&spec(3, "3", &[0, 0])).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn json_round_trip() {
        let s = spec(3, "5/7", &[1, -2]);
        assert_eq!(EsotericSpec::from_json(&s.to_json()).unwrap(), s);
    }
}
