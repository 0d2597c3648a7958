use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::par::Exec;
use crate::scalars::{Cyc, Ring};
use crate::standard_p::{build_standard_p, ParamSet};
use crate::tensorspace::{shift, Legs, PairOp, TripleOp};

/// Largest dimension the exact first-order solver accepts.
pub const MAX_ORACLE_N: usize = 4;

fn word(n: usize, [i, j]: [u8; 2]) -> usize {
    (i as usize - 1) * n + (j as usize - 1)
}

fn unword(n: usize, w: usize) -> [u8; 2] {
    [(w / n + 1) as u8, (w % n + 1) as u8]
}

/// Position of entry `[in, out]` among the `n^4` unknowns.
pub fn unknown_index(n: usize, input: [u8; 2], output: [u8; 2]) -> usize {
    word(n, input) * n * n + word(n, output)
}

pub fn unknown_position(n: usize, u: usize) -> ([u8; 2], [u8; 2]) {
    (unword(n, u / (n * n)), unword(n, u % (n * n)))
}

pub fn op_to_vec(op: &PairOp) -> SparseVec {
    let n = op.n();
    let mut v: SparseVec = op.iter().map(|(i, o, x)| (unknown_index(n, i, o), x.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

pub fn vec_to_op(n: usize, v: &[(usize, Cyc)]) -> PairOp {
    let mut op = PairOp::zero(n);
    for (u, x) in v {
        let (i, o) = unknown_position(n, *u);
        op.add_entry(i, o, x);
    }
    op
}

fn triple_key(n: usize, i: [u8; 3], o: [u8; 3]) -> usize {
    let w = |t: [u8; 3]| t.iter().fold(0usize, |acc, &x| acc * n + (x as usize - 1));
    w(i) * n * n * n + w(o)
}

/// Linear and quadratic parts of the braid and Hecke conditions at `P`.
pub struct Linearization {
    n: usize,
    p: PairOp,
    a: Cyc,
    l12: TripleOp,
    l23: TripleOp,
    l12_23: TripleOp,
    l23_12: TripleOp,
}

impl Linearization {
    pub fn new(p: &PairOp, a: &Cyc) -> Self {
        let l12 = p.lift(Legs::L12);
        let l23 = p.lift(Legs::L23);
        let l12_23 = l12.compose(&l23).expect("same dimension");
        let l23_12 = l23.compose(&l12).expect("same dimension");
        Linearization { n: p.n(), p: p.clone(), a: a.clone(), l12, l23, l12_23, l23_12 }
    }

    fn c(x: &TripleOp, y: &TripleOp) -> TripleOp {
        x.compose_with(y, Exec::Sequential).expect("same dimension")
    }

    /// Order-`e` part of `braid(P + e X)`.
    pub fn braid(&self, x: &PairOp) -> TripleOp {
        let (x12, x23) = (x.lift(Legs::L12), x.lift(Legs::L23));
        let c = Self::c;
        let plus = [
            c(&x12, &self.l23_12),
            c(&c(&self.l12, &x23), &self.l12),
            c(&self.l12_23, &x12),
        ];
        let minus = [
            c(&x23, &self.l12_23),
            c(&c(&self.l23, &x12), &self.l23),
            c(&self.l23_12, &x23),
        ];
        let mut out = TripleOp::zero(self.n);
        for t in &plus {
            out = out.add(t).expect("same dimension");
        }
        for t in &minus {
            out = out.sub(t).expect("same dimension");
        }
        out
    }

    /// Order-`e^2` part of `braid(P + e X)`.
    pub fn braid_quadratic(&self, x: &PairOp) -> TripleOp {
        let (x12, x23) = (x.lift(Legs::L12), x.lift(Legs::L23));
        let c3 = |a: &TripleOp, b: &TripleOp, d: &TripleOp| Self::c(&Self::c(a, b), d);
        let plus = [c3(&x12, &x23, &self.l12), c3(&x12, &self.l23, &x12), c3(&self.l12, &x23, &x12)];
        let minus = [c3(&x23, &x12, &self.l23), c3(&x23, &self.l12, &x23), c3(&self.l23, &x12, &x23)];
        let mut out = TripleOp::zero(self.n);
        for t in &plus {
            out = out.add(t).expect("same dimension");
        }
        for t in &minus {
            out = out.sub(t).expect("same dimension");
        }
        out
    }

    /// Order-`e` part of `(P + e X - 1)(P + e X + a)`: `X (P + a) + (P - 1) X`.
    pub fn hecke(&self, x: &PairOp) -> PairOp {
        let left = x.compose_with(&shift(&self.p, &self.a), Exec::Sequential).expect("same dimension");
        let right = shift(&self.p, &-Cyc::one()).compose_with(x, Exec::Sequential).expect("same dimension");
        left.add(&right).expect("same dimension")
    }

    /// Equation rows over the given unknown positions (columns `0..cols.len()`).
    fn rows(&self, cols: &[usize], braid: bool, hecke: bool, exec: Exec) -> BTreeMap<usize, SparseVec> {
        let n = self.n;
        let offset = n.pow(6);
        let columns = exec.map(cols, |&u| {
            let (i, o) = unknown_position(n, u);
            let mut e = PairOp::zero(n);
            e.set(i, o, Cyc::one());
            let mut col = Vec::new();
            if braid {
                col.extend(self.braid(&e).iter().map(|(a, b, v)| (triple_key(n, a, b), v.clone())));
            }
            if hecke {
                col.extend(self.hecke(&e).iter().map(|(a, b, v)| (offset + unknown_index(n, a, b), v.clone())));
            }
            col
        });
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (c, col) in columns.into_iter().enumerate() {
            for (key, v) in col {
                rows.entry(key).or_default().push((c, v));
            }
        }
        rows
    }
}

/// Braid and Hecke residuals of `P + e P1` at first order in `e`.
pub fn first_order_residuals(p: &PairOp, p1: &PairOp, a: &Cyc) -> (TripleOp, PairOp) {
    let lin = Linearization::new(p, a);
    (lin.braid(p1), lin.hecke(p1))
}

/// `P Z - Z P` for `Z = E_s^t (x) 1 + 1 (x) E_s^t`, then `dP/dq^{ij}` for `i < j`.
pub fn trivial_basis(params: &ParamSet) -> Vec<PairOp> {
    let n = params.n();
    let nn = n as u8;
    let p = build_standard_p(params);
    let mut out = Vec::new();
    for s in 1..=nn {
        for t in 1..=nn {
            let mut z = PairOp::zero(n);
            for m in 1..=nn {
                z.add_entry([s, m], [t, m], &Cyc::one());
                z.add_entry([m, s], [m, t], &Cyc::one());
            }
            let comm = p.compose(&z).and_then(|x| x.sub(&z.compose(&p)?)).expect("same dimension");
            out.push(comm);
        }
    }
    for i in 1..=nn {
        for j in i + 1..=nn {
            let q = params.q(i, j);
            let mut d = PairOp::zero(n);
            d.set([i, j], [j, i], -(q.mul_ref(&q)).inv().expect("q != 0"));
            d.set([j, i], [i, j], params.a().clone());
            out.push(d);
        }
    }
    out
}

/// `P` itself and `dP/da`: braid-preserving directions that move the Hecke parameter.
pub fn normalization_directions(params: &ParamSet) -> [PairOp; 2] {
    let n = params.n();
    let nn = n as u8;
    let mut da = PairOp::zero(n);
    for i in 1..=nn {
        for j in i + 1..=nn {
            da.set([i, j], [i, j], -Cyc::one());
            da.set([j, i], [i, j], params.q(i, j));
        }
    }
    [build_standard_p(params), da]
}

#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderBasis {
    /// Basis of first-order deformations preserving braid and Hecke.
    pub basis: Vec<PairOp>,
    pub trivial_dim: usize,
    pub essential_dim: usize,
    /// Representatives completing the trivial span to the full solution space.
    pub essential: Vec<PairOp>,
    /// Dimension of the braid-only solution space.
    pub braid_kernel_dim: usize,
    /// Every braid-only solution is a Hecke solution up to `P` and `dP/da`.
    pub hecke_for_free: bool,
}

fn check_scale(n: usize) -> Result<()> {
    if n > MAX_ORACLE_N {
        return Err(Error::Scale(n));
    }
    Ok(())
}

pub fn solve_first_order(params: &ParamSet) -> Result<FirstOrderBasis> {
    solve_first_order_with(params, Exec::default())
}

pub fn solve_first_order_with(params: &ParamSet, exec: Exec) -> Result<FirstOrderBasis> {
    let n = params.n();
    check_scale(n)?;
    let p = build_standard_p(params);
    let lin = Linearization::new(&p, params.a());
    let all: Vec<usize> = (0..n.pow(4)).collect();
    let braid_rows: Vec<SparseVec> = lin.rows(&all, true, false, exec).into_values().collect();
    let hecke_rows: Vec<SparseVec> = lin.rows(&all, false, true, exec).into_values().collect();
    let raw = linalg::kernel_blocks(&braid_rows, all.len(), exec);
    let both: Vec<SparseVec> = braid_rows.into_iter().chain(hecke_rows).collect();
    let sh = linalg::kernel_blocks(&both, all.len(), exec);

    let trivial: Vec<SparseVec> = trivial_basis(params).iter().map(op_to_vec).collect();
    let mut te = Echelon::new();
    for t in &trivial {
        te.insert(t.clone());
    }
    let rank_t = te.rank();
    let mut essential = Vec::new();
    for b in &sh {
        if te.insert(b.clone()) {
            essential.push(vec_to_op(n, b));
        }
    }
    let rank_union = te.rank();
    let trivial_dim = sh.len() + rank_t - rank_union;

    let mut hn = Echelon::new();
    for b in &sh {
        hn.insert(b.clone());
    }
    for d in normalization_directions(params) {
        hn.insert(op_to_vec(&d));
    }
    let hecke_for_free = raw.iter().all(|v| hn.contains(v.clone()));

    Ok(FirstOrderBasis {
        basis: sh.iter().map(|v| vec_to_op(n, v)).collect(),
        trivial_dim,
        essential_dim: sh.len() - trivial_dim,
        essential,
        braid_kernel_dim: raw.len(),
        hecke_for_free,
    })
}

pub fn essential_dimension(params: &ParamSet) -> Result<usize> {
    Ok(solve_first_order(params)?.essential_dim)
}

/// Solutions of the linearized braid and Hecke conditions supported on the given entries.
pub fn restricted_solutions(params: &ParamSet, positions: &[([u8; 2], [u8; 2])]) -> Vec<PairOp> {
    let n = params.n();
    let p = build_standard_p(params);
    let lin = Linearization::new(&p, params.a());
    let cols: Vec<usize> = positions.iter().map(|(i, o)| unknown_index(n, *i, *o)).collect();
    let rows: Vec<SparseVec> = lin.rows(&cols, true, true, Exec::default()).into_values().collect();
    linalg::kernel(&rows, cols.len())
        .iter()
        .map(|v| {
            let g: Vec<(usize, Cyc)> = v.iter().map(|(c, x)| (cols[*c], x.clone())).collect();
            vec_to_op(n, &g)
        })
        .collect()
}

fn at_most_two_values(i: [u8; 2], o: [u8; 2]) -> bool {
    let mut v = vec![i[0], i[1], o[0], o[1]];
    v.sort();
    v.dedup();
    v.len() <= 2
}

/// The representative of `P1` modulo trivial deformations whose entries all
/// involve at least three distinct index values.
pub fn gauge_fix(params: &ParamSet, p1: &PairOp) -> Result<PairOp> {
    if params.a().is_one() {
        return Err(Error::Param("gauge fixing needs a != 1".into()));
    }
    let n = params.n();
    let p = build_standard_p(params);
    if !Linearization::new(&p, params.a()).braid(p1).is_zero() {
        return Err(Error::Gauge("input has nonzero linearized braid residual".into()));
    }
    let trivial = trivial_basis(params);
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (t, op) in trivial.iter().enumerate() {
        for (i, o, v) in op.iter() {
            if at_most_two_values(i, o) {
                rows.entry(unknown_index(n, i, o)).or_default().push((t, v.clone()));
            }
        }
    }
    for (i, o, _) in p1.iter() {
        if at_most_two_values(i, o) && !rows.contains_key(&unknown_index(n, i, o)) {
            return Err(Error::Gauge(format!("entry {i:?} -> {o:?} cannot be removed by a trivial deformation")));
        }
    }
    let rhs: Vec<Cyc> = rows
        .keys()
        .map(|&u| {
            let (i, o) = unknown_position(n, u);
            p1.entry(i, o)
        })
        .collect();
    let rows: Vec<SparseVec> = rows.into_values().collect();
    let c = linalg::solve(&rows, &rhs, trivial.len())
        .ok_or_else(|| Error::Gauge("no trivial deformation matches the two-index entries".into()))?;
    let mut out = p1.clone();
    for (t, x) in c {
        out = out.sub(&trivial[t].scale(&x))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub solvable: bool,
    /// A particular second-order term when solvable.
    pub p2: Option<PairOp>,
}

/// Solvability of the order-`e^2` braid equation `L(P2) = -Q(P1)`.
pub fn second_order_obstruction(params: &ParamSet, p1: &PairOp) -> Result<Obstruction> {
    let n = params.n();
    check_scale(n)?;
    let p = build_standard_p(params);
    let lin = Linearization::new(&p, params.a());
    if !lin.braid(p1).is_zero() || !lin.hecke(p1).is_zero() {
        return Err(Error::Spec("P1 is not a first-order deformation".into()));
    }
    let q = lin.braid_quadratic(p1);
    if q.is_zero() {
        return Ok(Obstruction { solvable: true, p2: Some(PairOp::zero(n)) });
    }
    let all: Vec<usize> = (0..n.pow(4)).collect();
    let rows = lin.rows(&all, true, false, Exec::default());
    let mut rhs_map: BTreeMap<usize, Cyc> = q.iter().map(|(i, o, v)| (triple_key(n, i, o), -v.clone())).collect();
    if rhs_map.keys().any(|k| !rows.contains_key(k)) {
        return Ok(Obstruction { solvable: false, p2: None });
    }
    let rhs: Vec<Cyc> = rows.keys().map(|k| rhs_map.remove(k).unwrap_or_else(Cyc::zero)).collect();
    let rows: Vec<SparseVec> = rows.into_values().collect();
    let sol = linalg::solve_blocks(&rows, &rhs, all.len(), Exec::default());
    Ok(match sol {
        Some(x) => Obstruction { solvable: true, p2: Some(vec_to_op(n, &x)) },
        None => Obstruction { solvable: false, p2: None },
    })
}
