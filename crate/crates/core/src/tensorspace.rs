//! Sparse operators on V(x)V and V(x)V(x)V.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::scalars::{scalar_from_json, scalar_to_json, Cyc, Ring};

/// Sparse operator on the `K`-fold tensor power of an `n`-dimensional space.
///
/// Rows are keyed by input multi-index; zero entries are never stored, so
/// structural equality is operator equality.
#[derive(Clone, PartialEq)]
pub struct Operator<S, const K: usize> {
    n: usize,
    rows: BTreeMap<[u8; K], BTreeMap<[u8; K], S>>,
}

pub type PairOp<S = Cyc> = Operator<S, 2>;
pub type TripleOp<S = Cyc> = Operator<S, 3>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legs {
    L12,
    L23,
    L13,
}

fn all_indices<const K: usize>(n: usize) -> Vec<[u8; K]> {
    let mut out = vec![[1u8; K]];
    for pos in 0..K {
        out = out
            .into_iter()
            .flat_map(|ix| {
                (1..=n as u8).map(move |v| {
                    let mut y = ix;
                    y[pos] = v;
                    y
                })
            })
            .collect();
    }
    out.sort();
    out
}

impl<S: Ring, const K: usize> Operator<S, K> {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize, "dimension out of range");
        Operator { n, rows: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zero(n);
        for ix in all_indices::<K>(n) {
            op.set(ix, ix, S::one());
        }
        op
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &S) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All basis multi-indices in lexicographic order.
    pub fn basis(&self) -> Vec<[u8; K]> {
        all_indices::<K>(self.n)
    }

    fn check(&self, ix: &[u8; K]) {
        assert!(
            ix.iter().all(|&v| v >= 1 && v as usize <= self.n),
            "index {ix:?} out of range 1..={}",
            self.n
        );
    }

    pub fn get(&self, input: [u8; K], output: [u8; K]) -> Option<&S> {
        self.rows.get(&input).and_then(|r| r.get(&output))
    }

    pub fn entry(&self, input: [u8; K], output: [u8; K]) -> S {
        self.get(input, output).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, input: [u8; K], output: [u8; K], v: S) {
        self.check(&input);
        self.check(&output);
        if v.is_zero() {
            if let Some(r) = self.rows.get_mut(&input) {
                r.remove(&output);
                if r.is_empty() {
                    self.rows.remove(&input);
                }
            }
        } else {
            self.rows.entry(input).or_default().insert(output, v);
        }
    }

    pub fn add_entry(&mut self, input: [u8; K], output: [u8; K], v: &S) {
        if v.is_zero() {
            return;
        }
        let mut cur = self.entry(input, output);
        cur += v;
        self.set(input, output, cur);
    }

    pub fn row(&self, input: &[u8; K]) -> Option<&BTreeMap<[u8; K], S>> {
        self.rows.get(input)
    }

    /// Entries in canonical (input, output) lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = ([u8; K], [u8; K], &S)> + '_ {
        self.rows
            .iter()
            .flat_map(|(i, r)| r.iter().map(move |(o, v)| (*i, *o, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.values().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Shape(format!("dimension {} vs {}", self.n, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (i, k, v) in o.iter() {
            out.add_entry(i, k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, o: &Self, c: &S) -> Result<Self> {
        self.add(&o.scale(c))
    }

    /// Entry-wise map into another ring; zeros are dropped.
    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Operator<T, K> {
        let mut out = Operator::<T, K>::zero(self.n);
        for (i, k, v) in self.iter() {
            out.set(i, k, f(v));
        }
        out
    }

    /// Product `self * other`: first `self`, then `other` (row action).
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.compose_with(o, Exec::default())
    }

    pub fn compose_with(&self, o: &Self, exec: Exec) -> Result<Self> {
        self.same_shape(o)?;
        let rows: Vec<(&[u8; K], &BTreeMap<[u8; K], S>)> = self.rows.iter().collect();
        let out_rows = exec.map(&rows, |(input, row)| {
            let mut acc: BTreeMap<[u8; K], S> = BTreeMap::new();
            for (mid, v) in row.iter() {
                if let Some(brow) = o.rows.get(mid) {
                    for (out, w) in brow {
                        let t = v.mul_ref(w);
                        match acc.get_mut(out) {
                            Some(x) => *x += &t,
                            None => {
                                acc.insert(*out, t);
                            }
                        }
                    }
                }
            }
            acc.retain(|_, x| !x.is_zero());
            (**input, acc)
        });
        let rows = out_rows.into_iter().filter(|(_, r)| !r.is_empty()).collect();
        Ok(Operator { n: self.n, rows })
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.compose(o)?.sub(&o.compose(self)?)
    }

    /// Swap of input and output.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (i, k, v) in self.iter() {
            out.set(k, i, v.clone());
        }
        out
    }
}

impl<S: Ring> PairOp<S> {
    /// The tensor flip: `[(i,j),(j,i)] = 1`.
    pub fn flip(n: usize) -> Self {
        let mut op = Self::zero(n);
        for i in 1..=n as u8 {
            for j in 1..=n as u8 {
                op.set([i, j], [j, i], S::one());
            }
        }
        op
    }

    /// Places the operator on two legs of V(x)V(x)V, identity on the third.
    pub fn lift(&self, legs: Legs) -> TripleOp<S> {
        let mut out = TripleOp::zero(self.n);
        for ([i, j], [k, l], v) in self.iter() {
            for m in 1..=self.n as u8 {
                let (a, b) = match legs {
                    Legs::L12 => ([i, j, m], [k, l, m]),
                    Legs::L23 => ([m, i, j], [m, k, l]),
                    Legs::L13 => ([i, m, j], [k, m, l]),
                };
                out.set(a, b, v.clone());
            }
        }
        out
    }

    /// Adds `c M_k^i (x) M_l^j`, where `M_k^i` is the matrix unit with upper
    /// index `i` and lower index `k`; it lands at `[in (l,k), out (j,i)]`.
    pub fn add_m_term(&mut self, (i, k): (u8, u8), (j, l): (u8, u8), c: &S) {
        self.add_entry([l, k], [j, i], c);
    }

    /// Output-side flip: `out[(i,j),(l,k)] = in[(i,j),(k,l)]`. An involution.
    pub fn flip_output(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (i, [k, l], v) in self.iter() {
            out.set(i, [l, k], v.clone());
        }
        out
    }

    /// Conjugation by the flip on both sides: `[(j,i),(l,k)] = A[(i,j),(k,l)]`.
    pub fn flip_conjugate(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ([i, j], [k, l], v) in self.iter() {
            out.set([j, i], [l, k], v.clone());
        }
        out
    }
}

impl<S: Ring, const K: usize> fmt::Debug for Operator<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator(n={}, nnz={})", self.n, self.nnz())?;
        for (i, k, v) in self.iter() {
            writeln!(f, "  {i:?} -> {k:?}: {v:?}")?;
        }
        Ok(())
    }
}

impl<const K: usize> Operator<Cyc, K> {
    /// `{"n":N, "entries":[{"in":[..], "out":[..], "val":<scalar>}]}`, sorted.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .map(|(i, k, v)| json!({ "in": i.to_vec(), "out": k.to_vec(), "val": scalar_to_json(v) }))
            .collect();
        json!({ "n": self.n, "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .filter(|&n| (1..=255).contains(&n))
            .ok_or_else(|| Error::Format("operator: missing or invalid \"n\"".into()))?
            as usize;
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("operator: missing \"entries\" array".into()))?;
        let mut op = Self::zero(n);
        for (pos, e) in entries.iter().enumerate() {
            let idx = |key: &str| -> Result<[u8; K]> {
                let arr = e
                    .get(key)
                    .and_then(Value::as_array)
                    .filter(|a| a.len() == K)
                    .ok_or_else(|| Error::Format(format!("entries[{pos}].{key}: expected {K} indices")))?;
                let mut out = [0u8; K];
                for (slot, x) in out.iter_mut().zip(arr) {
                    let x = x.as_u64().filter(|&x| x >= 1 && x as usize <= n).ok_or_else(|| {
                        Error::Format(format!("entries[{pos}].{key}: index out of range 1..={n}"))
                    })?;
                    *slot = x as u8;
                }
                Ok(out)
            };
            let (i, k) = (idx("in")?, idx("out")?);
            let val = e
                .get("val")
                .ok_or_else(|| Error::Format(format!("entries[{pos}]: missing \"val\"")))
                .and_then(|x| {
                    scalar_from_json(x).map_err(|err| Error::Format(format!("entries[{pos}].val: {err}")))
                })?;
            op.add_entry(i, k, &val);
        }
        Ok(op)
    }
}

/// `P + c`.
pub fn shift<S: Ring>(p: &PairOp<S>, c: &S) -> PairOp<S> {
    p.add(&PairOp::scalar(p.n(), c)).expect("same dimension")
}
