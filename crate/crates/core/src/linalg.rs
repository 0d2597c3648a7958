//! Exact sparse linear algebra over Q(w): echelon forms, kernels, solving.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::par::Exec;
use crate::scalars::{Cyc, Ring};

/// Sparse vector: strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, Cyc)>;

pub fn from_map(m: BTreeMap<usize, Cyc>) -> SparseVec {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `v + c * w`.
pub fn axpy(v: &[(usize, Cyc)], c: &Cyc, w: &[(usize, Cyc)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        let take_v = b >= w.len() || (a < v.len() && v[a].0 < w[b].0);
        let take_w = a >= v.len() || (b < w.len() && w[b].0 < v[a].0);
        if take_v {
            out.push(v[a].clone());
            a += 1;
        } else if take_w {
            out.push((w[b].0, c.mul_ref(&w[b].1)));
            b += 1;
        } else {
            let x = &v[a].1 + &c.mul_ref(&w[b].1);
            if !x.is_zero() {
                out.push((v[a].0, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Cyc)], c: &Cyc) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul_ref(c))).collect()
}

fn lookup(v: &[(usize, Cyc)], i: usize) -> Option<&Cyc> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|p| &v[p].1)
}

/// Row echelon form built incrementally. Each stored row has leading
/// coefficient 1 at its pivot, the smallest index it contains.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` until its leading index is not a pivot.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((p, c)) = v.first() {
            match self.rows.get(p) {
                Some(row) => {
                    let c = -c.clone();
                    v = axpy(&v, &c, row);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((p, c)) = v.first() else {
            return false;
        };
        let p = *p;
        let inv = c.inv().expect("nonzero leading coefficient");
        self.rows.insert(p, scale(&v, &inv));
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced rows (zero above and below every pivot), keyed by pivot.
    pub fn into_rref(self) -> BTreeMap<usize, SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (p, mut row) in self.rows.into_iter().rev() {
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(i, _)| done.contains_key(i))
                    .map(|(i, c)| (*i, c.clone()));
                match hit {
                    Some((i, c)) => row = axpy(&row, &-c, &done[&i]),
                    None => break,
                }
            }
            done.insert(p, row);
        }
        done
    }
}

/// Rank of a family of vectors.
pub fn rank<I: IntoIterator<Item = SparseVec>>(vs: I) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : row . x = 0 for all rows}` in `ncols` unknowns.
pub fn kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    let rref = e.into_rref();
    let mut free: BTreeMap<usize, SparseVec> = (0..ncols)
        .filter(|c| !rref.contains_key(c))
        .map(|c| (c, vec![(c, Cyc::one())]))
        .collect();
    for (p, row) in &rref {
        for (c, v) in row.iter().skip(1) {
            free.get_mut(c).expect("non-pivot column").push((*p, -v.clone()));
        }
    }
    free.into_values()
        .map(|mut v| {
            v.sort_by_key(|e| e.0);
            v
        })
        .collect()
}

/// Particular solution of `rows . x = rhs` with free unknowns set to zero,
/// or `None` when inconsistent. `rhs` is indexed like `rows`.
pub fn solve(rows: &[SparseVec], rhs: &[Cyc], ncols: usize) -> Option<SparseVec> {
    let mut e = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        debug_assert!(aug.last().map_or(true, |e| e.0 < ncols));
        if !b.is_zero() {
            aug.push((ncols, b.clone()));
        }
        e.insert(aug);
    }
    if e.rows.contains_key(&ncols) {
        return None;
    }
    let rref = e.into_rref();
    let mut out: SparseVec = rref
        .iter()
        .filter_map(|(p, row)| lookup(row, ncols).map(|b| (*p, b.clone())))
        .collect();
    out.sort_by_key(|e| e.0);
    Some(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits a system into groups of rows sharing no unknowns.
/// Returns `(row indices, column list)` per block plus the untouched columns.
pub fn blocks(rows: &[SparseVec], ncols: usize) -> (Vec<(Vec<usize>, Vec<usize>)>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..ncols).collect();
    for r in rows {
        if let Some((first, _)) = r.first() {
            let a = find(&mut parent, *first);
            for (c, _) in r.iter().skip(1) {
                let b = find(&mut parent, *c);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut touched = vec![false; ncols];
    let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (ri, r) in rows.iter().enumerate() {
        if let Some((first, _)) = r.first() {
            let root = find(&mut parent, *first);
            by_root.entry(root).or_default().0.push(ri);
            for (c, _) in r {
                touched[*c] = true;
            }
        }
    }
    for c in 0..ncols {
        if touched[c] {
            let root = find(&mut parent, c);
            by_root.get_mut(&root).expect("root of a touched column").1.push(c);
        }
    }
    let untouched = (0..ncols).filter(|&c| !touched[c]).collect();
    (by_root.into_values().collect(), untouched)
}

/// [`kernel`] computed independently on each block of the system.
pub fn kernel_blocks(rows: &[SparseVec], ncols: usize, exec: Exec) -> Vec<SparseVec> {
    let (parts, untouched) = blocks(rows, ncols);
    let per_block = exec.map(&parts, |(ris, cols)| {
        let local: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let sub: Vec<SparseVec> = ris
            .iter()
            .map(|&ri| rows[ri].iter().map(|(c, v)| (local[c], v.clone())).collect())
            .collect();
        kernel(&sub, cols.len())
            .into_iter()
            .map(|v| {
                let mut g: SparseVec = v.into_iter().map(|(k, x)| (cols[k], x)).collect();
                g.sort_by_key(|e| e.0);
                g
            })
            .collect::<Vec<_>>()
    });
    let mut out: Vec<SparseVec> = untouched.into_iter().map(|c| vec![(c, Cyc::one())]).collect();
    out.extend(per_block.into_iter().flatten());
    out.sort_by(|a, b| a.iter().map(|e| e.0).cmp(b.iter().map(|e| e.0)));
    out
}

/// [`solve`] computed independently on each block of the system.
pub fn solve_blocks(rows: &[SparseVec], rhs: &[Cyc], ncols: usize, exec: Exec) -> Option<SparseVec> {
    // rows that are empty but carry a nonzero right side are inconsistent
    if rows.iter().zip(rhs).any(|(r, b)| r.is_empty() && !b.is_zero()) {
        return None;
    }
    let (parts, _) = blocks(rows, ncols);
    let per_block = exec.map(&parts, |(ris, cols)| {
        let local: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let sub: Vec<SparseVec> = ris
            .iter()
            .map(|&ri| rows[ri].iter().map(|(c, v)| (local[c], v.clone())).collect())
            .collect();
        let b: Vec<Cyc> = ris.iter().map(|&ri| rhs[ri].clone()).collect();
        solve(&sub, &b, cols.len()).map(|x| x.into_iter().map(|(k, v)| (cols[k], v)).collect::<SparseVec>())
    });
    let mut out = SparseVec::new();
    for x in per_block {
        out.extend(x?);
    }
    out.sort_by_key(|e| e.0);
    Some(out)
}

/// `sum_k c_k v_k` over sparse vectors.
pub fn combine(terms: &[(Cyc, &SparseVec)]) -> SparseVec {
    let mut acc: BTreeMap<usize, Cyc> = BTreeMap::new();
    for (c, v) in terms {
        for (i, x) in v.iter() {
            *acc.entry(*i).or_insert_with(Cyc::zero) += &c.mul_ref(x);
        }
    }
    from_map(acc)
}

/// Dot product of a sparse row with a sparse vector.
pub fn dot(a: &[(usize, Cyc)], b: &[(usize, Cyc)]) -> Cyc {
    let mut s = Cyc::zero();
    for (i, x) in a {
        if let Some(y) = lookup(b, *i) {
            s += &x.mul_ref(y);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(i, x)| (i, Cyc::from_int(x))).collect()
    }

    #[test]
    fn rank_of_dependent_family() {
        let fam = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(fam), 2);
    }

    #[test]
    fn kernel_annihilates() {
        let rows = vec![v(&[(0, 1), (1, 1), (2, 1)]), v(&[(1, 1), (3, -1)])];
        let k = kernel(&rows, 5);
        assert_eq!(k.len(), 3);
        for x in &k {
            for r in &rows {
                assert!(dot(r, x).is_zero());
            }
        }
        assert_eq!(rank(k), 3);
    }

    #[test]
    fn blocks_match_global() {
        let rows = vec![v(&[(0, 1), (3, 2)]), v(&[(1, 1), (2, -1)]), v(&[(0, 1), (3, 1)]), v(&[])];
        let a = kernel(&rows, 5);
        let b = kernel_blocks(&rows, 5, Exec::Parallel);
        assert_eq!(a.len(), b.len());
        let mut e = Echelon::new();
        for x in &a {
            e.insert(x.clone());
        }
        assert!(b.iter().all(|x| e.contains(x.clone())));
    }

    #[test]
    fn solve_consistent_and_not() {
        let rows = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 2)])];
        let x = solve(&rows, &[Cyc::from_int(3), Cyc::from_int(4)], 2).unwrap();
        assert_eq!(x, v(&[(0, 1), (1, 2)]));
        let rows = vec![v(&[(0, 1)]), v(&[(0, 2)])];
        assert!(solve(&rows, &[Cyc::from_int(1), Cyc::from_int(1)], 1).is_none());
        assert!(solve_blocks(&rows, &[Cyc::from_int(1), Cyc::from_int(1)], 1, Exec::Sequential).is_none());
    }
}
