//! Integer-linear systems `A x = b` over Z, or with `b` taken mod 3, whose
//! full solution set is `particular + integer span of kernel`.

/// `rows . x = rhs`; with `rhs_mod3` only the right side is read mod 3
/// (the homogeneous part is still solved exactly over Z).
#[derive(Debug, Clone)]
pub struct LatticeSystem {
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub ncols: usize,
    pub rhs_mod3: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSolution {
    pub particular: Vec<i64>,
    /// Integer basis of `{x : A x = 0}`.
    pub kernel: Vec<Vec<i64>>,
    /// For each kernel vector, the unknown it frees (unit-pivot path only).
    pub free_columns: Option<Vec<usize>>,
}

impl LatticeSystem {
    pub fn solve(&self) -> Option<LatticeSolution> {
        match self.unit_pivot() {
            Ok(sol) => sol,
            Err(()) => self.general(),
        }
    }

    fn consistent_zero(&self, b: i64) -> bool {
        if self.rhs_mod3 {
            b.rem_euclid(3) == 0
        } else {
            b == 0
        }
    }

    /// Gauss-Jordan using only +-1 pivots, preferring later columns.
    /// `Err` when some row has no unit coefficient.
    fn unit_pivot(&self) -> Result<Option<LatticeSolution>, ()> {
        let mut a = self.rows.clone();
        let mut b = self.rhs.clone();
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; a.len()];
        let mut is_pivot = vec![false; self.ncols];
        for r in 0..a.len() {
            if a[r].iter().all(|&x| x == 0) {
                if !self.consistent_zero(b[r]) {
                    return Ok(None);
                }
                continue;
            }
            let c = (0..self.ncols)
                .rev()
                .find(|&c| !is_pivot[c] && a[r][c].abs() == 1)
                .ok_or(())?;
            if a[r][c] == -1 {
                a[r].iter_mut().for_each(|x| *x = -*x);
                b[r] = -b[r];
            }
            for s in 0..a.len() {
                if s != r && a[s][c] != 0 {
                    let f = a[s][c];
                    for t in 0..self.ncols {
                        a[s][t] -= f * a[r][t];
                    }
                    b[s] -= f * b[r];
                }
            }
            is_pivot[c] = true;
            pivot_of_row[r] = Some(c);
        }
        let mut particular = vec![0i64; self.ncols];
        for (r, p) in pivot_of_row.iter().enumerate() {
            if let Some(p) = p {
                particular[*p] = if self.rhs_mod3 { b[r].rem_euclid(3) } else { b[r] };
            }
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| !is_pivot[c]).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![0i64; self.ncols];
                v[f] = 1;
                for (r, p) in pivot_of_row.iter().enumerate() {
                    if let Some(p) = p {
                        v[*p] = -a[r][f];
                    }
                }
                v
            })
            .collect();
        Ok(Some(LatticeSolution { particular, kernel, free_columns: Some(free) }))
    }

    /// Column Hermite reduction `A U = [H | 0]` with unimodular `U`.
    fn general(&self) -> Option<LatticeSolution> {
        let nc = self.ncols;
        let mut a = self.rows.clone();
        let mut u: Vec<Vec<i64>> = (0..nc).map(|i| (0..nc).map(|j| (i == j) as i64).collect()).collect();
        let col_op = |a: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| {
            for row in a.iter_mut() {
                row[dst] -= f * row[src];
            }
            for row in u.iter_mut() {
                row[dst] -= f * row[src];
            }
        };
        let swap = |a: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, x: usize, y: usize| {
            for row in a.iter_mut().chain(u.iter_mut()) {
                row.swap(x, y);
            }
        };
        let mut h = 0;
        let mut pivot_rows = Vec::new();
        for i in 0..a.len() {
            if h == nc {
                break;
            }
            loop {
                let nz: Vec<usize> = (h..nc).filter(|&c| a[i][c] != 0).collect();
                if nz.len() <= 1 {
                    if let Some(&c) = nz.first() {
                        swap(&mut a, &mut u, h, c);
                    }
                    break;
                }
                let m = *nz.iter().min_by_key(|&&c| a[i][c].abs()).expect("nonempty");
                swap(&mut a, &mut u, h, m);
                for &c in &nz {
                    let c = if c == m { h } else if c == h { m } else { c };
                    if c != h {
                        let f = a[i][c] / a[i][h];
                        col_op(&mut a, &mut u, c, h, f);
                    }
                }
            }
            if a[i][h] != 0 {
                pivot_rows.push(i);
                h += 1;
            }
        }
        let kernel: Vec<Vec<i64>> = (h..nc).map(|c| u.iter().map(|row| row[c]).collect()).collect();
        let particular = if self.rhs_mod3 {
            gf3_solve(&self.rows, &self.rhs, nc)?
        } else {
            let mut y = vec![0i64; nc];
            let mut t = 0;
            for i in 0..a.len() {
                let partial: i64 = (0..t).map(|s| a[i][s] * y[s]).sum();
                let rest = self.rhs[i] - partial;
                if t < h && pivot_rows[t] == i {
                    if rest % a[i][t] != 0 {
                        return None;
                    }
                    y[t] = rest / a[i][t];
                    t += 1;
                } else if rest != (t..h).map(|s| a[i][s] * y[s]).sum::<i64>() {
                    return None;
                }
            }
            (0..nc).map(|r| (0..nc).map(|c| u[r][c] * y[c]).sum()).collect()
        };
        Some(LatticeSolution { particular, kernel, free_columns: None })
    }
}

/// Some solution in `{0,1,2}^n` of `A x = b (mod 3)`.
fn gf3_solve(rows: &[Vec<i64>], rhs: &[i64], nc: usize) -> Option<Vec<i64>> {
    let m3 = |x: i64| x.rem_euclid(3);
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().map(|&x| m3(x)).chain([m3(*b)]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        // 1 and 2 are their own inverses mod 3
        let inv = a[r][c];
        a[r].iter_mut().for_each(|x| *x = m3(*x * inv));
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for t in 0..=nc {
                    a[i][t] = m3(a[i][t] - f * a[r][t]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[nc] != 0) {
        return None;
    }
    let mut x = vec![0i64; nc];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][nc];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(sys: &LatticeSystem, sol: &LatticeSolution) {
        let apply = |x: &[i64]| -> Vec<i64> {
            sys.rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
        };
        for (got, want) in apply(&sol.particular).iter().zip(&sys.rhs) {
            if sys.rhs_mod3 {
                assert_eq!((got - want).rem_euclid(3), 0);
            } else {
                assert_eq!(got, want);
            }
        }
        for k in &sol.kernel {
            assert!(apply(k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn unit_pivots() {
        let sys = LatticeSystem { rows: vec![vec![1, 1, -1], vec![0, 1, 1]], rhs: vec![1, 2], ncols: 3, rhs_mod3: false };
        let sol = sys.solve().unwrap();
        assert!(sol.free_columns.is_some());
        assert_eq!(sol.kernel.len(), 1);
        check(&sys, &sol);
    }

    #[test]
    fn general_path() {
        let sys = LatticeSystem { rows: vec![vec![2, 4, 6]], rhs: vec![2], ncols: 3, rhs_mod3: false };
        let sol = sys.solve().unwrap();
        assert!(sol.free_columns.is_none());
        assert_eq!(sol.kernel.len(), 2);
        check(&sys, &sol);
        let odd = LatticeSystem { rhs: vec![1], ..sys };
        assert!(odd.solve().is_none());
    }

    #[test]
    fn mod3_right_side() {
        let sys = LatticeSystem { rows: vec![vec![2, 2]], rhs: vec![1], ncols: 2, rhs_mod3: true };
        let sol = sys.solve().unwrap();
        check(&sys, &sol);
        let z = LatticeSystem { rows: vec![vec![0, 0]], rhs: vec![3], ncols: 2, rhs_mod3: true };
        assert!(z.solve().is_some());
        let bad = LatticeSystem { rhs: vec![1], ..z };
        assert!(bad.solve().is_none());
    }
}
