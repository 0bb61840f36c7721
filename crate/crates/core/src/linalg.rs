//! Exact linear algebra over the cyclotomic scalar field: rank, solving,
//! nullspaces, and an incremental row-echelon tracker used by the span
//! closure algorithms. Everything is plain Gaussian elimination with exact
//! field division; matrices are dense row-major `Vec<Vec<Cyclotomic>>`.

use crate::cyclotomic::Cyclotomic;

/// Incrementally maintained reduced row echelon form.
pub struct RowEchelon {
    cols: usize,
    rows: Vec<Vec<Cyclotomic>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> RowEchelon {
        RowEchelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [Cyclotomic]) {
        assert_eq!(v.len(), self.cols);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if !v[piv].is_zero() {
                let factor = v[piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.sub(&r.mul(&factor));
                }
            }
        }
    }

    /// Insert a vector; returns true when it increased the rank.
    pub fn insert(&mut self, mut v: Vec<Cyclotomic>) -> bool {
        self.reduce(&mut v);
        let piv = match v.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = v[piv].inv().expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        // back-eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if !row[piv].is_zero() {
                let factor = row[piv].clone();
                for (x, nv) in row.iter_mut().zip(&v) {
                    *x = x.sub(&nv.mul(&factor));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }

    /// Whether `v` lies in the row span.
    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|c| c.is_zero())
    }
}

/// Rank of a dense matrix.
pub fn rank(matrix: &[Vec<Cyclotomic>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let mut ech = RowEchelon::new(matrix[0].len());
    for row in matrix {
        ech.insert(row.clone());
    }
    ech.rank()
}

/// Solve `A x = b` for multiple right-hand sides; `a` is rows x cols,
/// `b` is rows x nrhs. Returns None when inconsistent. When the solution is
/// underdetermined, free variables are set to zero.
pub fn solve(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Option<Vec<Vec<Cyclotomic>>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let nrhs = b[0].len();
    let order = find_order(a)
        .or_else(|| find_order(b))
        .expect("solve needs at least one entry to infer the scalar order");

    // Gauss-Jordan on the augmented matrix.
    let mut m: Vec<Vec<Cyclotomic>> = (0..rows)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(b[i].iter().cloned());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols + nrhs {
                    let t = m[r][j].mul(&factor);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency: zero rows of A must have zero rhs
    for row in m.iter().skip(pivot_cols.len()) {
        if row[cols..].iter().any(|c| !c.is_zero()) {
            return None;
        }
    }
    let mut x = vec![vec![Cyclotomic::zero(order); nrhs]; cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        for j in 0..nrhs {
            x[c][j] = m[i][cols + j].clone();
        }
    }
    Some(x)
}

/// Basis of the right nullspace of `a`.
pub fn nullspace(a: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let Some(order) = find_order(a) else {
        // zero columns or all-empty: nullspace is everything; caller supplies
        // no basis order, so return unit vectors lazily only when entries exist
        return Vec::new();
    };
    let rows = a.len();
    let mut m: Vec<Vec<Cyclotomic>> = a.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul(&factor);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free_c in 0..cols {
        if pivot_of_col[free_c].is_some() {
            continue;
        }
        let mut v = vec![Cyclotomic::zero(order); cols];
        v[free_c] = Cyclotomic::one(order);
        for c in 0..cols {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = m[pr][free_c].neg();
            }
        }
        basis.push(v);
    }
    basis
}

fn find_order(m: &[Vec<Cyclotomic>]) -> Option<u64> {
    m.iter().flat_map(|r| r.iter()).map(|c| c.order()).next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(4, v)
    }

    #[test]
    fn rank_of_vandermonde() {
        // nodes 1, 2, 3 with powers 0..2: invertible
        let m: Vec<Vec<Cyclotomic>> = (1..=3)
            .map(|k: i64| (0..3).map(|e| c(k.pow(e))).collect())
            .collect();
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn solve_small_system() {
        // x + y = 3, x - y = 1 -> x = 2, y = 1
        let a = vec![vec![c(1), c(1)], vec![c(1), c(-1)]];
        let b = vec![vec![c(3)], vec![c(1)]];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![vec![c(2)], vec![c(1)]]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![c(1), c(1)], vec![c(2), c(2)]];
        let b = vec![vec![c(1)], vec![c(3)]];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![vec![c(1), c(2), c(3)]];
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = v[0].add(&v[1].mul(&c(2))).add(&v[2].mul(&c(3)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn echelon_membership() {
        let mut ech = RowEchelon::new(3);
        assert!(ech.insert(vec![c(1), c(0), c(1)]));
        assert!(ech.insert(vec![c(0), c(1), c(1)]));
        assert!(!ech.insert(vec![c(1), c(1), c(2)]));
        assert!(ech.contains(&[c(2), c(-1), c(1)]));
        assert!(!ech.contains(&[c(0), c(0), c(1)]));
        assert_eq!(ech.rank(), 2);
    }
}
