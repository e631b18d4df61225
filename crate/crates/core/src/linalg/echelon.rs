//! Dense Gauss-Jordan elimination over an arbitrary [`Field`].

use super::field::Field;

/// Reduced row echelon form of a row list.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of `{x : A x = 0}` for the original row matrix `A`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![F::zero(); self.ncols];
                x[f] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        x[p] = row[f].neg();
                    }
                }
                x
            })
            .collect()
    }
}

/// Gauss-Jordan with the first nonzero entry of each column as pivot.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Rref<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let (top, rest) = rows.split_at_mut(r);
        let (prow, bottom) = rest.split_first_mut().expect("row r exists");
        for other in top.iter_mut().chain(bottom.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (x, y) in other.iter_mut().zip(prow.iter()).skip(c) {
                if !y.is_zero() {
                    *x = x.sub_mul(&f, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots, ncols }
}

pub fn rank<F: Field>(rows: Vec<Vec<F>>, ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Columns of a matrix given column-wise, transposed into rows.
pub fn transpose<F: Field>(cols: &[Vec<F>], nrows: usize) -> Vec<Vec<F>> {
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Coefficients `a` with `sum_k a_k cols[k] = target`, if any exist.
/// When the columns are independent the solution is unique.
pub fn solve_columns<F: Field>(cols: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = target.len();
    let k = cols.len();
    let mut rows = transpose(cols, n);
    for (row, t) in rows.iter_mut().zip(target) {
        row.push(t.clone());
    }
    let e = rref(rows, k + 1);
    if e.pivots.last() == Some(&k) {
        return None;
    }
    let mut a = vec![F::zero(); k];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        a[p] = row[k].clone();
    }
    Some(a)
}

/// Inverse of a square matrix given row-wise, `None` if singular.
pub fn inverse<F: Field>(rows: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = rows.len();
    let aug: Vec<Vec<F>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend((0..n).map(|k| if k == i { F::one() } else { F::zero() }));
            a
        })
        .collect();
    let e = rref(aug, 2 * n);
    if e.pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(e.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `sum_k a_k cols[k]`.
pub fn combine<F: Field>(cols: &[Vec<F>], a: &[F], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (c, x) in cols.iter().zip(a) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(c) {
            if !y.is_zero() {
                *o = o.add(&x.mul(y));
            }
        }
    }
    out
}
