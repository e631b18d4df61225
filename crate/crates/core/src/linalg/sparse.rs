//! Row-at-a-time echelon construction with sparse stored rows.

use super::field::Field;

pub type SparseRow<F> = Vec<(u32, F)>;

/// Accumulates rows into an echelon basis. Pivots are first nonzero
/// columns; stored rows are normalized to 1 at the pivot.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon<F> {
    ncols: usize,
    pivot_row: Vec<Option<u32>>,
    rows: Vec<(usize, SparseRow<F>)>,
    work: Vec<F>,
}

impl<F: Field> IncrementalEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, pivot_row: vec![None; ncols], rows: Vec::new(), work: vec![F::zero(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` (given sparsely, duplicates summed) and keeps it when it
    /// is independent of the rows so far. Returns whether the rank grew.
    pub fn insert(&mut self, row: &[(u32, F)]) -> bool {
        let mut lo = self.ncols;
        for (c, x) in row {
            let c = *c as usize;
            self.work[c] = self.work[c].add(x);
            lo = lo.min(c);
        }
        let mut first = None;
        for c in lo..self.ncols {
            if self.work[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let f = self.work[c].clone();
                    for (q, y) in &self.rows[r as usize].1 {
                        let q = *q as usize;
                        self.work[q] = self.work[q].sub_mul(&f, y);
                    }
                }
                None => {
                    first = Some(c);
                    break;
                }
            }
        }
        let Some(p) = first else {
            return false;
        };
        let inv = self.work[p].inv();
        let mut stored = Vec::new();
        for c in p..self.ncols {
            if !self.work[c].is_zero() {
                let x = std::mem::replace(&mut self.work[c], F::zero());
                stored.push((c as u32, x.mul(&inv)));
            }
        }
        self.pivot_row[p] = Some(self.rows.len() as u32);
        self.rows.push((p, stored));
        true
    }

    /// Fully reduced rows `(pivot, row)`: each row is 1 at its pivot and 0 at
    /// every other pivot column. Sorted by pivot.
    pub fn into_rref(mut self) -> Vec<(usize, SparseRow<F>)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.rows[k].0));
        let mut done: Vec<Option<SparseRow<F>>> = vec![None; self.rows.len()];
        for k in order {
            let (p, row) = &self.rows[k];
            let p = *p;
            if row.iter().all(|(q, _)| *q as usize == p || self.pivot_row[*q as usize].is_none()) {
                done[k] = Some(row.clone());
                continue;
            }
            for (q, x) in row {
                self.work[*q as usize] = x.clone();
            }
            for (q, _) in row {
                let q = *q as usize;
                if q == p {
                    continue;
                }
                if let Some(r) = self.pivot_row[q] {
                    let f = self.work[q].clone();
                    if f.is_zero() {
                        continue;
                    }
                    let other = done[r as usize].as_ref().expect("higher pivots are reduced first");
                    for (c, y) in other {
                        let c = *c as usize;
                        self.work[c] = self.work[c].sub_mul(&f, y);
                    }
                }
            }
            let mut out = Vec::new();
            for c in p..self.ncols {
                if !self.work[c].is_zero() {
                    out.push((c as u32, std::mem::replace(&mut self.work[c], F::zero())));
                }
            }
            done[k] = Some(out);
        }
        let mut res: Vec<(usize, SparseRow<F>)> =
            self.rows.iter().zip(done).map(|((p, _), r)| (*p, r.expect("all rows reduced"))).collect();
        res.sort_by_key(|(p, _)| *p);
        res
    }
}
