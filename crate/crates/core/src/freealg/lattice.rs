//! The `A`-lattice spanned by Kashiwara monomials applied to 1, where `A`
//! is the ring of rational functions regular at `v^{-1} = 0`.

use std::sync::Arc;

use crate::quiver::{DegreeVector, Gen};

use super::ops::{Algebra, Vector, RF};
use super::FreeAlgError;

/// Which imaginary operators generate the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeMode {
    /// Only `f~_{(i,1)}`, where the surrogate generator is exact.
    Exact,
    /// Every admitted `f~_{(i,l)}`.
    Permissive,
}

/// An `A`-basis of the lattice at one degree, triangular on its pivots.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    pub degree: DegreeVector,
    /// `A`-spanning set: the images under each `f~` of the basis one step down.
    pub generators: Vec<Vector>,
    /// `(pivot, row)`: each row vanishes at the pivots of all earlier rows.
    pub reduced: Vec<(usize, Vec<RF>)>,
}

fn operators(alg: &Algebra, mode: LatticeMode) -> Vec<Gen> {
    alg.quotient()
        .generators()
        .iter()
        .copied()
        .filter(|g| match (mode, g) {
            (LatticeMode::Exact, Gen::Imag(l)) => *l == 1,
            _ => true,
        })
        .collect()
}

fn order(x: &RF) -> Option<i64> {
    x.v_inv_order()
}

/// All operator words of degree `d` over the permitted operators.
pub fn operator_words(alg: &Algebra, d: &DegreeVector, mode: LatticeMode) -> Vec<Vec<Gen>> {
    let ops = operators(alg, mode);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(alg: &Algebra, ops: &[Gen], rem: &DegreeVector, cur: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if rem.is_zero() {
            out.push(cur.clone());
            return;
        }
        for g in ops {
            if let Some(next) = rem.checked_sub(&alg.quotient().gen_degree(*g)) {
                cur.push(*g);
                rec(alg, ops, &next, cur, out);
                cur.pop();
            }
        }
    }
    rec(alg, &ops, d, &mut cur, &mut out);
    out
}

/// Valuation-greedy echelon: repeatedly pivot on an entry of maximal pole
/// order among the remaining rows and non-pivot columns, so that every
/// elimination multiplier lies in `A`.
pub fn a_echelon(rows: Vec<Vec<RF>>) -> Vec<(usize, Vec<RF>)> {
    let mut rest: Vec<Vec<RF>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut out: Vec<(usize, Vec<RF>)> = Vec::new();
    while !rest.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for (ri, row) in rest.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if let Some(o) = order(x) {
                    if best.map(|(bo, _, _)| o > bo).unwrap_or(true) {
                        best = Some((o, ri, c));
                    }
                }
            }
        }
        let (_, ri, c) = best.expect("nonzero rows remain");
        let prow = rest.swap_remove(ri);
        let a = prow[c].clone();
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let m = &row[c] / &a;
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &(&m * y);
                }
            }
        }
        rest.retain(|r| r.iter().any(|x| !x.is_zero()));
        out.push((c, prow));
    }
    out
}

/// Coefficients of `x` over the reduced rows, or `None` if `x` is outside
/// their span.
pub fn coefficients(reduced: &[(usize, Vec<RF>)], x: &[RF]) -> Option<Vec<RF>> {
    let mut res = x.to_vec();
    let mut alpha = Vec::with_capacity(reduced.len());
    for (p, row) in reduced {
        let a = &res[*p] / &row[*p];
        if !a.is_zero() {
            for (x, y) in res.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&a * y);
                }
            }
        }
        alpha.push(a);
    }
    res.iter().all(|x| x.is_zero()).then_some(alpha)
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn coefficients(&self, x: &Vector) -> Option<Vec<RF>> {
        coefficients(&self.reduced, &x.coords)
    }

    /// `x` in the lattice.
    pub fn contains(&self, x: &Vector) -> bool {
        x.degree == self.degree
            && self.coefficients(x).map(|a| a.iter().all(|c| c.is_regular_at_v_inv().0)).unwrap_or(false)
    }

    /// `x` in `v^{-1}` times the lattice.
    pub fn contains_shrunk(&self, x: &Vector) -> bool {
        x.degree == self.degree
            && self.coefficients(x).map(|a| a.iter().all(|c| c.vanishes_at_v_inv())).unwrap_or(false)
    }
}

impl LatticeBasis {
    /// The basis rows as elements.
    pub fn basis(&self) -> Vec<Vector> {
        self.reduced.iter().map(|(_, r)| Vector { degree: self.degree.clone(), coords: r.clone() }).collect()
    }
}

impl Algebra {
    /// The lattice at degree `d`, built from the lattices one operator below
    /// and cached.
    pub fn lattice(&self, d: &DegreeVector, mode: LatticeMode) -> Result<Arc<LatticeBasis>, FreeAlgError> {
        let key = (mode, d.clone());
        if let Some(l) = self.lattices.lock().expect("cache lock").get(&key) {
            return Ok(l.clone());
        }
        if !self.quotient().contains(d) {
            return Err(FreeAlgError::OutOfRange(d.clone()));
        }
        let generators = if d.is_zero() {
            vec![self.quotient().one()]
        } else {
            let mut out = Vec::new();
            for g in operators(self, mode) {
                let Some(e) = d.checked_sub(&self.quotient().gen_degree(g)) else { continue };
                for b in self.lattice(&e, mode)?.basis() {
                    out.push(self.kashiwara_f(g, &b)?);
                }
            }
            out
        };
        let reduced = a_echelon(generators.iter().map(|g| g.coords.clone()).collect());
        let l = Arc::new(LatticeBasis { degree: d.clone(), generators, reduced });
        self.lattices.lock().expect("cache lock").insert(key, l.clone());
        Ok(l)
    }
}

/// The lattice at degree `d`.
pub fn lattice_build(alg: &Algebra, d: &DegreeVector, mode: LatticeMode) -> Result<Arc<LatticeBasis>, FreeAlgError> {
    alg.lattice(d, mode)
}

/// The lattice at degree `d` as the `A`-span of every monomial `f~_w . 1`;
/// an independent route to [`lattice_build`].
pub fn lattice_from_monomials(
    alg: &Algebra,
    d: &DegreeVector,
    mode: LatticeMode,
) -> Result<LatticeBasis, FreeAlgError> {
    if !alg.quotient().contains(d) {
        return Err(FreeAlgError::OutOfRange(d.clone()));
    }
    let generators = operator_words(alg, d, mode).iter().map(|w| alg.monomial(w)).collect::<Result<Vec<_>, _>>()?;
    let reduced = a_echelon(generators.iter().map(|g| g.coords.clone()).collect());
    Ok(LatticeBasis { degree: d.clone(), generators, reduced })
}

/// `x = y` modulo `v^{-1}` times the lattice. Both must lie in the lattice.
pub fn lattice_equiv(l: &LatticeBasis, x: &Vector, y: &Vector) -> Result<bool, FreeAlgError> {
    if !l.contains(x) || !l.contains(y) {
        return Err(FreeAlgError::NotInLattice(l.degree.clone()));
    }
    Ok(l.contains_shrunk(&x.sub(y)))
}

/// An `A`-basis of `K_j` intersected with the lattice at its degree.
pub fn kernel_lattice(alg: &Algebra, l: &LatticeBasis, j: Gen) -> Result<Vec<Vector>, FreeAlgError> {
    let basis: Vec<&Vec<RF>> = l.reduced.iter().map(|(_, r)| r).collect();
    let images = basis
        .iter()
        .map(|r| {
            let x = Vector { degree: l.degree.clone(), coords: (*r).clone() };
            alg.eprime_elem(j, &x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let k = basis.len();
    let null: Vec<Vec<RF>> = if images.iter().any(|x| x.is_none()) {
        (0..k).map(|i| (0..k).map(|t| if t == i { RF::one() } else { RF::zero() }).collect()).collect()
    } else {
        let tdim = images.first().and_then(|x| x.as_ref()).map(|x| x.coords.len()).unwrap_or(0);
        let rows: Vec<Vec<RF>> = (0..tdim)
            .map(|t| images.iter().map(|x| x.as_ref().expect("present").coords[t].clone()).collect())
            .collect();
        crate::linalg::rref(rows, k).nullspace()
    };
    // Saturate in A^k: pivoting on an entry of maximal order and dividing by
    // it leaves every entry in A; the span of such rows is W intersected with A^k.
    let mut rows = null;
    let mut sat: Vec<Vec<RF>> = Vec::new();
    while !rows.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for (ri, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if let Some(o) = order(x) {
                    if best.map(|(bo, _, _)| o > bo).unwrap_or(true) {
                        best = Some((o, ri, c));
                    }
                }
            }
        }
        let Some((_, ri, c)) = best else { break };
        let mut prow = rows.swap_remove(ri);
        let inv = prow[c].inv().expect("nonzero pivot");
        for x in prow.iter_mut() {
            *x = &*x * &inv;
        }
        for row in rows.iter_mut().chain(sat.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let m = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &(&m * y);
                }
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        sat.push(prow);
    }
    let n = l.degree.clone();
    Ok(sat
        .into_iter()
        .map(|alpha| {
            let dim = basis.first().map(|r| r.len()).unwrap_or(0);
            let mut coords = vec![RF::zero(); dim];
            for (a, r) in alpha.iter().zip(&basis) {
                if a.is_zero() {
                    continue;
                }
                for (x, y) in coords.iter_mut().zip(r.iter()) {
                    *x = &*x + &(a * y);
                }
            }
            Vector { degree: n.clone(), coords }
        })
        .collect())
}
