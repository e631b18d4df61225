//! The character of `U^-` for `Q(omega, r)` as a truncated power series in
//! `y, x_1, ..., x_r`, its coefficient recursion, and count comparisons
//! against the crystal and the algebra.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::crystal;
use crate::quiver::DegreeVector;

/// Dense integer series truncated to the box below `top`; the exponent of
/// `y` is `n` and that of `x_k` is `m_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    top: DegreeVector,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(top: &DegreeVector) -> Self {
        let len = std::iter::once(top.n).chain(top.m.iter().copied()).map(|x| x as usize + 1).product();
        Self { top: top.clone(), coeffs: vec![BigInt::zero(); len] }
    }

    pub fn one(top: &DegreeVector) -> Self {
        Self::monomial(top, &DegreeVector::zero(top.r()), BigInt::one())
    }

    /// `c * y^n x^m`, or zero if the degree lies outside the box.
    pub fn monomial(top: &DegreeVector, d: &DegreeVector, c: BigInt) -> Self {
        let mut s = Self::zero(top);
        if let Some(i) = s.index(d) {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn top(&self) -> &DegreeVector {
        &self.top
    }

    fn index(&self, d: &DegreeVector) -> Option<usize> {
        if d.r() != self.top.r() || !d.le(&self.top) {
            return None;
        }
        let mut i = d.n as usize;
        for (x, t) in d.m.iter().zip(&self.top.m) {
            i = i * (*t as usize + 1) + *x as usize;
        }
        Some(i)
    }

    fn degree_at(&self, mut i: usize) -> DegreeVector {
        let mut m = vec![0; self.top.r()];
        for k in (0..m.len()).rev() {
            let b = self.top.m[k] as usize + 1;
            m[k] = (i % b) as u32;
            i /= b;
        }
        DegreeVector::new(i as u32, m)
    }

    /// Zero outside the box.
    pub fn coeff(&self, d: &DegreeVector) -> BigInt {
        self.index(d).map_or_else(BigInt::zero, |i| self.coeffs[i].clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (DegreeVector, &BigInt)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.degree_at(i), c))
    }

    /// Multiplicative inverse up to the box; needs constant term `1` or `-1`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return None;
        }
        let mut out = Self::zero(&self.top);
        let support: Vec<(DegreeVector, BigInt)> =
            self.terms().filter(|(d, _)| !d.is_zero()).map(|(d, c)| (d, c.clone())).collect();
        // Indices increase along each coordinate, so every proper divisor of
        // a degree is settled before the degree itself.
        for i in 0..out.coeffs.len() {
            let d = out.degree_at(i);
            let mut acc = if i == 0 { BigInt::one() } else { BigInt::zero() };
            for (e, c) in &support {
                if let Some(rest) = d.checked_sub(e) {
                    acc -= c * &out.coeffs[out.index(&rest).unwrap()];
                }
            }
            out.coeffs[i] = acc * c0;
        }
        Some(out)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(&self.top)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, o: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.top, o.top);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { top: self.top.clone(), coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, o: &TruncatedSeries) -> TruncatedSeries {
        self + &-o
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { top: self.top.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, o: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.top, o.top);
        let mut out = TruncatedSeries::zero(&self.top);
        let b: Vec<(DegreeVector, &BigInt)> = o.terms().collect();
        for (d, a) in self.terms() {
            for (e, c) in &b {
                if let Some(i) = out.index(&d.add(e)) {
                    out.coeffs[i] += a * *c;
                }
            }
        }
        out
    }
}

fn subsets(r: usize) -> impl Iterator<Item = Vec<u32>> {
    (0u32..1 << r).map(move |mask| (0..r).map(|k| (mask >> k) & 1).collect())
}

/// `sum_{p subset R} (-1)^{|p|} pi(p) (1 - pi(p) y / (1 - pi(p) y))`, where
/// `pi(p)` is the product of the `x_k` with `k` in `p`.
pub fn inverse_series(top: &DegreeVector) -> TruncatedSeries {
    let one = TruncatedSeries::one(top);
    let mut out = TruncatedSeries::zero(top);
    for p in subsets(top.r()) {
        let size = p.iter().sum::<u32>();
        let pi = TruncatedSeries::monomial(top, &DegreeVector::new(0, p.clone()), BigInt::one());
        let u = TruncatedSeries::monomial(top, &DegreeVector::new(1, p), BigInt::one());
        let geometric = (&one - &u).inverse().expect("unit constant term");
        let term = &pi * &(&one - &(&u * &geometric));
        out = if size % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// `Ch U^-` truncated to the box below `top`.
pub fn char_series(top: &DegreeVector) -> TruncatedSeries {
    inverse_series(top).inverse().expect("constant term is 1")
}

/// Memo table for [`coeff_recursion`], keyed by `(n, m)`.
#[derive(Default, Debug)]
pub struct CoeffMemo {
    table: HashMap<(i64, Vec<i64>), BigInt>,
}

impl CoeffMemo {
    pub fn new() -> Self {
        Self::default()
    }
}

fn recursion(n: i64, m: &[i64], memo: &mut CoeffMemo) -> BigInt {
    if n < 0 || m.iter().any(|&x| x < 0) {
        return BigInt::zero();
    }
    if n == 0 && m.iter().all(|&x| x == 0) {
        return BigInt::one();
    }
    let key = (n, m.to_vec());
    if let Some(c) = memo.table.get(&key) {
        return c.clone();
    }
    let mut acc = BigInt::zero();
    for k in 1..=n {
        acc += recursion(n - k, m, memo);
    }
    for p in subsets(m.len()).skip(1) {
        let odd = p.iter().sum::<u32>() % 2 == 1;
        let shifted: Vec<i64> = m.iter().zip(&p).map(|(x, y)| x - *y as i64).collect();
        let mut part = recursion(n, &shifted, memo);
        for k in 1..=n {
            let shifted: Vec<i64> = m.iter().zip(&p).map(|(x, y)| x - (k + 1) * *y as i64).collect();
            part -= recursion(n - k, &shifted, memo);
        }
        if odd {
            acc += part;
        } else {
            acc -= part;
        }
    }
    memo.table.insert(key, acc.clone());
    acc
}

/// `c(n, m)` from the three-part recursion with `c(0, 0) = 1`; the memo must
/// only be shared between calls with the same `r`.
pub fn coeff_recursion(d: &DegreeVector, memo: &mut CoeffMemo) -> BigInt {
    let m: Vec<i64> = d.m.iter().map(|&x| x as i64).collect();
    recursion(d.n as i64, &m, memo)
}

/// The same with possibly negative arguments.
pub fn coeff_recursion_signed(n: i64, m: &[i64], memo: &mut CoeffMemo) -> BigInt {
    recursion(n, m, memo)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub degree: DegreeVector,
    pub series: BigInt,
    pub recursion: BigInt,
    pub steep: BigInt,
    pub quotient: Option<usize>,
    pub pass: bool,
}

impl CountReport {
    /// `n,m1,...,mr,series,recursion,steep,dim,pass` with `-` for a missing dim.
    pub fn csv(&self) -> String {
        let dim = self.quotient.map_or_else(|| "-".to_string(), |x| x.to_string());
        let verdict = if self.pass { "pass" } else { "fail" };
        format!("{},{},{},{},{},{}", self.degree.csv(), self.series, self.recursion, self.steep, dim, verdict)
    }
}

/// Count comparison at every degree below `top`, with quotient dimensions
/// where `dims` has them.
pub fn compare_table(
    top: &DegreeVector,
    dims: Option<&BTreeMap<DegreeVector, usize>>,
) -> Result<Vec<CountReport>, crystal::CrystalError> {
    let series = char_series(top);
    let mut memo = CoeffMemo::new();
    let mut out = Vec::new();
    for d in top.box_below() {
        let s = series.coeff(&d);
        let rec = coeff_recursion(&d, &mut memo);
        let steep = BigInt::from(crystal::count_steep(&d)?);
        let quotient = dims.and_then(|m| m.get(&d).copied());
        let pass = s == rec && rec == steep && quotient.is_none_or(|q| BigInt::from(q) == steep);
        out.push(CountReport { degree: d, series: s, recursion: rec, steep, quotient, pass });
    }
    Ok(out)
}

pub fn compare_counts(
    d: &DegreeVector,
    dims: Option<&BTreeMap<DegreeVector, usize>>,
) -> Result<CountReport, crystal::CrystalError> {
    let table = compare_table(d, dims)?;
    Ok(table.into_iter().find(|r| r.degree == *d).expect("top lies in its own box"))
}

/// `n,m1,...,mr,count` rows of `Ch U^-` below `top`.
pub fn dims_csv(top: &DegreeVector) -> Vec<String> {
    let s = char_series(top);
    top.box_below().into_iter().map(|d| format!("{},{}", d.csv(), s.coeff(&d))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DegreeVector {
        s.parse().unwrap()
    }

    /// Coefficient of `y^n x^m` read off the closed form term by term.
    fn closed_inverse(d: &DegreeVector) -> BigInt {
        let mut c = BigInt::zero();
        for p in subsets(d.r()) {
            let sign = if p.iter().sum::<u32>() % 2 == 0 { 1 } else { -1 };
            if d.n == 0 && d.m == p {
                c += sign;
            }
            if d.n >= 1 && d.m.iter().zip(&p).all(|(x, y)| *x == (d.n + 1) * y) {
                c -= sign;
            }
        }
        c
    }

    #[test]
    fn inverse_series_examples() {
        let s = inverse_series(&dv("5:"));
        assert_eq!(s.coeff(&dv("0:")), BigInt::one());
        for n in 1..=5 {
            assert_eq!(s.coeff(&DegreeVector::new(n, vec![])), BigInt::from(-1));
        }
        assert_eq!(inverse_series(&dv("2:2")).coeff(&dv("0:1")), BigInt::from(-1));
        for top in [dv("3:3"), dv("3:4,3"), dv("2:2,2,2")] {
            let s = inverse_series(&top);
            for d in top.box_below() {
                assert_eq!(s.coeff(&d), closed_inverse(&d), "{d}");
            }
        }
    }

    #[test]
    fn char_series_examples() {
        let s = char_series(&dv("6:"));
        for n in 1..=6u32 {
            assert_eq!(s.coeff(&DegreeVector::new(n, vec![])), BigInt::from(1u64 << (n - 1)));
        }
        let s = char_series(&dv("3:4"));
        assert_eq!(s.coeff(&dv("1:1")), BigInt::from(2));
        assert_eq!(s.coeff(&dv("2:1")), BigInt::from(5));
        for m in 0..=4 {
            assert_eq!(s.coeff(&DegreeVector::new(0, vec![m])), BigInt::one());
        }
        assert!((&s * &inverse_series(&dv("3:4"))).is_one());
    }

    #[test]
    fn recursion_examples() {
        let mut memo = CoeffMemo::new();
        assert_eq!(coeff_recursion(&dv("0:"), &mut memo), BigInt::one());
        let mut memo = CoeffMemo::new();
        assert_eq!(coeff_recursion(&dv("2:1"), &mut memo), BigInt::from(5));
        assert_eq!(coeff_recursion_signed(-1, &[2], &mut memo), BigInt::zero());
        assert_eq!(coeff_recursion_signed(2, &[-1], &mut memo), BigInt::zero());
    }

    #[test]
    fn series_and_recursion_agree() {
        for top in [dv("5:"), dv("4:5"), dv("3:3,3")] {
            let s = char_series(&top);
            let mut memo = CoeffMemo::new();
            for d in top.box_below() {
                let c = s.coeff(&d);
                assert!(!c.is_negative());
                assert_eq!(c, coeff_recursion(&d, &mut memo), "{d}");
            }
        }
    }

    #[test]
    fn compare_examples() {
        let r = compare_counts(&dv("1:1"), Some(&BTreeMap::from([(dv("1:1"), 2)]))).unwrap();
        assert_eq!(r.csv(), "1,1,2,2,2,2,pass");
        assert!(compare_counts(&dv("0:"), None).unwrap().pass);
        let r = compare_counts(&dv("3:"), None).unwrap();
        assert_eq!(r.steep, BigInt::from(4));
        let r = compare_counts(&dv("1:1"), Some(&BTreeMap::from([(dv("1:1"), 3)]))).unwrap();
        assert!(!r.pass);
    }
}
