use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly;

/// A Laurent polynomial in `v` with exact rational coefficients.
///
/// Stored sparsely as `(exponent, coefficient)` pairs sorted by exponent;
/// zero coefficients are never kept, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn monomial(coeff: BigRational, exp: i64) -> Self {
        let terms = if coeff.is_zero() { Vec::new() } else { vec![(exp, coeff)] };
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), 0)
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(coefficient, exponent)` pairs, summing repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigRational, i64)>,
    {
        let mut out = Self::zero();
        for (c, e) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Builds from integer `(coefficient, exponent)` pairs.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, e)| (BigRational::from_integer(BigInt::from(c)), e)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(0, c)] if c.is_one())
    }

    /// Is this `c * v^0` for some rational `c`?
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        match self.terms.as_slice() {
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|t| &t.1)
    }

    fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => {
                self.terms[i].1 += c;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (exp, c)),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitutes `v -> v^k` (used to pass between the `q` and `v` pictures).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution v -> v^0 is not injective");
        Self::from_terms(self.terms.iter().map(|(e, c)| (c.clone(), e * k)))
    }

    /// Evaluates at a rational point. `None` when `x = 0` and a negative power occurs.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(x, *e)?;
        }
        Some(acc)
    }

    /// Exact quotient `self / other` when `other` divides `self` in `Q[v, v^{-1}]`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, sa) = self.to_dense();
        let (b, sb) = other.to_dense();
        let (q, r) = poly::div_rem(&a, &b);
        if !r.is_empty() {
            return None;
        }
        Some(Self::from_dense(&q, sa - sb))
    }

    /// Splits into `(p, s)` with `self = v^s * p(v)` and `p(0) != 0`.
    pub(crate) fn to_dense(&self) -> (Vec<BigRational>, i64) {
        let Some(lo) = self.min_exp() else {
            return (Vec::new(), 0);
        };
        let hi = self.max_exp().unwrap();
        let mut out = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        (out, lo)
    }

    pub(crate) fn from_dense(p: &[BigRational], shift: i64) -> Self {
        Self {
            terms: p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c.clone()))
                .collect(),
        }
    }
}

/// Sorted merge of `a + f(b)`, dropping cancelled terms.
fn merge(a: &[(i64, BigRational)], b: &[(i64, BigRational)], f: impl Fn(&BigRational) -> BigRational) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        if k == b.len() || (i < a.len() && a[i].0 < b[k].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[k].0 < a[i].0 {
            out.push((b[k].0, f(&b[k].1)));
            k += 1;
        } else {
            let c = &a[i].1 + f(&b[k].1);
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            k += 1;
        }
    }
    LaurentPoly { terms: out }
}

pub(crate) fn pow_rational(x: &BigRational, e: i64) -> Option<BigRational> {
    if e >= 0 {
        Some(num_traits::pow(x.clone(), e as usize))
    } else if x.is_zero() {
        None
    } else {
        Some(num_traits::pow(x.recip(), (-e) as usize))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(&self.terms, &rhs.terms, |c| c.clone());
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(&self.terms, &rhs.terms, |c| -c.clone());
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (Some(lo), Some(hi)) = (
            self.min_exp().zip(rhs.min_exp()).map(|(a, b)| a + b),
            self.max_exp().zip(rhs.max_exp()).map(|(a, b)| a + b),
        ) else {
            return LaurentPoly::zero();
        };
        let mut acc = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_dense(&acc, lo)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Sorted `coeff*v^exp` terms, highest exponent first: `1*v^2 + 1*v^0 + 1*v^-2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}*v^{}", RatDisplay(c), e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) struct RatDisplay<'a>(pub &'a BigRational);

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl LaurentPoly {
    /// Are all coefficients integers?
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = lp(&[(1, 2), (1, 0)]);
        let b = lp(&[(-1, 2)]);
        let s = &a + &b;
        assert_eq!(s, LaurentPoly::one());
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn display_matches_report_format() {
        let p = lp(&[(1, 2), (1, 0), (1, -2)]);
        assert_eq!(p.to_string(), "1*v^2 + 1*v^0 + 1*v^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let h = LaurentPoly::monomial(BigRational::new(BigInt::from(-1), BigInt::from(2)), -1);
        assert_eq!(h.to_string(), "-1/2*v^-1");
    }

    #[test]
    fn exact_division() {
        // (v^2 - v^-2) / (v - v^-1) = v + v^-1
        let a = lp(&[(1, 2), (-1, -2)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(a.div_exact(&b), Some(lp(&[(1, 1), (1, -1)])));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn eval_and_bar() {
        let p = lp(&[(2, 1), (3, -1)]);
        let x = BigRational::from_integer(BigInt::from(2));
        assert_eq!(p.eval(&x).unwrap(), BigRational::new(BigInt::from(11), BigInt::from(2)));
        assert_eq!(p.bar(), lp(&[(2, -1), (3, 1)]));
        assert!(p.eval(&BigRational::zero()).is_none());
    }
}
