use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qarith::{qfact, RationalFunction};
use crate::quiver::{gen_label, DegreeVector, Gen};

pub type Word = Vec<Gen>;

/// A finite `Q(v)`-linear combination of words in the generators.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, RationalFunction>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(RationalFunction::one(), w)
    }

    pub fn gen(g: Gen) -> Self {
        Self::word(vec![g])
    }

    pub fn monomial(c: RationalFunction, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn scalar(c: RationalFunction) -> Self {
        Self::monomial(c, Vec::new())
    }

    /// `F_g^(n) = F_g^n / [n]!`.
    pub fn divided_power(g: Gen, n: u32) -> Self {
        let f: RationalFunction = qfact(n as i64).expect("nonnegative").into();
        Self::monomial(f.inv().expect("[n]! is nonzero"), vec![g; n as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[Gen]) -> RationalFunction {
        self.terms.get(w).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// The common degree of all words, `None` for zero or inhomogeneous input.
    pub fn degree(&self, r: usize) -> Option<DegreeVector> {
        let mut it = self.terms.keys().map(|w| DegreeVector::of_word(w, r));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, r: usize) -> bool {
        self.is_zero() || self.degree(r).is_some()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Prints with `j` for `j1` when `r = 1`.
    pub fn display_with(&self, r: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|g| gen_label(*g, r)).collect::<Vec<_>>().join(" ")
                };
                format!("({c})*[{word}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(0))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&RationalFunction::from_int(-1))
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(x * y));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: NCPoly) -> NCPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_degree() {
        let j = NCPoly::gen(Gen::Real(1));
        let i1 = NCPoly::gen(Gen::Imag(1));
        let c = &(&i1 * &j) - &(&j * &i1);
        assert_eq!(c.len(), 2);
        assert_eq!(c.degree(1), Some(DegreeVector::new(1, vec![1])));
        assert!((&c - &c).is_zero());
        let mixed = &i1 + &j;
        assert!(mixed.degree(1).is_none());
    }

    #[test]
    fn divided_powers() {
        let f2 = NCPoly::divided_power(Gen::Real(1), 2);
        let jj = NCPoly::word(vec![Gen::Real(1); 2]);
        let two: RationalFunction = crate::qarith::qint(2).into();
        assert_eq!(f2.scale(&two), jj);
    }
}
