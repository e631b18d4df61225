//! The inventory of `q`-binomial identities the algebra relies on, each
//! evaluated as `(lhs, rhs)` over an abstract scalar model.
//!
//! [`Symbolic`] evaluates in `Q(v)` through the exact Laurent kernels;
//! [`AtPoint`] evaluates at a rational `v` using the closed forms
//! `(x^n - x^-n)/(x - x^-1)` and `(1 - x^n)/(1 - x)`, an independent route
//! used for specialization cross-checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{pow_rational, LaurentPoly};
use super::qnumbers::{qbinom, qfact, qint, qint_q, to_q_analogue};
use super::ratfunc::RationalFunction;
use super::QArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `sum_s (-1)^s [b+s, s][a+s, c][b+c+1, c-s] = [a-b-1, c]`, params `(a, b, c)`.
    TripleBinom,
    /// The same identity rewritten in `q = v^2`, params `(a, b, c)`.
    QTriple,
    /// `sum_k v^{-kr} (-1)^{k-r} [n-k+r, n][r+n+1, k] = v^{-r(n+r+1)}`, params `(r, n)`.
    SteepSum,
    /// `[l+1+n][l+1-t] + [t][n] = [l+1][l+1+n-t]`, params `(l, n, t)`.
    SerreCore,
    /// `[N, k] = v^k [N-1, k] + v^{-N+k} [N-1, k-1]`, params `(N, k)`.
    Pascal,
    /// Both forms of the vanishing alternating sum, params `(r, n)`.
    AlternatingZero,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::TripleBinom,
        Identity::QTriple,
        Identity::SteepSum,
        Identity::SerreCore,
        Identity::Pascal,
        Identity::AlternatingZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::TripleBinom => "triple_binom",
            Identity::QTriple => "q_triple",
            Identity::SteepSum => "steep_sum",
            Identity::SerreCore => "serre_core",
            Identity::Pascal => "pascal",
            Identity::AlternatingZero => "alternating_zero",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::TripleBinom | Identity::QTriple | Identity::SerreCore => 3,
            _ => 2,
        }
    }

    fn validate(self, p: &[i64]) -> Result<(), QArithError> {
        let bad = |reason: &str| {
            Err(QArithError::BadParams { identity: self.name(), params: p.to_vec(), reason: reason.to_string() })
        };
        if p.len() != self.arity() {
            return bad("wrong number of parameters");
        }
        match self {
            Identity::TripleBinom | Identity::QTriple | Identity::SerreCore => {
                if p.iter().any(|&x| x < 0) {
                    return bad("parameters must be nonnegative");
                }
            }
            Identity::SteepSum => {
                if p[0] < 0 || p[1] < 1 {
                    return bad("need r >= 0 and n >= 1");
                }
            }
            Identity::Pascal => {
                if p[1] < 0 {
                    return bad("need k >= 0");
                }
            }
            Identity::AlternatingZero => {
                if p[0] < 1 || p[1] < 0 {
                    return bad("need r >= 1 and n >= 0");
                }
            }
        }
        Ok(())
    }

    /// The parameter grid exercised by the verification suite at size `g`.
    pub fn grid(self, g: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        match self {
            Identity::TripleBinom | Identity::QTriple => {
                for a in 0..=g {
                    for b in 0..=g {
                        for c in 0..=g {
                            out.push(vec![a, b, c]);
                        }
                    }
                }
            }
            Identity::SteepSum => {
                for r in 0..=g {
                    for n in 1..=g {
                        out.push(vec![r, n]);
                    }
                }
            }
            Identity::SerreCore => {
                let top = (g - 1).max(0);
                for l in 0..=top {
                    for t in 0..=l {
                        for n in 0..=top {
                            out.push(vec![l, n, t]);
                        }
                    }
                }
            }
            Identity::Pascal => {
                let top = g + 4;
                for n in 1..=top {
                    for k in 0..=top {
                        out.push(vec![n, k]);
                    }
                }
            }
            Identity::AlternatingZero => {
                for r in 1..=g {
                    for n in 0..=g {
                        out.push(vec![r, n]);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = QArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL.into_iter().find(|i| i.name() == s).ok_or_else(|| QArithError::UnknownIdentity(s.to_string()))
    }
}

/// Scalars in which the identities are evaluated.
pub trait QModel {
    type T: Clone + PartialEq + fmt::Debug;

    fn int(&self, c: i64) -> Self::T;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    /// `a / b` for nonzero `b`.
    fn div(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    /// `v^e` (also read as `q^e` in the `q` picture).
    fn var_pow(&self, e: i64) -> Self::T;
    /// `[n]` in `v`.
    fn qint(&self, n: i64) -> Self::T;
    /// `[n]_q`.
    fn qint_q(&self, n: i64) -> Self::T;

    fn neg(&self, a: &Self::T) -> Self::T {
        self.mul(&self.int(-1), a)
    }

    fn sign(&self, e: i64) -> Self::T {
        self.int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    fn qbinom(&self, n: i64, k: i64) -> Self::T {
        if k < 0 {
            return self.int(0);
        }
        let mut top = self.int(1);
        let mut bot = self.int(1);
        for t in 0..k {
            top = self.mul(&top, &self.qint(n - t));
            bot = self.mul(&bot, &self.qint(t + 1));
        }
        self.div(&top, &bot)
    }

    fn qbinom_q(&self, n: i64, k: i64) -> Self::T {
        if k < 0 {
            return self.int(0);
        }
        let mut top = self.int(1);
        let mut bot = self.int(1);
        for t in 0..k {
            top = self.mul(&top, &self.qint_q(n - t));
            bot = self.mul(&bot, &self.qint_q(t + 1));
        }
        self.div(&top, &bot)
    }

    fn qfact(&self, n: i64) -> Self::T {
        (1..=n).fold(self.int(1), |acc, t| self.mul(&acc, &self.qint(t)))
    }
}

/// Exact evaluation in `Q(v)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Symbolic;

impl QModel for Symbolic {
    type T = RationalFunction;

    fn int(&self, c: i64) -> RationalFunction {
        RationalFunction::from_int(c)
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn div(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a / b
    }
    fn is_zero(&self, a: &RationalFunction) -> bool {
        a.is_zero()
    }
    fn var_pow(&self, e: i64) -> RationalFunction {
        RationalFunction::v_pow(e)
    }
    fn qint(&self, n: i64) -> RationalFunction {
        qint(n).into()
    }
    fn qint_q(&self, n: i64) -> RationalFunction {
        qint_q(n).into()
    }
    fn qbinom(&self, n: i64, k: i64) -> RationalFunction {
        if k < 0 {
            return RationalFunction::zero();
        }
        qbinom(n, k).expect("qbinom is exact").into()
    }
    fn qbinom_q(&self, n: i64, k: i64) -> RationalFunction {
        if k < 0 {
            return RationalFunction::zero();
        }
        to_q_analogue(n, k).expect("q-binomial is exact").into()
    }
    fn qfact(&self, n: i64) -> RationalFunction {
        qfact(n).expect("nonnegative").into()
    }
}

/// Evaluation at `v = x` (or `q = x`) for a rational `x` outside `{0, 1, -1}`.
#[derive(Clone, Debug)]
pub struct AtPoint {
    x: BigRational,
}

impl AtPoint {
    pub fn new(x: BigRational) -> Option<Self> {
        let bad = x.is_zero() || x.is_one() || x == -BigRational::one();
        (!bad).then_some(Self { x })
    }

    pub fn point(&self) -> &BigRational {
        &self.x
    }
}

impl QModel for AtPoint {
    type T = BigRational;

    fn int(&self, c: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(c))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a / b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn var_pow(&self, e: i64) -> BigRational {
        pow_rational(&self.x, e).expect("nonzero point")
    }
    fn qint(&self, n: i64) -> BigRational {
        let num = self.var_pow(n) - self.var_pow(-n);
        let den = &self.x - self.x.recip();
        num / den
    }
    fn qint_q(&self, n: i64) -> BigRational {
        (BigRational::one() - self.var_pow(n)) / (BigRational::one() - &self.x)
    }
}

/// Both sides of a named identity at one parameter tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck<T> {
    pub identity: Identity,
    pub params: Vec<i64>,
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// Evaluates both sides of `id` at `params` in the model `m`.
pub fn evaluate<M: QModel>(m: &M, id: Identity, params: &[i64]) -> Result<IdentityCheck<M::T>, QArithError> {
    id.validate(params)?;
    let (lhs, rhs, extra_ok) = match id {
        Identity::TripleBinom => {
            let (a, b, c) = (params[0], params[1], params[2]);
            let mut lhs = m.int(0);
            for s in 0..=c {
                let t = m.mul(&m.mul(&m.qbinom(b + s, s), &m.qbinom(a + s, c)), &m.qbinom(b + c + 1, c - s));
                lhs = m.add(&lhs, &m.mul(&m.sign(s), &t));
            }
            (lhs, m.qbinom(a - b - 1, c), true)
        }
        Identity::QTriple => {
            let (a, b, c) = (params[0], params[1], params[2]);
            let mut lhs = m.int(0);
            for s in 0..=c {
                let t = m.mul(&m.mul(&m.qbinom_q(b + s, s), &m.qbinom_q(a + s, c)), &m.qbinom_q(b + c + 1, c - s));
                let w = m.mul(&m.sign(s), &m.var_pow((s * s + s) / 2 - c * s));
                lhs = m.add(&lhs, &m.mul(&w, &t));
            }
            let rhs = m.mul(&m.var_pow(b * c + c), &m.qbinom_q(a - b - 1, c));
            (lhs, rhs, true)
        }
        Identity::SteepSum => {
            let (r, n) = (params[0], params[1]);
            let mut lhs = m.int(0);
            for k in 0..=r {
                let w = m.mul(&m.var_pow(-k * r), &m.sign(k - r));
                let t = m.mul(&m.qbinom(n - k + r, n), &m.qbinom(r + n + 1, k));
                lhs = m.add(&lhs, &m.mul(&w, &t));
            }
            (lhs, m.var_pow(-r * (n + r + 1)), true)
        }
        Identity::SerreCore => {
            let (l, n, t) = (params[0], params[1], params[2]);
            let lhs = m.add(&m.mul(&m.qint(l + 1 + n), &m.qint(l + 1 - t)), &m.mul(&m.qint(t), &m.qint(n)));
            let rhs = m.mul(&m.qint(l + 1), &m.qint(l + 1 + n - t));
            (lhs, rhs, true)
        }
        Identity::Pascal => {
            let (n, k) = (params[0], params[1]);
            let rhs =
                m.add(&m.mul(&m.var_pow(k), &m.qbinom(n - 1, k)), &m.mul(&m.var_pow(-n + k), &m.qbinom(n - 1, k - 1)));
            (m.qbinom(n, k), rhs, true)
        }
        Identity::AlternatingZero => {
            let (r, n) = (params[0], params[1]);
            let mut first = m.int(0);
            for k in 0..=r {
                let w = m.mul(&m.var_pow(-k * r + k), &m.sign(k - r));
                let t = m.mul(&m.qbinom(n - k + r, n), &m.qbinom(r + n, k));
                first = m.add(&first, &m.mul(&w, &t));
            }
            let mut inner = m.int(0);
            for k in 0..=r {
                let w = m.mul(&m.var_pow(-k * (r - 1)), &m.sign(k - r));
                inner = m.add(&inner, &m.mul(&w, &m.qbinom(r, k)));
            }
            let prefactor = m.div(&m.qfact(n + r), &m.mul(&m.qfact(n), &m.qfact(r)));
            let second = m.mul(&prefactor, &inner);
            let ok = m.is_zero(&first) && m.is_zero(&second);
            (first, second, ok)
        }
    };
    let holds = extra_ok && lhs == rhs;
    Ok(IdentityCheck { identity: id, params: params.to_vec(), lhs, rhs, holds })
}

/// Exact check of a named identity in `Q(v)`.
pub fn check_identity(name: &str, params: &[i64]) -> Result<IdentityCheck<RationalFunction>, QArithError> {
    evaluate(&Symbolic, name.parse()?, params)
}

/// `[n-k, m-k][n, k] = [n, m][m, k]`. Internal helper property; the
/// alternating sum is rewritten through it.
pub fn subset_identity(n: i64, m: i64, k: i64) -> Result<bool, QArithError> {
    let lhs = &qbinom(n - k, m - k)? * &qbinom(n, k)?;
    let rhs = &qbinom(n, m)? * &qbinom(m, k)?;
    Ok(lhs == rhs)
}

/// Laurent form of a symbolic side, when it has a trivial denominator.
pub fn as_laurent(x: &RationalFunction) -> Option<LaurentPoly> {
    x.as_laurent().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_binom_examples() {
        let c = check_identity("triple_binom", &[0, 0, 0]).unwrap();
        assert!(c.holds);
        assert!(c.lhs.is_one());
        let c = check_identity("triple_binom", &[1, 0, 1]).unwrap();
        assert!(c.holds);
        assert!(c.lhs.is_zero() && c.rhs.is_zero());
    }

    #[test]
    fn steep_sum_example() {
        let c = check_identity("steep_sum", &[1, 1]).unwrap();
        assert!(c.holds);
        assert_eq!(c.lhs, RationalFunction::v_pow(-3));
    }

    #[test]
    fn serre_core_example() {
        assert!(check_identity("serre_core", &[2, 1, 1]).unwrap().holds);
    }

    #[test]
    fn unknown_identity_rejected() {
        assert!(matches!(check_identity("no_such", &[1]), Err(QArithError::UnknownIdentity(_))));
        assert!(check_identity("steep_sum", &[1, 0]).is_err());
        assert!(check_identity("triple_binom", &[1, 2]).is_err());
    }

    #[test]
    fn a_false_variant_is_detected() {
        // Dropping the sign in the steep sum must break it.
        let m = Symbolic;
        let (r, n) = (2, 1);
        let mut lhs = m.int(0);
        for k in 0..=r {
            let t = m.mul(&m.qbinom(n - k + r, n), &m.qbinom(r + n + 1, k));
            lhs = m.add(&lhs, &m.mul(&m.var_pow(-k * r), &t));
        }
        assert_ne!(lhs, m.var_pow(-r * (n + r + 1)));
    }

    #[test]
    fn subset_helper() {
        for n in 0..=6 {
            for m in 0..=n {
                for k in 0..=m {
                    assert!(subset_identity(n, m, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(Identity::TripleBinom.grid(6).len(), 343);
        assert_eq!(Identity::SteepSum.grid(6).len(), 42);
    }
}
