use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::poly;
use super::QArithError;

/// An element of `Q(v)` in canonical form.
///
/// Canonical form: numerator and denominator coprime, the denominator is a
/// monic polynomial with nonzero constant term (all powers of `v` live in the
/// numerator). Zero is `0 / 1`. Two values are equal iff their canonical
/// forms coincide, so the derived `PartialEq` is field equality.
/// A unit denominator is stored as the empty polynomial, which keeps zero
/// and Laurent values allocation-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

static ONE: std::sync::OnceLock<LaurentPoly> = std::sync::OnceLock::new();

impl RationalFunction {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::zero() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn v_pow(e: i64) -> Self {
        Self::from(LaurentPoly::v_pow(e))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from(LaurentPoly::from_int(c))
    }

    pub fn try_new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QArithError> {
        if den.is_zero() {
            return Err(QArithError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (d, sd) = den.to_dense();
        let (n, sn) = num.to_dense();
        let shift = sn - sd;
        if d.len() == 1 {
            let inv = d[0].recip();
            return Self { num: LaurentPoly::from_dense(&n, shift).scale(&inv), den: LaurentPoly::zero() };
        }
        let g = poly::gcd(&n, &d);
        let (mut n, mut d) = if g.len() > 1 {
            let (qn, rn) = poly::div_rem(&n, &g);
            let (qd, rd) = poly::div_rem(&d, &g);
            debug_assert!(rn.is_empty() && rd.is_empty());
            (qn, qd)
        } else {
            (n, d)
        };
        let lead = d.last().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            let inv = lead.recip();
            for c in n.iter_mut().chain(d.iter_mut()) {
                *c *= &inv;
            }
        }
        Self {
            num: LaurentPoly::from_dense(&n, shift),
            den: if d.len() == 1 { LaurentPoly::zero() } else { LaurentPoly::from_dense(&d, 0) },
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        if self.den.is_zero() {
            ONE.get_or_init(LaurentPoly::one)
        } else {
            &self.den
        }
    }

    fn unit_den(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.unit_den()
    }

    /// The Laurent polynomial this equals, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.unit_den().then_some(&self.num)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { num: self.num.scale(c), den: if c.is_zero() { LaurentPoly::zero() } else { self.den.clone() } }
    }

    /// Pole order at `v^{-1} = 0`: top `v`-degree of the numerator minus that
    /// of the denominator. `None` for zero. The value lies in the local ring
    /// `A` iff the order is `<= 0`, and in `v^{-1} A` iff it is `<= -1`.
    pub fn v_inv_order(&self) -> Option<i64> {
        Some(self.num.max_exp()? - self.denom().max_exp().unwrap())
    }

    /// `(regular, order)`: membership in `A` together with the pole order.
    pub fn is_regular_at_v_inv(&self) -> (bool, Option<i64>) {
        let ord = self.v_inv_order();
        (ord.map(|o| o <= 0).unwrap_or(true), ord)
    }

    /// In `v^{-1} A`?
    pub fn vanishes_at_v_inv(&self) -> bool {
        self.v_inv_order().map(|o| o <= -1).unwrap_or(true)
    }

    /// Coefficient of the leading term in the `v^{-1}`-adic expansion, i.e. the
    /// value of `v^{-ord} f` at `v^{-1} = 0`.
    pub fn leading_v_inv_coeff(&self) -> Option<BigRational> {
        let n = self.num.leading_coeff()?;
        let d = self.denom().leading_coeff().unwrap();
        Some(n / d)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::canonical(self.denom().clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if rhs.unit_den() && self.unit_den() {
            if let Some(q) = self.num.div_exact(&rhs.num) {
                return Some(Self::from(q));
            }
        }
        Some(Self::canonical(&self.num * rhs.denom(), self.denom() * &rhs.num))
    }

    pub fn bar(&self) -> Self {
        Self::canonical(self.num.bar(), self.denom().bar())
    }

    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.denom().eval(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x)? / d)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(num: LaurentPoly) -> Self {
        Self { num, den: LaurentPoly::zero() }
    }
}

impl From<BigRational> for RationalFunction {
    fn from(c: BigRational) -> Self {
        Self::from(LaurentPoly::from_rational(c))
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.unit_den() {
                return RationalFunction::from(num);
            }
            return RationalFunction::canonical(num, self.den.clone());
        }
        RationalFunction::canonical(&(&self.num * rhs.denom()) + &(&rhs.num * self.denom()), self.denom() * rhs.denom())
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.unit_den() && rhs.unit_den() {
            return RationalFunction::from(&self.num * &rhs.num);
        }
        if let Some(c) = rhs.num.as_constant().filter(|_| rhs.unit_den()) {
            return self.scale(&c);
        }
        if let Some(c) = self.num.as_constant().filter(|_| self.unit_den()) {
            return rhs.scale(&c);
        }
        RationalFunction::canonical(&self.num * &rhs.num, self.denom() * rhs.denom())
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

/// `num / den`, each side in the Laurent text form.
/// `(num) / (den)`, or the bare numerator when the denominator is `1`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit_den() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.denom())
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
