use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::qarith::RationalFunction;

/// A field, as used by the elimination routines.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// `self - a * b`, the elimination kernel.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub(&a.mul(b))
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RationalFunction::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        RationalFunction::inv(self).expect("inverse of zero")
    }
}

/// Integers modulo the Mersenne prime `2^61 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn new(x: u64) -> Self {
        Fp(x % Self::P)
    }

    pub fn from_i64(x: i64) -> Self {
        let r = x.rem_euclid(Self::P as i64);
        Fp(r as u64)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let p = BigInt::from(Self::P);
        let r = x.mod_floor(&p);
        Fp(r.to_u64().expect("reduced residue fits"))
    }

    /// `None` if the denominator vanishes mod p.
    pub fn from_rational(x: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(x.denom());
        if d.0 == 0 {
            return None;
        }
        let n = Self::from_bigint(x.numer());
        Some(n.mul(&d.inv()))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for any integer `e`; panics at zero with negative `e`.
    pub fn powi(self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }

    #[inline]
    fn reduce128(x: u128) -> u64 {
        let p = Self::P as u128;
        let lo = (x & p) as u64;
        let hi = (x >> 61) as u64;
        let mut s = lo + hi;
        if s >= Self::P {
            s -= Self::P;
        }
        if s >= Self::P {
            s -= Self::P;
        }
        s
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= Self::P { s - Self::P } else { s })
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + Self::P - o.0 })
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fp(Self::reduce128(self.0 as u128 * o.0 as u128))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { Self::P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(Self::P - 2)
    }
}

/// How exact coefficients in `Q(v)` are carried into a working field.
pub trait Scalars: Clone {
    type F: Field;
    /// `None` if the value is undefined in the target (a pole of the specialization).
    fn embed(&self, x: &RationalFunction) -> Option<Self::F>;
    fn v_pow(&self, e: i64) -> Self::F;
}

/// The identity embedding of `Q(v)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Scalars for Exact {
    type F = RationalFunction;
    fn embed(&self, x: &RationalFunction) -> Option<RationalFunction> {
        Some(x.clone())
    }
    fn v_pow(&self, e: i64) -> RationalFunction {
        RationalFunction::v_pow(e)
    }
}

/// Evaluation at `v = v0` followed by reduction mod `2^61 - 1`.
#[derive(Clone, Copy, Debug)]
pub struct Specialized {
    pub v0: Fp,
}

impl Specialized {
    pub fn new(v0: u64) -> Self {
        let v0 = Fp::new(v0);
        assert!(!v0.is_zero(), "specialization point must be a unit");
        Self { v0 }
    }

    fn eval_laurent(&self, p: &crate::qarith::LaurentPoly) -> Option<Fp> {
        let mut acc = Fp::zero();
        for (e, c) in p.terms() {
            let c = Fp::from_rational(c)?;
            acc = acc.add(&c.mul(&self.v0.powi(e)));
        }
        Some(acc)
    }
}

impl Scalars for Specialized {
    type F = Fp;
    fn embed(&self, x: &RationalFunction) -> Option<Fp> {
        let n = self.eval_laurent(x.numer())?;
        let d = self.eval_laurent(x.denom())?;
        if d.is_zero() {
            return None;
        }
        Some(n.div(&d))
    }
    fn v_pow(&self, e: i64) -> Fp {
        self.v0.powi(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let a = Fp::from_i64(-3);
        assert_eq!(a.add(&Fp::from_i64(3)), Fp::zero());
        let b = Fp::new(123456789);
        assert_eq!(b.mul(&b.inv()), Fp::one());
        assert_eq!(Fp::new(2).pow(61), Fp::one());
        assert_eq!(Fp::new(5).powi(-2).mul(&Fp::new(25)), Fp::one());
    }

    #[test]
    fn fp_from_rational() {
        let h = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(Fp::from_rational(&h).unwrap().mul(&Fp::new(2)), Fp::one());
    }

    #[test]
    fn specialization_is_a_ring_map() {
        let s = Specialized::new(987654321);
        let x = RationalFunction::v_pow(3) + RationalFunction::from_int(2);
        let y = RationalFunction::v_pow(-1) - RationalFunction::from_int(7);
        let q = &x / &y;
        let (ex, ey) = (s.embed(&x).unwrap(), s.embed(&y).unwrap());
        assert_eq!(s.embed(&q).unwrap(), ex.div(&ey));
        assert_eq!(s.embed(&(&x * &y)).unwrap(), ex.mul(&ey));
    }
}
