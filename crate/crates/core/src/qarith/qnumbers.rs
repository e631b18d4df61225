//! Quantum integers, factorials and binomials, in `v` and in `q = v^2`.

use super::laurent::LaurentPoly;
use super::QArithError;

/// `[n] = (v^n - v^{-n}) / (v - v^{-1}) = v^{n-1} + v^{n-3} + ... + v^{1-n}`.
/// `[-n] = -[n]`.
pub fn qint(n: i64) -> LaurentPoly {
    let a = n.abs();
    let p = LaurentPoly::from_int_terms(&(0..a).map(|t| (1, a - 1 - 2 * t)).collect::<Vec<_>>());
    if n < 0 {
        -p
    } else {
        p
    }
}

/// `[n]! = [n][n-1]...[1]`, `[0]! = 1`.
pub fn qfact(n: i64) -> Result<LaurentPoly, QArithError> {
    if n < 0 {
        return Err(QArithError::NegativeArgument { what: "qfact", value: n });
    }
    Ok((1..=n).fold(LaurentPoly::one(), |acc, t| &acc * &qint(t)))
}

/// `[n choose k] = [n][n-1]...[n-k+1] / [k]!` for any integer `n`, `k >= 0`.
/// The falling product is divided exactly; a nonzero remainder is an error.
pub fn qbinom(n: i64, k: i64) -> Result<LaurentPoly, QArithError> {
    if k < 0 {
        return Err(QArithError::NegativeArgument { what: "qbinom", value: k });
    }
    let top = (0..k).fold(LaurentPoly::one(), |acc, t| &acc * &qint(n - t));
    top.div_exact(&qfact(k)?).ok_or(QArithError::NotDivisible { n, k })
}

/// `[n]_q = (1 - q^n) / (1 - q)` as a Laurent polynomial in `q`.
pub fn qint_q(n: i64) -> LaurentPoly {
    if n >= 0 {
        LaurentPoly::from_int_terms(&(0..n).map(|t| (1, t)).collect::<Vec<_>>())
    } else {
        // (1 - q^n)/(1 - q) = -(q^n + q^{n+1} + ... + q^{-1})
        LaurentPoly::from_int_terms(&(n..0).map(|t| (-1, t)).collect::<Vec<_>>())
    }
}

pub fn qfact_q(n: i64) -> Result<LaurentPoly, QArithError> {
    if n < 0 {
        return Err(QArithError::NegativeArgument { what: "qfact_q", value: n });
    }
    Ok((1..=n).fold(LaurentPoly::one(), |acc, t| &acc * &qint_q(t)))
}

/// The `q`-binomial `[n]_q ... [n-k+1]_q / [k]_q!`. The result is a Laurent
/// polynomial whose variable the caller reads as `q`.
pub fn to_q_analogue(n: i64, k: i64) -> Result<LaurentPoly, QArithError> {
    if k < 0 {
        return Err(QArithError::NegativeArgument { what: "to_q_analogue", value: k });
    }
    let top = (0..k).fold(LaurentPoly::one(), |acc, t| &acc * &qint_q(n - t));
    top.div_exact(&qfact_q(k)?).ok_or(QArithError::NotDivisible { n, k })
}

/// Exponent `e` in the scalar law `[n choose k]_v = v^e * ([n choose k]_q at q = v^2)`.
///
/// From `[m]_v = q^{(1-m)/2} [m]_q` applied to every factor: the falling
/// product contributes `sum_{t<k} (1-n+t)/2`, the factorial
/// `sum_{t<=k} (1-t)/2`; the difference is `-k(n-k)/2` in `q`.
pub fn q_analogue_v_exponent(n: i64, k: i64) -> i64 {
    -k * (n - k)
}

/// `[n choose k]` recovered from the `q`-analogue through the scalar law.
pub fn qbinom_via_q(n: i64, k: i64) -> Result<LaurentPoly, QArithError> {
    Ok(to_q_analogue(n, k)?.substitute_power(2).shift(q_analogue_v_exponent(n, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    #[test]
    fn qint_examples() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(3), lp(&[(1, 2), (1, 0), (1, -2)]));
        assert_eq!(qint(-2), lp(&[(-1, 1), (-1, -1)]));
    }

    #[test]
    fn qint_matches_closed_form() {
        // (v^n - v^-n) = [n] (v - v^-1)
        let d = lp(&[(1, 1), (-1, -1)]);
        for n in -7..=7 {
            assert_eq!(&qint(n) * &d, lp(&[(1, n), (-1, -n)]), "n = {n}");
        }
    }

    #[test]
    fn qfact_examples() {
        assert!(qfact(0).unwrap().is_one());
        assert!(qfact(1).unwrap().is_one());
        assert_eq!(qfact(3).unwrap(), lp(&[(1, 3), (2, 1), (2, -1), (1, -3)]));
        assert!(qfact(-1).is_err());
    }

    #[test]
    fn qbinom_examples() {
        for n in -5..=5 {
            assert!(qbinom(n, 0).unwrap().is_one());
        }
        assert_eq!(qbinom(4, 2).unwrap(), lp(&[(1, 4), (1, 2), (2, 0), (1, -2), (1, -4)]));
        for s in 0..=5 {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            assert_eq!(qbinom(-1, s).unwrap(), LaurentPoly::from_int(sign));
        }
        assert!(qbinom(3, -1).is_err());
    }

    #[test]
    fn q_analogue_examples() {
        assert!(to_q_analogue(7, 0).unwrap().is_one());
        assert_eq!(to_q_analogue(2, 1).unwrap(), lp(&[(1, 0), (1, 1)]));
        // [4]_q [3]_q / ([2]_q [1]_q) = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(to_q_analogue(4, 2).unwrap(), lp(&[(1, 0), (1, 1), (2, 2), (1, 3), (1, 4)]));
    }

    #[test]
    fn scalar_law_between_pictures() {
        for n in -6..=8 {
            for k in 0..=6 {
                assert_eq!(qbinom_via_q(n, k).unwrap(), qbinom(n, k).unwrap(), "({n},{k})");
            }
        }
    }
}
