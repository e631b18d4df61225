//! Exact Laurent polynomials and rational functions in `v`, quantum numbers,
//! and the `q`-binomial identity inventory.

pub mod identities;
pub mod laurent;
pub(crate) mod poly;
pub mod qnumbers;
pub mod ratfunc;

pub use identities::{check_identity, evaluate, AtPoint, Identity, IdentityCheck, QModel, Symbolic};
pub use laurent::LaurentPoly;
pub use qnumbers::{q_analogue_v_exponent, qbinom, qbinom_via_q, qfact, qfact_q, qint, qint_q, to_q_analogue};
pub use ratfunc::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{what}: negative argument {value}")]
    NegativeArgument { what: &'static str, value: i64 },
    #[error("falling product for ({n}, {k}) is not divisible by the factorial")]
    NotDivisible { n: i64, k: i64 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{identity}: bad parameters {params:?}: {reason}")]
    BadParams { identity: &'static str, params: Vec<i64>, reason: String },
}
