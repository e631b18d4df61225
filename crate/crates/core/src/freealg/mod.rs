//! Bounded-degree model of `U^-` for `Q(omega, r)`: the free algebra on the
//! `F_iota` modulo commutation and Serre relations, skew derivations,
//! kernel decompositions, Kashiwara operators and the crystal lattice.

pub mod facts;
pub mod lattice;
pub mod ncpoly;
pub mod ops;
pub mod params;
pub mod quotient;
pub mod relations;

pub use crate::quiver::{pairing, DegreeVector, Gen};
pub use facts::{fact_grid, run_fact_grid, verify_algebra_fact, Fact, FactReport};
pub use lattice::{
    kernel_lattice, lattice_build, lattice_equiv, lattice_from_monomials, operator_words, LatticeBasis, LatticeMode,
};
pub use ncpoly::{NCPoly, Word};
pub use ops::{eprime, Algebra, Vector, RF};
pub use params::QuiverParams;
pub use quotient::{
    build_quotient, modular_dimensions, specialization_points, Elem, GradedQuotient, ModularDimensions,
};
pub use relations::{relation_set, serre_element, serre_relation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree {0} is outside the truncation")]
    OutOfRange(DegreeVector),
    #[error("input is not homogeneous")]
    Inhomogeneous,
    #[error("input is zero")]
    ZeroInput,
    #[error("generator {0} is not admitted by the truncation")]
    UnknownGenerator(Gen),
    #[error("spanning set at degree {degree} has {size} columns, above the bound {bound}")]
    ResourceGuard { degree: DegreeVector, size: usize, bound: usize },
    #[error("specialization point is a pole of a coefficient")]
    BadSpecialization,
    #[error("direct-sum decomposition fails at degree {0}")]
    DirectSum(DegreeVector),
    #[error("element is not in the lattice at degree {0}")]
    NotInLattice(DegreeVector),
    #[error("unknown fact `{0}`")]
    UnknownFact(String),
    #[error("{fact}: bad parameters {params:?}")]
    BadFactParams { fact: String, params: Vec<i64> },
}
