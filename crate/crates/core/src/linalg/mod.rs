//! Exact linear algebra over `Q(v)` and over a prime field.

pub mod echelon;
pub mod field;
pub mod sparse;

pub use echelon::{combine, inverse, rank, rref, solve_columns, transpose, Rref};
pub use field::{Exact, Field, Fp, Scalars, Specialized};
pub use sparse::{IncrementalEchelon, SparseRow};
