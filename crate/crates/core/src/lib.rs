//! Bounded-degree computer algebra for the negative half of the quantum group
//! of a comet quiver, together with its combinatorial crystal.

pub mod charformula;
pub mod crystal;
pub mod freealg;
pub mod linalg;
pub mod qarith;
pub mod quiver;
