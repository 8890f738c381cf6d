//! Bounded complexes of graded abelian groups: cones, shifts, double
//! complexes, tensor products and contracting homotopies.

mod bicomplex;
mod chain;
mod contraction;
mod graded;
mod kunneth;

pub use bicomplex::Bicomplex;
pub use chain::{AbComplex, ChainMap, E2Page};
pub use contraction::{find_contraction, Homotopy, Obstruction};
pub use graded::{GradedGroup, GradedMorphism};
pub(crate) use chain::BlockComplex;
pub(crate) use graded::GradedSum;
pub use kunneth::{kunneth, kunneth_map, tensor_complex};
