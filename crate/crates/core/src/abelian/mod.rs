//! Exact linear algebra over the integers: Smith normal form, integer
//! solving, and finitely generated abelian groups.

mod class;
mod group;
mod matrix;
mod smith;

pub use class::{group_class, GroupClass};
pub use group::{homology_at, normalize, AbMorphism, DirectSum, FinAbGroup, Normalization};
pub(crate) use group::ZERO_GROUP;
pub use matrix::IntMatrix;
pub use smith::{kernel_basis, smith, solve_integer, SmithDecomposition};
