//! Grothendieck classes of varieties in a free model of `K_0` of motives,
//! and the additive invariants read off from them.

mod class;
mod expr;
mod invariants;
mod poly;

pub use class::{builtin_projective, ClassTerm, MotiveClass, MotiveMonomial};
pub use expr::{class_of, Dimension, VarietyExpr};
pub use invariants::{euler_char, virtual_hodge, virtual_poincare, Realization};
pub use poly::{Monomial, Poly};
