//! Descent presentations standing in for weight complexes, their
//! constructions, and integral weight tables.

mod ncc;
mod ops;
mod presentation;
mod table;

pub use ncc::{build_from_ncc, NCConfiguration};
pub use ops::{mayer_vietoris_closed, open_closed, product};
pub use presentation::{DescentPresentation, Entry, Summand};
pub use table::{show, virtual_betti_consistency, weight_table, Coefficients, WeightTable};
