pub mod abelian;
pub mod complex;
pub mod motive;
pub mod atlas;
pub mod weight;
pub mod blowup;
pub mod format;
mod error;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/groups.md")]
    pub struct Groups;
    #[doc = include_str!("../../../book/src/complexes.md")]
    pub struct Complexes;
    #[doc = include_str!("../../../book/src/classes.md")]
    pub struct Classes;
    #[doc = include_str!("../../../book/src/weights.md")]
    pub struct Weights;
    #[doc = include_str!("../../../book/src/kummer.md")]
    pub struct Kummer;
    #[doc = include_str!("../../../book/src/blowups.md")]
    pub struct Blowups;
}
