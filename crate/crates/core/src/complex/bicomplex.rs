use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

use super::chain::{AbComplex, BlockComplex};
use super::graded::{GradedGroup, GradedMorphism};

/// A bounded double complex of graded groups. The horizontal differential
/// raises `i`, the vertical one raises `j`, and the two commute.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    terms: BTreeMap<(i32, i32), GradedGroup>,
    horizontal: BTreeMap<(i32, i32), GradedMorphism>,
    vertical: BTreeMap<(i32, i32), GradedMorphism>,
}

impl Bicomplex {
    pub fn new(
        terms: BTreeMap<(i32, i32), GradedGroup>,
        horizontal: BTreeMap<(i32, i32), GradedMorphism>,
        vertical: BTreeMap<(i32, i32), GradedMorphism>,
    ) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        let b = Bicomplex { terms, horizontal, vertical };
        for (&(i, j), f) in &b.horizontal {
            if f.source() != &b.term(i, j) || f.target() != &b.term(i + 1, j) {
                return Err(Error::InvalidComplex(format!("horizontal map at ({i}, {j}) has wrong endpoints")));
            }
        }
        for (&(i, j), f) in &b.vertical {
            if f.source() != &b.term(i, j) || f.target() != &b.term(i, j + 1) {
                return Err(Error::InvalidComplex(format!("vertical map at ({i}, {j}) has wrong endpoints")));
            }
        }
        for &(i, j) in b.terms.keys() {
            if !b.h(i + 1, j).compose(&b.h(i, j)).is_zero() {
                return Err(Error::NonzeroComposition(format!("horizontal d∘d at ({i}, {j})")));
            }
            if !b.v(i, j + 1).compose(&b.v(i, j)).is_zero() {
                return Err(Error::NonzeroComposition(format!("vertical d∘d at ({i}, {j})")));
            }
            if b.v(i + 1, j).compose(&b.h(i, j)) != b.h(i, j + 1).compose(&b.v(i, j)) {
                return Err(Error::InvalidComplex(format!("square at ({i}, {j}) does not commute")));
            }
        }
        Ok(b)
    }

    pub fn term(&self, i: i32, j: i32) -> GradedGroup {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn h(&self, i: i32, j: i32) -> GradedMorphism {
        self.horizontal
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| GradedMorphism::zero(&self.term(i, j), &self.term(i + 1, j)))
    }

    fn v(&self, i: i32, j: i32) -> GradedMorphism {
        self.vertical
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| GradedMorphism::zero(&self.term(i, j), &self.term(i, j + 1)))
    }

    /// Total complex: column `m` is the sum of the terms with `i + j = m`
    /// (ordered by `i`), with differential `d_h + (-1)^i d_v`.
    pub fn total(&self) -> AbComplex {
        let Some(lo) = self.terms.keys().map(|(i, j)| i + j).min() else {
            return AbComplex::zero();
        };
        let hi = self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(lo);
        let diagonal = |m: i32| -> Vec<(i32, i32)> {
            let is: BTreeSet<i32> = self.terms.keys().filter(|(i, j)| i + j == m).map(|(i, _)| *i).collect();
            is.into_iter().map(|i| (i, m - i)).collect()
        };
        let mut blocks = BlockComplex::new(lo);
        for m in lo..=hi {
            let here = diagonal(m);
            let next = diagonal(m + 1);
            blocks.push_column(here.iter().map(|&(i, j)| self.term(i, j)).collect());
            for (a, &(i, j)) in here.iter().enumerate() {
                if let Some(b) = next.iter().position(|&p| p == (i + 1, j)) {
                    blocks.arrow(m, a, b, self.h(i, j));
                }
                if let Some(b) = next.iter().position(|&p| p == (i, j + 1)) {
                    let v = self.v(i, j);
                    blocks.arrow(m, a, b, if i.rem_euclid(2) == 0 { v } else { v.neg() });
                }
            }
        }
        blocks.assemble().expect("total complex of a commuting double complex").complex
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FinAbGroup, IntMatrix};

    fn z() -> GradedGroup {
        GradedGroup::concentrated(0, FinAbGroup::free(1))
    }

    fn id() -> GradedMorphism {
        GradedMorphism::identity(&z())
    }

    #[test]
    fn one_row_is_the_row() {
        let terms = BTreeMap::from([((0, 0), z()), ((1, 0), z())]);
        let two = GradedMorphism::from_matrices(z(), z(), BTreeMap::from([(0, IntMatrix::from_rows(&[vec![2]]))]))
            .unwrap();
        let b = Bicomplex::new(terms, BTreeMap::from([((0, 0), two.clone())]), BTreeMap::new()).unwrap();
        assert_eq!(b.total(), AbComplex::two_term(two));
    }

    #[test]
    fn one_column_is_the_column() {
        let terms = BTreeMap::from([((0, 0), z()), ((0, 1), z())]);
        let b = Bicomplex::new(terms, BTreeMap::new(), BTreeMap::from([((0, 0), id())])).unwrap();
        assert_eq!(b.total(), AbComplex::two_term(id()));
    }

    #[test]
    fn identity_square_is_acyclic() {
        let terms = BTreeMap::from([((0, 0), z()), ((1, 0), z()), ((0, 1), z()), ((1, 1), z())]);
        let h = BTreeMap::from([((0, 0), id()), ((0, 1), id())]);
        let v = BTreeMap::from([((0, 0), id()), ((1, 0), id())]);
        let t = Bicomplex::new(terms, h, v).unwrap().total();
        assert_eq!(t.len(), 3);
        assert!(t.is_acyclic());
        assert!(crate::complex::find_contraction(&t).is_ok());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let terms = BTreeMap::from([((0, 0), z()), ((1, 0), z()), ((0, 1), z()), ((1, 1), z())]);
        let h = BTreeMap::from([((0, 0), id()), ((0, 1), id())]);
        let v = BTreeMap::from([((0, 0), id()), ((1, 0), id().neg())]);
        assert!(Bicomplex::new(terms, h, v).is_err());
    }
}
