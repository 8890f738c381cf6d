//! The Kummer surface of an abelian surface: its minimal resolution is a K3
//! surface with sixteen disjoint (-2)-curves over the 2-torsion points.
//! The restriction `H^2(K3) -> ⊕ H^2(E_i) = Z^16` has image
//! `{y : y mod 2 ∈ RM(1,4)^⊥}`, where the sixteen points are identified
//! with `F_2^4` and `RM(1,4)` is the code of affine functions.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::abelian::{smith, AbMorphism, FinAbGroup, IntMatrix};
use crate::error::Result;
use crate::weight::{DescentPresentation, Entry};

use super::Atlas;

pub const KUMMER_CURVES: usize = 16;

/// Generators of `RM(1,4)`: the all-ones word and the four coordinate
/// functions, evaluated at the points `0..16` of `F_2^4` (bit `b` of the
/// point index is coordinate `b`).
pub fn reed_muller_code() -> Vec<u16> {
    let mut gens = vec![0xffffu16];
    for b in 0..4 {
        gens.push((0..16u16).filter(|p| p >> b & 1 == 1).fold(0, |w, p| w | 1 << p));
    }
    gens
}

#[cfg(test)]
fn span(gens: &[u16]) -> Vec<u16> {
    let mut words = vec![0u16];
    for &g in gens {
        let more: Vec<u16> = words.iter().map(|w| w ^ g).collect();
        words.extend(more);
    }
    words.sort_unstable();
    words.dedup();
    words
}

/// Row-reduced basis of the span of `words` over `F_2`.
fn basis(words: &[u16]) -> Vec<u16> {
    let mut rows: Vec<u16> = Vec::new();
    for &w in words {
        let mut w = w;
        for &r in &rows {
            let lead = 15 - r.leading_zeros();
            if w >> lead & 1 == 1 {
                w ^= r;
            }
        }
        if w != 0 {
            let lead = 15 - w.leading_zeros();
            for r in rows.iter_mut() {
                if *r >> lead & 1 == 1 {
                    *r ^= w;
                }
            }
            rows.push(w);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rows
}

/// The dual code, by exhaustive search over `F_2^16`.
fn dual_code(gens: &[u16]) -> Vec<u16> {
    (0..=u16::MAX).filter(|&y| gens.iter().all(|&g| (g & y).count_ones() % 2 == 0)).collect()
}

fn lift(words: &[u16], scale: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(KUMMER_CURVES, words.len());
    for (j, &w) in words.iter().enumerate() {
        for p in 0..KUMMER_CURVES {
            if w >> p & 1 == 1 {
                m[(p, j)] = BigInt::from(scale);
            }
        }
    }
    m
}

/// The degree-2 restriction `H^2(K3) = Z^22 -> Z^16`: a basis of the image
/// lattice in the first sixteen columns, zero on a rank-6 complement.
pub fn kummer_restriction() -> &'static IntMatrix {
    static MATRIX: OnceLock<IntMatrix> = OnceLock::new();
    MATRIX.get_or_init(|| {
        let dual = basis(&dual_code(&reed_muller_code()));
        let g = IntMatrix::identity(KUMMER_CURVES).scale(&BigInt::from(2)).hstack(&lift(&dual, 1));
        let s = smith(&g);
        let image = (&g * &s.v).submatrix(0..KUMMER_CURVES, 0..KUMMER_CURVES);
        image.hstack(&IntMatrix::zeros(KUMMER_CURVES, 6))
    })
}

/// Two-column presentation `M(K3) + 16 M(pt) -> 16 M(P1)` of the singular
/// Kummer surface: the resolution and the sixteen nodes map to the sixteen
/// exceptional curves.
pub fn kummer_presentation(atlas: &Atlas) -> Result<DescentPresentation> {
    let mut col0 = vec!["K3".to_string()];
    col0.extend(std::iter::repeat("pt".to_string()).take(KUMMER_CURVES));
    let col1 = vec!["P1".to_string(); KUMMER_CURVES];
    let mut entries = Vec::new();
    for i in 0..KUMMER_CURVES {
        entries.push(Entry::new(0, i, 1, &format!("kummer:E{}", i + 1)));
        entries.push(Entry::new(1 + i, i, -1, "const:P1"));
    }
    DescentPresentation::from_entries(2, vec![col0, col1], vec![entries], atlas)
}

/// Index of the lattice spanned by the exceptional classes in its
/// primitive closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeIndex {
    pub code_dimension: usize,
    pub dual_dimension: usize,
    pub index: BigInt,
    pub quotient: FinAbGroup,
}

/// The primitive closure of `⊕ Z E_i` contains `½ Σ_{i∈A} E_i` exactly for
/// supports `A` of codewords of `RM(1,4)`. Scaled by 2, the closure is
/// spanned by `2 e_i` and the codewords, and the quotient is read off as
/// the cokernel of `2 Z^16` in that lattice.
pub fn exceptional_lattice_index() -> LatticeIndex {
    let code = reed_muller_code();
    let code_dimension = basis(&code).len();
    let dual_dimension = basis(&dual_code(&code)).len();
    let two = IntMatrix::identity(KUMMER_CURVES).scale(&BigInt::from(2));
    let closure = two.hstack(&lift(&code, 1));
    let s = smith(&closure);
    let b = (&closure * &s.v).submatrix(0..KUMMER_CURVES, 0..KUMMER_CURVES);
    let mut coords = IntMatrix::zeros(KUMMER_CURVES, KUMMER_CURVES);
    for j in 0..KUMMER_CURVES {
        let x = crate::abelian::solve_integer(&b, &two.column(j)).expect("2 Z^16 lies in the closure");
        for (i, v) in x.into_iter().enumerate() {
            coords[(i, j)] = v;
        }
    }
    let free = FinAbGroup::free(KUMMER_CURVES);
    let quotient = AbMorphism::new(free.clone(), free, coords).expect("free groups").cokernel();
    let index = quotient.order().expect("full-rank sublattice");
    LatticeIndex { code_dimension, dual_dimension, index, quotient }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_dimensions() {
        let code = reed_muller_code();
        assert_eq!(span(&code).len(), 32);
        assert_eq!(basis(&code).len(), 5);
        let dual = dual_code(&code);
        assert_eq!(dual.len(), 2048);
        assert_eq!(span(&basis(&dual)), dual);
        // Minimum weight 8 away from 0 and the all-ones word.
        assert!(span(&code).iter().all(|w| matches!(w.count_ones(), 0 | 8 | 16)));
    }

    #[test]
    fn restriction_cokernel() {
        let m = kummer_restriction();
        assert_eq!((m.rows(), m.cols()), (16, 22));
        let s = smith(m);
        let ones = s.diagonal.iter().filter(|d| **d == BigInt::from(1)).count();
        let twos = s.diagonal.iter().filter(|d| **d == BigInt::from(2)).count();
        assert_eq!((ones, twos, s.rank()), (11, 5, 16));
        // Every image vector reduces into the dual code.
        let dual = dual_code(&reed_muller_code());
        for j in 0..16 {
            let w = (0..16).filter(|&p| m[(p, j)].bit(0)).fold(0u16, |w, p| w | 1 << p);
            assert!(dual.binary_search(&w).is_ok());
        }
    }

    #[test]
    fn index_thirty_two() {
        let l = exceptional_lattice_index();
        assert_eq!((l.code_dimension, l.dual_dimension), (5, 11));
        assert_eq!(l.index, BigInt::from(32));
        assert_eq!(l.quotient, FinAbGroup::torsion_power(2, 5));
    }
}
