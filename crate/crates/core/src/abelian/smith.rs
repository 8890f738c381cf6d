//! Smith normal form with recorded unimodular transforms, and the integer
//! solving built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v == diag(diagonal)` with `u`, `v` unimodular.
///
/// The diagonal is non-negative and each entry divides the next; zeros come
/// last. `u_inv` is the inverse of `u`, kept because cokernel generators need
/// to be lifted back to the original coordinates.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub v: IntMatrix,
    rows: usize,
    cols: usize,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.rows, self.cols, &self.diagonal)
    }

    /// Columns of `v` spanning the integer kernel of the decomposed matrix.
    pub fn kernel_basis(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank()..self.cols).collect();
        self.v.select_cols(&idx)
    }

    /// Solves `a * x = b` over the integers, where `a` is the decomposed matrix.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let c = self.u.mul_vec(b);
        let rank = self.rank();
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < rank {
                let (q, r) = ci.div_rem(&self.diagonal[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

/// Computes the Smith normal form of `a`.
pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    // Row operations are mirrored on `u` (from the left) and, inverted, on
    // `u_inv` (from the right).
    let row_add = |m: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, t: usize, s: usize, f: &BigInt| {
        m.add_row_multiple(t, s, f);
        u.add_row_multiple(t, s, f);
        ui.add_col_multiple(s, t, &-f);
    };
    let row_swap = |m: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a: usize, b: usize| {
        m.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_abs_position(&m, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        row_swap(&mut m, &mut u, &mut u_inv, t, pi);
        m.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = m[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !m[(i, t)].is_zero() {
                    let q = m[(i, t)].div_floor(&p);
                    row_add(&mut m, &mut u, &mut u_inv, i, t, &-q);
                    clean &= m[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[(t, j)].is_zero() {
                    let q = m[(t, j)].div_floor(&p);
                    m.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-q);
                    clean &= m[(t, j)].is_zero();
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived; promote it.
                let cands = (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_abs_position(&m, cands).expect("nonzero remainder exists");
                row_swap(&mut m, &mut u, &mut u_inv, t, pi);
                m.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Enforce the divisibility chain against the remaining block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[(i, j)].is_multiple_of(&p));
            match bad {
                Some((i, _)) => row_add(&mut m, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if m[(t, t)].is_negative() {
            m.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    let diagonal = (0..n).map(|i| m[(i, i)].clone()).collect();
    SmithDecomposition { u, u_inv, diagonal, v, rows, cols }
}

fn min_abs_position(
    m: &IntMatrix,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in positions {
        let x = &m[(i, j)];
        if x.is_zero() {
            continue;
        }
        let a = x.abs();
        if best.as_ref().map_or(true, |(_, b)| a < *b) {
            let unit = a.is_one();
            best = Some(((i, j), a));
            if unit {
                break;
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Returns some integer `x` with `a * x = b`, or `None` when no integer
/// solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    smith(a).solve(b)
}

/// A basis (as columns) of the integer kernel of `a`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    smith(a).kernel_basis()
}
