//! Projective bundles and blow-ups: cohomology formulas, and an exactness
//! verifier for the Chow groups of a blow-up square
//!
//! ```text
//!   Y' --j--> X'
//!   |g        |f
//!   Y  --i--> X
//! ```
//!
//! where `f` is the blow-up of `X` along `Y` and `Y'` the exceptional divisor.

use std::fmt;

use crate::abelian::{homology_at, AbMorphism, FinAbGroup, IntMatrix};
use crate::complex::GradedGroup;
use crate::error::{Error, Result};

fn shifted(h: &GradedGroup, by: i32) -> GradedGroup {
    GradedGroup::from_pairs(h.iter().map(|(n, g)| (n + by, g.clone())))
}

/// `H^m(P(N)) = ⊕_{i<d} H^{m-2i}(Y)` for a rank-`d` bundle over `Y`.
pub fn projective_bundle(base: &GradedGroup, d: u32) -> Result<GradedGroup> {
    if d == 0 {
        return Err(Error::Validation("projective bundle of rank 0".into()));
    }
    Ok((0..d as i32).fold(GradedGroup::zero(), |acc, i| acc.sum(&shifted(base, 2 * i))))
}

/// `H(X') = H(X) ⊕ ⊕_{1<=i<d} H(Y)[-2i]` for the blow-up of `X` along a
/// smooth center `Y` of codimension `d`.
pub fn blowup_cohomology(x: &GradedGroup, y: &GradedGroup, d: u32) -> Result<GradedGroup> {
    if d == 0 {
        return Err(Error::Validation("blow-up center of codimension 0".into()));
    }
    Ok((1..d as i32).fold(x.clone(), |acc, i| acc.sum(&shifted(y, 2 * i))))
}

/// The four maps of the square at one level. Pushforwards go
/// `f: X' -> X`, `g: Y' -> Y`, `i: Y -> X`, `j: Y' -> X'`; pullbacks the
/// other way. Matrices act on coordinate columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMaps {
    pub f: IntMatrix,
    pub g: IntMatrix,
    pub i: IntMatrix,
    pub j: IntMatrix,
}

/// Free groups `A_p` with named bases, and the maps between them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChowLevel {
    pub p: u32,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub x_prime: Vec<String>,
    pub y_prime: Vec<String>,
    pub push: SquareMaps,
    /// Pullbacks between the same groups, checked as given.
    pub pull: Option<SquareMaps>,
}

/// Chow data of a blow-up square, one entry per level `p`, sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChowData {
    levels: Vec<ChowLevel>,
}

fn shape(m: &IntMatrix, rows: usize, cols: usize, what: &str, p: u32) -> Result<()> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(Error::Dimension(format!(
            "A_{p}: {what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

impl ChowLevel {
    fn validate(&self) -> Result<()> {
        let (x, y, xp, yp) = (self.x.len(), self.y.len(), self.x_prime.len(), self.y_prime.len());
        let p = self.p;
        let s = &self.push;
        shape(&s.f, x, xp, "f_*", p)?;
        shape(&s.g, y, yp, "g_*", p)?;
        shape(&s.i, x, y, "i_*", p)?;
        shape(&s.j, xp, yp, "j_*", p)?;
        if &s.f * &s.j != &s.i * &s.g {
            return Err(Error::Validation(format!("A_{p}: f_* j_* differs from i_* g_*")));
        }
        if let Some(t) = &self.pull {
            shape(&t.f, xp, x, "f^*", p)?;
            shape(&t.g, yp, y, "g^*", p)?;
            shape(&t.i, y, x, "i^*", p)?;
            shape(&t.j, yp, xp, "j^*", p)?;
            if &t.j * &t.f != &t.g * &t.i {
                return Err(Error::Validation(format!("A_{p}: j^* f^* differs from g^* i^*")));
            }
        }
        Ok(())
    }
}

impl ChowData {
    pub fn new(mut levels: Vec<ChowLevel>) -> Result<Self> {
        levels.sort_by_key(|l| l.p);
        if let Some(w) = levels.windows(2).find(|w| w[0].p == w[1].p) {
            return Err(Error::Validation(format!("A_{} given twice", w[0].p)));
        }
        for l in &levels {
            l.validate()?;
        }
        Ok(ChowData { levels })
    }

    pub fn levels(&self) -> &[ChowLevel] {
        &self.levels
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sequence {
    /// `0 -> A_p(Y') -> A_p(Y) + A_p(X') -> A_p(X) -> 0` by
    /// `(g_*, j_*)` then `i_* - f_*`.
    Pushforward,
    /// `0 -> A(X) -> A(Y) + A(X') -> A(Y') -> 0` by `(i^*, -f^*)` then
    /// `g^* + j^*`.
    Pullback,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Position {
    Left,
    Middle,
    Right,
}

/// A nonzero homology group of the three-term sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub position: Position,
    pub defect: FinAbGroup,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub p: u32,
    pub sequence: Sequence,
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn is_exact(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = match self.sequence {
            Sequence::Pushforward => "pushforward",
            Sequence::Pullback => "pullback",
        };
        write!(f, "A_{} {seq}: ", self.p)?;
        if self.is_exact() {
            return write!(f, "exact");
        }
        let parts: Vec<String> = self
            .failures
            .iter()
            .map(|e| match e.position {
                Position::Left => format!("not injective, kernel {}", e.defect),
                Position::Middle => format!("not exact in the middle, homology {}", e.defect),
                Position::Right => format!("not surjective, cokernel {}", e.defect),
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn free_map(m: IntMatrix) -> AbMorphism {
    let (s, t) = (FinAbGroup::free(m.cols()), FinAbGroup::free(m.rows()));
    AbMorphism::new(s, t, m).expect("maps of free groups")
}

fn check(p: u32, sequence: Sequence, first: IntMatrix, second: IntMatrix) -> Verdict {
    let (a, b) = (free_map(first), free_map(second));
    let defects = [
        (Position::Left, a.kernel()),
        (Position::Middle, homology_at(&a, &b).expect("validated square gives a complex")),
        (Position::Right, b.cokernel()),
    ];
    let failures =
        defects.into_iter().filter(|(_, g)| !g.is_zero()).map(|(position, defect)| Failure { position, defect }).collect();
    Verdict { p, sequence, failures }
}

/// Exactness of the pushforward sequence at every level, and of the
/// pullback sequence where pullbacks are given.
pub fn check_blowup_exactness(cd: &ChowData) -> Vec<Verdict> {
    let mut out = Vec::new();
    for l in &cd.levels {
        let s = &l.push;
        out.push(check(l.p, Sequence::Pushforward, s.g.vstack(&s.j), s.i.hstack(&(-&s.f))));
        if let Some(t) = &l.pull {
            out.push(check(l.p, Sequence::Pullback, t.i.vstack(&(-&t.f)), t.g.hstack(&t.j)));
        }
    }
    out
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn m(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(rows, cols, entries)
}

fn level(p: u32, bases: [&[&str]; 4], push: [IntMatrix; 4], pull: Option<[IntMatrix; 4]>) -> ChowLevel {
    let [x, y, x_prime, y_prime] = bases.map(names);
    let square = |[f, g, i, j]: [IntMatrix; 4]| SquareMaps { f, g, i, j };
    ChowLevel { p, x, y, x_prime, y_prime, push: square(push), pull: pull.map(square) }
}

/// `A_0` of a blow-up square of connected varieties: every group is
/// generated by a point class and every map is the identity.
fn points(p: u32) -> ChowLevel {
    let one = || m(1, 1, &[1]);
    level(p, [&["pt"], &["pt"], &["pt"], &["pt"]], [one(), one(), one(), one()], None)
}

/// The blow-up of `P^2` at a point, with exceptional curve `E`. `h` is the
/// line class, `e` the class of `E` in `X'`.
pub fn blowup_p2_point() -> ChowData {
    let l1 = level(
        1,
        [&["h"], &[], &["h", "e"], &["E"]],
        [m(1, 2, &[1, 0]), m(0, 1, &[]), m(1, 0, &[]), m(2, 1, &[0, 1])],
        Some([m(2, 1, &[1, 0]), m(1, 0, &[]), m(0, 1, &[]), m(1, 2, &[0, -1])]),
    );
    let l2 = level(
        2,
        [&["[X]"], &[], &["[X']"], &[]],
        [m(1, 1, &[1]), m(0, 0, &[]), m(1, 0, &[]), m(1, 0, &[])],
        None,
    );
    ChowData::new(vec![points(0), l1, l2]).expect("consistent dataset")
}

/// The blow-up of `P^3` along a line `Y`. The exceptional divisor
/// `Y' = P(N)` has fibre class `F` and section class `S`; `l'` is the
/// pullback of a general line, `F'` the image of a fibre, `H'` and `E'`
/// the hyperplane and exceptional divisor classes.
pub fn blowup_p3_line() -> ChowData {
    let l1 = level(
        1,
        [&["l"], &["[Y]"], &["l'", "F'"], &["F", "S"]],
        [m(1, 2, &[1, 0]), m(1, 2, &[0, 1]), m(1, 1, &[1]), m(2, 2, &[0, 1, 1, 0])],
        None,
    );
    let l2 = level(
        2,
        [&["H"], &[], &["H'", "E'"], &["[Y']"]],
        [m(1, 2, &[1, 0]), m(0, 1, &[]), m(1, 0, &[]), m(2, 1, &[0, 1])],
        None,
    );
    let l3 = level(
        3,
        [&["[X]"], &[], &["[X']"], &[]],
        [m(1, 1, &[1]), m(0, 0, &[]), m(1, 0, &[]), m(1, 0, &[])],
        None,
    );
    ChowData::new(vec![points(0), l1, l2, l3]).expect("consistent dataset")
}
