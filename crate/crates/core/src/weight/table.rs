use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::abelian::{smith, FinAbGroup};
use crate::complex::{tensor_complex, AbComplex, GradedGroup};
use crate::error::{Error, Result};
use crate::motive::{virtual_poincare, MotiveClass, Realization};

use super::presentation::DescentPresentation;

/// Constant coefficients for the weight spectral sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coefficients {
    Integers,
    /// `Z/m`, `m >= 2`.
    Mod(u64),
    Rationals,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Mod(m) => write!(f, "Z/{m}"),
            Coefficients::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Coefficients::Integers),
            "Q" => Ok(Coefficients::Rationals),
            _ => {
                let m = s
                    .strip_prefix("Z/")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("coefficients `{s}`: expected Z, Q or Z/m")))?;
                if m < 2 {
                    return Err(Error::Validation(format!("coefficient modulus {m} is below 2")));
                }
                Ok(Coefficients::Mod(m))
            }
        }
    }
}

/// `E_2^{i,n}` of the weight spectral sequence, abutting to `H_c^{i+n}`.
/// Over `Q` entries are vector spaces, reported as free groups of that rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightTable {
    pub coefficients: Coefficients,
    pub dim: u32,
    entries: BTreeMap<(i32, i32), FinAbGroup>,
    degenerate: bool,
}

impl WeightTable {
    pub fn entry(&self, i: i32, n: i32) -> FinAbGroup {
        self.entries.get(&(i, n)).cloned().unwrap_or_default()
    }

    /// Nonzero entries keyed by `(i, n)`.
    pub fn entries(&self) -> &BTreeMap<(i32, i32), FinAbGroup> {
        &self.entries
    }

    /// True when only the `E_2` page is determined.
    pub fn is_e2_only(&self) -> bool {
        !self.degenerate
    }

    /// `gr^W_n H_c^k`, keyed by `(k, n)`, when the sequence degenerates.
    pub fn graded_pieces(&self) -> Option<BTreeMap<(i32, i32), FinAbGroup>> {
        self.degenerate.then(|| self.entries.iter().map(|(&(i, n), g)| ((i + n, n), g.clone())).collect())
    }

    /// `⊕_n gr^W_n H_c^k` when the sequence degenerates. This is the
    /// associated graded group; over `Z` the extension is not resolved.
    pub fn associated_graded(&self, k: i32) -> Option<FinAbGroup> {
        let pieces = self.graded_pieces()?;
        Some(pieces.iter().filter(|((kk, _), _)| *kk == k).fold(FinAbGroup::zero(), |acc, (_, g)| acc.sum(g)))
    }

    /// Number of columns `i` carrying a nonzero entry, counted from 0 to
    /// the last one.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0).max(0) as usize
    }

    /// `Σ_i (-1)^i rank E_2^{i,n}` for every `n`.
    pub fn virtual_betti(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, n), g) in &self.entries {
            let r = g.rank() as i64;
            *out.entry(n).or_insert(0) += if i.rem_euclid(2) == 0 { r } else { -r };
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Report lines: one per nonzero `E_2` entry, then the weight-graded
    /// pieces when determined.
    pub fn lines(&self) -> Vec<String> {
        let k = self.coefficients;
        let mut out = vec![format!("coefficients {k}, dim {}", self.dim)];
        for (&(i, n), g) in &self.entries {
            out.push(format!("E2^{{{i},{n}}} = {}", show(g, k)));
        }
        match self.graded_pieces() {
            Some(p) => {
                for (&(deg, n), g) in &p {
                    out.push(format!("grW_{n} H^{deg}_c = {}", show(g, k)));
                }
                let degrees: BTreeSet<i32> = p.keys().map(|&(d, _)| d).collect();
                for deg in degrees {
                    let parts = p.keys().filter(|(d, _)| *d == deg).count();
                    if parts > 1 {
                        let total = self.associated_graded(deg).unwrap_or_default();
                        out.push(format!("gr H^{deg}_c = {}", show(&total, k)));
                    }
                }
            }
            None => out.push("E2 only".to_string()),
        }
        out
    }
}

/// Renders a group; over `Q` as `Q^r`.
pub fn show(g: &FinAbGroup, k: Coefficients) -> String {
    match k {
        Coefficients::Rationals if g.rank() == 1 => "Q".into(),
        Coefficients::Rationals if g.rank() > 1 => format!("Q^{}", g.rank()),
        _ => g.to_string(),
    }
}

impl fmt::Display for WeightTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lines().join("\n"))
    }
}

/// The weight table of a presentation with the chosen coefficients.
///
/// Graded pieces are reported over `Q`, and over `Z` or `Z/m` when the
/// realization spans at most two columns, leaving no room for higher
/// differentials.
pub fn weight_table(w: &DescentPresentation, coefficients: Coefficients) -> WeightTable {
    let c = w.realization();
    let entries = match coefficients {
        Coefficients::Integers => c.e2_page().entries,
        Coefficients::Mod(m) => {
            let point = AbComplex::single(GradedGroup::concentrated(0, FinAbGroup::cyclic(BigInt::from(m))));
            tensor_complex(c, &point).e2_page().entries
        }
        Coefficients::Rationals => rational_e2(c),
    };
    let span = c.support().map(|(lo, hi)| (hi - lo + 1) as usize).unwrap_or(0);
    let degenerate = coefficients == Coefficients::Rationals || span <= 2;
    WeightTable { coefficients, dim: w.dim(), entries, degenerate }
}

/// `E_2 ⊗ Q` from the free blocks of the differentials.
fn rational_e2(c: &AbComplex) -> BTreeMap<(i32, i32), FinAbGroup> {
    let mut out = BTreeMap::new();
    for n in c.degrees() {
        let rank_of = |i: i32| {
            let f = c.differential(i).at(n);
            let m = f.matrix().submatrix(0..f.target().rank(), 0..f.source().rank());
            smith(&m).rank()
        };
        for i in c.start()..c.end() {
            let b = c.column(i).get(n).rank();
            let h = b - rank_of(i) - rank_of(i - 1);
            if h > 0 {
                out.insert((i, n), FinAbGroup::free(h));
            }
        }
    }
    out
}

/// Checks `h^n(X) = Σ_i (-1)^i dim E_2^{i,n} ⊗ Q` for every `n`, with the
/// left side read from the virtual Poincaré polynomial of `class`.
pub fn virtual_betti_consistency(
    w: &DescentPresentation,
    class: &MotiveClass,
    data: &impl Realization,
) -> Result<BTreeMap<i32, i64>> {
    let table = weight_table(w, Coefficients::Rationals).virtual_betti();
    let poly = virtual_poincare(class, data)?;
    let mut degrees: BTreeSet<i32> = table.keys().copied().collect();
    degrees.extend(poly.terms().map(|(&e, _)| e as i32));
    for n in degrees {
        let expected = if n >= 0 { poly.coeff(&(n as u32)) } else { BigInt::from(0) };
        let found = BigInt::from(table.get(&n).copied().unwrap_or(0));
        if expected != found {
            return Err(Error::Validation(format!(
                "virtual Betti number h^{n}: the class gives {expected}, the weight table gives {found}"
            )));
        }
    }
    Ok(table)
}
