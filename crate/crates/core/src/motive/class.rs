use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::poly::{power, Monomial, Poly};

/// `L^lefschetz` times a product of atom symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct MotiveMonomial {
    #[serde(rename = "L")]
    pub lefschetz: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub atoms: BTreeMap<String, u32>,
}

impl Monomial for MotiveMonomial {
    const DESCENDING: bool = true;

    fn one() -> Self {
        Self::default()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        for (a, e) in &other.atoms {
            *atoms.entry(a.clone()).or_insert(0) += e;
        }
        MotiveMonomial { lefschetz: self.lefschetz + other.lefschetz, atoms }
    }

    fn render(&self) -> String {
        let mut parts = vec![power("L", self.lefschetz)];
        parts.extend(self.atoms.iter().map(|(a, &e)| power(a, e)));
        parts.retain(|s| !s.is_empty());
        parts.join("*")
    }
}

/// Element of the Grothendieck group of motives, as an integer polynomial
/// in the Tate class `L` and opaque atom symbols. Atoms `pt` and `P<n>`
/// never appear; they are rewritten into `L`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MotiveClass(Poly<MotiveMonomial>);

/// `Some(n)` when the name is a built-in projective space (`pt` is `P0`).
pub fn builtin_projective(name: &str) -> Option<u32> {
    if name == "pt" {
        return Some(0);
    }
    let digits = name.strip_prefix('P')?;
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    digits.parse().ok()
}

impl MotiveClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        MotiveClass(Poly::one())
    }

    pub fn integer(c: i64) -> Self {
        MotiveClass(Poly::constant(c))
    }

    /// `L^n`.
    pub fn lefschetz(n: u32) -> Self {
        MotiveClass(Poly::term(MotiveMonomial { lefschetz: n, atoms: BTreeMap::new() }, 1))
    }

    /// `[P^n] = 1 + L + ... + L^n`.
    pub fn projective(n: u32) -> Self {
        (0..=n).map(Self::lefschetz).fold(Self::zero(), |a, b| &a + &b)
    }

    /// The class of a smooth projective atom; built-in names are rewritten.
    pub fn atom(name: &str) -> Self {
        match builtin_projective(name) {
            Some(n) => Self::projective(n),
            None => MotiveClass(Poly::term(
                MotiveMonomial { lefschetz: 0, atoms: BTreeMap::from([(name.to_string(), 1)]) },
                1,
            )),
        }
    }

    pub fn poly(&self) -> &Poly<MotiveMonomial> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow(&self, n: u32) -> Self {
        MotiveClass(self.0.pow(n))
    }

    /// Atom symbols occurring with nonzero coefficient.
    pub fn atoms(&self) -> Vec<String> {
        let mut names: Vec<String> = self.0.terms().flat_map(|(m, _)| m.atoms.keys().cloned()).collect();
        names.sort();
        names.dedup();
        names
    }

    /// Explicit term list, for machine-readable output.
    pub fn to_terms(&self) -> Vec<ClassTerm> {
        self.0.terms().rev().map(|(m, c)| ClassTerm { coeff: c.to_string(), monomial: m.clone() }).collect()
    }

    pub fn from_terms(terms: &[ClassTerm]) -> Result<Self> {
        let mut p = Poly::zero();
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let mut m = Self::lefschetz(t.monomial.lefschetz);
            for (a, &e) in &t.monomial.atoms {
                m = &m * &Self::atom(a).pow(e);
            }
            p = &p + &m.0.scale(&c);
        }
        Ok(MotiveClass(p))
    }
}

/// One `coeff * L^k * atoms` term.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassTerm {
    /// Decimal, to keep arbitrary precision in JSON.
    pub coeff: String,
    #[serde(flatten)]
    pub monomial: MotiveMonomial,
}

impl std::ops::Add for &MotiveClass {
    type Output = MotiveClass;
    fn add(self, rhs: &MotiveClass) -> MotiveClass {
        MotiveClass(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &MotiveClass {
    type Output = MotiveClass;
    fn sub(self, rhs: &MotiveClass) -> MotiveClass {
        MotiveClass(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &MotiveClass {
    type Output = MotiveClass;
    fn mul(self, rhs: &MotiveClass) -> MotiveClass {
        MotiveClass(&self.0 * &rhs.0)
    }
}

impl std::ops::Neg for &MotiveClass {
    type Output = MotiveClass;
    fn neg(self) -> MotiveClass {
        MotiveClass(-&self.0)
    }
}

impl fmt::Display for MotiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses the printed form, e.g. `L^2*K3 - 2L + 1`. Built-in atom names
/// are accepted and rewritten.
impl FromStr for MotiveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |at: usize, what: &str| Error::Parse(format!("class `{s}` at column {}: {what}", at + 1));
        let b = s.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < b.len() && b[*i] == b' ' {
                *i += 1;
            }
        };
        let mut total = MotiveClass::zero();
        let mut first = true;
        loop {
            skip_ws(&mut i);
            let mut negative = false;
            if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
                negative = b[i] == b'-';
                i += 1;
                skip_ws(&mut i);
            } else if !first {
                return Err(err(i, "expected `+` or `-`"));
            }
            first = false;
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mut term = if i > start {
                MotiveClass(Poly::constant(s[start..i].parse::<BigInt>().map_err(|_| err(start, "bad integer"))?))
            } else {
                MotiveClass::one()
            };
            let had_coeff = i > start;
            let mut expect_factor = !had_coeff;
            if had_coeff && i < b.len() && b[i] == b'*' {
                i += 1;
                expect_factor = true;
            }
            loop {
                if i < b.len() && (b[i].is_ascii_alphabetic() || b[i] == b'_') {
                    let name_start = i;
                    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                        i += 1;
                    }
                    let name = &s[name_start..i];
                    let mut e = 1u32;
                    if i < b.len() && b[i] == b'^' {
                        i += 1;
                        let es = i;
                        while i < b.len() && b[i].is_ascii_digit() {
                            i += 1;
                        }
                        e = s[es..i].parse().map_err(|_| err(es, "bad exponent"))?;
                    }
                    let factor = if name == "L" { MotiveClass::lefschetz(1) } else { MotiveClass::atom(name) };
                    term = &term * &factor.pow(e);
                    if i < b.len() && b[i] == b'*' {
                        i += 1;
                        continue;
                    }
                    break;
                } else if expect_factor {
                    return Err(err(i, "expected a factor"));
                } else {
                    break;
                }
            }
            total = if negative { &total - &term } else { &total + &term };
            skip_ws(&mut i);
            if i == b.len() {
                return Ok(total);
            }
        }
    }
}
