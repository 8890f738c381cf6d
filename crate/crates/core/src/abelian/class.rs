//! The Grothendieck group of finitely generated abelian groups under direct
//! sum, identified with `Z + (sum over primes p of functions N -> Z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::group::FinAbGroup;

/// A virtual group: a rank together with, for each prime `p`, the signed
/// multiplicity `phi_p(n)` of `Z/p^n`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct GroupClass {
    rank: i64,
    primary: BTreeMap<BigUint, BTreeMap<u32, i64>>,
}

impl GroupClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rank(rank: i64) -> Self {
        GroupClass { rank, primary: BTreeMap::new() }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    /// `phi_p(n)`.
    pub fn multiplicity(&self, p: u64, n: u32) -> i64 {
        self.primary.get(&BigUint::from(p)).and_then(|m| m.get(&n)).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.primary.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.primary.is_empty()
    }

    fn add_primary(&mut self, p: BigUint, n: u32, count: i64) {
        let entry = self.primary.entry(p.clone()).or_default();
        let c = entry.entry(n).or_insert(0);
        *c += count;
        if *c == 0 {
            entry.remove(&n);
            if entry.is_empty() {
                self.primary.remove(&p);
            }
        }
    }

    /// Reconstructs the group when the class is effective (all counts
    /// non-negative).
    pub fn to_group(&self) -> Option<FinAbGroup> {
        if self.rank < 0 {
            return None;
        }
        // Primary parts, largest exponent first per prime; the j-th invariant
        // factor from the top collects the j-th largest power of every prime.
        let mut columns: Vec<BigInt> = Vec::new();
        for (p, exps) in &self.primary {
            let mut powers = Vec::new();
            for (&n, &c) in exps.iter().rev() {
                if c < 0 {
                    return None;
                }
                for _ in 0..c {
                    powers.push(BigInt::from(p.clone()).pow(n));
                }
            }
            for (j, q) in powers.into_iter().enumerate() {
                if j == columns.len() {
                    columns.push(BigInt::one());
                }
                columns[j] *= q;
            }
        }
        columns.reverse();
        FinAbGroup::new(self.rank as usize, columns).ok()
    }
}

/// Decomposes the group into its rank and the prime-power orders of its
/// primary cyclic summands.
pub fn group_class(group: &FinAbGroup) -> GroupClass {
    let mut class = GroupClass::from_rank(group.rank() as i64);
    for d in group.torsion() {
        let d = d.magnitude().clone();
        for (p, n) in factorize(&d) {
            class.add_primary(p, n, 1);
        }
    }
    class
}

/// Trial-division factorization; invariant factors arising here are small.
fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while (&n).is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

impl Add for &GroupClass {
    type Output = GroupClass;

    fn add(self, rhs: &GroupClass) -> GroupClass {
        let mut out = self.clone();
        out.rank += rhs.rank;
        for (p, exps) in &rhs.primary {
            for (&n, &c) in exps {
                out.add_primary(p.clone(), n, c);
            }
        }
        out
    }
}

impl Neg for &GroupClass {
    type Output = GroupClass;

    fn neg(self) -> GroupClass {
        GroupClass {
            rank: -self.rank,
            primary: self
                .primary
                .iter()
                .map(|(p, m)| (p.clone(), m.iter().map(|(&n, &c)| (n, -c)).collect()))
                .collect(),
        }
    }
}

impl Sub for &GroupClass {
    type Output = GroupClass;

    fn sub(self, rhs: &GroupClass) -> GroupClass {
        self + &(-rhs)
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank != 0 {
            parts.push(format!("{}[Z]", self.rank));
        }
        for (p, exps) in &self.primary {
            for (&n, &c) in exps {
                let q = if n == 1 { p.to_string() } else { format!("{p}^{n}") };
                parts.push(format!("{c}[Z/{q}]"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
