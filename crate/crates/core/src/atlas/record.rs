use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::abelian::FinAbGroup;
use crate::complex::GradedGroup;
use crate::error::{Error, Result};
use crate::motive::Poly;

/// Realization data of a smooth projective atom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomRecord {
    pub name: String,
    pub dim: u32,
    pub components: usize,
    pub cohomology: GradedGroup,
    /// `h^{p,q}`, zero entries omitted.
    pub hodge: BTreeMap<(u32, u32), u64>,
}

impl AtomRecord {
    /// Checks the structural invariants: `H^0 = H^{2d} = Z^components`,
    /// nothing outside `0..=2d`, Hodge numbers symmetric, supported in
    /// `0..=d` and summing to the Betti numbers.
    pub fn new(
        name: &str,
        dim: u32,
        components: usize,
        cohomology: GradedGroup,
        hodge: BTreeMap<(u32, u32), u64>,
    ) -> Result<Self> {
        let bad = |reason: String| Err(Error::InvalidAtom { atom: name.to_string(), reason });
        if name.is_empty() || name == "L" || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return bad("names are nonempty identifiers other than `L`".into());
        }
        if !name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return bad("names start with a letter".into());
        }
        if components == 0 {
            return bad("at least one connected component".into());
        }
        let top = 2 * dim as i32;
        let ends = FinAbGroup::free(components);
        if cohomology.get(0) != &ends {
            return bad(format!("H^0 = {} but {components} components", cohomology.get(0)));
        }
        if cohomology.get(top) != &ends {
            return bad(format!("H^{top} = {} but {components} components", cohomology.get(top)));
        }
        if let Some(n) = cohomology.degrees().find(|&n| n < 0 || n > top) {
            return bad(format!("cohomology in degree {n} outside 0..={top}"));
        }
        let mut sums: BTreeMap<i32, u64> = BTreeMap::new();
        for (&(p, q), &h) in &hodge {
            if p > dim || q > dim {
                return bad(format!("h^{{{p},{q}}} outside the Hodge diamond"));
            }
            if hodge.get(&(q, p)) != Some(&h) {
                return bad(format!("h^{{{p},{q}}} != h^{{{q},{p}}}"));
            }
            *sums.entry((p + q) as i32).or_default() += h;
        }
        for n in 0..=top {
            let rank = cohomology.get(n).rank() as u64;
            let h = sums.get(&n).copied().unwrap_or(0);
            if h != rank {
                return bad(format!("Hodge numbers in degree {n} sum to {h}, rank H^{n} is {rank}"));
            }
        }
        let hodge = hodge.into_iter().filter(|&(_, h)| h != 0).collect();
        Ok(AtomRecord { name: name.to_string(), dim, components, cohomology, hodge })
    }

    pub fn poincare(&self) -> Poly<u32> {
        let mut p = Poly::zero();
        for (n, g) in self.cohomology.iter() {
            p = &p + &Poly::term(n as u32, g.rank() as i64);
        }
        p
    }

    pub fn hodge_poly(&self) -> Poly<(u32, u32)> {
        let mut p = Poly::zero();
        for (&pq, &h) in &self.hodge {
            p = &p + &Poly::term(pq, BigInt::from(h));
        }
        p
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cohomology.euler_characteristic()
    }
}

fn diamond(entries: &[((u32, u32), u64)]) -> BTreeMap<(u32, u32), u64> {
    entries.iter().copied().collect()
}

fn record(name: &str, dim: u32, groups: Vec<(i32, FinAbGroup)>, hodge: BTreeMap<(u32, u32), u64>) -> AtomRecord {
    AtomRecord::new(name, dim, 1, GradedGroup::from_pairs(groups), hodge).expect("built-in atoms are consistent")
}

/// Built-in atoms: `pt`, `P<n>`, `C<g>` (genus g curve), `E`,
/// `AbelianSurface`, `K3`, `Enriques`.
pub(crate) fn builtin(name: &str) -> Option<AtomRecord> {
    let z = FinAbGroup::free;
    if let Some(n) = crate::motive::builtin_projective(name) {
        if n > 64 {
            return None;
        }
        let groups = (0..=n).map(|i| (2 * i as i32, z(1))).collect();
        return Some(record(name, n, groups, (0..=n).map(|i| ((i, i), 1)).collect()));
    }
    if let Some(g) = name.strip_prefix('C').and_then(|g| g.parse::<u32>().ok()) {
        if name != format!("C{g}") || g > 1000 {
            return None;
        }
        let h = diamond(&[((0, 0), 1), ((1, 0), g as u64), ((0, 1), g as u64), ((1, 1), 1)]);
        return Some(record(name, 1, vec![(0, z(1)), (1, z(2 * g as usize)), (2, z(1))], h));
    }
    Some(match name {
        "E" => record(
            name,
            1,
            vec![(0, z(1)), (1, z(2)), (2, z(1))],
            diamond(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]),
        ),
        "AbelianSurface" => {
            let binom = [1u64, 2, 1];
            let mut h = BTreeMap::new();
            for p in 0..3u32 {
                for q in 0..3u32 {
                    h.insert((p, q), binom[p as usize] * binom[q as usize]);
                }
            }
            record(name, 2, vec![(0, z(1)), (1, z(4)), (2, z(6)), (3, z(4)), (4, z(1))], h)
        }
        "K3" => record(
            name,
            2,
            vec![(0, z(1)), (2, z(22)), (4, z(1))],
            diamond(&[((0, 0), 1), ((2, 0), 1), ((0, 2), 1), ((1, 1), 20), ((2, 2), 1)]),
        ),
        "Enriques" => record(
            name,
            2,
            vec![
                (0, z(1)),
                (2, FinAbGroup::new(10, vec![BigInt::from(2)]).expect("Z^10 + Z/2")),
                (3, FinAbGroup::cyclic(2)),
                (4, z(1)),
            ],
            diamond(&[((0, 0), 1), ((1, 1), 10), ((2, 2), 1)]),
        ),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid() {
        for name in ["pt", "P1", "P2", "P4", "C0", "C3", "E", "AbelianSurface", "K3", "Enriques"] {
            assert!(builtin(name).is_some(), "{name}");
        }
        assert!(builtin("C03").is_none());
        assert!(builtin("Q").is_none());
        assert_eq!(builtin("P2").unwrap().cohomology.betti_numbers(), vec![1, 0, 1, 0, 1]);
        assert_eq!(builtin("K3").unwrap().euler_characteristic(), 24);
        assert_eq!(builtin("Enriques").unwrap().euler_characteristic(), 12);
        let torus = builtin("AbelianSurface").unwrap().hodge_poly();
        let one_plus = |m| &Poly::uv(0, 0, 1) + &Poly::term(m, 1);
        assert_eq!(torus, (&one_plus((1, 0)) * &one_plus((0, 1))).pow(2));
    }

    #[test]
    fn invariants_enforced() {
        let g = GradedGroup::from_ranks(&[1, 0, 1]);
        assert!(AtomRecord::new("X", 1, 1, g.clone(), diamond(&[((0, 0), 1), ((1, 1), 1)])).is_ok());
        assert!(AtomRecord::new("X", 1, 1, g.clone(), diamond(&[((0, 0), 1)])).is_err());
        assert!(AtomRecord::new("X", 2, 1, g.clone(), diamond(&[((0, 0), 1), ((1, 1), 1)])).is_err());
        assert!(AtomRecord::new("L", 1, 1, g.clone(), diamond(&[((0, 0), 1), ((1, 1), 1)])).is_err());
        let asym = GradedGroup::from_ranks(&[1, 1, 1]);
        assert!(AtomRecord::new("X", 1, 1, asym, diamond(&[((0, 0), 1), ((1, 0), 1), ((1, 1), 1)])).is_err());
        let two = GradedGroup::from_ranks(&[2, 0, 2]);
        assert!(AtomRecord::new("X", 1, 2, two, diamond(&[((0, 0), 2), ((1, 1), 2)])).is_ok());
    }
}
