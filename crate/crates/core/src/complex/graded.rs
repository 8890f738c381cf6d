use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::abelian::{AbMorphism, DirectSum, FinAbGroup, IntMatrix, ZERO_GROUP};
use crate::error::{Error, Result};

/// A finitely supported family `n -> G_n` of finitely generated abelian
/// groups, e.g. the integral cohomology of a variety.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedGroup {
    groups: BTreeMap<i32, FinAbGroup>,
}

impl GradedGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn concentrated(degree: i32, group: FinAbGroup) -> Self {
        Self::from_pairs([(degree, group)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, FinAbGroup)>) -> Self {
        let mut g = Self::zero();
        for (n, x) in pairs {
            g.set(n, x);
        }
        g
    }

    /// Free groups of the given ranks in degrees `0, 1, 2, ...`.
    pub fn from_ranks(ranks: &[usize]) -> Self {
        Self::from_pairs(ranks.iter().enumerate().map(|(n, &r)| (n as i32, FinAbGroup::free(r))))
    }

    pub fn get(&self, degree: i32) -> &FinAbGroup {
        self.groups.get(&degree).unwrap_or(&ZERO_GROUP)
    }

    pub fn set(&mut self, degree: i32, group: FinAbGroup) {
        if group.is_zero() {
            self.groups.remove(&degree);
        } else {
            self.groups.insert(degree, group);
        }
    }

    /// Degrees carrying a nonzero group.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.groups.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &FinAbGroup)> {
        self.groups.iter().map(|(&n, g)| (n, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// `n -> G_{n - k}`.
    pub fn shift_degrees(&self, k: i32) -> GradedGroup {
        GradedGroup { groups: self.groups.iter().map(|(&n, g)| (n + k, g.clone())).collect() }
    }

    pub fn sum(&self, other: &GradedGroup) -> GradedGroup {
        let degrees: BTreeSet<i32> = self.degrees().chain(other.degrees()).collect();
        Self::from_pairs(degrees.into_iter().map(|n| (n, self.get(n).sum(other.get(n)))))
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.groups.keys().next_back().copied()
    }

    /// Ranks in degrees `0..=top`, an empty vector for the zero group.
    /// Negative degrees are ignored.
    pub fn betti_numbers(&self) -> Vec<usize> {
        match self.top_degree() {
            Some(top) if top >= 0 => (0..=top).map(|n| self.get(n).rank()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(n, g)| if n.rem_euclid(2) == 0 { g.rank() as i64 } else { -(g.rank() as i64) }).sum()
    }
}

impl fmt::Debug for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(n, g)| format!("H^{n} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A degree-preserving family of homomorphisms between graded groups.
/// Degrees without an entry carry the zero map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMorphism {
    source: GradedGroup,
    target: GradedGroup,
    maps: BTreeMap<i32, AbMorphism>,
}

impl GradedMorphism {
    pub fn new(source: GradedGroup, target: GradedGroup, maps: BTreeMap<i32, AbMorphism>) -> Result<Self> {
        for (n, f) in &maps {
            if f.source() != source.get(*n) || f.target() != target.get(*n) {
                return Err(Error::InvalidMorphism(format!(
                    "degree {n}: map {} -> {} does not match {} -> {}",
                    f.source(),
                    f.target(),
                    source.get(*n),
                    target.get(*n)
                )));
            }
        }
        let maps = maps.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        Ok(GradedMorphism { source, target, maps })
    }

    /// Builds the morphism from per-degree matrices on canonical generators.
    pub fn from_matrices(
        source: GradedGroup,
        target: GradedGroup,
        matrices: BTreeMap<i32, IntMatrix>,
    ) -> Result<Self> {
        let mut maps = BTreeMap::new();
        for (n, m) in matrices {
            let f = AbMorphism::new(source.get(n).clone(), target.get(n).clone(), m)
                .map_err(|e| Error::InvalidMorphism(format!("degree {n}: {e}")))?;
            maps.insert(n, f);
        }
        Self::new(source, target, maps)
    }

    pub fn zero(source: &GradedGroup, target: &GradedGroup) -> Self {
        GradedMorphism { source: source.clone(), target: target.clone(), maps: BTreeMap::new() }
    }

    pub fn identity(group: &GradedGroup) -> Self {
        let maps = group.iter().map(|(n, g)| (n, AbMorphism::identity(g))).collect();
        GradedMorphism { source: group.clone(), target: group.clone(), maps }
    }

    pub fn source(&self) -> &GradedGroup {
        &self.source
    }

    pub fn target(&self) -> &GradedGroup {
        &self.target
    }

    pub fn at(&self, degree: i32) -> AbMorphism {
        self.maps
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| AbMorphism::zero(self.source.get(degree), self.target.get(degree)))
    }

    /// Degrees where the map is nonzero.
    pub fn support(&self) -> impl Iterator<Item = (i32, &AbMorphism)> {
        self.maps.iter().map(|(&n, f)| (n, f))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMorphism) -> GradedMorphism {
        assert_eq!(inner.target, self.source, "composing graded morphisms with mismatched groups");
        let maps = inner
            .maps
            .iter()
            .filter_map(|(n, g)| self.maps.get(n).map(|f| (*n, f.compose(g))))
            .collect();
        GradedMorphism::new(inner.source.clone(), self.target.clone(), maps).expect("composite")
    }

    pub fn add(&self, other: &GradedMorphism) -> GradedMorphism {
        assert!(self.source == other.source && self.target == other.target, "adding mismatched graded morphisms");
        let mut maps = self.maps.clone();
        for (n, g) in &other.maps {
            let sum = match maps.remove(n) {
                Some(f) => f.add(g),
                None => g.clone(),
            };
            maps.insert(*n, sum);
        }
        GradedMorphism::new(self.source.clone(), self.target.clone(), maps).expect("sum")
    }

    pub fn scale(&self, factor: i64) -> GradedMorphism {
        let factor = BigInt::from(factor);
        let maps = self.maps.iter().map(|(&n, f)| (n, f.scale(&factor))).collect();
        GradedMorphism::new(self.source.clone(), self.target.clone(), maps).expect("multiple")
    }

    pub fn neg(&self) -> GradedMorphism {
        self.scale(-1)
    }
}

/// Degreewise direct sum of graded groups, with structure maps.
#[derive(Clone, Debug)]
pub(crate) struct GradedSum {
    pub group: GradedGroup,
    pub sums: BTreeMap<i32, DirectSum>,
    pub parts: Vec<GradedGroup>,
}

impl GradedSum {
    pub fn new(parts: &[GradedGroup]) -> Self {
        let degrees: BTreeSet<i32> = parts.iter().flat_map(|p| p.degrees()).collect();
        let mut sums = BTreeMap::new();
        let mut group = GradedGroup::zero();
        for n in degrees {
            let groups: Vec<FinAbGroup> = parts.iter().map(|p| p.get(n).clone()).collect();
            let s = DirectSum::new(&groups);
            group.set(n, s.group.clone());
            sums.insert(n, s);
        }
        GradedSum { group, sums, parts: parts.to_vec() }
    }

    pub fn injection(&self, k: usize) -> GradedMorphism {
        let maps = self.sums.iter().map(|(&n, s)| (n, s.injections[k].clone())).collect();
        GradedMorphism::new(self.parts[k].clone(), self.group.clone(), maps).expect("injection")
    }

    pub fn projection(&self, k: usize) -> GradedMorphism {
        let maps = self.sums.iter().map(|(&n, s)| (n, s.projections[k].clone())).collect();
        GradedMorphism::new(self.group.clone(), self.parts[k].clone(), maps).expect("projection")
    }
}
