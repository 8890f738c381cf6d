use std::collections::{BTreeMap, BTreeSet};

use crate::abelian::{group_class, homology_at, AbMorphism, FinAbGroup, GroupClass};
use crate::error::{Error, Result};

use super::graded::{GradedGroup, GradedMorphism, GradedSum};

/// A bounded cochain complex of graded groups,
/// `C^s -> C^{s+1} -> ... -> C^{e-1}`, with degree-preserving differentials.
///
/// Columns are numbered from `start`; everything outside `start..end` is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbComplex {
    start: i32,
    columns: Vec<GradedGroup>,
    differentials: Vec<GradedMorphism>,
}

impl AbComplex {
    /// Checks that consecutive differentials match up and compose to zero in
    /// every degree.
    pub fn new(start: i32, columns: Vec<GradedGroup>, differentials: Vec<GradedMorphism>) -> Result<Self> {
        if differentials.len() + 1 != columns.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} columns need {} differentials, got {}",
                columns.len(),
                columns.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.source() != &columns[i] || d.target() != &columns[i + 1] {
                return Err(Error::InvalidComplex(format!(
                    "differential out of column {} does not match the columns",
                    start + i as i32
                )));
            }
        }
        for (i, w) in differentials.windows(2).enumerate() {
            let dd = w[1].compose(&w[0]);
            let first = dd.support().next().map(|(n, _)| n);
            if let Some(n) = first {
                return Err(Error::NonzeroComposition(format!(
                    "d∘d out of column {} in degree {n}",
                    start + i as i32
                )));
            }
        }
        Ok(AbComplex { start, columns, differentials })
    }

    pub fn zero() -> Self {
        AbComplex { start: 0, columns: Vec::new(), differentials: Vec::new() }
    }

    /// A single column at index 0.
    pub fn single(group: GradedGroup) -> Self {
        AbComplex { start: 0, columns: vec![group], differentials: Vec::new() }
    }

    /// `G --d--> H` in columns 0 and 1.
    pub fn two_term(d: GradedMorphism) -> Self {
        let cols = vec![d.source().clone(), d.target().clone()];
        AbComplex { start: 0, columns: cols, differentials: vec![d] }
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    /// One past the last column.
    pub fn end(&self) -> i32 {
        self.start + self.columns.len() as i32
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> impl Iterator<Item = (i32, &GradedGroup)> {
        self.columns.iter().enumerate().map(move |(k, g)| (self.start + k as i32, g))
    }

    pub fn column(&self, i: i32) -> GradedGroup {
        self.index(i).map(|k| self.columns[k].clone()).unwrap_or_default()
    }

    /// The differential `C^i -> C^{i+1}` (zero outside the complex).
    pub fn differential(&self, i: i32) -> GradedMorphism {
        match self.index(i) {
            Some(k) if k < self.differentials.len() => self.differentials[k].clone(),
            _ => GradedMorphism::zero(&self.column(i), &self.column(i + 1)),
        }
    }

    fn index(&self, i: i32) -> Option<usize> {
        (i >= self.start && i < self.end()).then(|| (i - self.start) as usize)
    }

    /// Every degree in which some column is nonzero.
    pub fn degrees(&self) -> BTreeSet<i32> {
        self.columns.iter().flat_map(|g| g.degrees()).collect()
    }

    /// Smallest column range containing every nonzero column.
    pub fn support(&self) -> Option<(i32, i32)> {
        let nonzero: Vec<i32> = self.columns().filter(|(_, g)| !g.is_zero()).map(|(i, _)| i).collect();
        Some((*nonzero.first()?, *nonzero.last()?))
    }

    /// `shift(C, k)^i = C^{i+k}`, with the differential negated for odd `k`.
    pub fn shift(&self, k: i32) -> AbComplex {
        let differentials =
            if k.rem_euclid(2) == 1 { self.differentials.iter().map(|d| d.neg()).collect() } else { self.differentials.clone() };
        AbComplex { start: self.start - k, columns: self.columns.clone(), differentials }
    }

    /// Homology of every column in every degree; only nonzero groups are
    /// listed, keyed by `(column, degree)`.
    pub fn homology(&self) -> BTreeMap<(i32, i32), FinAbGroup> {
        let mut out = BTreeMap::new();
        for n in self.degrees() {
            for i in self.start..self.end() {
                let h = homology_at(&self.differential(i - 1).at(n), &self.differential(i).at(n))
                    .expect("d∘d = 0 was checked on construction");
                if !h.is_zero() {
                    out.insert((i, n), h);
                }
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_empty()
    }

    /// The `E_2` page of the spectral sequence whose `E_1` rows are the
    /// degree-`n` rows of this complex: entry `(i, n)` is the homology at
    /// column `i` of row `n`.
    pub fn e2_page(&self) -> E2Page {
        E2Page { entries: self.homology() }
    }

    /// `χ(C) = Σ (-1)^i [C^i]`, degree by degree, in the Grothendieck group
    /// of finitely generated abelian groups. Zero classes are omitted.
    pub fn euler_chi(&self) -> BTreeMap<i32, GroupClass> {
        let mut out: BTreeMap<i32, GroupClass> = BTreeMap::new();
        for (i, col) in self.columns() {
            for (n, g) in col.iter() {
                let c = group_class(g);
                let e = out.entry(n).or_default();
                *e = if i.rem_euclid(2) == 0 { &*e + &c } else { &*e - &c };
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Termwise direct sum, together with the inclusion and projection chain
    /// maps of each summand.
    pub fn direct_sum(parts: &[&AbComplex]) -> (AbComplex, Vec<ChainMap>, Vec<ChainMap>) {
        if parts.is_empty() {
            return (AbComplex::zero(), Vec::new(), Vec::new());
        }
        let start = parts.iter().map(|c| c.start).min().unwrap_or(0);
        let end = parts.iter().map(|c| c.end()).max().unwrap_or(0).max(start);
        let mut blocks = BlockComplex::new(start);
        for i in start..end {
            blocks.push_column(parts.iter().map(|c| c.column(i)).collect());
            for (k, c) in parts.iter().enumerate() {
                blocks.arrow(i, k, k, c.differential(i));
            }
        }
        let assembled = blocks.assemble().expect("direct sum of complexes");
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for (k, c) in parts.iter().enumerate() {
            let inj = (start..end).map(|i| (i, assembled.injection(i, k))).collect();
            let proj = (start..end).map(|i| (i, assembled.projection(i, k))).collect();
            injections.push(ChainMap::new((*c).clone(), assembled.complex.clone(), inj).expect("inclusion"));
            projections.push(ChainMap::new(assembled.complex.clone(), (*c).clone(), proj).expect("projection"));
        }
        (assembled.complex, injections, projections)
    }

    /// The rows of the complex in one degree.
    pub fn row(&self, degree: i32) -> (Vec<FinAbGroup>, Vec<AbMorphism>) {
        let groups = self.columns.iter().map(|g| g.get(degree).clone()).collect();
        let maps = self.differentials.iter().map(|d| d.at(degree)).collect();
        (groups, maps)
    }
}

/// `E_2^{i,n}` entries, nonzero only.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct E2Page {
    pub entries: BTreeMap<(i32, i32), FinAbGroup>,
}

impl E2Page {
    pub fn get(&self, i: i32, n: i32) -> FinAbGroup {
        self.entries.get(&(i, n)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A morphism of complexes `f: X -> Y`, given column by column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    source: AbComplex,
    target: AbComplex,
    components: BTreeMap<i32, GradedMorphism>,
}

impl ChainMap {
    /// Checks that every component has the right endpoints and that
    /// `d_Y f_i = f_{i+1} d_X` in every column.
    pub fn new(source: AbComplex, target: AbComplex, components: BTreeMap<i32, GradedMorphism>) -> Result<Self> {
        for (&i, f) in &components {
            if f.source() != &source.column(i) || f.target() != &target.column(i) {
                return Err(Error::NotChainMap(format!("component in column {i} has the wrong endpoints")));
            }
        }
        let components: BTreeMap<i32, GradedMorphism> =
            components.into_iter().filter(|(_, f)| !f.is_zero()).collect();
        let map = ChainMap { source, target, components };
        let lo = map.source.start.min(map.target.start) - 1;
        let hi = map.source.end().max(map.target.end());
        for i in lo..hi {
            let lhs = map.target.differential(i).compose(&map.component(i));
            let rhs = map.component(i + 1).compose(&map.source.differential(i));
            if lhs != rhs {
                let n = lhs.add(&rhs.neg()).support().next().map(|(n, _)| n).unwrap_or_default();
                return Err(Error::NotChainMap(format!("square out of column {i} fails to commute in degree {n}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &AbComplex) -> Self {
        let components = c.columns().map(|(i, g)| (i, GradedMorphism::identity(g))).collect();
        ChainMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn zero(source: &AbComplex, target: &AbComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), components: BTreeMap::new() }
    }

    pub fn source(&self) -> &AbComplex {
        &self.source
    }

    pub fn target(&self) -> &AbComplex {
        &self.target
    }

    pub fn component(&self, i: i32) -> GradedMorphism {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| GradedMorphism::zero(&self.source.column(i), &self.target.column(i)))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> ChainMap {
        assert_eq!(inner.target, self.source, "composing chain maps with mismatched complexes");
        let components = inner
            .components
            .iter()
            .map(|(&i, g)| (i, self.component(i).compose(g)))
            .collect();
        ChainMap::new(inner.source.clone(), self.target.clone(), components).expect("composite of chain maps")
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert!(self.source == other.source && self.target == other.target);
        let idx: BTreeSet<i32> = self.components.keys().chain(other.components.keys()).copied().collect();
        let components = idx.into_iter().map(|i| (i, self.component(i).add(&other.component(i)))).collect();
        ChainMap::new(self.source.clone(), self.target.clone(), components).expect("sum of chain maps")
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.iter().map(|(&i, f)| (i, f.neg())).collect(),
        }
    }

    /// Mapping cone: column `n` is `X^{n+1} + Y^n`, with differential
    /// `(x, y) -> (-d x, f(x) + d y)`.
    pub fn cone(&self) -> AbComplex {
        let (x, y) = (&self.source, &self.target);
        if x.is_empty() && y.is_empty() {
            return AbComplex::zero();
        }
        let (start, end) = match (x.is_empty(), y.is_empty()) {
            (true, _) => (y.start, y.end()),
            (_, true) => (x.start - 1, x.end() - 1),
            _ => ((x.start - 1).min(y.start), (x.end() - 1).max(y.end())),
        };
        let mut blocks = BlockComplex::new(start);
        for n in start..end {
            blocks.push_column(vec![x.column(n + 1), y.column(n)]);
            blocks.arrow(n, 0, 0, x.differential(n + 1).neg());
            blocks.arrow(n, 0, 1, self.component(n + 1));
            blocks.arrow(n, 1, 1, y.differential(n));
        }
        blocks.assemble().expect("the cone of a chain map is a complex").complex
    }
}

/// A complex described by summands in each column and arrows between them;
/// assembling it normalizes each column.
pub(crate) struct BlockComplex {
    start: i32,
    summands: Vec<Vec<GradedGroup>>,
    // (column, from summand, to summand in the next column, map)
    arrows: Vec<(i32, usize, usize, GradedMorphism)>,
}

pub(crate) struct Assembled {
    pub complex: AbComplex,
    pub sums: Vec<GradedSum>,
    start: i32,
}

impl Assembled {
    pub fn injection(&self, column: i32, k: usize) -> GradedMorphism {
        self.sums[(column - self.start) as usize].injection(k)
    }

    pub fn projection(&self, column: i32, k: usize) -> GradedMorphism {
        self.sums[(column - self.start) as usize].projection(k)
    }
}

impl BlockComplex {
    pub fn new(start: i32) -> Self {
        BlockComplex { start, summands: Vec::new(), arrows: Vec::new() }
    }

    pub fn push_column(&mut self, summands: Vec<GradedGroup>) {
        self.summands.push(summands);
    }

    pub fn arrow(&mut self, column: i32, from: usize, to: usize, map: GradedMorphism) {
        if !map.is_zero() {
            self.arrows.push((column, from, to, map));
        }
    }

    pub fn assemble(self) -> Result<Assembled> {
        let sums: Vec<GradedSum> = self.summands.iter().map(|s| GradedSum::new(s)).collect();
        let columns: Vec<GradedGroup> = sums.iter().map(|s| s.group.clone()).collect();
        let mut differentials = Vec::new();
        for c in 0..columns.len().saturating_sub(1) {
            let (src, dst) = (&sums[c], &sums[c + 1]);
            let mut maps: BTreeMap<i32, AbMorphism> = BTreeMap::new();
            for (col, from, to, f) in &self.arrows {
                if (*col - self.start) as usize != c {
                    continue;
                }
                if f.source() != &src.parts[*from] || f.target() != &dst.parts[*to] {
                    return Err(Error::InvalidComplex(format!("block map out of column {col} has wrong endpoints")));
                }
                for (n, g) in f.support() {
                    let piece = dst.sums[&n].injections[*to].compose(&g.compose(&src.sums[&n].projections[*from]));
                    let sum = match maps.remove(&n) {
                        Some(m) => m.add(&piece),
                        None => piece,
                    };
                    maps.insert(n, sum);
                }
            }
            differentials.push(GradedMorphism::new(columns[c].clone(), columns[c + 1].clone(), maps)?);
        }
        let complex = AbComplex::new(self.start, columns, differentials)?;
        Ok(Assembled { complex, sums, start: self.start })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntMatrix;

    fn z_at0() -> GradedGroup {
        GradedGroup::concentrated(0, FinAbGroup::free(1))
    }

    fn times(k: i64) -> GradedMorphism {
        GradedMorphism::from_matrices(z_at0(), z_at0(), BTreeMap::from([(0, IntMatrix::from_rows(&[vec![k]]))]))
            .unwrap()
    }

    fn point() -> AbComplex {
        AbComplex::single(z_at0())
    }

    #[test]
    fn rejects_nonzero_square() {
        let c = AbComplex::new(0, vec![z_at0(), z_at0(), z_at0()], vec![times(1), times(1)]);
        assert!(matches!(c, Err(Error::NonzeroComposition(_))));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = ChainMap::identity(&point()).cone();
        assert_eq!((c.start(), c.end()), (-1, 1));
        assert!(c.is_acyclic());
        assert!(c.euler_chi().is_empty());
    }

    #[test]
    fn cone_of_zero_map() {
        let x = AbComplex::two_term(times(3));
        let y = point();
        let c = ChainMap::zero(&x, &y).cone();
        let (sum, _, _) = AbComplex::direct_sum(&[&x.shift(1), &y]);
        assert_eq!(c, sum);
    }

    #[test]
    fn cone_of_times_two() {
        let f = ChainMap::new(point(), point(), BTreeMap::from([(0, times(2))])).unwrap();
        let c = f.cone();
        let h = c.homology();
        assert_eq!(h.len(), 1);
        assert_eq!(h[&(0, 0)], FinAbGroup::cyclic(2));
    }

    #[test]
    fn non_chain_map_rejected() {
        let x = AbComplex::two_term(times(1));
        let comps = BTreeMap::from([(0, times(1))]);
        assert!(matches!(ChainMap::new(x.clone(), x, comps), Err(Error::NotChainMap(_))));
    }

    #[test]
    fn shift_round_trip_and_chi() {
        let c = AbComplex::new(0, vec![z_at0(), z_at0()], vec![times(2)]).unwrap();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        let chi = c.euler_chi();
        let chi1 = c.shift(1).euler_chi();
        for (n, x) in &chi {
            assert_eq!(&chi1[n], &-x);
        }
        // ranks 1 - 1 = 0 but the torsion class does not appear: χ lives in
        // the Grothendieck group of groups, not of homology.
        assert!(chi.is_empty());
    }

    #[test]
    fn times_two_homology() {
        let c = AbComplex::two_term(times(2));
        let h = c.homology();
        assert_eq!(h.get(&(0, 0)), None);
        assert_eq!(h[&(1, 0)], FinAbGroup::cyclic(2));
    }

    #[test]
    fn euler_chi_counts_ranks() {
        let g3 = GradedGroup::concentrated(0, FinAbGroup::free(3));
        let d = GradedMorphism::zero(&g3, &z_at0());
        let c = AbComplex::two_term(d);
        assert_eq!(c.euler_chi()[&0].rank(), 2);
        let single = AbComplex::single(GradedGroup::concentrated(2, FinAbGroup::free(2)));
        assert_eq!(single.euler_chi()[&2].rank(), 2);
    }

    #[test]
    fn e2_of_single_column() {
        let g = GradedGroup::from_pairs([(0, FinAbGroup::free(1)), (3, FinAbGroup::cyclic(2))]);
        let e2 = AbComplex::single(g.clone()).e2_page();
        assert_eq!(e2.get(0, 0), *g.get(0));
        assert_eq!(e2.get(0, 3), *g.get(3));
    }
}
