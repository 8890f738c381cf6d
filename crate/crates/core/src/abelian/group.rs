//! Finitely generated abelian groups in invariant-factor form and the
//! homomorphisms between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::smith::smith;
use crate::error::{Error, Result};

/// Isomorphism type `Z^rank + Z/d_1 + ... + Z/d_t` with `d_1 | d_2 | ... | d_t`
/// and every `d_j >= 2`.
///
/// The canonical generators are the free ones first, then the torsion
/// generators by increasing invariant factor. Every matrix in this crate acts
/// on generators in that order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FinAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

pub(crate) static ZERO_GROUP: FinAbGroup = FinAbGroup::zero();

impl FinAbGroup {
    pub const fn zero() -> Self {
        FinAbGroup { rank: 0, torsion: Vec::new() }
    }

    /// Validates the invariant-factor chain.
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} must be at least 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FinAbGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { rank, torsion: Vec::new() }
    }

    /// `Z/order`, with order 0 meaning `Z` and order 1 the trivial group.
    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_orders(&[order.into()])
    }

    /// `(Z/d)^k`.
    pub fn torsion_power(d: impl Into<BigInt>, k: usize) -> Self {
        let d = d.into();
        Self::from_orders(&vec![d; k])
    }

    /// The isomorphism type of a direct sum of cyclic groups of the given
    /// orders (0 meaning infinite cyclic).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        normalize(orders).group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of each canonical generator, 0 for free generators.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        std::iter::repeat(BigInt::zero()).take(self.rank).chain(self.torsion.iter().cloned()).collect()
    }

    pub fn generator_order(&self, k: usize) -> BigInt {
        if k < self.rank {
            BigInt::zero()
        } else {
            self.torsion[k - self.rank].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// The order of the group, or `None` if it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn free_part(&self) -> FinAbGroup {
        FinAbGroup::free(self.rank)
    }

    /// Isomorphism type of `self + other`.
    pub fn sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_orders(&orders)
    }

    /// Relation matrix: a diagonal with the generator orders.
    pub(crate) fn relation_columns(&self) -> IntMatrix {
        let n = self.num_generators();
        let mut r = IntMatrix::zeros(n, self.torsion.len());
        for (j, d) in self.torsion.iter().enumerate() {
            r[(self.rank + j, j)] = d.clone();
        }
        r
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if k == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{k}") });
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Change of coordinates from a direct sum of cyclic groups (the "raw"
/// generators) to the canonical generators of its isomorphism type.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub group: FinAbGroup,
    /// canonical coordinates = `to_canonical * raw coordinates`
    pub to_canonical: IntMatrix,
    /// raw coordinates = `from_canonical * canonical coordinates`
    pub from_canonical: IntMatrix,
}

/// Normalizes `Z/c_1 + ... + Z/c_n` (with `c_i = 0` meaning `Z`).
pub fn normalize(orders: &[BigInt]) -> Normalization {
    let orders: Vec<BigInt> = orders.iter().map(|c| c.abs()).collect();
    let n = orders.len();

    // Fast path: after discarding trivial summands and sorting, the orders
    // already form an invariant-factor chain. Then a permutation suffices.
    let mut free: Vec<usize> = (0..n).filter(|&i| orders[i].is_zero()).collect();
    let mut tors: Vec<usize> = (0..n).filter(|&i| orders[i] > BigInt::one()).collect();
    tors.sort_by(|&a, &b| orders[a].cmp(&orders[b]));
    if tors.windows(2).all(|w| orders[w[1]].is_multiple_of(&orders[w[0]])) {
        let group = FinAbGroup { rank: free.len(), torsion: tors.iter().map(|&i| orders[i].clone()).collect() };
        free.extend(tors);
        let mut to = IntMatrix::zeros(free.len(), n);
        for (k, &i) in free.iter().enumerate() {
            to[(k, i)] = BigInt::one();
        }
        let from = to.transpose();
        return Normalization { group, to_canonical: to, from_canonical: from };
    }

    let snf = smith(&IntMatrix::diagonal(n, n, &orders));
    let d = &snf.diagonal;
    let mut idx: Vec<usize> = (0..n).filter(|&i| d[i].is_zero()).collect();
    let rank = idx.len();
    let tors: Vec<usize> = (0..n).filter(|&i| d[i] > BigInt::one()).collect();
    let torsion = tors.iter().map(|&i| d[i].clone()).collect();
    idx.extend(tors);
    Normalization {
        group: FinAbGroup { rank, torsion },
        to_canonical: snf.u.select_rows(&idx),
        from_canonical: snf.u_inv.select_cols(&idx),
    }
}

/// A homomorphism between groups in canonical form, stored as an integer
/// matrix acting on canonical generators (target generators by source
/// generators). Entries in torsion rows are reduced into `[0, d)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbMorphism {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl AbMorphism {
    /// Checks that the matrix defines a homomorphism: a source generator of
    /// order `d` must be sent to an element killed by `d`.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{} but {} -> {} needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                source,
                target,
                target.num_generators(),
                source.num_generators()
            )));
        }
        let mut matrix = matrix;
        let target_orders = target.generator_orders();
        for (k, t) in target_orders.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for j in 0..matrix.cols() {
                let x = matrix[(k, j)].mod_floor(t);
                matrix[(k, j)] = x;
            }
        }
        for (j, o) in source.generator_orders().iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for (k, t) in target_orders.iter().enumerate() {
                let x = &matrix[(k, j)];
                let ok = if t.is_zero() { x.is_zero() } else { (x * o).is_multiple_of(t) };
                if !ok {
                    return Err(Error::InvalidMorphism(format!(
                        "generator {j} of order {o} in {source} maps to an element of infinite or wrong order in {target}"
                    )));
                }
            }
        }
        Ok(AbMorphism { source, target, matrix })
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        AbMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.num_generators(), source.num_generators()),
        }
    }

    pub fn identity(group: &FinAbGroup) -> Self {
        AbMorphism {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.num_generators()),
        }
    }

    /// Builds a morphism from a matrix written in raw cyclic coordinates on
    /// both sides.
    pub fn from_raw(source: &Normalization, target: &Normalization, raw: &IntMatrix) -> Result<Self> {
        let m = &(&target.to_canonical * raw) * &source.from_canonical;
        AbMorphism::new(source.group.clone(), target.group.clone(), m)
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbMorphism) -> AbMorphism {
        assert_eq!(inner.target, self.source, "composing morphisms with mismatched groups");
        let m = &self.matrix * &inner.matrix;
        AbMorphism::new(inner.source.clone(), self.target.clone(), m).expect("composite of homomorphisms")
    }

    pub fn add(&self, other: &AbMorphism) -> AbMorphism {
        assert!(self.source == other.source && self.target == other.target, "adding morphisms with mismatched groups");
        AbMorphism::new(self.source.clone(), self.target.clone(), &self.matrix + &other.matrix)
            .expect("sum of homomorphisms")
    }

    pub fn neg(&self) -> AbMorphism {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, factor: &BigInt) -> AbMorphism {
        AbMorphism::new(self.source.clone(), self.target.clone(), self.matrix.scale(factor))
            .expect("multiple of a homomorphism")
    }

    pub fn kernel(&self) -> FinAbGroup {
        homology_at(&AbMorphism::zero(&FinAbGroup::zero(), &self.source), self).expect("0 then f is zero")
    }

    pub fn cokernel(&self) -> FinAbGroup {
        homology_at(self, &AbMorphism::zero(&self.target, &FinAbGroup::zero())).expect("f then 0 is zero")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    /// Lattice of integer vectors (in source coordinates) mapped into the
    /// relations of the target, as the columns of a full-column-rank matrix.
    fn kernel_lattice(&self) -> IntMatrix {
        let n = self.source.num_generators();
        let a = self.matrix.hstack(&self.target.relation_columns());
        let k = smith(&a).kernel_basis();
        k.submatrix(0..n, 0..k.cols())
    }
}

/// Direct sum of a list of groups with its canonical injections and
/// projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FinAbGroup,
    pub injections: Vec<AbMorphism>,
    pub projections: Vec<AbMorphism>,
}

impl DirectSum {
    pub fn new(parts: &[FinAbGroup]) -> DirectSum {
        let orders: Vec<BigInt> = parts.iter().flat_map(|g| g.generator_orders()).collect();
        let norm = normalize(&orders);
        let total = orders.len();
        let mut injections = Vec::with_capacity(parts.len());
        let mut projections = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for g in parts {
            let k = g.num_generators();
            let inj = norm.to_canonical.submatrix(0..norm.group.num_generators(), offset..offset + k);
            let proj = norm.from_canonical.submatrix(offset..offset + k, 0..norm.group.num_generators());
            injections.push(AbMorphism::new(g.clone(), norm.group.clone(), inj).expect("injection into a sum"));
            projections.push(AbMorphism::new(norm.group.clone(), g.clone(), proj).expect("projection out of a sum"));
            offset += k;
        }
        debug_assert_eq!(offset, total);
        DirectSum { group: norm.group, injections, projections }
    }

    /// Morphism between two direct sums given by its blocks;
    /// `block(j, k)` maps summand `k` of `self` to summand `j` of `target`.
    pub fn morphism_to(
        &self,
        target: &DirectSum,
        mut block: impl FnMut(usize, usize) -> Option<AbMorphism>,
    ) -> AbMorphism {
        let mut m = AbMorphism::zero(&self.group, &target.group);
        for (k, proj) in self.projections.iter().enumerate() {
            for (j, inj) in target.injections.iter().enumerate() {
                if let Some(b) = block(j, k) {
                    m = m.add(&inj.compose(&b.compose(proj)));
                }
            }
        }
        m
    }
}

/// Isomorphism type of `ker f / im g` for `A --g--> G --f--> B`.
pub fn homology_at(g: &AbMorphism, f: &AbMorphism) -> Result<FinAbGroup> {
    if g.target != f.source {
        return Err(Error::InvalidMorphism(format!("{} is not {}", g.target, f.source)));
    }
    if !f.compose(g).is_zero() {
        return Err(Error::NonzeroComposition("f ∘ g".into()));
    }
    let middle = &f.source;
    let kernel = f.kernel_lattice();
    let rank = kernel.cols();
    if rank == 0 {
        return Ok(FinAbGroup::zero());
    }
    // Boundaries: the image of g plus the relations of the middle group.
    let boundaries = g.matrix.hstack(&middle.relation_columns());
    let solver = smith(&kernel);
    let mut coords = IntMatrix::zeros(rank, boundaries.cols());
    for j in 0..boundaries.cols() {
        let z = solver.solve(&boundaries.column(j)).expect("boundaries lie in the kernel");
        for (i, zi) in z.into_iter().enumerate() {
            coords[(i, j)] = zi;
        }
    }
    let snf = smith(&coords);
    let orders: Vec<BigInt> =
        (0..rank).map(|i| snf.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero)).collect();
    Ok(FinAbGroup::from_orders(&orders))
}
