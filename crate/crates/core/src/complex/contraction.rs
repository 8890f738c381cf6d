use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{solve_integer, AbMorphism, FinAbGroup, IntMatrix};

use super::chain::AbComplex;
use super::graded::GradedMorphism;

/// A contracting homotopy: maps `h^i : C^i -> C^{i-1}` with
/// `d h + h d = id` on every column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homotopy {
    components: BTreeMap<i32, GradedMorphism>,
}

impl Homotopy {
    /// `h^i`, zero when absent.
    pub fn component(&self, complex: &AbComplex, i: i32) -> GradedMorphism {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| GradedMorphism::zero(&complex.column(i), &complex.column(i - 1)))
    }

    pub fn components(&self) -> impl Iterator<Item = (i32, &GradedMorphism)> {
        self.components.iter().map(|(&i, h)| (i, h))
    }

    /// Rechecks `d^{i-1} h^i + h^{i+1} d^i = id` on every column.
    pub fn verify(&self, complex: &AbComplex) -> bool {
        complex.columns().all(|(i, col)| {
            let dh = complex.differential(i - 1).compose(&self.component(complex, i));
            let hd = self.component(complex, i + 1).compose(&complex.differential(i));
            dh.add(&hd) == GradedMorphism::identity(col)
        })
    }
}

/// Why no contracting homotopy exists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Obstruction {
    /// The complex is not acyclic; the first nonzero homology group found.
    NonzeroHomology { column: i32, degree: i32, group: FinAbGroup },
    /// Acyclic, but the row in this degree does not split at this column,
    /// e.g. `0 -> Z -> Z -> Z/2 -> 0`.
    NotContractible { column: i32, degree: i32 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NonzeroHomology { column, degree, group } => {
                write!(f, "nonzero homology {group} at column {column}, degree {degree}")
            }
            Obstruction::NotContractible { column, degree } => {
                write!(f, "acyclic but not contractible at column {column}, degree {degree}")
            }
        }
    }
}

impl std::error::Error for Obstruction {}

/// Finds a contracting homotopy, or the first obstruction to one.
///
/// Each degree is solved separately, from the top column down: `h^{e}` is
/// zero, and `h^i` is any lift of `id - h^{i+1} d^i` through `d^{i-1}`.
/// For a split exact row the target of that lift lies in `im d^{i-1}` and
/// the lift exists, so failure means the row does not split.
pub fn find_contraction(complex: &AbComplex) -> Result<Homotopy, Obstruction> {
    if let Some((&(column, degree), group)) = complex.homology().iter().next() {
        return Err(Obstruction::NonzeroHomology { column, degree, group: group.clone() });
    }
    let mut per_column: BTreeMap<i32, BTreeMap<i32, AbMorphism>> = BTreeMap::new();
    for n in complex.degrees() {
        let mut above: Option<AbMorphism> = None;
        for i in (complex.start()..complex.end()).rev() {
            let here = complex.column(i).get(n).clone();
            let d_out = complex.differential(i).at(n);
            let d_in = complex.differential(i - 1).at(n);
            let rest = match &above {
                Some(h) => AbMorphism::identity(&here).add(&h.compose(&d_out).neg()),
                None => AbMorphism::identity(&here),
            };
            let h = lift_through(&d_in, &rest).ok_or(Obstruction::NotContractible { column: i, degree: n })?;
            if !h.is_zero() {
                per_column.entry(i).or_default().insert(n, h.clone());
            }
            above = Some(h);
        }
    }
    let components = per_column
        .into_iter()
        .map(|(i, maps)| {
            let h = GradedMorphism::new(complex.column(i), complex.column(i - 1), maps).expect("homotopy components");
            (i, h)
        })
        .collect();
    Ok(Homotopy { components })
}

/// Some homomorphism `h` with `d ∘ h = x`, where `d : B -> C` and
/// `x : C -> C`.
///
/// For a source generator of order `o` with image column `r`, solves
/// `o·u = R_B y` (so `u` is a valid image) and `D u + R_C z = r`.
fn lift_through(d: &AbMorphism, x: &AbMorphism) -> Option<AbMorphism> {
    let (b, c) = (d.source(), d.target());
    let (nb, nc) = (b.num_generators(), c.num_generators());
    let rb = b.relation_columns();
    let rc = c.relation_columns();
    let mut h = IntMatrix::zeros(nb, x.source().num_generators());
    for (s, o) in x.source().generator_orders().iter().enumerate() {
        let rhs = x.matrix().column(s);
        if rhs.iter().all(Zero::is_zero) {
            continue;
        }
        let (tb, tc) = (rb.cols(), rc.cols());
        let mut system = IntMatrix::zeros(nb + nc, nb + tb + tc);
        system.set_block(0, 0, &IntMatrix::identity(nb).scale(o));
        system.set_block(0, nb, &rb.scale(&BigInt::from(-1)));
        system.set_block(nb, 0, d.matrix());
        system.set_block(nb, nb + tb, &rc);
        let mut full = vec![BigInt::zero(); nb];
        full.extend(rhs);
        let sol = solve_integer(&system, &full)?;
        for k in 0..nb {
            h[(k, s)] = sol[k].clone();
        }
    }
    Some(AbMorphism::new(x.source().clone(), b.clone(), h).expect("lift satisfies the order relations"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{ChainMap, GradedGroup};

    fn z() -> GradedGroup {
        GradedGroup::concentrated(0, FinAbGroup::free(1))
    }

    fn mul(k: i64, a: &GradedGroup, b: &GradedGroup) -> GradedMorphism {
        GradedMorphism::from_matrices(a.clone(), b.clone(), BTreeMap::from([(0, IntMatrix::from_rows(&[vec![k]]))]))
            .unwrap()
    }

    #[test]
    fn identity_cone_contracts() {
        let c = AbComplex::two_term(GradedMorphism::identity(&z()));
        let h = find_contraction(&c).unwrap();
        assert!(h.verify(&c));
        let cone = ChainMap::identity(&c).cone();
        assert!(find_contraction(&cone).unwrap().verify(&cone));
    }

    #[test]
    fn torsion_identity_contracts() {
        let t = GradedGroup::concentrated(2, FinAbGroup::cyclic(6));
        let c = AbComplex::two_term(GradedMorphism::identity(&t));
        assert!(find_contraction(&c).unwrap().verify(&c));
    }

    #[test]
    fn homology_is_reported() {
        let c = AbComplex::two_term(mul(2, &z(), &z()));
        match find_contraction(&c) {
            Err(Obstruction::NonzeroHomology { column: 1, degree: 0, group }) => {
                assert_eq!(group, FinAbGroup::cyclic(2))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn acyclic_but_not_split() {
        let t = GradedGroup::concentrated(0, FinAbGroup::cyclic(2));
        let c = AbComplex::new(0, vec![z(), z(), t.clone()], vec![mul(2, &z(), &z()), mul(1, &z(), &t)]).unwrap();
        assert!(c.is_acyclic());
        assert!(matches!(find_contraction(&c), Err(Obstruction::NotContractible { degree: 0, .. })));
    }

    #[test]
    fn split_torsion_sequence() {
        // 0 -> Z/2 -> Z/2 + Z/3 -> Z/3 -> 0 splits.
        let a = GradedGroup::concentrated(0, FinAbGroup::cyclic(2));
        let b = GradedGroup::concentrated(0, FinAbGroup::cyclic(6));
        let c3 = GradedGroup::concentrated(0, FinAbGroup::cyclic(3));
        let c = AbComplex::new(0, vec![a.clone(), b.clone(), c3.clone()], vec![mul(3, &a, &b), mul(1, &b, &c3)]).unwrap();
        assert!(find_contraction(&c).unwrap().verify(&c));
    }
}
