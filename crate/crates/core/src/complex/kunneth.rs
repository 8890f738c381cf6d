//! Künneth formula for graded groups, with the chosen splitting
//! `(A ⊗ B)^n = ⊕_{p+q=n} A^p ⊗ B^q ⊕ ⊕_{p+q=n+1} Tor(A^p, B^q)`
//! made functorial in both arguments.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{normalize, AbMorphism, FinAbGroup, IntMatrix, Normalization};

use super::bicomplex::Bicomplex;
use super::chain::AbComplex;
use super::graded::{GradedGroup, GradedMorphism};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Piece {
    Tensor,
    Tor,
}

/// Raw cyclic decomposition of one degree of `A ⊗ B`.
struct Layout {
    // (kind, p, q, offset into the raw generator list)
    pieces: Vec<(Piece, i32, i32, usize)>,
    norm: Normalization,
}

fn gcd0(a: &BigInt, b: &BigInt) -> BigInt {
    // gcd with the convention that order 0 (free) is absorbing for nothing:
    // gcd(0, b) = b.
    a.gcd(b)
}

fn torsion_indices(g: &FinAbGroup) -> std::ops::Range<usize> {
    g.rank()..g.num_generators()
}

fn layouts(a: &GradedGroup, b: &GradedGroup) -> BTreeMap<i32, Layout> {
    let mut degrees = BTreeSet::new();
    for p in a.degrees() {
        for q in b.degrees() {
            degrees.insert(p + q);
            degrees.insert(p + q - 1);
        }
    }
    let mut out = BTreeMap::new();
    for n in degrees {
        let mut pieces = Vec::new();
        let mut orders: Vec<BigInt> = Vec::new();
        for p in a.degrees() {
            let q = n - p;
            let (ga, gb) = (a.get(p), b.get(q));
            if gb.is_zero() {
                continue;
            }
            pieces.push((Piece::Tensor, p, q, orders.len()));
            let (oa, ob) = (ga.generator_orders(), gb.generator_orders());
            for x in &oa {
                for y in &ob {
                    orders.push(gcd0(x, y));
                }
            }
        }
        for p in a.degrees() {
            let q = n + 1 - p;
            let (ga, gb) = (a.get(p), b.get(q));
            if ga.is_free() || gb.is_free() {
                continue;
            }
            pieces.push((Piece::Tor, p, q, orders.len()));
            for x in ga.torsion() {
                for y in gb.torsion() {
                    orders.push(x.gcd(y));
                }
            }
        }
        let norm = normalize(&orders);
        if !norm.group.is_zero() {
            out.insert(n, Layout { pieces, norm });
        }
    }
    out
}

/// The graded group `H^*(X × Y)` predicted by the Künneth formula from
/// `H^*(X)` and `H^*(Y)`.
pub fn kunneth(a: &GradedGroup, b: &GradedGroup) -> GradedGroup {
    GradedGroup::from_pairs(layouts(a, b).into_iter().map(|(n, l)| (n, l.norm.group)))
}

/// The map `f ⊗ g` induced on Künneth decompositions; block diagonal with
/// respect to the tensor and Tor summands.
pub fn kunneth_map(f: &GradedMorphism, g: &GradedMorphism) -> GradedMorphism {
    let (a, b) = (f.source(), g.source());
    let (a2, b2) = (f.target(), g.target());
    let src = layouts(a, b);
    let dst = layouts(a2, b2);
    let source = kunneth(a, b);
    let target = kunneth(a2, b2);
    let mut maps = BTreeMap::new();
    for (n, ls) in &src {
        let Some(lt) = dst.get(n) else { continue };
        let mut raw = IntMatrix::zeros(lt.norm.to_canonical.cols(), ls.norm.from_canonical.rows());
        for &(kind, p, q, off) in &ls.pieces {
            let Some(&(_, _, _, toff)) = lt.pieces.iter().find(|t| t.0 == kind && t.1 == p && t.2 == q) else {
                continue;
            };
            let (fp, gq) = (f.at(p), g.at(q));
            let block = match kind {
                Piece::Tensor => fp.matrix().kronecker(gq.matrix()),
                Piece::Tor => tor_block(&fp, &gq),
            };
            raw.set_block(toff, off, &block);
        }
        let m = AbMorphism::from_raw(&ls.norm, &lt.norm, &raw).expect("f ⊗ g is a homomorphism");
        maps.insert(*n, m);
    }
    GradedMorphism::new(source, target, maps).expect("Künneth map")
}

/// `Tor(f, g)` on `⊕ Tor(Z/α_k, Z/β_l)`, indexed like a Kronecker product of
/// the torsion generators.
///
/// `Tor(Z/α, B)` is the α-torsion of `B`, generated for `B = Z/β` by `β/gcd`.
/// A map `Z/α -> Z/α'` sending 1 to x lifts on resolutions to multiplication
/// by `αx/α'` on the relation generator, so the generator goes to
/// `(αx/α') · y · β/gcd(α, β)` in `Z/β'`.
fn tor_block(f: &AbMorphism, g: &AbMorphism) -> IntMatrix {
    let (ta, tb) = (torsion_indices(f.source()), torsion_indices(g.source()));
    let (ta2, tb2) = (torsion_indices(f.target()), torsion_indices(g.target()));
    let (fa, fb) = (f.source(), g.source());
    let (fa2, fb2) = (f.target(), g.target());
    let (nb, nb2) = (tb.len(), tb2.len());
    let mut m = IntMatrix::zeros(ta2.len() * nb2, ta.len() * nb);
    for (ki, k) in ta.clone().enumerate() {
        let alpha = fa.generator_order(k);
        for (li, l) in tb.clone().enumerate() {
            let beta = fb.generator_order(l);
            let gamma = alpha.gcd(&beta);
            for (ki2, k2) in ta2.clone().enumerate() {
                let x = &f.matrix()[(k2, k)];
                if x.is_zero() {
                    continue;
                }
                let alpha2 = fa2.generator_order(k2);
                let lift = (&alpha * x) / &alpha2;
                for (li2, l2) in tb2.clone().enumerate() {
                    let y = &g.matrix()[(l2, l)];
                    if y.is_zero() {
                        continue;
                    }
                    let beta2 = fb2.generator_order(l2);
                    let gamma2 = alpha2.gcd(&beta2);
                    let value = (&lift * y * (&beta / &gamma)).mod_floor(&beta2);
                    let unit = &beta2 / &gamma2;
                    debug_assert!(value.is_multiple_of(&unit));
                    m[(ki2 * nb2 + li2, ki * nb + li)] = (value / unit).mod_floor(&gamma2);
                }
            }
        }
    }
    m
}

/// Tensor product of complexes: the total complex of the double complex
/// `(i, j) -> kunneth(C^i, D^j)` with horizontal `d ⊗ 1` and vertical
/// `1 ⊗ d`, signed `(-1)^i` on assembly.
pub fn tensor_complex(c: &AbComplex, d: &AbComplex) -> AbComplex {
    let mut terms = BTreeMap::new();
    let mut horizontal = BTreeMap::new();
    let mut vertical = BTreeMap::new();
    for (i, ci) in c.columns() {
        for (j, dj) in d.columns() {
            terms.insert((i, j), kunneth(ci, dj));
            horizontal.insert((i, j), kunneth_map(&c.differential(i), &GradedMorphism::identity(dj)));
            vertical.insert((i, j), kunneth_map(&GradedMorphism::identity(ci), &d.differential(j)));
        }
    }
    Bicomplex::new(terms, horizontal, vertical).expect("tensor double complex").total()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(pairs: &[(i32, FinAbGroup)]) -> GradedGroup {
        GradedGroup::from_pairs(pairs.iter().cloned())
    }

    #[test]
    fn unit() {
        let unit = g(&[(0, FinAbGroup::free(1))]);
        let b = g(&[(0, FinAbGroup::free(1)), (2, FinAbGroup::cyclic(4)), (3, FinAbGroup::free(2))]);
        assert_eq!(kunneth(&unit, &b), b);
        assert_eq!(kunneth(&b, &unit), b);
    }

    #[test]
    fn two_torsion_squared() {
        let a = g(&[(2, FinAbGroup::cyclic(2))]);
        let k = kunneth(&a, &a);
        assert_eq!(k, g(&[(3, FinAbGroup::cyclic(2)), (4, FinAbGroup::cyclic(2))]));
    }

    #[test]
    fn coprime_torsion_vanishes() {
        let a = g(&[(1, FinAbGroup::cyclic(2))]);
        let b = g(&[(1, FinAbGroup::cyclic(3))]);
        assert!(kunneth(&a, &b).is_zero());
    }

    #[test]
    fn identity_maps_to_identity() {
        let a = g(&[(0, FinAbGroup::free(2)), (2, FinAbGroup::cyclic(2))]);
        let b = g(&[(1, FinAbGroup::cyclic(4)), (2, FinAbGroup::free(1))]);
        let id = kunneth_map(&GradedMorphism::identity(&a), &GradedMorphism::identity(&b));
        assert_eq!(id, GradedMorphism::identity(&kunneth(&a, &b)));
    }

    #[test]
    fn tor_of_multiplication() {
        // Z/4 --x2--> Z/4 induces Tor(Z/4, Z/2) = Z/2 -> Z/2. On the α-torsion
        // picture the generator goes to 2 * (Z/2 generator) = 0.
        let a = g(&[(1, FinAbGroup::cyclic(4))]);
        let b = g(&[(1, FinAbGroup::cyclic(2))]);
        let two = GradedMorphism::from_matrices(a.clone(), a.clone(), BTreeMap::from([(1, IntMatrix::from_rows(&[vec![2]]))]))
            .unwrap();
        let m = kunneth_map(&two, &GradedMorphism::identity(&b));
        // degree 1 is the Tor piece, degree 2 the tensor piece; both are
        // multiplication by 2 on Z/2.
        assert!(m.at(1).is_zero());
        assert!(m.at(2).is_zero());
        // Z/2 --x1--> Z/4? not a homomorphism; Z/2 --2--> Z/4 is.
        let c = g(&[(1, FinAbGroup::cyclic(2))]);
        let inc = GradedMorphism::from_matrices(c.clone(), a.clone(), BTreeMap::from([(1, IntMatrix::from_rows(&[vec![2]]))]))
            .unwrap();
        let m = kunneth_map(&inc, &GradedMorphism::identity(&b));
        // Tor(Z/2,Z/2) -> Tor(Z/4,Z/2): the 2-torsion inclusion is an iso.
        assert_eq!(m.at(1).matrix()[(0, 0)], BigInt::from(1));
        // Z/2 ⊗ Z/2 -> Z/4 ⊗ Z/2 is multiplication by 2 = 0.
        assert!(m.at(2).is_zero());
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let x = g(&[(0, FinAbGroup::free(1)), (1, FinAbGroup::cyclic(2))]);
        let d = GradedMorphism::zero(&x, &x);
        let c = AbComplex::two_term(d);
        let point = AbComplex::single(g(&[(0, FinAbGroup::free(1))]));
        assert_eq!(tensor_complex(&c, &point), c);
    }

    #[test]
    fn lengths_add() {
        let z = g(&[(0, FinAbGroup::free(1))]);
        let id = GradedMorphism::identity(&z);
        let c = AbComplex::two_term(id);
        let t = tensor_complex(&c, &c);
        assert_eq!(t.len(), 3);
        assert!(t.is_acyclic());
    }
}
