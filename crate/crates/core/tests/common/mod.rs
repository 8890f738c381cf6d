//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

pub mod exprs;
pub mod ncc;
pub mod tensor_model;

use std::collections::BTreeMap;

use motivic::abelian::{AbMorphism, FinAbGroup, IntMatrix};
use motivic::complex::{AbComplex, ChainMap, GradedGroup, GradedMorphism};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank at most `max_rank`, up to two cyclic factors of order at most
/// `max_order`.
pub fn group(rng: &mut impl Rng, max_rank: usize, max_order: u64) -> FinAbGroup {
    let mut orders: Vec<BigInt> = vec![BigInt::from(0); rng.gen_range(0..=max_rank)];
    for _ in 0..rng.gen_range(0..=2) {
        orders.push(BigInt::from(rng.gen_range(2..=max_order)));
    }
    FinAbGroup::from_orders(&orders)
}

pub fn graded(rng: &mut impl Rng, degrees: std::ops::RangeInclusive<i32>, max_rank: usize, max_order: u64) -> GradedGroup {
    GradedGroup::from_pairs(degrees.map(|n| (n, group(rng, max_rank, max_order))))
}

/// A random homomorphism: entry `(k, j)` is a random multiple of the least
/// value allowed by the generator orders.
pub fn morphism(rng: &mut impl Rng, source: &FinAbGroup, target: &FinAbGroup) -> AbMorphism {
    let (so, to) = (source.generator_orders(), target.generator_orders());
    let mut m = IntMatrix::zeros(to.len(), so.len());
    for (k, t) in to.iter().enumerate() {
        for (j, o) in so.iter().enumerate() {
            let step = match (o == &BigInt::from(0), t == &BigInt::from(0)) {
                (_, true) if o != &BigInt::from(0) => continue,
                (true, _) | (_, true) => BigInt::from(1),
                (false, false) => t / t.gcd(o),
            };
            m[(k, j)] = step * BigInt::from(rng.gen_range(-3i64..=3));
        }
    }
    AbMorphism::new(source.clone(), target.clone(), m).expect("entries respect the orders")
}

pub fn graded_morphism(rng: &mut impl Rng, source: &GradedGroup, target: &GradedGroup) -> GradedMorphism {
    let mut maps = BTreeMap::new();
    for n in source.degrees().chain(target.degrees()) {
        maps.insert(n, morphism(rng, source.get(n), target.get(n)));
    }
    GradedMorphism::new(source.clone(), target.clone(), maps).expect("degreewise maps")
}

/// A direct sum of one to three shifted two-term complexes.
pub fn complex(rng: &mut impl Rng) -> AbComplex {
    let parts: Vec<AbComplex> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let a = graded(rng, 0..=1, 2, 12);
            let b = graded(rng, 0..=1, 2, 12);
            AbComplex::two_term(graded_morphism(rng, &a, &b)).shift(rng.gen_range(-1..=1))
        })
        .collect();
    let refs: Vec<&AbComplex> = parts.iter().collect();
    AbComplex::direct_sum(&refs).0
}

/// Direct sums of cones of identities.
pub fn contractible(rng: &mut impl Rng) -> AbComplex {
    let cones: Vec<AbComplex> =
        (0..rng.gen_range(1..=2)).map(|_| ChainMap::identity(&complex(rng)).cone()).collect();
    let refs: Vec<&AbComplex> = cones.iter().collect();
    AbComplex::direct_sum(&refs).0
}

/// Subsets `A` of `F_2^4` whose indicator is an affine function,
/// `v(x) = v(0) + Σ_b x_b (v(e_b) - v(0))` mod 2.
pub fn affine_indicators() -> usize {
    (0u32..1 << 16)
        .filter(|&v| {
            let at = |x: u32| (v >> x) & 1;
            (0..16u32).all(|x| {
                let lin = (0..4).filter(|b| x >> b & 1 == 1).map(|b| at(1 << b) ^ at(0)).fold(0, |a, c| a ^ c);
                at(x) == at(0) ^ lin
            })
        })
        .count()
}
