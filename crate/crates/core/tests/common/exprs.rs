//! Random expression trees and an independent Euler characteristic.

use motivic::atlas::{Atlas, STANDARD_ATOMS};
use motivic::motive::{MotiveClass, VarietyExpr as V};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random well-formed expression of dimension exactly `dim`.
pub fn expr(rng: &mut impl Rng, dim: u32, depth: u32) -> V {
    if depth == 0 || rng.gen_bool(0.3) {
        let atoms: Vec<V> = STANDARD_ATOMS
            .iter()
            .filter_map(|&a| {
                let d = Atlas::new().atom(a).unwrap().dim;
                (d == dim).then(|| V::atom(a, d))
            })
            .chain([V::Affine { n: dim }, V::Proj { n: dim }])
            .chain((dim == 0).then_some(V::Point))
            .collect();
        return atoms.choose(rng).unwrap().clone();
    }
    match rng.gen_range(0..7) {
        0 => V::union(expr(rng, dim, depth - 1), expr(rng, dim, depth - 1)),
        1 => {
            let k = rng.gen_range(0..=dim);
            V::product(expr(rng, k, depth - 1), expr(rng, dim - k, depth - 1))
        }
        2 => {
            let k = rng.gen_range(0..=dim);
            V::complement(expr(rng, dim, depth - 1), expr(rng, k, depth - 1))
        }
        3 if dim >= 1 => V::cone(expr(rng, dim - 1, depth - 1)),
        4 if dim >= 1 => {
            let r = rng.gen_range(1..=dim);
            V::proj_bundle(expr(rng, dim - (r - 1), depth - 1), r)
        }
        5 if dim >= 1 => {
            let d = rng.gen_range(1..=dim);
            V::blowup(expr(rng, dim, depth - 1), expr(rng, dim - d, depth - 1), d)
        }
        _ => {
            let k = rng.gen_range(0..=dim);
            V::fibration(expr(rng, k, depth - 1), expr(rng, dim - k, depth - 1))
        }
    }
}

/// Euler characteristic through a separate evaluation: `L -> 1`, atoms to
/// their recorded Euler characteristics.
pub fn chi_oracle(c: &MotiveClass) -> BigInt {
    let atlas = Atlas::new();
    c.poly()
        .terms()
        .map(|(m, coeff)| {
            m.atoms.iter().fold(coeff.clone(), |acc, (a, &e)| acc * BigInt::from(atlas.atom(a).unwrap().euler_characteristic()).pow(e))
        })
        .sum()
}
