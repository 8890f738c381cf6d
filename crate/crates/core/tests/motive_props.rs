//! Scissor, product and specialization identities on random expression
//! trees, with invariants evaluated through an independent ring map.

mod common;

use common::exprs::{chi_oracle, expr};
use motivic::atlas::{Atlas, STANDARD_ATOMS};
use motivic::motive::{class_of, euler_char, virtual_hodge, virtual_poincare, MotiveClass, Poly, VarietyExpr as V};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn poincare(e: &V) -> Poly<u32> {
    virtual_poincare(&class_of(e).unwrap(), &Atlas::new()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn scissors_and_products(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let dim = rng.gen_range(0..=3);
        let k = rng.gen_range(0..=dim);
        let (a, b) = (expr(&mut rng, dim, 3), expr(&mut rng, k, 3));
        let (pa, pb) = (poincare(&a), poincare(&b));
        prop_assert_eq!(poincare(&V::complement(a.clone(), b.clone())), &pa - &pb);
        prop_assert_eq!(poincare(&V::union(a.clone(), b.clone())), &pa + &pb);
        prop_assert_eq!(poincare(&V::product(a.clone(), b.clone())), &pa * &pb);
        prop_assert_eq!(poincare(&V::fibration(a.clone(), b.clone())), &pa * &pb);
        let (ha, hb) = {
            let h = |e: &V| virtual_hodge(&class_of(e).unwrap(), &Atlas::new()).unwrap();
            (h(&a), h(&b))
        };
        let hp = virtual_hodge(&class_of(&V::product(a, b)).unwrap(), &Atlas::new()).unwrap();
        prop_assert_eq!(hp, &ha * &hb);
    }

    #[test]
    fn inclusion_exclusion(seed in any::<u64>()) {
        // U = A + C and V = B + C, with C = U ∩ V.
        let mut rng = common::rng(seed);
        let dim = rng.gen_range(0..=3);
        let (a, b, c) = (expr(&mut rng, dim, 2), expr(&mut rng, dim, 2), expr(&mut rng, dim, 2));
        let u = V::union(a.clone(), c.clone());
        let v = V::union(b.clone(), c.clone());
        let union = V::union(V::union(a, b), c.clone());
        let cl = |e: &V| class_of(e).unwrap();
        prop_assert_eq!(&cl(&c) + &cl(&union), &cl(&u) + &cl(&v));
    }

    #[test]
    fn specializations(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let dim = rng.gen_range(0..=4);
        let e = expr(&mut rng, dim, 4);
        let c = class_of(&e).unwrap();
        let atlas = Atlas::new();
        let p = virtual_poincare(&c, &atlas).unwrap();
        let h = virtual_hodge(&c, &atlas).unwrap();
        prop_assert_eq!(h.diagonal(), p.clone());
        prop_assert_eq!(h.swap(), h.clone());
        let chi = euler_char(&c, &atlas).unwrap();
        prop_assert_eq!(&chi, &p.eval(&BigInt::from(-1)));
        prop_assert_eq!(chi, chi_oracle(&c));
        // Virtual Betti numbers vanish above degree 2 dim.
        prop_assert!(p.degree().map_or(true, |d| d <= 2 * dim));
    }
}

#[test]
fn affine_and_projective_spaces() {
    for n in 0..=6 {
        let affine = class_of(&V::Affine { n }).unwrap();
        assert_eq!(affine, MotiveClass::lefschetz(n));
        let sum = (0..=n).fold(MotiveClass::zero(), |acc, i| &acc + &MotiveClass::lefschetz(i));
        assert_eq!(class_of(&V::Proj { n }).unwrap(), sum);
        if n >= 1 {
            let hole = class_of(&V::complement(V::Proj { n }, V::Proj { n: n - 1 })).unwrap();
            assert_eq!(hole, affine);
        }
    }
}

#[test]
fn cone_formula_for_every_atom() {
    let atlas = Atlas::new();
    for &name in STANDARD_ATOMS {
        let y = atlas.atom(name).unwrap();
        let cone = class_of(&V::cone(V::atom(name, y.dim))).unwrap();
        let expected = &(&MotiveClass::one() + &(&MotiveClass::atom(name) * &MotiveClass::lefschetz(1))) - &MotiveClass::atom(name);
        assert_eq!(cone, expected, "{name}");
    }
}

#[test]
fn atlas_records_agree_with_classes() {
    let atlas = Atlas::new();
    for n in 0..=4 {
        let name = if n == 0 { "pt".to_string() } else { format!("P{n}") };
        let from_class = virtual_poincare(&class_of(&V::Proj { n }).unwrap(), &atlas).unwrap();
        assert_eq!(from_class, atlas.atom(&name).unwrap().poincare(), "{name}");
    }
    let k3 = virtual_poincare(&MotiveClass::atom("K3"), &atlas).unwrap();
    assert_eq!(k3.to_string(), "1 + 22t^2 + t^4");
    let ab = virtual_hodge(&MotiveClass::atom("AbelianSurface"), &atlas).unwrap();
    let one_u = &Poly::one() + &Poly::uv(1, 0, 1);
    let one_v = &Poly::one() + &Poly::uv(0, 1, 1);
    assert_eq!(ab, &one_u.pow(2) * &one_v.pow(2));
}
