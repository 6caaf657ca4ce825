use std::collections::HashSet;

use proptest::prelude::*;

use mll_nets::canonical::{
    alpha, alpha_inv, curry, dual_of, e, e_inv, eval, iota, iota_inv, lolli_mor, psi, psi_inv, sigma, transpose,
    uncurry,
};
use mll_nets::compose::{compose, identity, j_map, tensor_mor};
use mll_nets::formula::{de_morganize, dual, leaves, lolli, parse, Formula, Polarity, Side};
use mll_nets::net::{enumerate_hom, enumerate_j, ProofNet, DEFAULT_MAX_LEAVES};

fn formula(max_leaves: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just("p"), Just("q"), Just("r")].prop_map(Formula::var);
    leaf.prop_recursive(4, max_leaves, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            inner.prop_map(Formula::neg),
        ]
    })
}

/// Formulas over one variable, so hom-sets are often nonempty.
fn mono(max_leaves: u32) -> impl Strategy<Value = Formula> {
    Just(Formula::var("p")).prop_recursive(3, max_leaves, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            inner.prop_map(Formula::neg),
        ]
    })
}

fn hom(a: &Formula, b: &Formula) -> Vec<ProofNet> {
    enumerate_hom(a, b, DEFAULT_MAX_LEAVES).unwrap_or_default()
}

fn small(fs: &[&Formula], max: usize) -> bool {
    fs.iter().map(|f| f.leaf_count()).sum::<usize>() <= max
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(f in formula(8)) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn leaves_are_distinct_and_counted(f in formula(8)) {
        let ls = leaves(&f, Side::Cod);
        prop_assert_eq!(ls.len(), f.leaf_count());
        let addrs: HashSet<_> = ls.iter().map(|l| l.addr.clone()).collect();
        prop_assert_eq!(addrs.len(), ls.len());
    }

    #[test]
    fn sides_have_opposite_polarity(f in formula(8)) {
        for (d, c) in leaves(&f, Side::Dom).into_iter().zip(leaves(&f, Side::Cod)) {
            prop_assert_eq!(d.polarity, c.polarity.flip());
        }
    }

    #[test]
    fn de_morgan_trees_are_dual(f in formula(8)) {
        let pos = de_morganize(&f, Polarity::Pos);
        let neg = de_morganize(&f, Polarity::Neg);
        let tensors = f.leaf_count() - 1;
        prop_assert_eq!(pos.leaf_count(), neg.leaf_count());
        prop_assert_eq!(pos.par_count() + neg.par_count(), tensors);
    }

    #[test]
    fn negation_flips_polarity(f in formula(6)) {
        for (a, b) in leaves(&f, Side::Cod).into_iter().zip(leaves(&dual(&f), Side::Cod)) {
            prop_assert_eq!(a.polarity, b.polarity.flip());
        }
    }

    #[test]
    fn identity_is_neutral(a in mono(3), b in mono(3)) {
        for f in hom(&a, &b) {
            prop_assert_eq!(compose(&identity(&a), &f).unwrap(), f.clone());
            prop_assert_eq!(compose(&f, &identity(&b)).unwrap(), f);
        }
    }

    #[test]
    fn composition_is_associative_and_correct(a in mono(2), b in mono(2), c in mono(2), d in mono(2)) {
        for f in hom(&a, &b) {
            for g in hom(&b, &c) {
                let gf = compose(&f, &g).unwrap();
                gf.revalidate().unwrap();
                for h in hom(&c, &d) {
                    prop_assert_eq!(compose(&gf, &h).unwrap(), compose(&f, &compose(&g, &h).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn tensor_is_a_bifunctor(a in mono(2), b in mono(2), c in mono(2)) {
        prop_assert_eq!(tensor_mor(&identity(&a), &identity(&b)), identity(&Formula::tensor(a.clone(), b.clone())));
        for f in hom(&a, &b) {
            for g in hom(&b, &c) {
                for h in hom(&c, &a) {
                    let lhs = tensor_mor(&compose(&f, &g).unwrap(), &h);
                    let rhs = compose(&tensor_mor(&f, &identity(&c)), &tensor_mor(&g, &h)).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn j_is_a_functor(a in mono(3), b in mono(2), c in mono(2)) {
        prop_assume!(small(&[&a, &b, &c], 8));
        let els = enumerate_j(&a, DEFAULT_MAX_LEAVES).unwrap();
        for x in &els {
            prop_assert_eq!(&j_map(&identity(&a), x).unwrap(), x);
            for f in hom(&a, &b) {
                let fx = j_map(&f, x).unwrap();
                fx.revalidate().unwrap();
                for g in hom(&b, &c) {
                    prop_assert_eq!(j_map(&g, &fx).unwrap(), j_map(&compose(&f, &g).unwrap(), x).unwrap());
                }
            }
        }
    }

    #[test]
    fn alpha_and_sigma_are_natural(a in mono(2), b in mono(2), c in mono(2)) {
        for f in hom(&a, &a) {
            for g in hom(&b, &b) {
                let fg = tensor_mor(&f, &g);
                prop_assert_eq!(
                    compose(&fg, &sigma(&a, &b)).unwrap(),
                    compose(&sigma(&a, &b), &tensor_mor(&g, &f)).unwrap()
                );
                for h in hom(&c, &c) {
                    let lhs = compose(&tensor_mor(&fg, &h), &alpha(&a, &b, &c)).unwrap();
                    let rhs = compose(&alpha(&a, &b, &c), &tensor_mor(&f, &tensor_mor(&g, &h))).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inverses(a in formula(3), b in formula(3), c in formula(3)) {
        let abc = Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone());
        prop_assert_eq!(compose(&alpha(&a, &b, &c), &alpha_inv(&a, &b, &c)).unwrap(), identity(&abc));
        prop_assert_eq!(compose(&iota(&a), &iota_inv(&a)).unwrap(), identity(&a));
        let m = lolli(&Formula::tensor(a.clone(), b.clone()), &c);
        prop_assert_eq!(compose(&psi(&a, &b, &c), &psi_inv(&a, &b, &c)).unwrap(), identity(&m));
        prop_assert_eq!(
            compose(&psi_inv(&a, &b, &c), &psi(&a, &b, &c)).unwrap(),
            identity(&lolli(&a, &lolli(&b, &c)))
        );
        for net in [alpha(&a, &b, &c), sigma(&a, &b), psi(&a, &b, &c), iota(&a), eval(&a, &b)] {
            prop_assert!(net.revalidate().is_ok(), "{}", net);
        }
    }

    #[test]
    fn psi_is_natural(a in mono(2), b in mono(2), c in mono(2)) {
        for f in hom(&a, &a) {
            for h in hom(&c, &c) {
                // precompose on A (contravariant slot), postcompose on C
                let pre = lolli_mor(&tensor_mor(&f, &identity(&b)), &h);
                let post = lolli_mor(&f, &lolli_mor(&identity(&b), &h));
                prop_assert_eq!(
                    compose(&pre, &psi(&a, &b, &c)).unwrap(),
                    compose(&psi(&a, &b, &c), &post).unwrap()
                );
            }
        }
    }

    #[test]
    fn e_is_natural(a in mono(2), b in mono(2), c in mono(2)) {
        prop_assume!(small(&[&a, &b, &c], 6));
        for x in enumerate_j(&lolli(&a, &b), DEFAULT_MAX_LEAVES).unwrap() {
            for g in hom(&b, &c) {
                let moved = j_map(&lolli_mor(&identity(&a), &g), &x).unwrap();
                prop_assert_eq!(e(&moved).unwrap(), compose(&e(&x).unwrap(), &g).unwrap());
            }
            prop_assert_eq!(e_inv(&e(&x).unwrap()), x);
        }
    }

    #[test]
    fn iota_is_natural(a in mono(3), b in mono(3)) {
        for f in hom(&a, &b) {
            prop_assert_eq!(
                compose(&f, &iota(&b)).unwrap(),
                compose(&iota(&a), &dual_of(&dual_of(&f))).unwrap()
            );
        }
    }

    #[test]
    fn curry_and_transpose_are_bijections(a in mono(2), b in mono(2), c in mono(2)) {
        let ab = Formula::tensor(a.clone(), b.clone());
        let homs = hom(&ab, &c);
        prop_assert_eq!(homs.len(), hom(&a, &lolli(&b, &c)).len());
        for f in &homs {
            prop_assert_eq!(&uncurry(&curry(f).unwrap()).unwrap(), f);
        }
        let neg = hom(&ab, &dual(&c));
        prop_assert_eq!(neg.len(), hom(&Formula::tensor(a.clone(), c.clone()), &dual(&b)).len());
        for f in &neg {
            prop_assert_eq!(&transpose(&transpose(f).unwrap()).unwrap(), f);
        }
    }

    #[test]
    fn duality_is_fully_faithful(a in mono(3), b in mono(3)) {
        let homs = hom(&a, &b);
        let duals = hom(&dual(&b), &dual(&a));
        prop_assert_eq!(homs.len(), duals.len());
        let images: HashSet<_> = homs.iter().map(dual_of).collect();
        prop_assert_eq!(images, duals.into_iter().collect::<HashSet<_>>());
    }
}
