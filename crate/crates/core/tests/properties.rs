mod common;

use common::*;
use ingleton_core::bitset::ElementSet;
use ingleton_core::entropy::{Exact, Fraction};
use ingleton_core::nilpotent::{check_pair_split, SylowContext};
use ingleton_core::subgroup::EnumerationLimits;
use ingleton_core::*;
use num_bigint::BigUint;
use proptest::prelude::*;

const SMALL: &[&str] = &[
    "cyclic n=12",
    "abelian 4,2",
    "abelian 3,3",
    "symmetric n=3",
    "symmetric n=4",
    "heisenberg p=2",
    "heisenberg p=3",
    "modular p=2",
    "modular p=3",
    "perm gens=(1 2 3 4),(1 3)",
    "perm gens=(1 2 3),(1 2)(3 4)",
];

const NILPOTENT: &[&str] = &[
    "cyclic n=6",
    "cyclic n=5",
    "abelian 2,2",
    "heisenberg p=2",
    "heisenberg p=3",
    "modular p=3",
    "perm gens=(1 2 3 4),(1 3)",
];

fn small_group() -> impl Strategy<Value = String> {
    prop::sample::select(SMALL).prop_map(str::to_string)
}

fn nilpotent_product() -> impl Strategy<Value = String> {
    (prop::sample::select(NILPOTENT), prop::sample::select(NILPOTENT))
        .prop_filter("order cap", |(a, b)| build(a).order() * build(b).order() <= 200)
        .prop_map(|(a, b)| format!("product: {a} ; {b}"))
}

fn oracle_product(v: &[u64]) -> BigUint {
    v.iter().fold(BigUint::from(1u8), |acc, &x| acc * x)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn tables_are_groups(a in small_group(), b in small_group()) {
        let g = build(&format!("product: {a} ; {b}"));
        prop_assume!(g.order() <= 600);
        prop_assert!(g.audit_axioms(0).passed());
        prop_assert_eq!(g.order(), build(&a).order() * build(&b).order());
        for x in g.elements() {
            prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
            prop_assert_eq!(g.order() as u64 % g.element_order(x).unwrap(), 0);
        }
    }

    #[test]
    fn subgroups_are_closed_and_lagrange(spec in small_group()) {
        let g = build(&spec);
        let t = table(&g);
        prop_assert_eq!(t.order(t.trivial()), 1);
        prop_assert_eq!(t.order(t.whole()), g.order());
        for h in t.subgroups() {
            prop_assert_eq!(g.order() % h.order(), 0);
            prop_assert!(h.contains(g.identity()));
            for x in h.elements() {
                for y in h.elements() {
                    prop_assert!(h.contains(g.mul(x, y)));
                }
            }
        }
        for a in 0..t.len() {
            for b in 0..t.len() {
                let m = t.intersect(a, b).unwrap();
                prop_assert_eq!(m, t.intersect(b, a).unwrap());
                let direct = t.subgroups()[a].members().and(t.subgroups()[b].members());
                prop_assert_eq!(t.subgroups()[m].members(), &direct);
            }
        }
    }

    #[test]
    fn entropy_vectors_are_shannon(spec in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=5)) {
        let t = table(&build(&spec));
        let ids: Vec<usize> = picks.iter().map(|i| i.index(t.len())).collect();
        let v = entropy_vector(&t, &ids).unwrap();
        prop_assert!(shannon_audit(&v).passed());
        for mask in 1..1usize << ids.len() {
            let mut set = ElementSet::full(t.group_order());
            for (i, &id) in ids.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set = set.and(t.subgroups()[id].members());
                }
            }
            prop_assert_eq!(v.index(mask) as usize, t.group_order() / set.count());
        }
    }

    #[test]
    fn entropy_vector_follows_tuple_permutation(spec in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 2..=4)) {
        let t = table(&build(&spec));
        let ids: Vec<usize> = picks.iter().map(|i| i.index(t.len())).collect();
        let mut rev = ids.clone();
        rev.reverse();
        let v = entropy_vector(&t, &ids).unwrap();
        let w = entropy_vector(&t, &rev).unwrap();
        let n = ids.len();
        for mask in 1..1usize << n {
            let flipped = (0..n).filter(|i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << (n - 1 - i));
            prop_assert_eq!(v.index(mask), w.index(flipped));
        }
    }

    #[test]
    fn ingleton_swap_invariance(spec in small_group(), picks in prop::array::uniform4(any::<prop::sample::Index>())) {
        let t = table(&build(&spec));
        let [a, b, c, d] = picks.map(|i| i.index(t.len()));
        let base = ingleton_check(&t, [a, b, c, d]).unwrap();
        for q in [[b, a, c, d], [a, b, d, c], [b, a, d, c]] {
            let r = ingleton_check(&t, q).unwrap();
            prop_assert_eq!(&r.lhs, &base.lhs);
            prop_assert_eq!(&r.rhs, &base.rhs);
        }
        let (l, r) = DirectOrders::new(&t).sides([a, b, c, d]);
        prop_assert_eq!(base.lhs, Exact::Word(l));
        prop_assert_eq!(base.rhs, Exact::Word(r));
    }

    #[test]
    fn exact_products_match_bigint(v in prop::collection::vec(1u64..u64::MAX, 0..8)) {
        prop_assert_eq!(Exact::product(&v).to_biguint(), oracle_product(&v));
    }

    #[test]
    fn fraction_order_matches_cross_multiplication(a in 1u64.., b in 1u64.., c in 1u64.., d in 1u64..) {
        let f = Fraction::new(Exact::Word(a as u128), Exact::Word(b as u128));
        let g = Fraction::new(Exact::Word(c as u128), Exact::Word(d as u128));
        let lhs = BigUint::from(a) * d;
        let rhs = BigUint::from(c) * b;
        prop_assert_eq!(f.cmp(&g), lhs.cmp(&rhs));
        let s = f.to_string();
        prop_assert_eq!(s.parse::<Fraction>().unwrap(), f);
    }

    #[test]
    fn sylow_decomposition_is_sound(spec in nilpotent_product()) {
        let g = build(&spec);
        let d = sylow_decomposition(&g).unwrap();
        prop_assert!(d.certificate.passed());
        let product: usize = d.parts.iter().map(|p| p.order()).product();
        prop_assert_eq!(product, g.order());
        for part in &d.parts {
            prop_assert_eq!(part.order() as u64, part.p.pow(part.exponent));
        }
        let t = table(&g);
        for h in t.subgroups() {
            let split = subgroup_sylow_split(h.members(), &d).unwrap();
            prop_assert_eq!(split.product(), h.order());
        }
        let ctx = SylowContext::new(d, EnumerationLimits::default()).unwrap();
        let k = t.len();
        for a in (0..k).step_by(3) {
            for b in (0..k).step_by(2) {
                check_pair_split(t.subgroups()[a].members(), t.subgroups()[b].members(), &ctx.decomposition).unwrap();
            }
        }
        let q = [0, k / 3, k / 2, k - 1];
        let via = ingleton_via_sylow(&ctx, &t, q).unwrap();
        prop_assert_eq!(via.combined_lhs, via.direct.lhs);
    }

    #[test]
    fn corollary_gate_implies_part_gates(spec in nilpotent_product()) {
        let v = corollary_gate(&build(&spec)).unwrap();
        prop_assert_eq!(v.applies, v.smallest_prime.is_none_or(|p| (v.class as u64) < p));
        if v.applies {
            prop_assert!(v.parts.iter().all(|p| p.lazard_ok));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn lazard_sum_is_commutative_with_shared_inverses(spec in prop::sample::select(&["heisenberg p=3", "modular p=3", "heisenberg p=5", "modular p=5"][..]), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let g = build(spec);
        let add = lazard_addition(&g).unwrap();
        let (x, y) = (x.index(g.order()), y.index(g.order()));
        prop_assert_eq!(add.add(x, y), add.add(y, x));
        prop_assert_eq!(add.add(x, g.inv(x)), g.identity());
        prop_assert_eq!(add.add(x, g.identity()), x);
        // Powers of one element add like the group product.
        prop_assert_eq!(add.add(x, x), g.mul(x, x));
    }
}
