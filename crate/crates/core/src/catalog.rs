//! The builtin catalog: every abelian group of order at most 64 plus a
//! fixed list of non-abelian groups, used by the test suites.

use crate::arith::factorize;
use crate::spec::{parse_group_spec, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub order: u64,
}

/// Partitions of `n` into nonincreasing parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors `d1 | d2 | ...` (listed largest first) of every abelian
/// group of order `n`, one list per isomorphism type.
pub fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    let mut types: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e) {
                let mut factors = t.clone();
                factors.resize(factors.len().max(part.len()), 1);
                for (f, &k) in factors.iter_mut().zip(&part) {
                    *f *= p.pow(k);
                }
                next.push(factors);
            }
        }
        types = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    types
}

fn abelian_spec(factors: Vec<u64>) -> GroupSpec {
    match factors.as_slice() {
        [n] => GroupSpec::Cyclic { n: *n },
        _ => GroupSpec::Abelian { moduli: factors },
    }
}

/// Every abelian group of order at most `max_order`, up to isomorphism.
pub fn abelian_catalog(max_order: u64) -> Vec<CatalogEntry> {
    (1..=max_order)
        .flat_map(|n| {
            abelian_types(n).into_iter().map(move |f| CatalogEntry {
                spec: abelian_spec(f),
                order: n,
            })
        })
        .collect()
}

/// Non-abelian members of the catalog, as spec lines.
const NONABELIAN: &[(&str, u64)] = &[
    ("symmetric n=3", 6),
    ("perm gens=(1 2 3 4),(1 3)", 8),
    ("heisenberg p=2", 8),
    ("modular p=2", 8),
    ("perm gens=(1 2 4 7)(3 6 8 5),(1 3 4 8)(2 5 7 6)", 8),
    ("perm gens=(1 2 3 4 5),(2 5)(3 4)", 10),
    ("perm gens=(1 2 3 4 5 6),(1 6)(2 5)(3 4)", 12),
    ("perm gens=(1 2 3),(1 2)(3 4)", 12),
    ("product: symmetric n=3 ; cyclic n=2", 12),
    ("perm gens=(1 2 3 4 5 6 7),(2 7)(3 6)(4 5)", 14),
    ("perm gens=(1 2 3 4 5 6 7 8),(1 8)(2 7)(3 6)(4 5)", 16),
    ("product: heisenberg p=2 ; cyclic n=2", 16),
    ("product: symmetric n=3 ; cyclic n=3", 18),
    ("symmetric n=4", 24),
    ("heisenberg p=3", 27),
    ("modular p=3", 27),
    ("product: cyclic n=2 ; heisenberg p=3", 54),
    ("unitriangular n=4 p=2", 64),
    ("product: cyclic n=4 ; heisenberg p=3", 108),
    ("symmetric n=5", 120),
    ("heisenberg p=5", 125),
    ("modular p=5", 125),
    ("product: heisenberg p=3 ; cyclic n=5", 135),
    ("heisenberg p=7", 343),
    ("modular p=7", 343),
    ("unitriangular n=4 p=3", 729),
];

/// The full builtin catalog up to `max_order`, sorted by order.
pub fn builtin_catalog(max_order: u64) -> Vec<CatalogEntry> {
    let mut out = abelian_catalog(max_order.min(64));
    for &(line, order) in NONABELIAN {
        if order <= max_order {
            out.push(CatalogEntry {
                spec: parse_group_spec(line).expect("catalog spec parses"),
                order,
            });
        }
    }
    out.sort_by_key(|e| e.order);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_builtin, expected_order};

    #[test]
    fn abelian_type_counts() {
        let count = |n| abelian_types(n).len();
        assert_eq!(count(1), 1);
        assert_eq!(count(8), 3);
        assert_eq!(count(16), 5);
        assert_eq!(count(32), 7);
        assert_eq!(count(64), 11);
        assert_eq!(count(72), 6);
        assert_eq!(abelian_types(12), vec![vec![12], vec![6, 2]]);
    }

    #[test]
    fn invariant_factors_divide() {
        for n in 1..=64 {
            for f in abelian_types(n) {
                assert_eq!(f.iter().product::<u64>(), n);
                for w in f.windows(2) {
                    assert_eq!(w[0] % w[1], 0, "{f:?}");
                }
            }
        }
    }

    #[test]
    fn catalog_orders_are_right() {
        for e in builtin_catalog(130) {
            if let Some(o) = expected_order(&e.spec) {
                assert_eq!(o, e.order as u128, "{}", e.spec);
            }
            let g = build_builtin(&e.spec, 10_000).unwrap();
            assert_eq!(g.order() as u64, e.order, "{}", e.spec);
        }
    }
}
