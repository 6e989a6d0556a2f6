//! Independent oracles shared by the integration tests. Nothing here calls
//! the enumeration, intersection index or scan code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ingleton_core::bitset::ElementSet;
use ingleton_core::subgroup::EnumerationLimits;
use ingleton_core::{build_builtin, enumerate_subgroups, parse_group_spec, FiniteGroup, SubgroupTable};

pub fn build(spec: &str) -> FiniteGroup {
    build_builtin(&parse_group_spec(spec).unwrap(), 100_000).unwrap()
}

pub fn table(g: &FiniteGroup) -> SubgroupTable {
    enumerate_subgroups(g, EnumerationLimits::default()).unwrap()
}

/// Every subset containing the identity that is closed under the product.
/// Finite closed subsets are subgroups. Needs `|G| <= 20`.
pub fn brute_force_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    assert!(n <= 20, "subset oracle is exponential");
    let e = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let mut out = BTreeSet::new();
    for bits in 0u32..1 << others.len() {
        let mut mask = 1u32 << e;
        for (i, &x) in others.iter().enumerate() {
            if bits >> i & 1 == 1 {
                mask |= 1 << x;
            }
        }
        let members: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| mask >> g.mul(x, y) & 1 == 1));
        if closed {
            out.insert(members);
        }
    }
    out
}

pub fn members(t: &SubgroupTable) -> BTreeSet<Vec<usize>> {
    t.subgroups()
        .iter()
        .map(|h| h.members().iter().collect())
        .collect()
}

/// `|a ∩ b|` and `|a ∩ b ∩ c|` from direct bitset intersections.
pub struct DirectOrders {
    pub k: usize,
    pub order: Vec<u64>,
    pair: Vec<u64>,
    triple: Vec<u16>,
}

impl DirectOrders {
    pub fn new(t: &SubgroupTable) -> Self {
        let sets: Vec<&ElementSet> = t.subgroups().iter().map(|h| h.members()).collect();
        let k = sets.len();
        let mut pair = vec![0; k * k];
        let mut triple = vec![0u16; k * k * k];
        for a in 0..k {
            for b in 0..k {
                let ab = sets[a].and(sets[b]);
                pair[a * k + b] = ab.count() as u64;
                for c in 0..k {
                    triple[(a * k + b) * k + c] = ab.and_count(sets[c]) as u16;
                }
            }
        }
        DirectOrders {
            k,
            order: sets.iter().map(|s| s.count() as u64).collect(),
            pair,
            triple,
        }
    }

    pub fn pair(&self, a: usize, b: usize) -> u64 {
        self.pair[a * self.k + b]
    }

    pub fn triple(&self, a: usize, b: usize, c: usize) -> u64 {
        self.triple[(a * self.k + b) * self.k + c] as u64
    }

    /// `(lhs, rhs)` of the Ingleton inequality for an ordered quadruple.
    pub fn sides(&self, [a, b, c, d]: [usize; 4]) -> (u128, u128) {
        let l = [self.order[a], self.order[b], self.pair(c, d), self.triple(a, b, c), self.triple(a, b, d)];
        let r = [self.pair(a, b), self.pair(a, c), self.pair(a, d), self.pair(b, c), self.pair(b, d)];
        let prod = |v: [u64; 5]| v.iter().map(|&x| x as u128).product::<u128>();
        (prod(l), prod(r))
    }
}

/// Outcome of scanning every ordered quadruple.
#[derive(Debug)]
pub struct OrderedScan {
    pub checked: u64,
    /// Violating ordered quadruples, folded by the two swap symmetries, with
    /// how many ordered quadruples landed on each.
    pub violations: BTreeMap<[usize; 4], u64>,
    /// Smallest `lhs/rhs` as an unreduced pair.
    pub min: (u128, u128),
}

pub fn ordered_scan(o: &DirectOrders) -> OrderedScan {
    let k = o.k;
    let mut out = OrderedScan {
        checked: 0,
        violations: BTreeMap::new(),
        min: (u128::MAX, 1),
    };
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let (l, r) = o.sides([a, b, c, d]);
                    out.checked += 1;
                    if l < r {
                        let key = [a.min(b), a.max(b), c.min(d), c.max(d)];
                        *out.violations.entry(key).or_default() += 1;
                    }
                    if l * out.min.1 < out.min.0 * r {
                        out.min = (l, r);
                    }
                }
            }
        }
    }
    out
}

/// How many ordered quadruples fold onto a canonical one.
pub fn orbit_size([a, b, c, d]: [usize; 4]) -> u64 {
    (if a == b { 1 } else { 2 }) * (if c == d { 1 } else { 2 })
}
