//! Group-characterizable entropy vectors and exact Ingleton checks.
//!
//! Entropies are stored as integer indices `|G : G_S|`; the base-2
//! logarithm is only computed for display. Every comparison is done on exact
//! integers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::subgroup::{SubgroupError, SubgroupTable};

/// Largest tuple length accepted by [`entropy_vector`].
pub const MAX_TUPLE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EntropyError {
    #[error("tuple of {n} subgroups exceeds the limit of {MAX_TUPLE}")]
    NCapExceeded { n: usize },
    #[error("empty subgroup tuple")]
    EmptyTuple,
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
}

/// Nonnegative exact integer: a 128-bit word while it fits, a bignum after.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exact {
    Word(u128),
    Big(BigUint),
}

impl Exact {
    pub fn one() -> Self {
        Exact::Word(1)
    }

    fn normalize(b: BigUint) -> Self {
        match b.to_u128() {
            Some(w) => Exact::Word(w),
            None => Exact::Big(b),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Exact::Word(w) => BigUint::from(*w),
            Exact::Big(b) => b.clone(),
        }
    }

    /// Product of machine integers, leaving the 128-bit path on overflow.
    pub fn product(factors: &[u64]) -> Self {
        let mut acc: u128 = 1;
        for (i, &f) in factors.iter().enumerate() {
            match acc.checked_mul(f as u128) {
                Some(v) => acc = v,
                None => {
                    let mut big = BigUint::from(acc);
                    for &g in &factors[i..] {
                        big *= g;
                    }
                    return Exact::normalize(big);
                }
            }
        }
        Exact::Word(acc)
    }

    pub fn mul(&self, other: &Exact) -> Exact {
        match (self, other) {
            (Exact::Word(a), Exact::Word(b)) => match a.checked_mul(*b) {
                Some(v) => Exact::Word(v),
                None => Exact::Big(BigUint::from(*a) * *b),
            },
            _ => Exact::normalize(self.to_biguint() * other.to_biguint()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exact::Word(0))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exact::Word(a), Exact::Word(b)) => a.cmp(b),
            (Exact::Word(_), Exact::Big(_)) => Ordering::Less,
            (Exact::Big(_), Exact::Word(_)) => Ordering::Greater,
            (Exact::Big(a), Exact::Big(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Word(w) => write!(f, "{w}"),
            Exact::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Exact {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigUint>()
            .map(Exact::normalize)
            .map_err(|e| format!("`{s}`: {e}"))
    }
}

impl Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<u128> for Exact {
    fn from(v: u128) -> Self {
        Exact::Word(v)
    }
}

/// Reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: Exact,
    den: Exact,
}

impl Fraction {
    pub fn new(num: Exact, den: Exact) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        match (&num, &den) {
            (Exact::Word(a), Exact::Word(b)) => {
                let g = a.gcd(b);
                Fraction {
                    num: Exact::Word(a / g),
                    den: Exact::Word(b / g),
                }
            }
            _ => {
                let (a, b) = (num.to_biguint(), den.to_biguint());
                let g = a.gcd(&b);
                Fraction {
                    num: Exact::normalize(a / &g),
                    den: Exact::normalize(b / &g),
                }
            }
        }
    }

    pub fn one() -> Self {
        Fraction {
            num: Exact::one(),
            den: Exact::one(),
        }
    }

    pub fn numer(&self) -> &Exact {
        &self.num
    }

    pub fn denom(&self) -> &Exact {
        &self.den
    }

    pub fn to_f64(&self) -> f64 {
        let f = |e: &Exact| match e {
            Exact::Word(w) => *w as f64,
            Exact::Big(b) => b.to_f64().unwrap_or(f64::INFINITY),
        };
        f(&self.num) / f(&self.den)
    }

    pub fn is_at_least_one(&self) -> bool {
        self.num >= self.den
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num.mul(&other.den).cmp(&other.num.mul(&self.den))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once('/').ok_or_else(|| format!("`{s}` is not p/q"))?;
        let den: Exact = b.parse()?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Fraction::new(a.parse()?, den))
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Indices `|G : G_S|` for every nonempty `S ⊆ {1..n}`, keyed by bitmask
/// (bit `i` stands for subgroup `i+1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntropyVector {
    n: usize,
    group_order: u64,
    /// Entry 0 is the empty set, index 1.
    indices: Vec<u64>,
    /// Subgroup id of `G_S`; entry 0 is the whole group.
    intersections: Vec<usize>,
}

impl EntropyVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// `|G : G_S|`; mask 0 gives 1.
    pub fn index(&self, mask: usize) -> u64 {
        self.indices[mask]
    }

    /// Order of `G_S`.
    pub fn order(&self, mask: usize) -> u64 {
        self.group_order / self.indices[mask]
    }

    pub fn intersection_id(&self, mask: usize) -> usize {
        self.intersections[mask]
    }

    /// Display-only `log2 |G : G_S|`.
    pub fn log2(&self, mask: usize) -> f64 {
        (self.indices[mask] as f64).log2()
    }

    /// `(mask, index)` over the `2^n - 1` nonempty subsets.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.indices.iter().copied().enumerate().skip(1)
    }

    /// Index list over nonempty masks in increasing order.
    pub fn nonempty_indices(&self) -> &[u64] {
        &self.indices[1..]
    }
}

/// The entropy vector of the subgroups `tuple` (ids into `table`).
pub fn entropy_vector(table: &SubgroupTable, tuple: &[usize]) -> Result<EntropyVector, EntropyError> {
    let n = tuple.len();
    if n == 0 {
        return Err(EntropyError::EmptyTuple);
    }
    if n > MAX_TUPLE {
        return Err(EntropyError::NCapExceeded { n });
    }
    for &id in tuple {
        table.get(id)?;
    }
    let size = 1usize << n;
    let mut inter = vec![table.whole(); size];
    let mut indices = vec![1u64; size];
    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        inter[mask] = if rest == 0 {
            tuple[low]
        } else {
            table.intersect(inter[rest], tuple[low])?
        };
        indices[mask] = table.index(inter[mask]) as u64;
    }
    Ok(EntropyVector {
        n,
        group_order: table.group_order() as u64,
        indices,
        intersections: inter,
    })
}

/// One Ingleton evaluation:
/// `|G1||G2||G34||G123||G124|  >=  |G12||G13||G14||G23||G24|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IngletonReport {
    pub quadruple: [usize; 4],
    /// `|G1|, |G2|, |G34|, |G123|, |G124|`.
    pub lhs_orders: [u64; 5],
    /// `|G12|, |G13|, |G14|, |G23|, |G24|`.
    pub rhs_orders: [u64; 5],
    pub lhs: Exact,
    pub rhs: Exact,
    pub satisfied: bool,
    /// `lhs / rhs`, reduced.
    pub slack: Fraction,
}

impl IngletonReport {
    pub fn from_orders(quadruple: [usize; 4], lhs_orders: [u64; 5], rhs_orders: [u64; 5]) -> Self {
        let lhs = Exact::product(&lhs_orders);
        let rhs = Exact::product(&rhs_orders);
        let satisfied = lhs >= rhs;
        let slack = Fraction::new(lhs.clone(), rhs.clone());
        IngletonReport {
            quadruple,
            lhs_orders,
            rhs_orders,
            lhs,
            rhs,
            satisfied,
            slack,
        }
    }
}

/// Exact Ingleton check on four subgroup ids.
pub fn ingleton_check(table: &SubgroupTable, q: [usize; 4]) -> Result<IngletonReport, EntropyError> {
    let [a, b, c, d] = q;
    for id in q {
        table.get(id)?;
    }
    let ab = table.intersect(a, b)?;
    let ord = |id: usize| table.order(id) as u64;
    let lhs = [
        ord(a),
        ord(b),
        ord(table.intersect(c, d)?),
        ord(table.intersect(ab, c)?),
        ord(table.intersect(ab, d)?),
    ];
    let rhs = [
        ord(ab),
        ord(table.intersect(a, c)?),
        ord(table.intersect(a, d)?),
        ord(table.intersect(b, c)?),
        ord(table.intersect(b, d)?),
    ];
    Ok(IngletonReport::from_orders(q, lhs, rhs))
}

/// Which polymatroid inequality failed, on which subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ShannonFailure {
    /// `S ⊆ T` but `|G:G_S| > |G:G_T|`.
    Monotonicity { s: usize, t: usize },
    /// `|G:G_{S∪T}| |G:G_{S∩T}| > |G:G_S| |G:G_T|`.
    Submodularity { s: usize, t: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShannonAudit {
    pub monotone_checks: u64,
    pub submodular_checks: u64,
    /// Whether every pair `(S, T)` was checked, rather than the elemental
    /// inequalities (which imply the rest).
    pub all_pairs: bool,
    pub first_failure: Option<ShannonFailure>,
}

impl ShannonAudit {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Pairwise-submodularity is checked over all `(S, T)` up to this `n`.
const ALL_PAIRS_MAX_N: usize = 8;

/// Exact polymatroid audit: `h(∅) = 0`, monotonicity and submodularity in
/// multiplicative form on the indices.
pub fn shannon_audit(v: &EntropyVector) -> ShannonAudit {
    let n = v.n;
    let size = 1usize << n;
    let idx = |m: usize| v.indices[m] as u128;
    let mut audit = ShannonAudit {
        monotone_checks: 0,
        submodular_checks: 0,
        all_pairs: n <= ALL_PAIRS_MAX_N,
        first_failure: None,
    };
    if v.indices[0] != 1 {
        audit.first_failure = Some(ShannonFailure::Monotonicity { s: 0, t: 0 });
        return audit;
    }
    for t in 0..size {
        // Every submask s of t.
        let mut s = t;
        loop {
            audit.monotone_checks += 1;
            if idx(s) > idx(t) && audit.first_failure.is_none() {
                audit.first_failure = Some(ShannonFailure::Monotonicity { s, t });
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }
    let check = |s: usize, t: usize, audit: &mut ShannonAudit| {
        audit.submodular_checks += 1;
        if idx(s | t) * idx(s & t) > idx(s) * idx(t) && audit.first_failure.is_none() {
            audit.first_failure = Some(ShannonFailure::Submodularity { s, t });
        }
    };
    if audit.all_pairs {
        for s in 0..size {
            for t in s + 1..size {
                check(s, t, &mut audit);
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                let rest = (size - 1) & !(1 << i) & !(1 << j);
                let mut k = rest;
                loop {
                    check(k | 1 << i, k | 1 << j, &mut audit);
                    if k == 0 {
                        break;
                    }
                    k = (k - 1) & rest;
                }
            }
        }
    }
    audit
}

/// `log2` rendered with six decimals.
pub fn format_log2(index: u64) -> String {
    format!("{:.6}", (index as f64).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_builtin;
    use crate::spec::parse_group_spec;
    use crate::subgroup::{enumerate_subgroups, EnumerationLimits};

    fn table(s: &str) -> SubgroupTable {
        let g = build_builtin(&parse_group_spec(s).unwrap(), 10_000).unwrap();
        enumerate_subgroups(&g, EnumerationLimits::default()).unwrap()
    }

    #[test]
    fn exact_products_switch_to_bignum() {
        assert_eq!(Exact::product(&[2, 3, 7]), Exact::Word(42));
        let big = Exact::product(&[u64::MAX, u64::MAX, 3]);
        let expect = BigUint::from(u64::MAX) * BigUint::from(u64::MAX) * 3u32;
        assert_eq!(big, Exact::Big(expect.clone()));
        assert!(big > Exact::Word(u128::MAX));
        assert_eq!(expect.to_string().parse::<Exact>().unwrap(), big);
        assert_eq!("17".parse::<Exact>().unwrap(), Exact::Word(17));
    }

    #[test]
    fn fractions_reduce_and_order() {
        let f = Fraction::new(Exact::Word(6), Exact::Word(4));
        assert_eq!(f.to_string(), "3/2");
        assert!(Fraction::new(Exact::Word(2), Exact::Word(3)) < Fraction::one());
        assert_eq!("10/5".parse::<Fraction>().unwrap(), Fraction::new(Exact::Word(2), Exact::Word(1)));
        assert!("1/0".parse::<Fraction>().is_err());
        let big = Exact::product(&[u64::MAX, u64::MAX, 4]);
        let g = Fraction::new(big.clone(), Exact::product(&[u64::MAX, u64::MAX, 2]));
        assert_eq!(g.to_string(), "2/1");
    }

    #[test]
    fn all_whole_group_gives_zero_entropy() {
        let t = table("heisenberg p=3");
        let v = entropy_vector(&t, &[t.whole(); 3]).unwrap();
        assert_eq!(v.entries().count(), 7);
        assert!(v.entries().all(|(_, i)| i == 1));
        assert!(v.entries().all(|(m, _)| v.log2(m) == 0.0));
    }

    #[test]
    fn single_subgroup_of_c8() {
        let t = table("cyclic n=8");
        let h = (0..t.len()).find(|&i| t.order(i) == 2).unwrap();
        let v = entropy_vector(&t, &[h]).unwrap();
        assert_eq!(v.index(1), 4);
        assert_eq!(format_log2(v.index(1)), "2.000000");
    }

    #[test]
    fn two_index3_subgroups_of_modular3() {
        let t = table("modular p=3");
        let ids: Vec<usize> = (0..t.len()).filter(|&i| t.index(i) == 3).collect();
        let v = entropy_vector(&t, &ids[..2]).unwrap();
        assert_eq!(v.nonempty_indices(), &[3, 3, 9]);
    }

    #[test]
    fn tuple_errors() {
        let t = table("cyclic n=4");
        assert_eq!(entropy_vector(&t, &[]).unwrap_err(), EntropyError::EmptyTuple);
        assert_eq!(entropy_vector(&t, &[0; 17]).unwrap_err(), EntropyError::NCapExceeded { n: 17 });
        assert!(matches!(entropy_vector(&t, &[7]), Err(EntropyError::Subgroup(_))));
        assert!(ingleton_check(&t, [0, 1, 2, 9]).is_err());
    }

    #[test]
    fn equal_quadruple_is_tight() {
        let t = table("symmetric n=4");
        for h in 0..t.len() {
            let r = ingleton_check(&t, [h; 4]).unwrap();
            let o = t.order(h) as u128;
            assert_eq!(r.lhs, Exact::Word(o.pow(5)));
            assert_eq!(r.rhs, r.lhs);
            assert!(r.satisfied);
            assert_eq!(r.slack, Fraction::one());
        }
    }

    #[test]
    fn ingleton_orders_agree_with_entropy_vector() {
        let t = table("symmetric n=4");
        let q = [3, 7, 11, 20];
        let r = ingleton_check(&t, q).unwrap();
        let v = entropy_vector(&t, &q).unwrap();
        // bits: 1 -> G1, 2 -> G2, 4 -> G3, 8 -> G4
        assert_eq!(r.lhs_orders, [v.order(1), v.order(2), v.order(12), v.order(7), v.order(11)]);
        assert_eq!(r.rhs_orders, [v.order(3), v.order(5), v.order(9), v.order(6), v.order(10)]);
    }

    #[test]
    fn shannon_small_and_nested() {
        let t = table("symmetric n=4");
        let v = entropy_vector(&t, &[5]).unwrap();
        assert!(shannon_audit(&v).passed());
        // A chain 1 < C2 < V4-ish: pick nested ids by inclusion.
        let edges = t.inclusion_edges();
        let (p, c) = edges.iter().copied().find(|&(p, c)| c != 0 && p != t.whole()).unwrap();
        let v = entropy_vector(&t, &[c, p, t.whole()]).unwrap();
        let a = shannon_audit(&v);
        assert!(a.passed());
        // G_S is the smallest subgroup named in S.
        assert_eq!(v.index(0b011), v.index(0b001));
        assert_eq!(v.index(0b111), v.index(0b001));
        assert_eq!(v.index(0b110), v.index(0b010));
    }

    #[test]
    fn shannon_audit_flags_bad_vectors() {
        let t = table("cyclic n=4");
        let mut v = entropy_vector(&t, &[0, 1]).unwrap();
        v.indices[3] = 1;
        assert!(matches!(shannon_audit(&v).first_failure, Some(ShannonFailure::Monotonicity { .. })));
        let mut v = entropy_vector(&t, &[1, 1]).unwrap();
        // Singletons at index 2, the union at 5 > 2 * 2: submodularity fails, monotonicity holds.
        v.indices[3] = 5;
        assert_eq!(
            shannon_audit(&v).first_failure,
            Some(ShannonFailure::Submodularity { s: 1, t: 2 })
        );
    }

    #[test]
    fn elemental_mode_for_wide_tuples() {
        let t = table("abelian 2,2,2");
        let tuple: Vec<usize> = (0..9).map(|i| i % t.len()).collect();
        let v = entropy_vector(&t, &tuple).unwrap();
        let a = shannon_audit(&v);
        assert!(!a.all_pairs);
        assert!(a.passed());
    }
}
