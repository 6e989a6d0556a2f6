//! Exhaustive Ingleton scan over all subgroup quadruples.
//!
//! The inequality is unchanged by swapping the first two subgroups or the
//! last two, so only quadruples with `a <= b` and `c <= d` are visited:
//! `(k(k+1)/2)^2` of them for `k` subgroups. Pairwise intersection orders
//! are precomputed once; a triple intersection is one extra lookup through
//! the id of `a ∩ b`. Work is split by blocks of `(a, b)` pairs and merged
//! in block order, so the result does not depend on the thread count.
//!
//! For groups of prime-power order every subgroup order is `p^e`, and the
//! comparison reduces to sums of small exponents, which vectorize well.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_power_base;
use crate::entropy::{Fraction, IngletonReport};
use crate::subgroup::SubgroupTable;

/// Default bound on the intersection index size, in bytes.
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 30;
pub const DEFAULT_MAX_VIOLATIONS: usize = 1_000;

/// `(a, b)` pairs per parallel work unit.
const PAIRS_PER_BLOCK: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("intersection index needs {needed} bytes, budget is {budget}")]
    MemoryBudgetExceeded { needed: u128, budget: usize },
    #[error("intersection of subgroups {a} and {b} is missing from the table")]
    IncompleteTable { a: usize, b: usize },
    #[error("group order {order}: fifth powers exceed 128-bit arithmetic")]
    ArithmeticWidth { order: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// `k x k` table of `a ∩ b` ids and their orders.
#[derive(Debug, Clone)]
pub struct IntersectionIndex {
    k: usize,
    group_order: usize,
    meet: Vec<u32>,
    meet_order: Vec<u32>,
    orders: Vec<u32>,
    /// For `|G| = p^n`: `p` and `log_p |a ∩ b|` for every pair.
    exponents: Option<(u64, Vec<u8>)>,
}

impl IntersectionIndex {
    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Id of `a ∩ b`.
    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.k + b] as usize
    }

    /// `|a ∩ b|`.
    #[inline]
    pub fn meet_order(&self, a: usize, b: usize) -> usize {
        self.meet_order[a * self.k + b] as usize
    }

    #[inline]
    pub fn order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    fn order_row(&self, a: usize) -> &[u32] {
        &self.meet_order[a * self.k..(a + 1) * self.k]
    }

    /// The prime when the group has prime-power order.
    pub fn prime(&self) -> Option<u64> {
        self.exponents.as_ref().map(|(p, _)| *p)
    }

    /// The ten orders of an Ingleton evaluation, straight from the index.
    pub fn ingleton_orders(&self, [a, b, c, d]: [usize; 4]) -> ([u64; 5], [u64; 5]) {
        let ab = self.meet(a, b);
        let o = |x: usize| x as u64;
        (
            [
                o(self.order(a)),
                o(self.order(b)),
                o(self.meet_order(c, d)),
                o(self.meet_order(ab, c)),
                o(self.meet_order(ab, d)),
            ],
            [
                o(self.order(ab)),
                o(self.meet_order(a, c)),
                o(self.meet_order(a, d)),
                o(self.meet_order(b, c)),
                o(self.meet_order(b, d)),
            ],
        )
    }

    pub fn report(&self, q: [usize; 4]) -> IngletonReport {
        let (l, r) = self.ingleton_orders(q);
        IngletonReport::from_orders(q, l, r)
    }
}

/// Resolves every pairwise intersection of a complete table.
pub fn precompute_intersections(table: &SubgroupTable, memory_budget: usize) -> Result<IntersectionIndex, ScanError> {
    let k = table.len();
    let p = prime_power_base(table.group_order() as u64);
    let per_entry = if p.is_some() { 9 } else { 8 };
    let needed = (k as u128) * (k as u128) * per_entry;
    if needed > memory_budget as u128 {
        return Err(ScanError::MemoryBudgetExceeded {
            needed,
            budget: memory_budget,
        });
    }
    let subs = table.subgroups();
    let orders: Vec<u32> = subs.iter().map(|s| s.order() as u32).collect();
    let mut meet = vec![0u32; k * k];
    for a in 0..k {
        meet[a * k + a] = a as u32;
        for b in a + 1..k {
            let (sa, sb) = (subs[a].members(), subs[b].members());
            let m = if sa.is_subset(sb) {
                a
            } else {
                table
                    .id_of(&sa.and(sb))
                    .ok_or(ScanError::IncompleteTable { a, b })?
            };
            meet[a * k + b] = m as u32;
            meet[b * k + a] = m as u32;
        }
    }
    let meet_order: Vec<u32> = meet.iter().map(|&m| orders[m as usize]).collect();
    // Five exponents per side must fit an `i8` difference.
    let exponents = p.filter(|_| (table.group_order() as f64).log2() * 5.0 < 127.0).map(|p| {
        let exps = meet_order
            .iter()
            .map(|&o| {
                let (mut o, mut e) = (o as u64, 0u8);
                while o > 1 {
                    o /= p;
                    e += 1;
                }
                e
            })
            .collect();
        (p, exps)
    });
    Ok(IntersectionIndex {
        k,
        group_order: table.group_order(),
        meet,
        meet_order,
        orders,
        exponents,
    })
}

/// Inner-loop arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// Exponents for prime-power orders, products otherwise.
    #[default]
    Auto,
    /// Always multiply orders.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; `None` lets rayon decide.
    pub threads: Option<usize>,
    /// Only quadruples of four pairwise distinct subgroups.
    pub distinct: bool,
    pub max_violations: usize,
    pub kernel: Kernel,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            threads: None,
            distinct: false,
            max_violations: DEFAULT_MAX_VIOLATIONS,
            kernel: Kernel::Auto,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub subgroups: usize,
    pub quadruples_checked: u64,
    /// Every violation found, including those past the reporting cap.
    pub violation_count: u64,
    /// The first violations in canonical order, at most `max_violations`.
    pub violations: Vec<IngletonReport>,
    /// Smallest `lhs/rhs` seen; `None` only when nothing was checked.
    pub min_slack: Option<Fraction>,
    /// First quadruple attaining `min_slack`.
    pub min_slack_quadruple: Option<[usize; 4]>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl ScanResult {
    pub fn has_violation(&self) -> bool {
        self.violation_count > 0
    }
}

/// Number of canonical quadruples the scan visits.
pub fn canonical_quadruple_count(k: u64, distinct: bool) -> u64 {
    if distinct {
        // Unordered pairs {a,b}, {c,d} of distinct ids with no id shared.
        let pairs = k * k.saturating_sub(1) / 2;
        let disjoint_pairs = k.saturating_sub(2) * k.saturating_sub(3) / 2;
        pairs * disjoint_pairs
    } else {
        let pairs = k * (k + 1) / 2;
        pairs * pairs
    }
}

/// Integer word used inside the hot loop.
trait Word: Copy + Ord + Send + Sync + std::fmt::Debug {
    fn from_u32(v: u32) -> Self;
    fn mul(self, o: Self) -> Self;
    /// `l1/r1 < l2/r2`, exactly.
    fn ratio_lt(l1: Self, r1: Self, l2: Self, r2: Self) -> bool;
}

impl Word for u64 {
    #[inline(always)]
    fn from_u32(v: u32) -> Self {
        v as u64
    }
    #[inline(always)]
    fn mul(self, o: Self) -> Self {
        self.wrapping_mul(o)
    }
    #[inline(always)]
    fn ratio_lt(l1: Self, r1: Self, l2: Self, r2: Self) -> bool {
        (l1 as u128) * (r2 as u128) < (l2 as u128) * (r1 as u128)
    }
}

impl Word for u128 {
    #[inline(always)]
    fn from_u32(v: u32) -> Self {
        v as u128
    }
    #[inline(always)]
    fn mul(self, o: Self) -> Self {
        self.wrapping_mul(o)
    }
    #[inline(always)]
    fn ratio_lt(l1: Self, r1: Self, l2: Self, r2: Self) -> bool {
        mul_wide(l1, r2) < mul_wide(l2, r1)
    }
}

/// Full 256-bit product as `(high, low)`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a_hi, a_lo) = (a >> 64, a & MASK);
    let (b_hi, b_lo) = (b >> 64, b & MASK);
    let ll = a_lo * b_lo;
    let lh = a_lo * b_hi;
    let hl = a_hi * b_lo;
    let hh = a_hi * b_hi;
    let mid = (ll >> 64) + (lh & MASK) + (hl & MASK);
    let low = (ll & MASK) | (mid << 64);
    let high = hh + (lh >> 64) + (hl >> 64) + (mid >> 64);
    (high, low)
}

#[derive(Debug)]
struct BlockResult<W> {
    checked: u64,
    violation_count: u64,
    violations: Vec<[usize; 4]>,
    min: Option<(W, W, [usize; 4])>,
}

impl<W: Word> BlockResult<W> {
    fn new() -> Self {
        BlockResult {
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            min: None,
        }
    }

    fn absorb(&mut self, other: BlockResult<W>, cap: usize) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        let room = cap.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
        if let Some((l, r, q)) = other.min {
            match self.min {
                Some((bl, br, _)) if !W::ratio_lt(l, r, bl, br) => {}
                _ => self.min = Some((l, r, q)),
            }
        }
    }
}

fn scan_block<W: Word>(idx: &IntersectionIndex, pairs: &[(u32, u32)], distinct: bool, cap: usize) -> BlockResult<W> {
    let k = idx.k;
    let mut out = BlockResult::<W>::new();
    // Running minimum as a (lhs, rhs) pair; starts above any real ratio.
    let mut best: Option<(W, W, [usize; 4])> = None;
    for &(a, b) in pairs {
        let (a, b) = (a as usize, b as usize);
        let ab = idx.meet(a, b);
        let ra = idx.order_row(a);
        let rb = idx.order_row(b);
        let rab = idx.order_row(ab);
        let oa_ob = W::from_u32(idx.orders[a]).mul(W::from_u32(idx.orders[b]));
        let oab = W::from_u32(idx.orders[ab]);
        for c in 0..k {
            if distinct && (c == a || c == b) {
                continue;
            }
            let rc = idx.order_row(c);
            let kl = oa_ob.mul(W::from_u32(rab[c]));
            let kr = oab.mul(W::from_u32(ra[c])).mul(W::from_u32(rb[c]));
            let d_start = if distinct { c + 1 } else { c };
            for d in d_start..k {
                if distinct && (d == a || d == b) {
                    continue;
                }
                let lhs = kl.mul(W::from_u32(rc[d])).mul(W::from_u32(rab[d]));
                let rhs = kr.mul(W::from_u32(ra[d])).mul(W::from_u32(rb[d]));
                out.checked += 1;
                if lhs < rhs {
                    out.violation_count += 1;
                    if out.violations.len() < cap {
                        out.violations.push([a, b, c, d]);
                    }
                }
                match best {
                    Some((bl, br, _)) if !W::ratio_lt(lhs, rhs, bl, br) => {}
                    _ => best = Some((lhs, rhs, [a, b, c, d])),
                }
            }
        }
    }
    out.min = best;
    out
}

fn canonical_pairs(k: usize, distinct: bool) -> Vec<(u32, u32)> {
    let k = k as u32;
    (0..k)
        .flat_map(|a| {
            let start = if distinct { a + 1 } else { a };
            (start..k).map(move |b| (a, b))
        })
        .collect()
}

/// Merged outcome of either kernel.
struct Tally {
    checked: u64,
    violation_count: u64,
    violations: Vec<[usize; 4]>,
    min_quadruple: Option<[usize; 4]>,
}

fn run_product<W: Word>(idx: &IntersectionIndex, options: &ScanOptions) -> Tally {
    let pairs = canonical_pairs(idx.k, options.distinct);
    let cap = options.max_violations;
    let blocks: Vec<BlockResult<W>> = pairs
        .par_chunks(PAIRS_PER_BLOCK)
        .map(|chunk| scan_block::<W>(idx, chunk, options.distinct, cap))
        .collect();
    let mut total = BlockResult::new();
    for b in blocks {
        total.absorb(b, cap);
    }
    Tally {
        checked: total.checked,
        violation_count: total.violation_count,
        violations: total.violations,
        min_quadruple: total.min.map(|(_, _, q)| q),
    }
}

#[derive(Debug)]
struct ExpBlock {
    checked: u64,
    violation_count: u64,
    violations: Vec<[usize; 4]>,
    /// Smallest `log_p(lhs/rhs)` and where it first occurs.
    min: Option<(i8, [usize; 4])>,
}

/// Rows of exponents feeding one `(a, b, c)` prefix.
struct ExpRows<'a> {
    ea: &'a [u8],
    eb: &'a [u8],
    eab: &'a [u8],
    ec: &'a [u8],
    /// `log_p` of the constant factors, `lhs - rhs`.
    kd: i8,
}

/// Lane width of the branch-free inner loop.
const LANES: usize = 64;

impl ExpRows<'_> {
    #[inline(always)]
    fn diff(&self, d: usize) -> i8 {
        self.kd + (self.ec[d] + self.eab[d]) as i8 - (self.ea[d] + self.eb[d]) as i8
    }

    /// Violations and minimum over `lo..hi`, branch-free so it vectorizes.
    #[inline(always)]
    fn segment(&self, lo: usize, hi: usize) -> (u32, i8) {
        let kd = self.kd;
        let rows = self.ec[lo..hi]
            .chunks(LANES)
            .zip(self.eab[lo..hi].chunks(LANES))
            .zip(self.ea[lo..hi].chunks(LANES))
            .zip(self.eb[lo..hi].chunks(LANES));
        let mut neg = 0u32;
        let mut min = i8::MAX;
        for (((ec, eab), ea), eb) in rows {
            let mut n = 0u8;
            let mut m = i8::MAX;
            // Exponent sums stay far inside `i8`; wrapping ops only skip the
            // overflow checks that would block vectorization.
            for (((&c, &ab), &a), &b) in ec.iter().zip(eab).zip(ea).zip(eb) {
                let diff = kd.wrapping_add(c.wrapping_add(ab) as i8).wrapping_sub(a.wrapping_add(b) as i8);
                n = n.wrapping_add((diff < 0) as u8);
                m = m.min(diff);
            }
            neg += n as u32;
            min = min.min(m);
        }
        (neg, min)
    }
}

fn scan_block_exp(idx: &IntersectionIndex, exps: &[u8], pairs: &[(u32, u32)], distinct: bool, cap: usize) -> ExpBlock {
    let k = idx.k;
    let row = |x: usize| &exps[x * k..(x + 1) * k];
    let mut out = ExpBlock {
        checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        min: None,
    };
    for &(a, b) in pairs {
        let (a, b) = (a as usize, b as usize);
        let ab = idx.meet(a, b);
        let (ea, eb, eab) = (row(a), row(b), row(ab));
        let base = ea[a] as i8 + eb[b] as i8 - eab[ab] as i8;
        for c in 0..k {
            if distinct && (c == a || c == b) {
                continue;
            }
            let rows = ExpRows {
                ea,
                eb,
                eab,
                ec: row(c),
                kd: base + eab[c] as i8 - ea[c] as i8 - eb[c] as i8,
            };
            let mut segments = [(0usize, 0usize); 3];
            let count = if distinct {
                // `c+1..k` with `a` and `b` cut out.
                let mut n = 0;
                let mut lo = c + 1;
                for cut in [a, b] {
                    if cut >= lo {
                        segments[n] = (lo, cut);
                        n += 1;
                        lo = cut + 1;
                    }
                }
                segments[n] = (lo, k.max(lo));
                n + 1
            } else {
                segments[0] = (c, k);
                1
            };
            for &(lo, hi) in &segments[..count] {
                if lo >= hi {
                    continue;
                }
                let (neg, min) = rows.segment(lo, hi);
                out.checked += (hi - lo) as u64;
                if neg > 0 {
                    out.violation_count += neg as u64;
                    if out.violations.len() < cap {
                        for d in lo..hi {
                            if rows.diff(d) < 0 {
                                out.violations.push([a, b, c, d]);
                                if out.violations.len() == cap {
                                    break;
                                }
                            }
                        }
                    }
                }
                if out.min.is_none_or(|(m, _)| min < m) {
                    let d = (lo..hi).find(|&d| rows.diff(d) == min).expect("minimum is attained");
                    out.min = Some((min, [a, b, c, d]));
                }
            }
        }
    }
    out
}

fn run_exponent(idx: &IntersectionIndex, exps: &[u8], options: &ScanOptions) -> Tally {
    let pairs = canonical_pairs(idx.k, options.distinct);
    let cap = options.max_violations;
    let blocks: Vec<ExpBlock> = pairs
        .par_chunks(PAIRS_PER_BLOCK)
        .map(|chunk| scan_block_exp(idx, exps, chunk, options.distinct, cap))
        .collect();
    let mut tally = Tally {
        checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        min_quadruple: None,
    };
    let mut best: Option<i8> = None;
    for b in blocks {
        tally.checked += b.checked;
        tally.violation_count += b.violation_count;
        let room = cap.saturating_sub(tally.violations.len());
        tally.violations.extend(b.violations.into_iter().take(room));
        if let Some((m, q)) = b.min {
            if best.is_none_or(|bm| m < bm) {
                best = Some(m);
                tally.min_quadruple = Some(q);
            }
        }
    }
    tally
}

/// Visits every canonical quadruple and reports violations and the minimum slack.
pub fn ingleton_scan(idx: &IntersectionIndex, options: &ScanOptions) -> Result<ScanResult, ScanError> {
    let start = Instant::now();
    let n = idx.group_order as u128;
    let fifth = n.checked_mul(n).and_then(|v| v.checked_mul(n)).and_then(|v| v.checked_mul(n)).and_then(|v| v.checked_mul(n));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads.unwrap_or(0))
        .build()
        .map_err(|e| ScanError::ThreadPool(e.to_string()))?;
    let tally = match (&idx.exponents, options.kernel) {
        (Some((_, exps)), Kernel::Auto) => pool.install(|| run_exponent(idx, exps, options)),
        _ => match fifth {
            Some(f) if f <= u64::MAX as u128 => pool.install(|| run_product::<u64>(idx, options)),
            Some(_) => pool.install(|| run_product::<u128>(idx, options)),
            None => {
                return Err(ScanError::ArithmeticWidth {
                    order: idx.group_order,
                })
            }
        },
    };
    Ok(ScanResult {
        subgroups: idx.k,
        quadruples_checked: tally.checked,
        violation_count: tally.violation_count,
        violations: tally.violations.into_iter().map(|q| idx.report(q)).collect(),
        min_slack: tally.min_quadruple.map(|q| idx.report(q).slack),
        min_slack_quadruple: tally.min_quadruple,
        wall_time: start.elapsed(),
    })
}
