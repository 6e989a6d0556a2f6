//! Sylow decomposition of finite nilpotent groups.
//!
//! A nilpotent group is the direct product of its Sylow subgroups, and the
//! Sylow-p subgroup is exactly the set of elements of p-power order. Every
//! element therefore has one coordinate per prime, subgroups split into
//! their Sylow components, and both the Ingleton inequality and the abelian
//! counterpart can be assembled prime by prime.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{factorize, is_power_of};
use crate::bitset::ElementSet;
use crate::entropy::{ingleton_check, EntropyError, Exact, IngletonReport};
use crate::group::{Elem, FiniteGroup, GroupError, Provenance};
use crate::lazard::{certify, lazard_gate, lazard_addition, AbelianCounterpart, LazardError, MAX_CLASS};
use crate::scan::{precompute_intersections, IntersectionIndex};
use crate::subgroup::{enumerate_subgroups, lower_central_series, EnumerationLimits, SubgroupError, SubgroupTable};

/// Orders up to which the componentwise product is checked on every pair.
const FULL_PRODUCT_CHECK_CAP: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NilpotentError {
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("elements of {p}-power order do not form a subgroup")]
    NotASubgroup { p: u64 },
    #[error("Sylow-{p} part has order {found}, expected {expected}")]
    PartOrder { p: u64, found: usize, expected: usize },
    #[error("decomposition is not direct: {0}")]
    NotDirect(String),
    #[error("split identity fails for {0}")]
    SplitIdentity(String),
    #[error("Sylow-{p} part: {source}")]
    Part { p: u64, source: LazardError },
    #[error("per-prime Ingleton products disagree with the direct check on {quadruple:?}")]
    IngletonMismatch { quadruple: [usize; 4] },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Lazard(#[from] LazardError),
}

/// One Sylow subgroup, both as a member set of `G` and as a group of its own.
#[derive(Debug, Clone)]
pub struct SylowPart {
    pub p: u64,
    /// `|P| = p^exponent`.
    pub exponent: u32,
    pub members: ElementSet,
    pub group: FiniteGroup,
    /// Local index to element of `G`.
    pub embed: Vec<Elem>,
    pub class: usize,
}

impl SylowPart {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Whether the class-2 addition formula applies to this part.
    pub fn lazard_ok(&self) -> bool {
        self.class <= 1 || (self.class <= MAX_CLASS && self.p != 2)
    }
}

/// Checks behind the claim that `G` is the internal direct product of its parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectnessCertificate {
    pub order_product: bool,
    pub trivial_intersections: bool,
    pub parts_commute: bool,
    /// Every element is exactly one product of part elements.
    pub unique_coordinates: bool,
    /// Multiplication is componentwise; `None` when skipped for size.
    pub componentwise: Option<bool>,
}

impl DirectnessCertificate {
    pub fn passed(&self) -> bool {
        self.order_product
            && self.trivial_intersections
            && self.parts_commute
            && self.unique_coordinates
            && self.componentwise != Some(false)
    }
}

impl fmt::Display for DirectnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "OK" } else { "FAIL" };
        write!(
            f,
            "direct={} order-product={} intersections={} commute={} coordinates={} componentwise={}",
            ok(self.passed()),
            ok(self.order_product),
            ok(self.trivial_intersections),
            ok(self.parts_commute),
            ok(self.unique_coordinates),
            match self.componentwise {
                Some(b) => ok(b),
                None => "SKIPPED",
            }
        )
    }
}

#[derive(Debug, Clone)]
pub struct SylowDecomposition {
    pub group_order: usize,
    pub class: usize,
    pub parts: Vec<SylowPart>,
    /// `coords[x][i]` is the local index of the Sylow-`p_i` coordinate of `x`.
    coords: Vec<Vec<u32>>,
    /// Mixed-radix coordinate tuple to element of `G`.
    from_coords: Vec<Elem>,
    pub certificate: DirectnessCertificate,
}

impl SylowDecomposition {
    pub fn primes(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.p).collect()
    }

    /// Local coordinates of `x`, one per prime.
    pub fn coordinates(&self, x: Elem) -> &[u32] {
        &self.coords[x]
    }

    /// Element with the given local coordinates.
    pub fn element(&self, coords: &[u32]) -> Elem {
        self.from_coords[self.radix_index(coords)]
    }

    fn radix_index(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.parts)
            .fold(0, |acc, (&c, part)| acc * part.order() + c as usize)
    }

    /// Sylow-`p_i` component of `x`, as an element of `G`.
    pub fn component(&self, x: Elem, i: usize) -> Elem {
        self.parts[i].embed[self.coords[x][i] as usize]
    }
}

/// Decomposes a nilpotent group into its Sylow subgroups and certifies directness.
pub fn sylow_decomposition(g: &FiniteGroup) -> Result<SylowDecomposition, NilpotentError> {
    let series = lower_central_series(g);
    let class = series.class.ok_or(NilpotentError::NotNilpotent)?;
    let n = g.order();
    let orders: Vec<u64> = g.elements().map(|x| g.element_order(x)).collect::<Result<_, _>>()?;

    let mut parts = Vec::new();
    for (p, e) in factorize(n as u64) {
        let members: Vec<Elem> = g.elements().filter(|&x| is_power_of(orders[x], p)).collect();
        let expected = p.pow(e) as usize;
        if members.len() != expected {
            return Err(NilpotentError::PartOrder {
                p,
                found: members.len(),
                expected,
            });
        }
        let prov = Provenance::new("sylow", format!("p={p} of {} {}", g.provenance().family, g.provenance().params));
        let (group, embed) = g
            .restrict(&members, prov)
            .map_err(|_| NilpotentError::NotASubgroup { p })?;
        let class = lower_central_series(&group).class.ok_or(NilpotentError::NotNilpotent)?;
        parts.push(SylowPart {
            p,
            exponent: e,
            members: ElementSet::from_indices(n, members.iter().copied()),
            group,
            embed,
            class,
        });
    }

    let order_product = parts.iter().map(|p| p.order()).product::<usize>() == n;
    let mut trivial_intersections = true;
    let mut parts_commute = true;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].members.and_count(&parts[j].members) != 1 {
                trivial_intersections = false;
            }
            parts_commute &= parts[i]
                .embed
                .iter()
                .all(|&x| parts[j].embed.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
        }
    }

    // Multiply out every coordinate tuple in mixed radix order.
    let mut from_coords = vec![g.identity()];
    for part in &parts {
        let mut next = Vec::with_capacity(from_coords.len() * part.order());
        for &x in &from_coords {
            next.extend(part.embed.iter().map(|&y| g.mul(x, y)));
        }
        from_coords = next;
    }
    let mut coords = vec![Vec::new(); n];
    let mut unique_coordinates = order_product;
    if unique_coordinates {
        let mut seen = vec![false; n];
        for (idx, &x) in from_coords.iter().enumerate() {
            if std::mem::replace(&mut seen[x], true) {
                unique_coordinates = false;
                break;
            }
            let mut rest = idx;
            let mut c = vec![0u32; parts.len()];
            for (i, part) in parts.iter().enumerate().rev() {
                c[i] = (rest % part.order()) as u32;
                rest /= part.order();
            }
            coords[x] = c;
        }
    }

    let mut decomposition = SylowDecomposition {
        group_order: n,
        class,
        parts,
        coords,
        from_coords,
        certificate: DirectnessCertificate {
            order_product,
            trivial_intersections,
            parts_commute,
            unique_coordinates,
            componentwise: None,
        },
    };
    if unique_coordinates && n <= FULL_PRODUCT_CHECK_CAP {
        let d = &decomposition;
        let ok = g.elements().all(|x| {
            g.elements().all(|y| {
                let xy = d.coordinates(g.mul(x, y));
                d.parts.iter().enumerate().all(|(i, part)| {
                    xy[i] as usize == part.group.mul(d.coords[x][i] as usize, d.coords[y][i] as usize)
                })
            })
        });
        decomposition.certificate.componentwise = Some(ok);
    }
    if !decomposition.certificate.passed() {
        return Err(NilpotentError::NotDirect(decomposition.certificate.to_string()));
    }
    Ok(decomposition)
}

/// Sylow components `H_p = H ∩ P` of a subgroup `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowSplit {
    /// Member sets in `G`'s indexing, one per prime.
    pub components: Vec<ElementSet>,
    pub orders: Vec<usize>,
}

impl SylowSplit {
    pub fn product(&self) -> usize {
        self.orders.iter().product()
    }
}

/// Splits `H` into Sylow components and checks `|H| = ∏ |H_p|` and that `H`
/// is exactly the set of elements whose components all lie in `H`.
pub fn subgroup_sylow_split(h: &ElementSet, d: &SylowDecomposition) -> Result<SylowSplit, NilpotentError> {
    let components: Vec<ElementSet> = d.parts.iter().map(|p| h.and(&p.members)).collect();
    let orders: Vec<usize> = components.iter().map(|c| c.count()).collect();
    let split = SylowSplit { components, orders };
    if split.product() != h.count() {
        return Err(NilpotentError::SplitIdentity(format!(
            "|H| = {} but the components multiply to {}",
            h.count(),
            split.product()
        )));
    }
    for x in 0..d.group_order {
        let by_components = (0..d.parts.len()).all(|i| split.components[i].contains(d.component(x, i)));
        if by_components != h.contains(x) {
            return Err(NilpotentError::SplitIdentity(format!("membership of element {x}")));
        }
    }
    Ok(split)
}

/// Checks `|H ∩ K| = ∏ |H_p ∩ K_p|` and `(H ∩ K)_p = H_p ∩ K_p`.
pub fn check_pair_split(h: &ElementSet, k: &ElementSet, d: &SylowDecomposition) -> Result<(), NilpotentError> {
    let hk = h.and(k);
    let split_h = subgroup_sylow_split(h, d)?;
    let split_k = subgroup_sylow_split(k, d)?;
    let split_hk = subgroup_sylow_split(&hk, d)?;
    let mut product = 1;
    for i in 0..d.parts.len() {
        let meet = split_h.components[i].and(&split_k.components[i]);
        if meet != split_hk.components[i] {
            return Err(NilpotentError::SplitIdentity(format!(
                "intersection component at p = {}",
                d.parts[i].p
            )));
        }
        product *= meet.count();
    }
    if product != hk.count() {
        return Err(NilpotentError::SplitIdentity(format!(
            "|H ∩ K| = {} but components give {product}",
            hk.count()
        )));
    }
    Ok(())
}

/// Decomposition together with each part's own subgroup table.
#[derive(Debug, Clone)]
pub struct SylowContext {
    pub decomposition: SylowDecomposition,
    pub tables: Vec<SubgroupTable>,
}

impl SylowContext {
    pub fn new(d: SylowDecomposition, limits: EnumerationLimits) -> Result<Self, NilpotentError> {
        let tables = d
            .parts
            .iter()
            .map(|p| enumerate_subgroups(&p.group, limits))
            .collect::<Result<_, _>>()?;
        Ok(SylowContext {
            decomposition: d,
            tables,
        })
    }

    /// Id in part `i`'s table of the component `H ∩ P_i`.
    pub fn component_id(&self, i: usize, component: &ElementSet) -> Result<usize, NilpotentError> {
        let part = &self.decomposition.parts[i];
        let local = ElementSet::from_indices(
            part.order(),
            component.iter().map(|x| self.decomposition.coords[x][i] as usize),
        );
        self.tables[i]
            .id_of(&local)
            .ok_or_else(|| NilpotentError::SplitIdentity(format!("component at p = {} is not a subgroup", part.p)))
    }
}

/// Ingleton evaluated prime by prime and recombined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylowIngleton {
    pub per_prime: Vec<(u64, IngletonReport)>,
    pub combined_lhs: Exact,
    pub combined_rhs: Exact,
    pub direct: IngletonReport,
}

impl SylowIngleton {
    pub fn all_parts_satisfied(&self) -> bool {
        self.per_prime.iter().all(|(_, r)| r.satisfied)
    }
}

/// Runs the Ingleton check in every Sylow part and asserts that the
/// products of the per-prime sides equal the direct sides on `G`.
pub fn ingleton_via_sylow(
    ctx: &SylowContext,
    g_table: &SubgroupTable,
    q: [usize; 4],
) -> Result<SylowIngleton, NilpotentError> {
    let direct = ingleton_check(g_table, q)?;
    let d = &ctx.decomposition;
    let mut per_prime = Vec::with_capacity(d.parts.len());
    let mut lhs = Exact::one();
    let mut rhs = Exact::one();
    let splits: Vec<SylowSplit> = q
        .iter()
        .map(|&id| subgroup_sylow_split(g_table.get(id)?.members(), d))
        .collect::<Result<_, NilpotentError>>()?;
    for (i, part) in d.parts.iter().enumerate() {
        let mut local = [0usize; 4];
        for (slot, split) in local.iter_mut().zip(&splits) {
            *slot = ctx.component_id(i, &split.components[i])?;
        }
        let report = ingleton_check(&ctx.tables[i], local)?;
        lhs = lhs.mul(&report.lhs);
        rhs = rhs.mul(&report.rhs);
        per_prime.push((part.p, report));
    }
    if lhs != direct.lhs || rhs != direct.rhs {
        return Err(NilpotentError::IngletonMismatch { quadruple: q });
    }
    let out = SylowIngleton {
        per_prime,
        combined_lhs: lhs,
        combined_rhs: rhs,
        direct,
    };
    if out.all_parts_satisfied() && !out.direct.satisfied {
        return Err(NilpotentError::IngletonMismatch { quadruple: q });
    }
    Ok(out)
}

/// Counterpart of a nilpotent group: each Sylow part gets its own `⊕`, and
/// the sum on `G` is taken coordinatewise.
pub fn nilpotent_abelian_counterpart(
    g: &FiniteGroup,
    d: &SylowDecomposition,
    limits: EnumerationLimits,
) -> Result<AbelianCounterpart, NilpotentError> {
    let adds = d
        .parts
        .iter()
        .map(|part| lazard_addition(&part.group).map_err(|source| NilpotentError::Part { p: part.p, source }))
        .collect::<Result<Vec<_>, _>>()?;
    let n = g.order();
    let mut table = Vec::with_capacity(n * n);
    let mut buf = vec![0u32; d.parts.len()];
    for x in g.elements() {
        for y in g.elements() {
            for (i, add) in adds.iter().enumerate() {
                buf[i] = add.add(d.coords[x][i] as usize, d.coords[y][i] as usize) as u32;
            }
            table.push(d.element(&buf) as u32);
        }
    }
    let g_table = enumerate_subgroups(g, limits)?;
    let p = match d.parts.as_slice() {
        [only] => Some(only.p),
        _ => None,
    };
    Ok(certify(g, g_table, table, p, d.class)?)
}

/// Per-part verdict of the class-versus-prime conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartVerdict {
    pub p: u64,
    pub order: usize,
    pub class: usize,
    pub lazard_ok: bool,
}

/// The smallest-prime test: class strictly below every prime divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryVerdict {
    pub class: usize,
    /// `None` for the trivial group.
    pub smallest_prime: Option<u64>,
    pub applies: bool,
    pub parts: Vec<PartVerdict>,
}

pub fn corollary_gate(g: &FiniteGroup) -> Result<CorollaryVerdict, NilpotentError> {
    let d = sylow_decomposition(g)?;
    let smallest_prime = d.parts.first().map(|p| p.p);
    let applies = smallest_prime.is_none_or(|p| (d.class as u64) < p);
    let parts = d
        .parts
        .iter()
        .map(|part| PartVerdict {
            p: part.p,
            order: part.order(),
            class: part.class,
            lazard_ok: part.lazard_ok() && lazard_gate(&part.group).is_ok(),
        })
        .collect();
    Ok(CorollaryVerdict {
        class: d.class,
        smallest_prime,
        applies,
        parts,
    })
}

/// Outcome of checking every canonical quadruple prime by prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub quadruples: u64,
    /// Quadruples satisfied in every Sylow part.
    pub all_parts_satisfied: u64,
    pub direct_violations: u64,
}

/// For every canonical quadruple (`a <= b`, `c <= d`), checks that each of
/// the ten intersection orders in `G` is the product of the matching orders
/// in the Sylow parts, and that satisfaction in every part implies
/// satisfaction in `G`.
pub fn sylow_cross_validate(ctx: &SylowContext, g_table: &SubgroupTable) -> Result<CrossValidation, NilpotentError> {
    let ids = component_table(ctx, g_table)?;
    let unlimited = usize::MAX;
    let gi = precompute_intersections(g_table, unlimited).map_err(|e| NilpotentError::SplitIdentity(e.to_string()))?;
    let parts: Vec<IntersectionIndex> = ctx
        .tables
        .iter()
        .map(|t| precompute_intersections(t, unlimited))
        .collect::<Result<_, _>>()
        .map_err(|e| NilpotentError::SplitIdentity(e.to_string()))?;
    let k = g_table.len();
    let mut out = CrossValidation {
        quadruples: 0,
        all_parts_satisfied: 0,
        direct_violations: 0,
    };
    for a in 0..k {
        for b in a..k {
            for c in 0..k {
                for d in c..k {
                    let q = [a, b, c, d];
                    let (gl, gr) = gi.ingleton_orders(q);
                    let mut l = [1u64; 5];
                    let mut r = [1u64; 5];
                    let mut parts_ok = true;
                    for (i, pi) in parts.iter().enumerate() {
                        let local = q.map(|x| ids[x][i]);
                        let (pl, pr) = pi.ingleton_orders(local);
                        for j in 0..5 {
                            l[j] *= pl[j];
                            r[j] *= pr[j];
                        }
                        parts_ok &= Exact::product(&pl) >= Exact::product(&pr);
                    }
                    if l != gl || r != gr {
                        return Err(NilpotentError::IngletonMismatch { quadruple: q });
                    }
                    let direct_ok = Exact::product(&gl) >= Exact::product(&gr);
                    if parts_ok && !direct_ok {
                        return Err(NilpotentError::IngletonMismatch { quadruple: q });
                    }
                    out.quadruples += 1;
                    out.all_parts_satisfied += parts_ok as u64;
                    out.direct_violations += !direct_ok as u64;
                }
            }
        }
    }
    Ok(out)
}

/// Per-part lookup of which local id each `G`-subgroup component maps to.
pub fn component_table(ctx: &SylowContext, g_table: &SubgroupTable) -> Result<Vec<Vec<usize>>, NilpotentError> {
    let mut cache: HashMap<(usize, ElementSet), usize> = HashMap::new();
    let mut out = Vec::with_capacity(g_table.len());
    for h in g_table.subgroups() {
        let split = subgroup_sylow_split(h.members(), &ctx.decomposition)?;
        let mut ids = Vec::with_capacity(split.components.len());
        for (i, c) in split.components.into_iter().enumerate() {
            let id = match cache.get(&(i, c.clone())) {
                Some(&id) => id,
                None => {
                    let id = ctx.component_id(i, &c)?;
                    cache.insert((i, c), id);
                    id
                }
            };
            ids.push(id);
        }
        out.push(ids);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_builtin;
    use crate::spec::parse_group_spec;

    fn build(s: &str) -> FiniteGroup {
        build_builtin(&parse_group_spec(s).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn cyclic6_parts() {
        let d = sylow_decomposition(&build("cyclic n=6")).unwrap();
        assert_eq!(d.primes(), vec![2, 3]);
        assert_eq!(d.parts.iter().map(|p| p.order()).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(d.certificate.componentwise, Some(true));
    }

    #[test]
    fn product_parts() {
        let d = sylow_decomposition(&build("product: heisenberg p=3 ; cyclic n=4")).unwrap();
        assert_eq!(d.parts.iter().map(|p| (p.p, p.order(), p.class)).collect::<Vec<_>>(), vec![(2, 4, 1), (3, 27, 2)]);
        assert_eq!(d.class, 2);
    }

    #[test]
    fn symmetric_is_rejected() {
        assert_eq!(sylow_decomposition(&build("symmetric n=4")).unwrap_err(), NilpotentError::NotNilpotent);
    }

    #[test]
    fn coordinates_round_trip() {
        let g = build("product: cyclic n=2 ; heisenberg p=3");
        let d = sylow_decomposition(&g).unwrap();
        for x in g.elements() {
            assert_eq!(d.element(d.coordinates(x)), x);
            let prod = g.mul(d.component(x, 0), d.component(x, 1));
            assert_eq!(prod, x);
        }
    }

    #[test]
    fn trivial_and_whole_split() {
        let g = build("product: cyclic n=2 ; heisenberg p=3");
        let d = sylow_decomposition(&g).unwrap();
        let whole = subgroup_sylow_split(&ElementSet::full(g.order()), &d).unwrap();
        assert_eq!(whole.orders, vec![2, 27]);
        assert_eq!(whole.components[1], d.parts[1].members);
        let trivial = subgroup_sylow_split(&ElementSet::from_indices(g.order(), [g.identity()]), &d).unwrap();
        assert_eq!(trivial.orders, vec![1, 1]);
    }

    #[test]
    fn non_subgroup_fails_split() {
        let g = build("cyclic n=6");
        let d = sylow_decomposition(&g).unwrap();
        // An order-6 generator alone: |H| = 2 but no component contains it.
        let six = g.elements().find(|&x| g.element_order(x).unwrap() == 6).unwrap();
        let bogus = ElementSet::from_indices(6, [g.identity(), six]);
        assert!(subgroup_sylow_split(&bogus, &d).is_err());
    }

    #[test]
    fn gates() {
        let v = corollary_gate(&build("heisenberg p=3")).unwrap();
        assert_eq!((v.class, v.smallest_prime, v.applies), (2, Some(3), true));
        let v = corollary_gate(&build("product: cyclic n=2 ; heisenberg p=3")).unwrap();
        assert_eq!((v.class, v.smallest_prime, v.applies), (2, Some(2), false));
        assert!(v.parts.iter().all(|p| p.lazard_ok));
        let v = corollary_gate(&build("abelian 4,2")).unwrap();
        assert!(v.applies);
        let v = corollary_gate(&build("heisenberg p=2")).unwrap();
        assert!(!v.applies);
        assert!(!v.parts[0].lazard_ok);
        let v = corollary_gate(&FiniteGroup::trivial()).unwrap();
        assert!(v.applies && v.parts.is_empty());
    }

    #[test]
    fn counterpart_of_mixed_product() {
        let g = build("product: cyclic n=4 ; heisenberg p=3");
        let d = sylow_decomposition(&g).unwrap();
        let cp = nilpotent_abelian_counterpart(&g, &d, EnumerationLimits::default()).unwrap();
        assert!(cp.certificate.passed());
        assert_eq!(cp.certificate.profile, vec![(1, 1), (2, 1), (3, 26), (4, 2), (6, 26), (12, 52)]);
    }

    #[test]
    fn cross_validation_on_c2_h3() {
        let g = build("product: cyclic n=2 ; heisenberg p=3");
        let table = enumerate_subgroups(&g, EnumerationLimits::default()).unwrap();
        let ctx = SylowContext::new(sylow_decomposition(&g).unwrap(), EnumerationLimits::default()).unwrap();
        let cv = sylow_cross_validate(&ctx, &table).unwrap();
        let k = table.len() as u64;
        assert_eq!(cv.quadruples, (k * (k + 1) / 2).pow(2));
        assert_eq!(cv.all_parts_satisfied, cv.quadruples);
        assert_eq!(cv.direct_violations, 0);
        let q = [1, 5, 9, k as usize - 1];
        let r = ingleton_via_sylow(&ctx, &table, q).unwrap();
        assert_eq!(r.combined_lhs, r.direct.lhs);
        assert_eq!(r.per_prime.len(), 2);
    }

    #[test]
    fn counterpart_of_abelian_is_itself() {
        let g = build("abelian 4,3,5");
        let d = sylow_decomposition(&g).unwrap();
        let cp = nilpotent_abelian_counterpart(&g, &d, EnumerationLimits::default()).unwrap();
        assert_eq!(cp.counterpart.table(), g.table());
    }

    #[test]
    fn even_class2_part_rejected() {
        let g = build("product: heisenberg p=2 ; cyclic n=3");
        let d = sylow_decomposition(&g).unwrap();
        assert!(matches!(
            nilpotent_abelian_counterpart(&g, &d, EnumerationLimits::default()),
            Err(NilpotentError::Part {
                p: 2,
                source: LazardError::EvenPrime
            })
        ));
    }
}
