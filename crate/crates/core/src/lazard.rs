//! Class-2 Lazard addition and the abelian counterpart of an odd p-group.
//!
//! For a p-group of class at most 2 and odd `p`, `x ⊕ y = x y [y,x]^(1/2)`
//! where `z^(1/2) = z^((m+1)/2)` and `m` is the order of `z`. The set of
//! elements with `⊕` is an abelian group on the same underlying set, in which
//! every subgroup of the original group is again a subgroup. The
//! [`Certificate`] records that this holds for a concrete table.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_power_base;
use crate::entropy::{entropy_vector, EntropyError};
use crate::group::{FiniteGroup, GroupError, Provenance, Realization};
use crate::scan::{precompute_intersections, IntersectionIndex, ScanError};
use crate::subgroup::{enumerate_subgroups, lower_central_series, EnumerationLimits, SubgroupError, SubgroupTable};

/// Largest nilpotency class handled by the explicit addition formula.
pub const MAX_CLASS: usize = 2;

/// Full associativity audit of the counterpart up to this order.
const FULL_AUDIT_CAP: usize = 512;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LazardError {
    #[error("group of order {order} is not a p-group")]
    NotAPGroup { order: usize },
    #[error("nilpotency class {class} exceeds the supported limit {MAX_CLASS}")]
    ClassExceedsLimit { class: usize },
    #[error("class-2 group with p = 2: the half-commutator is undefined")]
    EvenPrime,
    #[error("counterpart certificate failed: {}", .0.first_failure.as_deref().unwrap_or("unknown"))]
    CertificateFailure(Box<Certificate>),
    #[error("subgroup {id} of the source has no matching subgroup in the counterpart")]
    Unmapped { id: usize },
    #[error("entropy vectors differ at subset mask {mask} for tuple {tuple:?}")]
    Mismatch { tuple: Vec<usize>, mask: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error(transparent)]
    Scan(#[from] ScanError),
}

/// The `⊕` table together with the data that gated it.
#[derive(Debug, Clone)]
pub struct LazardAddition {
    pub p: u64,
    pub class: usize,
    order: usize,
    table: Vec<u32>,
}

impl LazardAddition {
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }
}

/// Checks the p-group, class and odd-prime preconditions; returns `(p, class)`.
pub fn lazard_gate(g: &FiniteGroup) -> Result<(u64, usize), LazardError> {
    let p = prime_power_base(g.order() as u64).ok_or(LazardError::NotAPGroup { order: g.order() })?;
    let class = lower_central_series(g)
        .class
        .expect("finite p-groups are nilpotent");
    if class > MAX_CLASS {
        return Err(LazardError::ClassExceedsLimit { class });
    }
    if class == 2 && p == 2 {
        return Err(LazardError::EvenPrime);
    }
    Ok((p, class))
}

/// The `⊕` table `x ⊕ y = x y c^((m+1)/2)`, `c = [y, x]`, `m = |c|`.
pub fn lazard_addition(g: &FiniteGroup) -> Result<LazardAddition, LazardError> {
    let (p, class) = lazard_gate(g)?;
    let n = g.order();
    if class <= 1 {
        return Ok(LazardAddition {
            p,
            class,
            order: n,
            table: g.table().to_vec(),
        });
    }
    // Half-powers depend only on the commutator, so cache them per element.
    let mut half = vec![u32::MAX; n];
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let c = g.commutator_unchecked(y, x);
            if half[c] == u32::MAX {
                let m = g.element_order_unchecked(c);
                half[c] = g.pow(c, m.div_ceil(2)) as u32;
            }
            table[x * n + y] = g.mul(g.mul(x, y), half[c] as usize) as u32;
        }
    }
    Ok(LazardAddition { p, class, order: n, table })
}

/// Element counts by element order, ascending.
pub fn order_profile(g: &FiniteGroup) -> Vec<(u64, usize)> {
    let mut m = BTreeMap::new();
    for x in g.elements() {
        *m.entry(g.element_order_unchecked(x)).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

/// `(1:1,3:8,9:18)`.
pub fn format_profile(profile: &[(u64, usize)]) -> String {
    let parts: Vec<String> = profile.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    format!("({})", parts.join(","))
}

/// Verification record for a counterpart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Prime, or `None` for a multi-prime nilpotent source.
    pub p: Option<u64>,
    pub class: usize,
    /// `⊕` is a commutative group law with the source's identity and inverses.
    pub abelian: bool,
    /// Every subgroup of the source is closed under `⊕`.
    pub closure: bool,
    /// `|A : A_i| = |G : G_i|` for every subgroup.
    pub indices: bool,
    /// Pairwise intersections coincide as element sets.
    pub intersections: bool,
    pub subgroups_checked: usize,
    pub profile: Vec<(u64, usize)>,
    pub first_failure: Option<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.abelian && self.closure && self.indices && self.intersections
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "OK" } else { "FAIL" };
        write!(f, "class={} ", self.class)?;
        match self.p {
            Some(p) => write!(f, "p={p} ")?,
            None => write!(f, "p=- ")?,
        }
        write!(
            f,
            "abelian={} closure={} indices={} profile={}",
            ok(self.abelian),
            ok(self.closure && self.intersections),
            ok(self.indices),
            format_profile(&self.profile)
        )
    }
}

/// The abelian group `(S, ⊕)` built on a group's own element set.
#[derive(Debug, Clone)]
pub struct AbelianCounterpart {
    pub source: FiniteGroup,
    pub source_subgroups: SubgroupTable,
    pub counterpart: FiniteGroup,
    pub certificate: Certificate,
}

impl AbelianCounterpart {
    /// `x ⊕ y`.
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.counterpart.mul(x, y)
    }
}

/// Builds and certifies the counterpart of a class ≤ 2 odd p-group.
pub fn build_counterpart(g: &FiniteGroup, limits: EnumerationLimits) -> Result<AbelianCounterpart, LazardError> {
    let add = lazard_addition(g)?;
    let table = enumerate_subgroups(g, limits)?;
    let (p, class) = (add.p, add.class);
    certify(g, table, add.into_table(), Some(p), class)
}

/// Assembles `(S, ⊕)` from an addition table and runs every certificate check.
pub(crate) fn certify(
    g: &FiniteGroup,
    g_table: SubgroupTable,
    add: Vec<u32>,
    p: Option<u64>,
    class: usize,
) -> Result<AbelianCounterpart, LazardError> {
    let n = g.order();
    let prov = Provenance::new("lazard-counterpart", format!("{} {}", g.provenance().family, g.provenance().params));
    let mut first_failure: Option<String> = None;
    let a = match FiniteGroup::from_table(n, add, g.labels().to_vec(), prov, Realization::Table) {
        Ok(a) => a,
        Err(e) => {
            let cert = Certificate {
                p,
                class,
                abelian: false,
                closure: false,
                indices: false,
                intersections: false,
                subgroups_checked: 0,
                profile: Vec::new(),
                first_failure: Some(format!("addition table: {e}")),
            };
            return Err(LazardError::CertificateFailure(Box::new(cert)));
        }
    };

    let audit = a.audit_axioms(FULL_AUDIT_CAP);
    let mut abelian = audit.passed();
    if let Some(f) = &audit.first_failure {
        first_failure.get_or_insert(f.clone());
    }
    if !a.is_abelian() {
        abelian = false;
        first_failure.get_or_insert("⊕ is not commutative".into());
    }
    if a.identity() != g.identity() {
        abelian = false;
        first_failure.get_or_insert("⊕ identity differs from the group identity".into());
    }
    if let Some(x) = g.elements().find(|&x| a.inv(x) != g.inv(x)) {
        abelian = false;
        first_failure.get_or_insert(format!("⊕ inverse of {} differs from its group inverse", g.label(x)));
    }

    let mut closure = true;
    let mut indices = true;
    for (id, h) in g_table.subgroups().iter().enumerate() {
        let members: Vec<usize> = h.elements().collect();
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| h.contains(a.mul(x, y))));
        if !closed {
            closure = false;
            first_failure.get_or_insert(format!("subgroup {id} is not ⊕-closed"));
        }
        if a.order() / members.len() != g.order() / h.order() || a.order() % members.len() != 0 {
            indices = false;
            first_failure.get_or_insert(format!("index of subgroup {id} changed"));
        }
    }

    let mut intersections = true;
    let k = g_table.len();
    'outer: for i in 0..k {
        for j in i + 1..k {
            let meet = g_table.intersect(i, j)?;
            let and = g_table.subgroups()[i]
                .members()
                .and(g_table.subgroups()[j].members());
            if &and != g_table.subgroups()[meet].members() {
                intersections = false;
                first_failure.get_or_insert(format!("intersection of {i} and {j} differs"));
                break 'outer;
            }
        }
    }

    let certificate = Certificate {
        p,
        class,
        abelian,
        closure,
        indices,
        intersections,
        subgroups_checked: k,
        profile: order_profile(&a),
        first_failure,
    };
    if !certificate.passed() {
        return Err(LazardError::CertificateFailure(Box::new(certificate)));
    }
    Ok(AbelianCounterpart {
        source: g.clone(),
        source_subgroups: g_table,
        counterpart: a,
        certificate,
    })
}

/// Outcome of comparing entropy vectors of a source group and its counterpart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizabilityReport {
    pub tuples_checked: u64,
    pub entries_compared: u64,
}

/// Maps every subgroup id of the source to the id of the same element set in
/// the counterpart's subgroup table.
pub fn subgroup_embedding(g_table: &SubgroupTable, a_table: &SubgroupTable) -> Result<Vec<usize>, LazardError> {
    g_table
        .subgroups()
        .iter()
        .enumerate()
        .map(|(id, h)| a_table.id_of(h.members()).ok_or(LazardError::Unmapped { id }))
        .collect()
}

/// Compares `|G : G_S|` with `|A : A_S|` for one tuple of source subgroup ids.
pub fn verify_characterizability(
    g_table: &SubgroupTable,
    a_table: &SubgroupTable,
    tuple: &[usize],
) -> Result<CharacterizabilityReport, LazardError> {
    let mapped = tuple
        .iter()
        .map(|&id| {
            let h = g_table.get(id)?;
            a_table.id_of(h.members()).ok_or(LazardError::Unmapped { id })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let vg = entropy_vector(g_table, tuple)?;
    let va = entropy_vector(a_table, &mapped)?;
    if let Some((mask, _)) = vg.entries().zip(va.entries()).find(|(x, y)| x != y).map(|(x, _)| x) {
        return Err(LazardError::Mismatch {
            tuple: tuple.to_vec(),
            mask,
        });
    }
    Ok(CharacterizabilityReport {
        tuples_checked: 1,
        entries_compared: vg.entries().count() as u64,
    })
}

/// Runs the comparison on every multiset of four source subgroups.
///
/// Entropy vectors of a permuted tuple are permutations of each other, so
/// sorted quadruples `a <= b <= c <= d` cover every ordered one.
pub fn verify_all_quadruples(
    cp: &AbelianCounterpart,
    a_table: &SubgroupTable,
) -> Result<CharacterizabilityReport, LazardError> {
    let g_table = &cp.source_subgroups;
    let map = subgroup_embedding(g_table, a_table)?;
    let gi = precompute_intersections(g_table, usize::MAX)?;
    let ai = precompute_intersections(a_table, usize::MAX)?;
    let k = g_table.len();
    let mut report = CharacterizabilityReport {
        tuples_checked: 0,
        entries_compared: 0,
    };
    let mut g_inter = [0usize; 16];
    let mut a_inter = [0usize; 16];
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                for d in c..k {
                    let q = [a, b, c, d];
                    compare_quadruple(&q, &map, &gi, &ai, &mut g_inter, &mut a_inter).map_err(|mask| {
                        LazardError::Mismatch {
                            tuple: q.to_vec(),
                            mask,
                        }
                    })?;
                    report.tuples_checked += 1;
                    report.entries_compared += 15;
                }
            }
        }
    }
    Ok(report)
}

fn compare_quadruple(
    q: &[usize; 4],
    map: &[usize],
    gi: &IntersectionIndex,
    ai: &IntersectionIndex,
    g_inter: &mut [usize; 16],
    a_inter: &mut [usize; 16],
) -> Result<(), usize> {
    for mask in 1..16usize {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        if rest == 0 {
            g_inter[mask] = q[low];
            a_inter[mask] = map[q[low]];
        } else {
            g_inter[mask] = gi.meet(g_inter[rest], q[low]);
            a_inter[mask] = ai.meet(a_inter[rest], map[q[low]]);
        }
        let g_index = gi.group_order() / gi.order(g_inter[mask]);
        let a_index = ai.group_order() / ai.order(a_inter[mask]);
        if g_index != a_index {
            return Err(mask);
        }
    }
    Ok(())
}
