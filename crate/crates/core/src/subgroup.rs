//! Subgroup enumeration, intersections, the inclusion lattice and the lower
//! central series.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::bitset::ElementSet;
use crate::group::{Elem, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("more than {cap} subgroups")]
    SubgroupCapExceeded { cap: usize },
    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("subgroup id {id} out of range ({count} subgroups)")]
    UnknownId { id: usize, count: usize },
    #[error("intersection of subgroups {a} and {b} is missing from the table")]
    IncompleteTable { a: usize, b: usize },
}

/// A subgroup given by its member bitset, plus a small generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: ElementSet,
    order: usize,
    generators: Vec<Elem>,
}

impl Subgroup {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }
}

/// Smallest subgroup containing `seed`.
pub fn generated_subgroup(g: &FiniteGroup, seed: &[Elem]) -> Subgroup {
    let mut gens: Vec<Elem> = Vec::new();
    let mut current = close_under(g, &[]);
    for &s in seed {
        if !current.members.contains(s) {
            gens.push(s);
            current = close_under(g, &gens);
        }
    }
    current
}

/// Closure of `gens` from the identity under right multiplication.
fn close_under(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut members = ElementSet::empty(g.order());
    let mut list = vec![g.identity()];
    members.insert(g.identity());
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in gens {
            let y = g.mul(x, s);
            if members.insert(y) {
                list.push(y);
            }
        }
        i += 1;
    }
    Subgroup {
        order: list.len(),
        members,
        generators: gens.to_vec(),
    }
}

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub order_cap: usize,
    pub subgroup_cap: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            order_cap: crate::DEFAULT_ORDER_CAP,
            subgroup_cap: crate::DEFAULT_SUBGROUP_CAP,
        }
    }
}

/// Every subgroup of a group, with ids assigned in `(order, bitset)` order.
#[derive(Debug, Clone)]
pub struct SubgroupTable {
    group_order: usize,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElementSet, usize>,
}

impl SubgroupTable {
    fn from_unsorted(group_order: usize, mut subgroups: Vec<Subgroup>) -> Self {
        subgroups.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.members.cmp(&b.members)));
        let lookup = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        SubgroupTable {
            group_order,
            subgroups,
            lookup,
        }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, id: usize) -> Result<&Subgroup, SubgroupError> {
        self.subgroups.get(id).ok_or(SubgroupError::UnknownId {
            id,
            count: self.subgroups.len(),
        })
    }

    /// Order of subgroup `id`; panics on a bad id.
    #[inline]
    pub fn order(&self, id: usize) -> usize {
        self.subgroups[id].order
    }

    pub fn index(&self, id: usize) -> usize {
        self.group_order / self.subgroups[id].order
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn id_of(&self, members: &ElementSet) -> Option<usize> {
        self.lookup.get(members).copied()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// Id of `a ∩ b`.
    pub fn intersect(&self, a: usize, b: usize) -> Result<usize, SubgroupError> {
        let sa = self.get(a)?;
        let sb = self.get(b)?;
        if sa.members.is_subset(&sb.members) {
            return Ok(a);
        }
        if sb.members.is_subset(&sa.members) {
            return Ok(b);
        }
        self.id_of(&sa.members.and(&sb.members))
            .ok_or(SubgroupError::IncompleteTable { a, b })
    }

    /// Subgroup counts keyed by index `|G:H|`.
    pub fn count_by_index(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for s in &self.subgroups {
            *m.entry(self.group_order / s.order).or_insert(0) += 1;
        }
        m
    }

    /// Hasse-diagram cover pairs `(parent, child)`: `child < parent` with
    /// nothing strictly between them.
    pub fn inclusion_edges(&self) -> Vec<(usize, usize)> {
        let k = self.subgroups.len();
        let mut edges = Vec::new();
        for b in 0..k {
            let sb = &self.subgroups[b];
            let below: Vec<usize> = (0..b)
                .filter(|&a| {
                    let sa = &self.subgroups[a];
                    sa.order < sb.order && sb.order % sa.order == 0 && sa.members.is_subset(&sb.members)
                })
                .collect();
            for &a in &below {
                let sa = &self.subgroups[a];
                let covered = below.iter().any(|&c| {
                    let sc = &self.subgroups[c];
                    c != a && sc.order > sa.order && sa.members.is_subset(&sc.members)
                });
                if !covered {
                    edges.push((b, a));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// All subgroups of `g`.
///
/// Seeds with the cyclic subgroups, then joins every subgroup found with every
/// cyclic subgroup it does not already contain until nothing new appears.
/// Every subgroup is reached because it is a join of its cyclic subgroups,
/// and each partial join along the way is itself a subgroup in the table.
pub fn enumerate_subgroups(g: &FiniteGroup, limits: EnumerationLimits) -> Result<SubgroupTable, SubgroupError> {
    if g.order() > limits.order_cap {
        return Err(SubgroupError::OrderCapExceeded {
            order: g.order(),
            cap: limits.order_cap,
        });
    }
    let mut seen: HashMap<ElementSet, usize> = HashMap::new();
    let mut all: Vec<Subgroup> = Vec::new();
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    let mut queue = VecDeque::new();

    let mut push = |s: Subgroup, all: &mut Vec<Subgroup>, queue: &mut VecDeque<usize>| -> Result<bool, SubgroupError> {
        if seen.contains_key(&s.members) {
            return Ok(false);
        }
        if all.len() >= limits.subgroup_cap {
            return Err(SubgroupError::SubgroupCapExceeded { cap: limits.subgroup_cap });
        }
        seen.insert(s.members.clone(), all.len());
        queue.push_back(all.len());
        all.push(s);
        Ok(true)
    };

    push(close_under(g, &[]), &mut all, &mut queue)?;
    for x in g.elements() {
        if x == g.identity() {
            continue;
        }
        if push(close_under(g, &[x]), &mut all, &mut queue)? {
            cyclic_gens.push(x);
        }
    }

    while let Some(h) = queue.pop_front() {
        for &c in &cyclic_gens {
            if all[h].members.contains(c) {
                continue;
            }
            let mut gens = all[h].generators.clone();
            gens.push(c);
            let joined = close_under(g, &gens);
            push(joined, &mut all, &mut queue)?;
        }
    }
    Ok(SubgroupTable::from_unsorted(g.order(), all))
}

/// The lower central series `γ1 = G`, `γ(i+1) = [γi, G]`.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    /// Strictly descending terms; ends at the trivial group when nilpotent,
    /// otherwise at the first term with `γ(i+1) = γi`.
    pub terms: Vec<Subgroup>,
    /// Nilpotency class, or `None` when the series stabilizes above `1`.
    pub class: Option<usize>,
}

impl CentralSeries {
    pub fn is_nilpotent(&self) -> bool {
        self.class.is_some()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }
}

pub fn lower_central_series(g: &FiniteGroup) -> CentralSeries {
    let whole = generated_subgroup(g, &g.elements().collect::<Vec<_>>());
    let mut terms = vec![whole];
    loop {
        let last = terms.last().expect("nonempty");
        if last.order == 1 {
            let class = terms.len() - 1;
            return CentralSeries { terms, class: Some(class) };
        }
        let mut comms = Vec::new();
        let mut hit = ElementSet::empty(g.order());
        for h in last.elements() {
            for x in g.elements() {
                let c = g.commutator_unchecked(h, x);
                if hit.insert(c) {
                    comms.push(c);
                }
            }
        }
        let next = generated_subgroup(g, &comms);
        if next.members == last.members {
            return CentralSeries { terms, class: None };
        }
        terms.push(next);
    }
}

/// Cover edges as a DOT digraph, parents above children.
pub fn lattice_dot(table: &SubgroupTable, edges: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph subgroups {\n  rankdir=BT;\n");
    for (id, s) in table.subgroups().iter().enumerate() {
        out.push_str(&format!("  s{id} [label=\"{id}: |H|={}\"];\n", s.order()));
    }
    for (p, c) in edges {
        out.push_str(&format!("  s{c} -> s{p};\n"));
    }
    out.push_str("}\n");
    out
}
