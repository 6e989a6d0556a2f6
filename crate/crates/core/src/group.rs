//! Finite groups as dense multiplication tables over element indices.
//!
//! Every group handled by the crate is a [`FiniteGroup`]: elements are the
//! indices `0..N`, and the product of `x` and `y` is a single table lookup.
//! Concrete realizations (permutations, matrices, residue tuples) are only
//! used while building the table and are kept afterwards for labelling.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Element index inside a [`FiniteGroup`].
pub type Elem = usize;

/// Triples checked for associativity above the full-audit cap.
const ASSOCIATIVITY_SAMPLES: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },
    #[error("malformed generator: {0}")]
    MalformedGenerator(String),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("table is not a group: {0}")]
    NotAGroup(String),
}

/// How a group was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub family: String,
    pub params: String,
    pub note: Option<String>,
}

impl Provenance {
    pub fn new(family: impl Into<String>, params: impl Into<String>) -> Self {
        Provenance {
            family: family.into(),
            params: params.into(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Concrete objects behind the element indices, when there are any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    /// Tuples of residues, added componentwise.
    Residues { moduli: Vec<u64>, elements: Vec<Vec<u64>> },
    /// Permutations of `0..degree` as image arrays; `x*y` applies `x` first.
    Permutations { degree: usize, elements: Vec<Vec<u16>> },
    /// Upper unitriangular `dim x dim` matrices mod `modulus`, row-major.
    Unitriangular { dim: usize, modulus: u64, elements: Vec<Vec<u64>> },
    /// Pairs `(a, b)` standing for `x^a y^b` in `Z/p^2 x| Z/p`.
    Semidirect { p: u64, elements: Vec<(u64, u64)> },
    /// Index `i * right + j` is the pair `(i, j)` of factor indices.
    Product { left: usize, right: usize },
    /// Only the table is known.
    Table,
}

/// Finite group over element indices `0..order`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: Elem,
    inv: Vec<u32>,
    labels: Vec<String>,
    provenance: Provenance,
    realization: Realization,
}

/// Outcome of the table-level axiom checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomAudit {
    pub latin_square: bool,
    pub identity: bool,
    pub inverses: bool,
    pub associativity: bool,
    /// `true` when every triple was checked, `false` when sampled.
    pub associativity_exhaustive: bool,
    pub triples_checked: u64,
    pub first_failure: Option<String>,
}

impl AxiomAudit {
    pub fn passed(&self) -> bool {
        self.latin_square && self.identity && self.inverses && self.associativity
    }
}

impl FiniteGroup {
    /// Builds a group from a raw table, locating the identity and inverses.
    ///
    /// The table must be a Latin square with a two-sided identity; associativity
    /// is not checked here, see [`FiniteGroup::audit_axioms`].
    pub fn from_table(
        order: usize,
        mul: Vec<u32>,
        labels: Vec<String>,
        provenance: Provenance,
        realization: Realization,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if mul.len() != order * order || labels.len() != order {
            return Err(GroupError::NotAGroup("table dimensions disagree with order".into()));
        }
        if mul.iter().any(|&v| v as usize >= order) {
            return Err(GroupError::NotAGroup("entry outside 0..order".into()));
        }
        if !latin_square(order, &mul) {
            return Err(GroupError::NotAGroup("table is not a Latin square".into()));
        }
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|x| mul[e * order + x] as usize == x && mul[x * order + e] as usize == x)
            })
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            let y = row.iter().position(|&v| v as usize == identity).expect("latin row");
            if mul[y * order + x] as usize != identity {
                return Err(GroupError::NotAGroup(format!("element {x} has no two-sided inverse")));
            }
            inv[x] = y as u32;
        }
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inv,
            labels,
            provenance,
            realization,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(
            1,
            vec![0],
            vec!["e".into()],
            Provenance::new("cyclic", "n=1"),
            Realization::Residues {
                moduli: vec![1],
                elements: vec![vec![0]],
            },
        )
        .expect("trivial group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inv[x] as usize
    }

    /// Row `x` of the multiplication table.
    pub fn row(&self, x: Elem) -> &[u32] {
        &self.mul[x * self.order..(x + 1) * self.order]
    }

    pub fn table(&self) -> &[u32] {
        &self.mul
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn check_index(&self, x: Elem) -> Result<Elem, GroupError> {
        if x < self.order {
            Ok(x)
        } else {
            Err(GroupError::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Result<Elem, GroupError> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.commutator_unchecked(x, y))
    }

    #[inline]
    pub(crate) fn commutator_unchecked(&self, x: Elem, y: Elem) -> Elem {
        let xi_yi = self.mul(self.inv(x), self.inv(y));
        self.mul(self.mul(xi_yi, x), y)
    }

    /// Least `m >= 1` with `x^m = e`.
    pub fn element_order(&self, x: Elem) -> Result<u64, GroupError> {
        self.check_index(x)?;
        Ok(self.element_order_unchecked(x))
    }

    pub(crate) fn element_order_unchecked(&self, x: Elem) -> u64 {
        let mut m = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.mul(acc, x);
            m += 1;
        }
        m
    }

    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut base = x;
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Latin square, identity and inverse checks plus associativity, exhaustive
    /// when `order <= full_cap` and sampled with a fixed seed otherwise.
    pub fn audit_axioms(&self, full_cap: usize) -> AxiomAudit {
        let n = self.order;
        let mut audit = AxiomAudit {
            latin_square: latin_square(n, &self.mul),
            identity: true,
            inverses: true,
            associativity: true,
            associativity_exhaustive: n <= full_cap,
            triples_checked: 0,
            first_failure: None,
        };
        if !audit.latin_square {
            audit.first_failure = Some("table is not a Latin square".into());
        }
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                audit.identity = false;
                audit.first_failure.get_or_insert(format!("identity fails at {x}"));
            }
            if self.mul(x, self.inv(x)) != self.identity || self.mul(self.inv(x), x) != self.identity {
                audit.inverses = false;
                audit.first_failure.get_or_insert(format!("inverse fails at {x}"));
            }
        }
        let check = |x: Elem, y: Elem, z: Elem, audit: &mut AxiomAudit| {
            audit.triples_checked += 1;
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                audit.associativity = false;
                audit
                    .first_failure
                    .get_or_insert(format!("associativity fails at ({x}, {y}, {z})"));
            }
        };
        if n <= full_cap {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        check(x, y, z, &mut audit);
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                check(x, y, z, &mut audit);
            }
        }
        audit
    }

    /// Restriction of the table to a subgroup, re-indexed in increasing
    /// element order. Returns the subgroup as a group and the map from new
    /// indices to the parent's indices.
    pub fn restrict(&self, members: &[Elem], provenance: Provenance) -> Result<(FiniteGroup, Vec<Elem>), GroupError> {
        let mut local = HashMap::with_capacity(members.len());
        for (i, &x) in members.iter().enumerate() {
            local.insert(x, i as u32);
        }
        let k = members.len();
        let mut mul = Vec::with_capacity(k * k);
        for &x in members {
            for &y in members {
                let z = self.mul(x, y);
                let zi = local
                    .get(&z)
                    .ok_or_else(|| GroupError::NotAGroup("restriction is not closed".into()))?;
                mul.push(*zi);
            }
        }
        let labels = members.iter().map(|&x| self.labels[x].clone()).collect();
        let g = FiniteGroup::from_table(k, mul, labels, provenance, Realization::Table)?;
        Ok((g, members.to_vec()))
    }
}

fn latin_square(n: usize, mul: &[u32]) -> bool {
    let mut seen = vec![0u32; n];
    let mut stamp = 0u32;
    for r in 0..n {
        stamp += 1;
        for c in 0..n {
            let v = mul[r * n + c] as usize;
            if seen[v] == stamp {
                return false;
            }
            seen[v] = stamp;
        }
    }
    for c in 0..n {
        stamp += 1;
        for r in 0..n {
            let v = mul[r * n + c] as usize;
            if seen[v] == stamp {
                return false;
            }
            seen[v] = stamp;
        }
    }
    true
}

/// Result of a breadth-first closure: the elements in discovery order and
/// the full multiplication table over their indices.
pub(crate) struct Closure<E> {
    pub elements: Vec<E>,
    pub mul: Vec<u32>,
}

/// Breadth-first closure of `gens` under `compose`, starting from `identity`.
///
/// Element `j > 0` is discovered as `parent(j) * gen(j)`, so the table is
/// filled with `x * j = (x * parent(j)) * gen(j)` without re-hashing elements.
pub(crate) fn close<E, F>(identity: E, gens: &[E], compose: F, cap: usize) -> Result<Closure<E>, GroupError>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    let ng = gens.len();
    let mut index: HashMap<E, u32> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut right: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let y = compose(&elements[head], g);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elements.len() as u32;
                    if elements.len() + 1 > cap {
                        return Err(GroupError::OrderCapExceeded {
                            order: elements.len() as u128 + 1,
                            cap,
                        });
                    }
                    index.insert(y.clone(), id);
                    elements.push(y);
                    parent.push((head as u32, gi as u32));
                    id
                }
            };
            right.push(id);
        }
        head += 1;
    }
    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        mul[x * n] = x as u32;
        for j in 1..n {
            let (p, g) = parent[j];
            let xp = mul[x * n + p as usize] as usize;
            mul[x * n + j] = right[xp * ng + g as usize];
        }
    }
    Ok(Closure { elements, mul })
}

/// Universe in which generators are closed into a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universe {
    /// Permutations of `0..degree`, each given as an image array.
    Permutations { degree: usize, gens: Vec<Vec<u16>> },
    /// Upper unitriangular `dim x dim` matrices mod `modulus`, row-major.
    Unitriangular { dim: usize, modulus: u64, gens: Vec<Vec<u64>> },
}

/// Smallest group containing `gens` inside the given universe, indexed in
/// breadth-first discovery order.
pub fn closure_from_generators(universe: &Universe, provenance: Provenance, order_cap: usize) -> Result<FiniteGroup, GroupError> {
    match universe {
        Universe::Permutations { degree, gens } => {
            let degree = *degree;
            if degree > u16::MAX as usize {
                return Err(GroupError::MalformedGenerator(format!("degree {degree} too large")));
            }
            for g in gens {
                if g.len() != degree {
                    return Err(GroupError::MalformedGenerator(format!(
                        "permutation has {} images, expected {degree}",
                        g.len()
                    )));
                }
                let mut seen = vec![false; degree];
                for &v in g {
                    let v = v as usize;
                    if v >= degree || std::mem::replace(&mut seen[v], true) {
                        return Err(GroupError::MalformedGenerator(format!("{g:?} is not a permutation")));
                    }
                }
            }
            let id: Vec<u16> = (0..degree as u16).collect();
            let c = close(id, gens, |x, y| x.iter().map(|&i| y[i as usize]).collect(), order_cap)?;
            let labels = c.elements.iter().map(|p| cycle_notation(p)).collect();
            FiniteGroup::from_table(
                c.elements.len(),
                c.mul,
                labels,
                provenance,
                Realization::Permutations {
                    degree,
                    elements: c.elements,
                },
            )
        }
        Universe::Unitriangular { dim, modulus, gens } => {
            let (dim, m) = (*dim, *modulus);
            if m < 2 {
                return Err(GroupError::InvalidParameter(format!("matrix modulus {m} must be at least 2")));
            }
            for g in gens {
                if g.len() != dim * dim {
                    return Err(GroupError::MalformedGenerator(format!("matrix has {} entries, expected {}", g.len(), dim * dim)));
                }
                for r in 0..dim {
                    for c in 0..dim {
                        let v = g[r * dim + c];
                        let ok = match r.cmp(&c) {
                            std::cmp::Ordering::Greater => v % m == 0,
                            std::cmp::Ordering::Equal => v % m == 1 % m,
                            std::cmp::Ordering::Less => true,
                        };
                        if !ok {
                            return Err(GroupError::MalformedGenerator(format!("{g:?} is not upper unitriangular mod {m}")));
                        }
                    }
                }
            }
            let gens: Vec<Vec<u64>> = gens.iter().map(|g| g.iter().map(|v| v % m).collect()).collect();
            let id = identity_matrix(dim);
            let c = close(id, &gens, |a, b| mat_mul(a, b, dim, m), order_cap)?;
            let labels = c.elements.iter().map(|a| matrix_label(a, dim)).collect();
            FiniteGroup::from_table(
                c.elements.len(),
                c.mul,
                labels,
                provenance,
                Realization::Unitriangular {
                    dim,
                    modulus: m,
                    elements: c.elements,
                },
            )
        }
    }
}

/// `G x H` with componentwise multiplication; `(g, h)` gets index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, order_cap: usize) -> Result<FiniteGroup, GroupError> {
    let (a, b) = (g.order(), h.order());
    let order = a as u128 * b as u128;
    if order > order_cap as u128 {
        return Err(GroupError::OrderCapExceeded { order, cap: order_cap });
    }
    let n = a * b;
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let (x1, x2) = (x / b, x % b);
        for y in 0..n {
            let (y1, y2) = (y / b, y % b);
            mul[x * n + y] = (g.mul(x1, y1) * b + h.mul(x2, y2)) as u32;
        }
    }
    let labels = (0..n).map(|x| format!("({},{})", g.label(x / b), h.label(x % b))).collect();
    let prov = Provenance::new(
        "product",
        format!("{} {} ; {} {}", g.provenance.family, g.provenance.params, h.provenance.family, h.provenance.params),
    );
    FiniteGroup::from_table(n, mul, labels, prov, Realization::Product { left: a, right: b })
}

pub(crate) fn identity_matrix(dim: usize) -> Vec<u64> {
    let mut id = vec![0; dim * dim];
    for i in 0..dim {
        id[i * dim + i] = 1;
    }
    id
}

pub(crate) fn mat_mul(a: &[u64], b: &[u64], dim: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0; dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let v = a[r * dim + k];
            if v == 0 {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] = (out[r * dim + c] + v * b[k * dim + c]) % m;
            }
        }
    }
    out
}

fn matrix_label(a: &[u64], dim: usize) -> String {
    let rows: Vec<String> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| a[r * dim + c].to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join(";"))
}

/// 1-based cycle notation, `()` for the identity.
pub fn cycle_notation(p: &[u16]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
