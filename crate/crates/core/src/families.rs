//! Builtin group families.

use crate::group::{
    close, closure_from_generators, direct_product, identity_matrix, FiniteGroup, GroupError, Provenance, Realization,
    Universe,
};
use crate::spec::GroupSpec;

const MODULAR_NOTE: &str = "realized as Z/p^2 x| Z/p with y^-1 x y = x^(1+p); pair (a,b) is x^a y^b";

/// Closed-form order, saturating at `u128::MAX`.
pub fn expected_order(spec: &GroupSpec) -> Option<u128> {
    let sat = |a: u128, b: u128| a.saturating_mul(b);
    Some(match spec {
        GroupSpec::Cyclic { n } => *n as u128,
        GroupSpec::Abelian { moduli } => moduli.iter().fold(1u128, |a, &m| sat(a, m as u128)),
        GroupSpec::Symmetric { n } => (1..=*n as u128).fold(1u128, sat),
        GroupSpec::Heisenberg { p } | GroupSpec::Modular { p } => sat(sat(*p as u128, *p as u128), *p as u128),
        GroupSpec::Unitriangular { n, p } => {
            let e = n * n.saturating_sub(1) / 2;
            (0..e).fold(1u128, |a, _| sat(a, *p as u128))
        }
        GroupSpec::Product(parts) => {
            let mut acc = 1u128;
            for p in parts {
                acc = sat(acc, expected_order(p)?);
            }
            acc
        }
        GroupSpec::PermGens { .. } | GroupSpec::MatrixGens { .. } => return None,
    })
}

/// Builds a group from a spec, refusing anything whose order exceeds `order_cap`.
pub fn build_builtin(spec: &GroupSpec, order_cap: usize) -> Result<FiniteGroup, GroupError> {
    spec.validate().map_err(GroupError::InvalidParameter)?;
    if let Some(order) = expected_order(spec) {
        if order > order_cap as u128 {
            return Err(GroupError::OrderCapExceeded { order, cap: order_cap });
        }
    }
    let prov = |params: String| Provenance::new(spec.family(), params);
    match spec {
        GroupSpec::Cyclic { n } => residues(&[*n], prov(format!("n={n}")), order_cap),
        GroupSpec::Abelian { moduli } => {
            let m: Vec<String> = moduli.iter().map(u64::to_string).collect();
            residues(moduli, prov(m.join(",")), order_cap)
        }
        GroupSpec::Symmetric { n } => {
            let n = *n as usize;
            let mut gens = Vec::new();
            if n >= 2 {
                let mut t: Vec<u16> = (0..n as u16).collect();
                t.swap(0, 1);
                gens.push(t);
                gens.push((0..n as u16).map(|i| (i + 1) % n as u16).collect());
            }
            closure_from_generators(&Universe::Permutations { degree: n, gens }, prov(format!("n={n}")), order_cap)
        }
        GroupSpec::Heisenberg { p } => {
            let gens = vec![elementary(3, 0, 1), elementary(3, 1, 2)];
            closure_from_generators(
                &Universe::Unitriangular {
                    dim: 3,
                    modulus: *p,
                    gens,
                },
                prov(format!("p={p}")),
                order_cap,
            )
        }
        GroupSpec::Unitriangular { n, p } => {
            let dim = *n as usize;
            let gens = (0..dim.saturating_sub(1)).map(|i| elementary(dim, i, i + 1)).collect();
            closure_from_generators(
                &Universe::Unitriangular {
                    dim,
                    modulus: *p,
                    gens,
                },
                prov(format!("n={n} p={p}")),
                order_cap,
            )
        }
        GroupSpec::Modular { p } => modular(*p, order_cap),
        GroupSpec::Product(parts) => {
            let mut acc = build_builtin(&parts[0], order_cap)?;
            for part in &parts[1..] {
                let next = build_builtin(part, order_cap)?;
                acc = direct_product(&acc, &next, order_cap)?;
            }
            Ok(acc)
        }
        GroupSpec::PermGens { degree, gens } => {
            let images = gens
                .iter()
                .map(|cycles| {
                    let mut img: Vec<u16> = (0..*degree as u16).collect();
                    for c in cycles {
                        for (i, &pt) in c.iter().enumerate() {
                            img[pt - 1] = (c[(i + 1) % c.len()] - 1) as u16;
                        }
                    }
                    img
                })
                .collect();
            closure_from_generators(
                &Universe::Permutations {
                    degree: *degree,
                    gens: images,
                },
                Provenance::new("perm-gens", spec.to_string()),
                order_cap,
            )
        }
        GroupSpec::MatrixGens { dim, modulus, gens } => closure_from_generators(
            &Universe::Unitriangular {
                dim: *dim,
                modulus: *modulus,
                gens: gens.clone(),
            },
            Provenance::new("matrix-gens", spec.to_string()),
            order_cap,
        ),
    }
}

fn elementary(dim: usize, r: usize, c: usize) -> Vec<u64> {
    let mut m = identity_matrix(dim);
    m[r * dim + c] = 1;
    m
}

fn residues(moduli: &[u64], provenance: Provenance, cap: usize) -> Result<FiniteGroup, GroupError> {
    let k = moduli.len();
    let gens: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut e = vec![0; k];
            e[i] = 1 % moduli[i];
            e
        })
        .collect();
    let c = close(
        vec![0; k],
        &gens,
        |a, b| a.iter().zip(b).zip(moduli).map(|((x, y), m)| (x + y) % m).collect(),
        cap,
    )?;
    let labels = c
        .elements
        .iter()
        .map(|v| {
            if v.len() == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    FiniteGroup::from_table(
        c.elements.len(),
        c.mul,
        labels,
        provenance,
        Realization::Residues {
            moduli: moduli.to_vec(),
            elements: c.elements,
        },
    )
}

fn modular(p: u64, cap: usize) -> Result<FiniteGroup, GroupError> {
    let p2 = p * p;
    // y x y^-1 = x^r with r = (1+p)^-1 = 1-p mod p^2.
    let r = p2 - p + 1;
    let pow_r = |b: u64| (0..b).fold(1u64, |acc, _| acc * r % p2);
    let compose = |x: &(u64, u64), y: &(u64, u64)| ((x.0 + y.0 * pow_r(x.1)) % p2, (x.1 + y.1) % p);
    let c = close((0, 0), &[(1, 0), (0, 1)], compose, cap)?;
    let labels = c.elements.iter().map(|&(a, b)| format!("x^{a}y^{b}")).collect();
    FiniteGroup::from_table(
        c.elements.len(),
        c.mul,
        labels,
        Provenance::new("modular", format!("p={p}")).with_note(MODULAR_NOTE),
        Realization::Semidirect { p, elements: c.elements },
    )
}

/// Index of the element realized by `(a, b)` in a modular group.
pub fn modular_element(g: &FiniteGroup, a: u64, b: u64) -> Option<usize> {
    match g.realization() {
        Realization::Semidirect { elements, .. } => elements.iter().position(|&e| e == (a, b)),
        _ => None,
    }
}

/// Index of a matrix in a unitriangular realization.
pub fn matrix_element(g: &FiniteGroup, m: &[u64]) -> Option<usize> {
    match g.realization() {
        Realization::Unitriangular { elements, .. } => elements.iter().position(|e| e.as_slice() == m),
        _ => None,
    }
}

/// Index of the cycle-notation permutation (1-based points).
pub fn perm_element(g: &FiniteGroup, cycles: &[&[usize]]) -> Option<usize> {
    match g.realization() {
        Realization::Permutations { degree, elements } => {
            let mut img: Vec<u16> = (0..*degree as u16).collect();
            for c in cycles {
                for (i, &pt) in c.iter().enumerate() {
                    img[pt - 1] = (c[(i + 1) % c.len()] - 1) as u16;
                }
            }
            elements.iter().position(|e| *e == img)
        }
        _ => None,
    }
}
