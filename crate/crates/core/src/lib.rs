//! Group-characterizable entropy vectors and the Ingleton inequality.
//!
//! A finite group `G` with subgroups `G1..Gn` yields the vector of indices
//! `|G : G_S|`, `G_S = ∩_{i∈S} Gi`, over nonempty `S ⊆ {1..n}`. This crate
//! builds groups as multiplication tables, enumerates their subgroups,
//! computes those vectors exactly, scans every subgroup quadruple for
//! Ingleton violations, and constructs the class-2 Lazard abelian counterpart
//! of odd p-groups and of nilpotent groups through their Sylow parts.

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod cli;
pub mod entropy;
pub mod families;
pub mod group;
pub mod lazard;
pub mod nilpotent;
pub mod report;
pub mod scan;
pub mod spec;
pub mod subgroup;

pub use entropy::{entropy_vector, ingleton_check, shannon_audit, EntropyVector, Exact, IngletonReport};
pub use families::build_builtin;
pub use group::{closure_from_generators, direct_product, Elem, FiniteGroup, GroupError};
pub use lazard::{build_counterpart, lazard_addition, order_profile, verify_characterizability, AbelianCounterpart};
pub use nilpotent::{
    corollary_gate, ingleton_via_sylow, nilpotent_abelian_counterpart, subgroup_sylow_split, sylow_decomposition,
    SylowDecomposition,
};
pub use scan::{ingleton_scan, precompute_intersections, IntersectionIndex, ScanOptions, ScanResult};
pub use spec::{parse_group_spec, GroupSpec};
pub use subgroup::{enumerate_subgroups, generated_subgroup, lower_central_series, SubgroupTable};

/// Largest group order accepted by default.
pub const DEFAULT_ORDER_CAP: usize = 10_000;
/// Largest subgroup count accepted by default.
pub const DEFAULT_SUBGROUP_CAP: usize = 100_000;
