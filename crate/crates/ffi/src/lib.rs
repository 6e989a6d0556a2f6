//! C interface to `ingleton-core`.
//!
//! Objects cross the boundary as opaque handles created by `ig_*_new` or
//! `ig_*_from_*` functions and released by the matching `ig_*_free`. Every
//! fallible call returns an [`IgStatus`]; on failure the message is available
//! from [`ig_last_error`] on the same thread. Results are written through out
//! pointers only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ingleton_core::entropy::EntropyError;
use ingleton_core::lazard::{verify_all_quadruples, LazardError};
use ingleton_core::nilpotent::NilpotentError;
use ingleton_core::scan::{ScanError, DEFAULT_MEMORY_BUDGET};
use ingleton_core::spec::SpecError;
use ingleton_core::subgroup::{EnumerationLimits, SubgroupError};
use ingleton_core::{
    build_builtin, build_counterpart, enumerate_subgroups, entropy_vector, ingleton_check, ingleton_scan,
    lower_central_series, nilpotent_abelian_counterpart, parse_group_spec, precompute_intersections,
    sylow_decomposition, FiniteGroup, GroupError, ScanOptions, ScanResult, SubgroupTable,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    LimitExceeded = 4,
    /// The group lacks a property the call needs (nilpotent, odd p-group...).
    NotApplicable = 5,
    /// A construction ran but its certificate or comparison failed.
    CertificateFailed = 6,
    Panic = 7,
}

/// A finite group as a multiplication table.
pub struct IgGroup {
    group: FiniteGroup,
}

/// The subgroups of a group with their ids.
pub struct IgLattice {
    table: SubgroupTable,
}

/// Outcome of a full Ingleton scan.
pub struct IgScan {
    result: ScanResult,
}

/// Both sides of the Ingleton inequality for one quadruple, as the orders
/// whose products form each side.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IgIngleton {
    /// `|G1|, |G2|, |G34|, |G123|, |G124|`.
    pub lhs_orders: [u64; 5],
    /// `|G12|, |G13|, |G14|, |G23|, |G24|`.
    pub rhs_orders: [u64; 5],
    pub satisfied: bool,
    /// `lhs / rhs`, rounded.
    pub slack: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IgScanOptions {
    /// `0` picks the available parallelism.
    pub threads: usize,
    /// Skip quadruples with a repeated id.
    pub distinct: bool,
    /// Violating quadruples kept in the result; all are still counted.
    pub max_violations: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IgLazardReport {
    pub certificate_passed: bool,
    pub class: usize,
    /// Sorted quadruples whose entropy vectors matched.
    pub quadruples_checked: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: IgStatus,
    message: String,
}

impl Failure {
    fn new(status: IgStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure::new(IgStatus::ParseError, e.to_string())
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let status = match e {
            GroupError::OrderCapExceeded { .. } => IgStatus::LimitExceeded,
            _ => IgStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<SubgroupError> for Failure {
    fn from(e: SubgroupError) -> Self {
        let status = match e {
            SubgroupError::SubgroupCapExceeded { .. } | SubgroupError::OrderCapExceeded { .. } => {
                IgStatus::LimitExceeded
            }
            _ => IgStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<EntropyError> for Failure {
    fn from(e: EntropyError) -> Self {
        match e {
            EntropyError::Subgroup(s) => s.into(),
            EntropyError::NCapExceeded { .. } => Failure::new(IgStatus::LimitExceeded, e.to_string()),
            EntropyError::EmptyTuple => Failure::new(IgStatus::InvalidArgument, e.to_string()),
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        let status = match e {
            ScanError::MemoryBudgetExceeded { .. } | ScanError::ArithmeticWidth { .. } => IgStatus::LimitExceeded,
            _ => IgStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<LazardError> for Failure {
    fn from(e: LazardError) -> Self {
        let status = match &e {
            LazardError::NotAPGroup { .. } | LazardError::ClassExceedsLimit { .. } | LazardError::EvenPrime => {
                IgStatus::NotApplicable
            }
            LazardError::CertificateFailure(_) | LazardError::Unmapped { .. } | LazardError::Mismatch { .. } => {
                IgStatus::CertificateFailed
            }
            LazardError::Group(g) => return g.clone().into(),
            LazardError::Subgroup(s) => return s.clone().into(),
            _ => IgStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<NilpotentError> for Failure {
    fn from(e: NilpotentError) -> Self {
        match e {
            NilpotentError::Lazard(l) | NilpotentError::Part { source: l, .. } => l.into(),
            NilpotentError::Group(g) => g.into(),
            NilpotentError::Subgroup(s) => s.into(),
            NilpotentError::Entropy(x) => x.into(),
            e @ (NilpotentError::NotNilpotent | NilpotentError::NotASubgroup { .. }) => {
                Failure::new(IgStatus::NotApplicable, e.to_string())
            }
            e => Failure::new(IgStatus::CertificateFailed, e.to_string()),
        }
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> IgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IgStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(&e.message);
            e.status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_last_error(&msg);
            IgStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(IgStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(IgStatus::NullPointer, "null out pointer"));
    }
    out.write(value);
    Ok(())
}

fn element(g: &FiniteGroup, x: usize) -> Result<usize, Failure> {
    Ok(g.check_index(x)?)
}

fn subgroup_id(t: &SubgroupTable, id: usize) -> Result<usize, Failure> {
    t.get(id)?;
    Ok(id)
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ig_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a group from a spec line such as `heisenberg p=3`.
/// `order_cap == 0` uses the default cap.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_from_spec(spec: *const c_char, order_cap: usize, out: *mut *mut IgGroup) -> IgStatus {
    guard(|| {
        if spec.is_null() {
            return Err(Failure::new(IgStatus::NullPointer, "null spec"));
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| Failure::new(IgStatus::ParseError, "spec is not UTF-8"))?;
        let cap = if order_cap == 0 { ingleton_core::DEFAULT_ORDER_CAP } else { order_cap };
        let group = build_builtin(&parse_group_spec(text)?, cap)?;
        write(out, Box::into_raw(Box::new(IgGroup { group })))
    })
}

/// # Safety
/// `g` must come from [`ig_group_from_spec`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ig_group_free(g: *mut IgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_order(g: *const IgGroup, out: *mut usize) -> IgStatus {
    guard(|| write(out, borrow(g)?.group.order()))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_identity(g: *const IgGroup, out: *mut usize) -> IgStatus {
    guard(|| write(out, borrow(g)?.group.identity()))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_mul(g: *const IgGroup, x: usize, y: usize, out: *mut usize) -> IgStatus {
    guard(|| {
        let g = &borrow(g)?.group;
        write(out, g.mul(element(g, x)?, element(g, y)?))
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_inverse(g: *const IgGroup, x: usize, out: *mut usize) -> IgStatus {
    guard(|| {
        let g = &borrow(g)?.group;
        write(out, g.inv(element(g, x)?))
    })
}

/// `[x, y] = x⁻¹ y⁻¹ x y`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_commutator(g: *const IgGroup, x: usize, y: usize, out: *mut usize) -> IgStatus {
    guard(|| write(out, borrow(g)?.group.commutator(x, y)?))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_element_order(g: *const IgGroup, x: usize, out: *mut u64) -> IgStatus {
    guard(|| write(out, borrow(g)?.group.element_order(x)?))
}

/// Nilpotency class; `NotApplicable` when the group is not nilpotent.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_group_class(g: *const IgGroup, out: *mut usize) -> IgStatus {
    guard(|| {
        let class = lower_central_series(&borrow(g)?.group)
            .class
            .ok_or_else(|| Failure::new(IgStatus::NotApplicable, "group is not nilpotent"))?;
        write(out, class)
    })
}

/// Enumerates every subgroup. `subgroup_cap == 0` uses the default cap.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_lattice_new(g: *const IgGroup, subgroup_cap: usize, out: *mut *mut IgLattice) -> IgStatus {
    guard(|| {
        let limits = EnumerationLimits {
            subgroup_cap: if subgroup_cap == 0 { ingleton_core::DEFAULT_SUBGROUP_CAP } else { subgroup_cap },
            ..EnumerationLimits::default()
        };
        let table = enumerate_subgroups(&borrow(g)?.group, limits)?;
        write(out, Box::into_raw(Box::new(IgLattice { table })))
    })
}

/// # Safety
/// `l` must come from [`ig_lattice_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ig_lattice_free(l: *mut IgLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of subgroups. Ids run from `0` (trivial) to `len - 1` (whole group).
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_lattice_len(l: *const IgLattice, out: *mut usize) -> IgStatus {
    guard(|| write(out, borrow(l)?.table.len()))
}

/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_lattice_subgroup_order(l: *const IgLattice, id: usize, out: *mut usize) -> IgStatus {
    guard(|| {
        let t = &borrow(l)?.table;
        write(out, t.order(subgroup_id(t, id)?))
    })
}

/// Id of `a ∩ b`.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_lattice_intersect(l: *const IgLattice, a: usize, b: usize, out: *mut usize) -> IgStatus {
    guard(|| write(out, borrow(l)?.table.intersect(a, b)?))
}

/// Writes `|G : G_S|` for every nonempty subset mask `S` of the `n` ids into
/// `out[S - 1]`. Bit `i` of a mask selects `ids[i]`; `out_len` must be at
/// least `2^n - 1`.
///
/// # Safety
/// `l` must be a live handle, `ids` must hold `n` values and `out` must hold
/// `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn ig_entropy_vector(
    l: *const IgLattice,
    ids: *const usize,
    n: usize,
    out: *mut u64,
    out_len: usize,
) -> IgStatus {
    guard(|| {
        let t = &borrow(l)?.table;
        if ids.is_null() || out.is_null() {
            return Err(Failure::new(IgStatus::NullPointer, "null array"));
        }
        let ids = std::slice::from_raw_parts(ids, n);
        let v = entropy_vector(t, ids)?;
        let needed = (1usize << n) - 1;
        if out_len < needed {
            return Err(Failure::new(
                IgStatus::InvalidArgument,
                format!("output holds {out_len} values, {needed} needed"),
            ));
        }
        let out = std::slice::from_raw_parts_mut(out, needed);
        for (mask, index) in v.entries() {
            out[mask - 1] = index;
        }
        Ok(())
    })
}

/// # Safety
/// `l` must be a live handle, `ids` must hold four values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn ig_ingleton_check(l: *const IgLattice, ids: *const usize, out: *mut IgIngleton) -> IgStatus {
    guard(|| {
        let t = &borrow(l)?.table;
        if ids.is_null() {
            return Err(Failure::new(IgStatus::NullPointer, "null ids"));
        }
        let q: [usize; 4] = std::slice::from_raw_parts(ids, 4).try_into().expect("four ids");
        let r = ingleton_check(t, q)?;
        write(
            out,
            IgIngleton {
                lhs_orders: r.lhs_orders,
                rhs_orders: r.rhs_orders,
                satisfied: r.satisfied,
                slack: r.slack.to_f64(),
            },
        )
    })
}

/// Options matching the command-line defaults.
#[no_mangle]
pub extern "C" fn ig_scan_options_default() -> IgScanOptions {
    let d = ScanOptions::default();
    IgScanOptions {
        threads: 0,
        distinct: d.distinct,
        max_violations: d.max_violations,
    }
}

/// Checks every canonical quadruple of the lattice. `options` may be null.
///
/// # Safety
/// `l` must be a live handle, `options` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_new(l: *const IgLattice, options: *const IgScanOptions, out: *mut *mut IgScan) -> IgStatus {
    guard(|| {
        let t = &borrow(l)?.table;
        let o = options.as_ref().copied().unwrap_or_else(|| ig_scan_options_default());
        let idx = precompute_intersections(t, DEFAULT_MEMORY_BUDGET)?;
        let result = ingleton_scan(
            &idx,
            &ScanOptions {
                threads: (o.threads > 0).then_some(o.threads),
                distinct: o.distinct,
                max_violations: o.max_violations,
                ..ScanOptions::default()
            },
        )?;
        write(out, Box::into_raw(Box::new(IgScan { result })))
    })
}

/// # Safety
/// `s` must come from [`ig_scan_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_free(s: *mut IgScan) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_checked(s: *const IgScan, out: *mut u64) -> IgStatus {
    guard(|| write(out, borrow(s)?.result.quadruples_checked))
}

/// Total number of violating canonical quadruples.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_violation_count(s: *const IgScan, out: *mut u64) -> IgStatus {
    guard(|| write(out, borrow(s)?.result.violation_count))
}

/// Number of violations kept, at most `max_violations`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_kept(s: *const IgScan, out: *mut usize) -> IgStatus {
    guard(|| write(out, borrow(s)?.result.violations.len()))
}

/// The `i`-th kept violation, in scan order.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_violation(s: *const IgScan, i: usize, out: *mut IgIngleton, ids: *mut usize) -> IgStatus {
    guard(|| {
        let v = borrow(s)?
            .result
            .violations
            .get(i)
            .ok_or_else(|| Failure::new(IgStatus::InvalidArgument, format!("no violation {i}")))?;
        if !ids.is_null() {
            std::slice::from_raw_parts_mut(ids, 4).copy_from_slice(&v.quadruple);
        }
        write(
            out,
            IgIngleton {
                lhs_orders: v.lhs_orders,
                rhs_orders: v.rhs_orders,
                satisfied: v.satisfied,
                slack: v.slack.to_f64(),
            },
        )
    })
}

/// Smallest `lhs / rhs` seen, rounded. `NotApplicable` for an empty scan.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_scan_min_slack(s: *const IgScan, out: *mut f64) -> IgStatus {
    guard(|| {
        let m = borrow(s)?
            .result
            .min_slack
            .as_ref()
            .ok_or_else(|| Failure::new(IgStatus::NotApplicable, "no quadruples scanned"))?;
        write(out, m.to_f64())
    })
}

/// Builds the abelian counterpart of an odd p-group of class below `p`, or of
/// a nilpotent group through its Sylow parts, and compares the entropy
/// vectors of every sorted subgroup quadruple.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ig_lazard_verify(g: *const IgGroup, out: *mut IgLazardReport) -> IgStatus {
    guard(|| {
        let g = &borrow(g)?.group;
        let limits = EnumerationLimits::default();
        let cp = match build_counterpart(g, limits) {
            Ok(cp) => cp,
            Err(LazardError::NotAPGroup { .. }) => nilpotent_abelian_counterpart(g, &sylow_decomposition(g)?, limits)?,
            Err(e) => return Err(e.into()),
        };
        let a_table = enumerate_subgroups(&cp.counterpart, limits)?;
        let r = verify_all_quadruples(&cp, &a_table)?;
        write(
            out,
            IgLazardReport {
                certificate_passed: cp.certificate.passed(),
                class: cp.certificate.class,
                quadruples_checked: r.tuples_checked,
            },
        )
    })
}
