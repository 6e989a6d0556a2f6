use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ingleton_ffi::*;

fn group(spec: &str) -> *mut IgGroup {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ig_group_from_spec(spec.as_ptr(), 0, &mut g) }, IgStatus::Ok);
    g
}

fn lattice(g: *const IgGroup) -> *mut IgLattice {
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { ig_lattice_new(g, 0, &mut l) }, IgStatus::Ok);
    l
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ig_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn group_queries() {
    let g = group("heisenberg p=3");
    unsafe {
        let mut n = 0;
        assert_eq!(ig_group_order(g, &mut n), IgStatus::Ok);
        assert_eq!(n, 27);
        let mut e = 0;
        ig_group_identity(g, &mut e);
        let mut class = 0;
        assert_eq!(ig_group_class(g, &mut class), IgStatus::Ok);
        assert_eq!(class, 2);
        let mut noncentral = 0;
        for x in 0..n {
            let mut inv = 0;
            let mut prod = 0;
            ig_group_inverse(g, x, &mut inv);
            ig_group_mul(g, x, inv, &mut prod);
            assert_eq!(prod, e);
            let mut ord = 0;
            ig_group_element_order(g, x, &mut ord);
            assert_eq!(ord, if x == e { 1 } else { 3 });
            for y in 0..n {
                let mut c = 0;
                ig_group_commutator(g, x, y, &mut c);
                if c != e {
                    noncentral += 1;
                    break;
                }
            }
        }
        assert_eq!(noncentral, 24);
        let mut out = 0;
        assert_eq!(ig_group_mul(g, 27, 0, &mut out), IgStatus::InvalidArgument);
        assert!(last_error().contains("27"));
        ig_group_free(g);
    }
}

#[test]
fn non_nilpotent_class_is_not_applicable() {
    let g = group("symmetric n=3");
    let mut class = 0;
    unsafe {
        assert_eq!(ig_group_class(g, &mut class), IgStatus::NotApplicable);
        ig_group_free(g);
    }
}

#[test]
fn lattice_and_entropy() {
    let g = group("abelian 9,3");
    let l = lattice(g);
    unsafe {
        let mut k = 0;
        ig_lattice_len(l, &mut k);
        assert_eq!(k, 10);
        let mut top = 0;
        ig_lattice_subgroup_order(l, k - 1, &mut top);
        assert_eq!(top, 27);
        let mut m = 0;
        assert_eq!(ig_lattice_intersect(l, 0, k - 1, &mut m), IgStatus::Ok);
        assert_eq!(m, 0);

        let ids = [3usize, 5, k - 1];
        let mut v = [0u64; 7];
        assert_eq!(ig_entropy_vector(l, ids.as_ptr(), 3, v.as_mut_ptr(), 7), IgStatus::Ok);
        for (i, &id) in ids.iter().enumerate() {
            let mut order = 0;
            ig_lattice_subgroup_order(l, id, &mut order);
            assert_eq!(v[(1 << i) - 1], 27 / order as u64);
        }
        // The third id is the whole group, so it leaves intersections unchanged.
        assert_eq!(v[6], v[2]);
        assert_eq!(v[4], v[0]);
        assert_eq!(v[3], 1);
        assert_eq!(ig_entropy_vector(l, ids.as_ptr(), 3, v.as_mut_ptr(), 6), IgStatus::InvalidArgument);
        assert_eq!(ig_entropy_vector(l, ids.as_ptr(), 0, v.as_mut_ptr(), 7), IgStatus::InvalidArgument);
        ig_lattice_free(l);
        ig_group_free(g);
    }
}

#[test]
fn ingleton_and_scan() {
    let g = group("symmetric n=5");
    let l = lattice(g);
    unsafe {
        let mut s = ptr::null_mut();
        let options = IgScanOptions {
            max_violations: 3,
            ..ig_scan_options_default()
        };
        assert_eq!(ig_scan_new(l, &options, &mut s), IgStatus::Ok);
        let (mut checked, mut count, mut kept, mut slack) = (0, 0, 0, 0.0);
        ig_scan_checked(s, &mut checked);
        ig_scan_violation_count(s, &mut count);
        ig_scan_kept(s, &mut kept);
        ig_scan_min_slack(s, &mut slack);
        assert_eq!(checked, 149_964_516);
        assert_eq!(count, 60);
        assert_eq!(kept, 3);
        assert_eq!(slack, 15.0 / 16.0);

        let mut v = IgIngleton::default();
        let mut ids = [0usize; 4];
        assert_eq!(ig_scan_violation(s, 0, &mut v, ids.as_mut_ptr()), IgStatus::Ok);
        assert_eq!(ids, [77, 143, 108, 113]);
        assert!(!v.satisfied);
        let mut direct = IgIngleton::default();
        assert_eq!(ig_ingleton_check(l, ids.as_ptr(), &mut direct), IgStatus::Ok);
        assert_eq!(direct.lhs_orders, v.lhs_orders);
        assert_eq!(direct.rhs_orders, v.rhs_orders);
        assert_eq!(ig_scan_violation(s, 3, &mut v, ptr::null_mut()), IgStatus::InvalidArgument);
        ig_scan_free(s);
        ig_lattice_free(l);
        ig_group_free(g);
    }
}

#[test]
fn lazard_verification() {
    unsafe {
        for (spec, class) in [("heisenberg p=3", 2), ("product: heisenberg p=3 ; cyclic n=5", 2), ("cyclic n=9", 1)] {
            let g = group(spec);
            let mut r = IgLazardReport::default();
            assert_eq!(ig_lazard_verify(g, &mut r), IgStatus::Ok, "{spec}: {}", last_error());
            assert!(r.certificate_passed);
            assert_eq!(r.class, class);
            assert!(r.quadruples_checked > 0);
            ig_group_free(g);
        }
        for spec in ["heisenberg p=2", "symmetric n=3"] {
            let g = group(spec);
            let mut r = IgLazardReport::default();
            assert_eq!(ig_lazard_verify(g, &mut r), IgStatus::NotApplicable, "{spec}");
            ig_group_free(g);
        }
    }
}

#[test]
fn errors_and_null_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("heisenberg p=4").unwrap();
        assert_eq!(ig_group_from_spec(bad.as_ptr(), 0, &mut g), IgStatus::ParseError);
        assert!(g.is_null());
        assert!(last_error().contains("1:14"));
        let big = CString::new("cyclic n=50000").unwrap();
        assert_eq!(ig_group_from_spec(big.as_ptr(), 0, &mut g), IgStatus::LimitExceeded);
        assert_eq!(ig_group_from_spec(ptr::null(), 0, &mut g), IgStatus::NullPointer);
        let mut n = 0;
        assert_eq!(ig_group_order(ptr::null(), &mut n), IgStatus::NullPointer);
        let h = group("cyclic n=4");
        assert_eq!(ig_group_order(h, ptr::null_mut()), IgStatus::NullPointer);
        ig_group_free(h);
        ig_group_free(ptr::null_mut());
        ig_lattice_free(ptr::null_mut());
        ig_scan_free(ptr::null_mut());
        assert!(!CStr::from_ptr(ig_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/ingleton.h");
    for name in [
        "IgStatus ig_group_from_spec(",
        "void ig_group_free(",
        "IgStatus ig_group_commutator(",
        "IgStatus ig_lattice_intersect(",
        "IgStatus ig_entropy_vector(",
        "IgStatus ig_ingleton_check(",
        "IgStatus ig_scan_new(",
        "IgStatus ig_lazard_verify(",
        "const char *ig_last_error(void)",
        "typedef struct IgGroup IgGroup;",
        "IG_STATUS_CERTIFICATE_FAILED = 6",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles and runs the C smoke program when a C compiler is on the path.
#[test]
fn c_program_links_against_the_static_library() {
    let Ok(cc) = std::env::var("CC").or_else(|_| which("cc")) else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libingleton_ffi.a");
    assert!(lib.exists(), "{}", lib.display());
    let exe = std::env::temp_dir().join(format!("ingleton-smoke-{}", std::process::id()));
    let status = Command::new(cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_file(&exe).ok();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("order=120 subgroups=156 checked=149964516 violations=60 slack=0.9375\n"), "{stdout}");
    assert!(stdout.contains("error=1:14"));
}

fn which(name: &str) -> Result<String, ()> {
    let path = std::env::var_os("PATH").ok_or(())?;
    std::env::split_paths(&path)
        .map(|d| d.join(name))
        .find(|p| p.is_file())
        .map(|p| p.to_string_lossy().into_owned())
        .ok_or(())
}
