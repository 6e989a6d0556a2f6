use std::collections::BTreeMap;
use std::process::Command;

use ingleton_core::cli::{run, EXIT_ERROR, EXIT_OK, EXIT_VIOLATION};
use ingleton_core::report::*;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ingleton").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

fn rows<T: std::str::FromStr>(s: &str) -> Vec<T>
where
    T::Err: std::fmt::Debug,
{
    s.lines().map(|l| l.parse().unwrap()).collect()
}

#[test]
fn subgroups_tsv_parses_and_counts_by_index() {
    let out = ok(&["subgroups", "modular p=3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(SUBGROUP_HEADER));
    let parsed: Vec<SubgroupRow> = lines.map(|l| l.parse().unwrap()).collect();
    let mut by_index = BTreeMap::new();
    for r in &parsed {
        *by_index.entry(r.index).or_insert(0) += 1;
        assert_eq!(r.order * r.index, 27);
    }
    assert_eq!(by_index, BTreeMap::from([(1, 1), (3, 4), (9, 4), (27, 1)]));
}

#[test]
fn lattice_edges_parse() {
    let out = ok(&["lattice", "cyclic n=12"]);
    let edges: Vec<EdgeRow> = rows(&out);
    // Divisor lattice of 12 has 7 cover relations.
    assert_eq!(edges.len(), 7);
    let dot = ok(&["lattice", "cyclic n=12", "--dot"]);
    assert!(dot.contains("digraph"));
}

#[test]
fn entropy_rows_parse() {
    let out = ok(&["entropy", "abelian 9,3", "--ids", "1,2,3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(ENTROPY_HEADER));
    let parsed: Vec<EntropyRow> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(parsed.len(), 7);
    assert_eq!(parsed.iter().map(|r| r.mask).collect::<Vec<_>>(), (1..8).collect::<Vec<_>>());
}

#[test]
fn ingleton_line_parses() {
    let out = ok(&["ingleton", "symmetric n=4", "--ids", "4,9,12,20"]);
    let line: IngletonLine = out.trim_end().parse().unwrap();
    assert_eq!(line.quadruple, [4, 9, 12, 20]);
    assert!(line.satisfied);
    let eq = ok(&["ingleton", "heisenberg p=3", "--ids", "5,5,5,5"]);
    assert!(eq.trim_end().ends_with("OK slack=1/1"));
}

#[test]
fn scan_exit_codes_and_summary() {
    let out = ok(&["scan", "symmetric n=4", "--no-timing"]);
    let s: ScanSummary = out.trim_end().parse().unwrap();
    assert_eq!(s.checked, 216_225);
    assert_eq!(s.violations, 0);
    assert_eq!(s.time, None);
    let (code, _, _) = call(&["scan", "symmetric n=5", "--max-violations", "0"]);
    assert_eq!(code, EXIT_VIOLATION);
}

#[test]
fn s5_witness_fixture() {
    let (code, out, _) = call(&["scan", "symmetric n=5", "--no-timing", "--max-violations", "5"]);
    assert_eq!(code, EXIT_VIOLATION);
    assert_eq!(out, include_str!("fixtures/s5_scan.tsv"));
    let mut lines = out.lines();
    let summary: ScanSummary = lines.next().unwrap().parse().unwrap();
    assert!(!summary.min_slack.unwrap().is_at_least_one());
    for l in lines {
        let v: ViolationRow = l.parse().unwrap();
        assert!(v.lhs < v.rhs);
        assert_eq!(v.lhs.to_string(), v.lhs_orders.iter().product::<u64>().to_string());
    }
}

#[test]
fn lazard_sylow_and_verify() {
    let l: LazardLine = ok(&["lazard", "modular p=3"]).trim_end().parse().unwrap();
    assert_eq!(l.profile, vec![(1, 1), (3, 8), (9, 18)]);
    assert!(l.abelian && l.closure && l.indices);

    let out = ok(&["sylow", "product: cyclic n=2 ; heisenberg p=3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], SYLOW_HEADER);
    let parts: Vec<SylowRow> = lines[1..3].iter().map(|l| l.parse().unwrap()).collect();
    assert_eq!((parts[0].p, parts[0].order), (2, 2));
    assert_eq!((parts[1].p, parts[1].order, parts[1].class), (3, 27, 2));
    assert!(lines[3].starts_with("direct=OK"));
    let c: CorollaryLine = lines[4].parse().unwrap();
    assert!(!c.applies);

    let out = ok(&["nilpotent-verify", "product: heisenberg p=3 ; cyclic n=5"]);
    let mut lines = out.lines();
    let _: LazardLine = lines.next().unwrap().parse().unwrap();
    let checks: Vec<CheckLine> = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(
        checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(),
        ["characterizability", "ingleton", "sylow-ingleton"]
    );
    assert!(checks.iter().all(|c| c.passed));
}

#[test]
fn failures_are_single_lines() {
    for args in [
        &["nilpotent-verify", "symmetric n=3"][..],
        &["lazard", "cyclic n=6"],
        &["sylow", "symmetric n=4"],
        &["info", "cyclic n=5000000"],
        &["entropy", "cyclic n=4", "--ids", "9"],
        &["info", "@/nonexistent/specs.txt"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, EXIT_ERROR, "{args:?}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(out.is_empty() || args[0] == "nilpotent-verify");
    }
}

#[test]
fn audit_passes_on_catalog_members() {
    for spec in ["symmetric n=4", "modular p=5", "product: cyclic n=2 ; heisenberg p=3"] {
        let checks: Vec<CheckLine> = rows(&ok(&["audit", spec]));
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.passed), "{spec}");
    }
}

#[test]
fn json_lines_are_json() {
    for args in [
        &["info", "--json", "heisenberg p=3"][..],
        &["subgroups", "--json", "heisenberg p=3"],
        &["scan", "--json", "--no-timing", "symmetric n=4"],
        &["sylow", "--json", "cyclic n=12"],
        &["lattice", "--json", "--dot", "cyclic n=4"],
    ] {
        for line in ok(args).lines() {
            serde_json::from_str::<serde_json::Value>(line).unwrap();
        }
    }
}

#[test]
fn spec_files_and_out_files() {
    let dir = std::env::temp_dir().join(format!("ingleton-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let specs = dir.join("specs.txt");
    std::fs::write(&specs, "# two groups\nmodular p=3\nabelian 9,3\n").unwrap();
    let arg = format!("@{}", specs.display());
    let out = ok(&["info", &arg]);
    assert_eq!(
        out,
        "# modular p=3\norder=27 class=2 pgroup=3 subgroups=10\n# abelian 9,3\norder=27 class=1 pgroup=3 subgroups=10\n"
    );
    let target = dir.join("out.txt");
    let printed = ok(&["info", "--out", target.to_str().unwrap(), "cyclic n=7"]);
    assert!(printed.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "order=7 class=1 pgroup=7 subgroups=2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn no_timing_output_is_reproducible() {
    let a = ok(&["scan", "--no-timing", "--threads", "1", "abelian 4,4"]);
    let b = ok(&["scan", "--no-timing", "--threads", "4", "abelian 4,4"]);
    assert_eq!(a, b);
    let (_, c, _) = call(&["scan", "--no-timing", "--threads", "2", "symmetric n=5"]);
    let (_, d, _) = call(&["scan", "--no-timing", "symmetric n=5"]);
    assert_eq!(c, d);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ingleton");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let s4 = status(&["scan", "symmetric", "n=4"]);
    assert_eq!(s4.status.code(), Some(0));
    let s5 = status(&["scan", "symmetric", "n=5", "--max-violations", "1"]);
    assert_eq!(s5.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&s5.stdout).lines().count(), 2);
    let bad = status(&["info", "heisenberg", "p=4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1:14"));
    let unknown = status(&["explode", "cyclic n=3"]);
    assert_eq!(unknown.status.code(), Some(1));
}
