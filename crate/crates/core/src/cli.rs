//! The `ingleton` command line.
//!
//! Every verb takes a group spec as its trailing words (`info heisenberg p=3`)
//! or `@path` to run once per spec line of a file. Output is TSV by default
//! and JSON lines with `--json`; formats live in [`crate::report`].

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::prime_power_base;
use crate::entropy::{entropy_vector, format_log2, ingleton_check, shannon_audit, MAX_TUPLE};
use crate::families::build_builtin;
use crate::group::FiniteGroup;
use crate::lazard::{build_counterpart, verify_all_quadruples, AbelianCounterpart, Certificate, LazardError};
use crate::nilpotent::{
    corollary_gate, nilpotent_abelian_counterpart, sylow_cross_validate, sylow_decomposition, NilpotentError,
    SylowContext,
};
use crate::report::{
    CheckLine, CorollaryLine, EdgeRow, EntropyRow, IngletonLine, InfoLine, LazardLine, ScanSummary, SubgroupRow,
    SylowRow, ViolationRow, ENTROPY_HEADER, SUBGROUP_HEADER, SYLOW_HEADER,
};
use crate::scan::{
    ingleton_scan, precompute_intersections, ScanOptions, ScanResult, DEFAULT_MAX_VIOLATIONS, DEFAULT_MEMORY_BUDGET,
};
use crate::spec::{parse_group_spec, parse_spec_lines, GroupSpec};
use crate::subgroup::{enumerate_subgroups, lattice_dot, lower_central_series, EnumerationLimits, SubgroupTable};
use crate::{DEFAULT_ORDER_CAP, DEFAULT_SUBGROUP_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ingleton", version, about = "Group-characterizable entropy vectors and the Ingleton inequality")]
pub struct Cli {
    /// Largest group order to build.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
    /// Largest number of subgroups to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBGROUP_CAP)]
    pub subgroup_cap: usize,
    /// Worker threads for the scan (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print `time=-` instead of wall-clock times.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Emit JSON lines instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Group spec, e.g. `heisenberg p=3`, or `@file` with one spec per line.
    #[arg(required = true, num_args = 1..)]
    pub spec: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, nilpotency class, prime and subgroup count.
    Info(SpecArg),
    /// Every subgroup: id, order, index and generators.
    Subgroups(SpecArg),
    /// Cover relations of the subgroup lattice.
    Lattice {
        #[command(flatten)]
        spec: SpecArg,
        /// Also print a Graphviz DOT block.
        #[arg(long)]
        dot: bool,
    },
    /// Entropy vector of a tuple of subgroup ids.
    Entropy {
        #[command(flatten)]
        spec: SpecArg,
        /// Comma-separated subgroup ids.
        #[arg(long, value_delimiter = ',', required = true)]
        ids: Vec<usize>,
    },
    /// Ingleton check on four subgroup ids.
    Ingleton {
        #[command(flatten)]
        spec: SpecArg,
        /// Four comma-separated subgroup ids.
        #[arg(long, value_delimiter = ',', required = true)]
        ids: Vec<usize>,
    },
    /// Exhaustive Ingleton scan over all subgroup quadruples.
    Scan {
        #[command(flatten)]
        spec: SpecArg,
        /// Only quadruples of four distinct subgroups.
        #[arg(long)]
        distinct: bool,
        /// Number of violations to list.
        #[arg(long, default_value_t = DEFAULT_MAX_VIOLATIONS)]
        max_violations: usize,
    },
    /// Build and certify the abelian counterpart of a class-2 odd p-group.
    Lazard(SpecArg),
    /// Sylow decomposition of a nilpotent group.
    Sylow(SpecArg),
    /// Counterpart, characterizability and exhaustive Ingleton checks for a nilpotent group.
    NilpotentVerify(SpecArg),
    /// Table axioms, Lagrange, lattice, central series and sampled Shannon checks.
    Audit {
        #[command(flatten)]
        spec: SpecArg,
        /// Random subgroup tuples for the Shannon check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn spec(&self) -> &SpecArg {
        match self {
            Command::Info(s)
            | Command::Subgroups(s)
            | Command::Lazard(s)
            | Command::Sylow(s)
            | Command::NilpotentVerify(s) => s,
            Command::Lattice { spec, .. }
            | Command::Entropy { spec, .. }
            | Command::Ingleton { spec, .. }
            | Command::Scan { spec, .. }
            | Command::Audit { spec, .. } => spec,
        }
    }
}

/// A failed run: exit code plus the diagnostic for the error stream.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn fail(message: impl Display) -> Failure {
    Failure {
        code: EXIT_ERROR,
        message: message.to_string(),
    }
}

type Outcome = Result<i32, Failure>;

struct Context<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn limits(&self) -> EnumerationLimits {
        EnumerationLimits {
            order_cap: self.cli.order_cap,
            subgroup_cap: self.cli.subgroup_cap,
        }
    }

    fn line(&mut self, s: impl Display) -> Result<(), Failure> {
        writeln!(self.out, "{s}").map_err(fail)
    }

    /// A record: its TSV line, or its JSON form under `--json`.
    fn emit<T: Serialize + Display>(&mut self, x: &T) -> Result<(), Failure> {
        if self.cli.json {
            let s = serde_json::to_string(x).map_err(fail)?;
            self.line(s)
        } else {
            self.line(x)
        }
    }

    /// A TSV header; omitted in JSON mode.
    fn header(&mut self, h: &str) -> Result<(), Failure> {
        if self.cli.json {
            Ok(())
        } else {
            self.line(h)
        }
    }

    fn group(&self, spec: &GroupSpec) -> Result<FiniteGroup, Failure> {
        build_builtin(spec, self.cli.order_cap).map_err(fail)
    }

    fn subgroups(&self, g: &FiniteGroup) -> Result<SubgroupTable, Failure> {
        enumerate_subgroups(g, self.limits()).map_err(fail)
    }

    fn time(&self, secs: f64) -> Option<f64> {
        (!self.cli.no_timing).then_some(secs)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Diagnostics go to `err` as single lines.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_ERROR
                }
            };
        }
    };
    let result = match &cli.out {
        Some(path) => match fs::File::create(path) {
            Ok(mut f) => dispatch_all(&cli, &mut f),
            Err(e) => Err(fail(format!("{}: {e}", path.display()))),
        },
        None => dispatch_all(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn specs(arg: &SpecArg) -> Result<(Vec<GroupSpec>, bool), Failure> {
    let text = arg.spec.join(" ");
    match text.strip_prefix('@') {
        Some(path) => {
            let body = fs::read_to_string(path).map_err(|e| fail(format!("{path}: {e}")))?;
            Ok((parse_spec_lines(&body).map_err(fail)?, true))
        }
        None => Ok((vec![parse_group_spec(&text).map_err(fail)?], false)),
    }
}

fn dispatch_all(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let (specs, from_file) = specs(cli.command.spec())?;
    let mut ctx = Context { cli, out };
    let mut code = EXIT_OK;
    for spec in &specs {
        if from_file && !cli.json {
            ctx.line(format!("# {spec}"))?;
        }
        code = code.max(dispatch(&mut ctx, spec)?);
    }
    Ok(code)
}

fn dispatch(ctx: &mut Context, spec: &GroupSpec) -> Outcome {
    match &ctx.cli.command {
        Command::Info(_) => info(ctx, spec),
        Command::Subgroups(_) => subgroups(ctx, spec),
        Command::Lattice { dot, .. } => lattice(ctx, spec, *dot),
        Command::Entropy { ids, .. } => entropy(ctx, spec, ids),
        Command::Ingleton { ids, .. } => ingleton(ctx, spec, ids),
        Command::Scan {
            distinct,
            max_violations,
            ..
        } => scan(ctx, spec, *distinct, *max_violations),
        Command::Lazard(_) => lazard(ctx, spec),
        Command::Sylow(_) => sylow(ctx, spec),
        Command::NilpotentVerify(_) => nilpotent_verify(ctx, spec),
        Command::Audit { samples, seed, .. } => audit(ctx, spec, *samples, *seed),
    }
}

fn info(ctx: &mut Context, spec: &GroupSpec) -> Outcome {
    let g = ctx.group(spec)?;
    let table = ctx.subgroups(&g)?;
    let line = InfoLine {
        order: g.order(),
        class: lower_central_series(&g).class,
        pgroup: prime_power_base(g.order() as u64),
        subgroups: table.len(),
    };
    ctx.emit(&line)?;
    Ok(EXIT_OK)
}

fn subgroups(ctx: &mut Context, spec: &GroupSpec) -> Outcome {
    let g = ctx.group(spec)?;
    let table = ctx.subgroups(&g)?;
    ctx.header(SUBGROUP_HEADER)?;
    for (id, h) in table.subgroups().iter().enumerate() {
        let row = SubgroupRow {
            id,
            order: h.order(),
            index: table.index(id),
            generators: h.generators().iter().map(|&x| g.label(x).to_string()).collect(),
        };
        ctx.emit(&row)?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DotBlock {
    dot: String,
}

impl Display for DotBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.dot.trim_end())
    }
}

fn lattice(ctx: &mut Context, spec: &GroupSpec, dot: bool) -> Outcome {
    let g = ctx.group(spec)?;
    let table = ctx.subgroups(&g)?;
    let edges = table.inclusion_edges();
    for &(parent, child) in &edges {
        ctx.emit(&EdgeRow { parent, child })?;
    }
    if dot {
        ctx.emit(&DotBlock {
            dot: lattice_dot(&table, &edges),
        })?;
    }
    Ok(EXIT_OK)
}

fn entropy(ctx: &mut Context, spec: &GroupSpec, ids: &[usize]) -> Outcome {
    if ids.len() > MAX_TUPLE {
        return Err(fail(format!("at most {MAX_TUPLE} ids")));
    }
    let g = ctx.group(spec)?;
    let table = ctx.subgroups(&g)?;
    let v = entropy_vector(&table, ids).map_err(fail)?;
    ctx.header(ENTROPY_HEADER)?;
    for (mask, index) in v.entries() {
        ctx.emit(&EntropyRow {
            mask,
            index,
            log2: format_log2(index),
        })?;
    }
    Ok(EXIT_OK)
}

fn four(ids: &[usize]) -> Result<[usize; 4], Failure> {
    ids.try_into()
        .map_err(|_| fail(format!("--ids needs exactly four ids, got {}", ids.len())))
}

fn ingleton(ctx: &mut Context, spec: &GroupSpec, ids: &[usize]) -> Outcome {
    let q = four(ids)?;
    let g = ctx.group(spec)?;
    let table = ctx.subgroups(&g)?;
    let report = ingleton_check(&table, q).map_err(fail)?;
    ctx.emit(&IngletonLine::from(&report))?;
    Ok(EXIT_OK)
}

fn run_scan(ctx: &Context, table: &SubgroupTable, distinct: bool, max_violations: usize) -> Result<ScanResult, Failure> {
    let idx = precompute_intersections(table, DEFAULT_MEMORY_BUDGET).map_err(fail)?;
    let options = ScanOptions {
        threads: ctx.cli.threads,
        distinct,
        max_violations,
        ..ScanOptions::default()
    };
    ingleton_scan(&idx, &options).map_err(fail)
}

fn scan_summary(ctx: &Context, r: &ScanResult) -> ScanSummary {
    ScanSummary {
        checked: r.quadruples_checked,
        violations: r.violation_count,
        min_slack: r.min_slack.clone(),
        time: ctx.time(r.wall_time.as_secs_f64()),
    }
}

fn scan(ctx: &mut Context, spec: &GroupSpec, distinct: bool, max_violations: usize) -> Outcome {
    let g = ctx.group(spec)?;
    let table = ctx.subgroups(&g)?;
    let r = run_scan(ctx, &table, distinct, max_violations)?;
    let summary = scan_summary(ctx, &r);
    ctx.emit(&summary)?;
    for v in &r.violations {
        ctx.emit(&ViolationRow::from(v))?;
    }
    Ok(if r.has_violation() { EXIT_VIOLATION } else { EXIT_OK })
}

fn lazard_line(c: &Certificate) -> LazardLine {
    LazardLine {
        class: c.class,
        p: c.p,
        abelian: c.abelian,
        closure: c.closure && c.intersections,
        indices: c.indices,
        profile: c.profile.clone(),
    }
}

/// Prints the certificate of a failed construction and maps it to exit 3.
fn certificate_failure(ctx: &mut Context, c: &Certificate) -> Outcome {
    ctx.emit(&lazard_line(c))?;
    Err(Failure {
        code: EXIT_CERTIFICATE,
        message: format!(
            "certificate failed: {}",
            c.first_failure.as_deref().unwrap_or("unknown check")
        ),
    })
}

fn lazard(ctx: &mut Context, spec: &GroupSpec) -> Outcome {
    let g = ctx.group(spec)?;
    match build_counterpart(&g, ctx.limits()) {
        Ok(cp) => {
            ctx.emit(&lazard_line(&cp.certificate))?;
            Ok(EXIT_OK)
        }
        Err(LazardError::CertificateFailure(c)) => certificate_failure(ctx, &c),
        Err(e) => Err(fail(e)),
    }
}

#[derive(Serialize)]
struct DirectLine {
    direct: crate::nilpotent::DirectnessCertificate,
}

impl Display for DirectLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.direct.fmt(f)
    }
}

fn sylow(ctx: &mut Context, spec: &GroupSpec) -> Outcome {
    let g = ctx.group(spec)?;
    let d = sylow_decomposition(&g).map_err(fail)?;
    let verdict = corollary_gate(&g).map_err(fail)?;
    ctx.header(SYLOW_HEADER)?;
    for part in &verdict.parts {
        ctx.emit(&SylowRow {
            p: part.p,
            order: part.order,
            class: part.class,
            lazard_ok: part.lazard_ok,
        })?;
    }
    ctx.emit(&DirectLine {
        direct: d.certificate.clone(),
    })?;
    ctx.emit(&CorollaryLine {
        class: verdict.class,
        smallest_prime: verdict.smallest_prime,
        applies: verdict.applies,
    })?;
    Ok(EXIT_OK)
}

fn nilpotent_verify(ctx: &mut Context, spec: &GroupSpec) -> Outcome {
    let g = ctx.group(spec)?;
    let d = sylow_decomposition(&g).map_err(fail)?;
    let limits = ctx.limits();
    let cp: AbelianCounterpart = match nilpotent_abelian_counterpart(&g, &d, limits) {
        Ok(cp) => cp,
        Err(NilpotentError::Lazard(LazardError::CertificateFailure(c))) => return certificate_failure(ctx, &c),
        Err(e) => return Err(fail(e)),
    };
    ctx.emit(&lazard_line(&cp.certificate))?;

    let a_table = ctx.subgroups(&cp.counterpart)?;
    let characterizable = match verify_all_quadruples(&cp, &a_table) {
        Ok(r) => CheckLine::new("characterizability", true)
            .with("tuples", r.tuples_checked)
            .with("entries", r.entries_compared),
        Err(e @ (LazardError::Mismatch { .. } | LazardError::Unmapped { .. })) => {
            ctx.emit(&CheckLine::new("characterizability", false))?;
            return Err(Failure {
                code: EXIT_CERTIFICATE,
                message: e.to_string(),
            });
        }
        Err(e) => return Err(fail(e)),
    };
    ctx.emit(&characterizable)?;

    let table = &cp.source_subgroups;
    let r = run_scan(ctx, table, false, DEFAULT_MAX_VIOLATIONS)?;
    let mut line = CheckLine::new("ingleton", !r.has_violation())
        .with("checked", r.quadruples_checked)
        .with("violations", r.violation_count);
    if let Some(s) = &r.min_slack {
        line = line.with("min_slack", s);
    }
    ctx.emit(&line)?;

    let sylow_ctx = SylowContext::new(d, limits).map_err(fail)?;
    let cv = match sylow_cross_validate(&sylow_ctx, table) {
        Ok(cv) => cv,
        Err(e @ (NilpotentError::IngletonMismatch { .. } | NilpotentError::SplitIdentity(_))) => {
            ctx.emit(&CheckLine::new("sylow-ingleton", false))?;
            return Err(Failure {
                code: EXIT_CERTIFICATE,
                message: e.to_string(),
            });
        }
        Err(e) => return Err(fail(e)),
    };
    ctx.emit(
        &CheckLine::new("sylow-ingleton", true)
            .with("checked", cv.quadruples)
            .with("parts_satisfied", cv.all_parts_satisfied),
    )?;
    if r.has_violation() {
        return Err(Failure {
            code: EXIT_VIOLATION,
            message: format!("{} Ingleton violations", r.violation_count),
        });
    }
    Ok(EXIT_OK)
}

fn audit(ctx: &mut Context, spec: &GroupSpec, samples: usize, seed: u64) -> Outcome {
    let g = ctx.group(spec)?;
    let mut all = true;

    let ax = g.audit_axioms(512);
    all &= ax.passed();
    ctx.emit(
        &CheckLine::new("axioms", ax.passed())
            .with("triples", ax.triples_checked)
            .with("exhaustive", ax.associativity_exhaustive),
    )?;

    let table = ctx.subgroups(&g)?;
    let n = g.order();
    let lagrange = table.subgroups().iter().all(|h| n % h.order() == 0);
    all &= lagrange;
    ctx.emit(&CheckLine::new("lagrange", lagrange).with("subgroups", table.len()))?;

    let lattice = precompute_intersections(&table, DEFAULT_MEMORY_BUDGET).is_ok()
        && table.trivial() == 0
        && table.order(table.whole()) == n;
    all &= lattice;
    ctx.emit(&CheckLine::new("lattice", lattice).with("edges", table.inclusion_edges().len()))?;

    let series = lower_central_series(&g);
    let orders = series.orders();
    let descending = orders.windows(2).all(|w| w[1] < w[0] && w[0] % w[1] == 0);
    all &= descending;
    let class = series.class.map_or("-".to_string(), |c| c.to_string());
    ctx.emit(&CheckLine::new("series", descending).with("class", class))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut shannon = true;
    for _ in 0..samples {
        let size = rng.gen_range(1..=5);
        let tuple: Vec<usize> = (0..size).map(|_| rng.gen_range(0..table.len())).collect();
        let v = entropy_vector(&table, &tuple).map_err(fail)?;
        shannon &= shannon_audit(&v).passed();
    }
    all &= shannon;
    ctx.emit(&CheckLine::new("shannon", shannon).with("tuples", samples).with("seed", seed))?;

    if all {
        Ok(EXIT_OK)
    } else {
        Err(fail("audit failed"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ingleton").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn info_line() {
        let (code, out, _) = call(&["info", "modular", "p=3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "order=27 class=2 pgroup=3 subgroups=10\n");
    }

    #[test]
    fn unknown_verb_and_flag() {
        assert_eq!(call(&["frobnicate", "cyclic n=2"]).0, EXIT_ERROR);
        assert_eq!(call(&["info", "--bogus", "cyclic n=2"]).0, EXIT_ERROR);
    }

    #[test]
    fn bad_spec_is_one_line() {
        let (code, out, err) = call(&["info", "heisenberg p=4"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn ingleton_equal_ids() {
        let (code, out, _) = call(&["ingleton", "heisenberg p=3", "--ids", "3,3,3,3"]);
        assert_eq!(code, 0);
        assert!(out.trim_end().ends_with("OK slack=1/1"), "{out}");
    }

    #[test]
    fn ingleton_needs_four() {
        assert_eq!(call(&["ingleton", "cyclic n=4", "--ids", "1,2"]).0, EXIT_ERROR);
    }

    #[test]
    fn lazard_rejects_even() {
        let (code, _, err) = call(&["lazard", "heisenberg p=2"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("p = 2"));
    }
}
