//! Line formats written by the CLI, each with a parser that reads it back.
//!
//! Formatting is `Display`, parsing is `FromStr`; for every type here
//! `x.to_string().parse() == Ok(x)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::entropy::{Exact, Fraction, IngletonReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err(msg: impl Into<String>) -> ParseError {
    ParseError(msg.into())
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| err(format!("bad {what}: `{s}`")))
}

/// `key=value` tokens in order; every key in `keys` must appear, in order.
fn key_values<'a>(line: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, ParseError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != keys.len() {
        return Err(err(format!("expected {} fields in `{line}`", keys.len())));
    }
    tokens
        .iter()
        .zip(keys)
        .map(|(t, k)| {
            t.strip_prefix(k)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| err(format!("expected `{k}=` in `{line}`")))
        })
        .collect()
}

fn opt_field<T: fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "-".into(),
    }
}

fn parse_opt<T: FromStr>(s: &str, what: &str) -> Result<Option<T>, ParseError> {
    if s == "-" {
        Ok(None)
    } else {
        num(s, what).map(Some)
    }
}

fn ok_flag(b: bool) -> &'static str {
    if b {
        "OK"
    } else {
        "FAIL"
    }
}

fn parse_flag(s: &str) -> Result<bool, ParseError> {
    match s {
        "OK" => Ok(true),
        "FAIL" => Ok(false),
        _ => Err(err(format!("expected OK or FAIL, got `{s}`"))),
    }
}

/// `order=27 class=2 pgroup=3 subgroups=10`; `-` marks a missing class or prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfoLine {
    pub order: usize,
    pub class: Option<usize>,
    pub pgroup: Option<u64>,
    pub subgroups: usize,
}

impl fmt::Display for InfoLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order={} class={} pgroup={} subgroups={}",
            self.order,
            opt_field(&self.class),
            opt_field(&self.pgroup),
            self.subgroups
        )
    }
}

impl FromStr for InfoLine {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let v = key_values(s, &["order", "class", "pgroup", "subgroups"])?;
        Ok(InfoLine {
            order: num(v[0], "order")?,
            class: parse_opt(v[1], "class")?,
            pgroup: parse_opt(v[2], "pgroup")?,
            subgroups: num(v[3], "subgroups")?,
        })
    }
}

pub const SUBGROUP_HEADER: &str = "id\torder\tindex\tgenerators";

/// One subgroup: `id  order  index  generators`, generators as element
/// labels joined by ` | ` (`-` for none).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRow {
    pub id: usize,
    pub order: usize,
    pub index: usize,
    pub generators: Vec<String>,
}

impl fmt::Display for SubgroupRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = if self.generators.is_empty() {
            "-".to_string()
        } else {
            self.generators.join(" | ")
        };
        write!(f, "{}\t{}\t{}\t{}", self.id, self.order, self.index, gens)
    }
}

impl FromStr for SubgroupRow {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let f: Vec<&str> = s.split('\t').collect();
        let [id, order, index, gens] = f[..] else {
            return Err(err(format!("expected 4 columns in `{s}`")));
        };
        Ok(SubgroupRow {
            id: num(id, "id")?,
            order: num(order, "order")?,
            index: num(index, "index")?,
            generators: if gens == "-" {
                Vec::new()
            } else {
                gens.split(" | ").map(str::to_string).collect()
            },
        })
    }
}

/// A cover relation `parent  child` of the subgroup lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeRow {
    pub parent: usize,
    pub child: usize,
}

impl fmt::Display for EdgeRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.parent, self.child)
    }
}

impl FromStr for EdgeRow {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (a, b) = s.split_once('\t').ok_or_else(|| err(format!("expected 2 columns in `{s}`")))?;
        Ok(EdgeRow {
            parent: num(a, "parent")?,
            child: num(b, "child")?,
        })
    }
}

pub const ENTROPY_HEADER: &str = "mask\tindex\tlog2";

/// `mask  index  log2`, bit `i` of the mask selecting the `i+1`-th listed id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntropyRow {
    pub mask: usize,
    pub index: u64,
    /// Six decimals, as printed.
    pub log2: String,
}

impl fmt::Display for EntropyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.mask, self.index, self.log2)
    }
}

impl FromStr for EntropyRow {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let f: Vec<&str> = s.split('\t').collect();
        let [mask, index, log2] = f[..] else {
            return Err(err(format!("expected 3 columns in `{s}`")));
        };
        num::<f64>(log2, "log2")?;
        Ok(EntropyRow {
            mask: num(mask, "mask")?,
            index: num(index, "index")?,
            log2: log2.to_string(),
        })
    }
}

fn quad(s: &str) -> Result<[usize; 4], ParseError> {
    let ids: Vec<usize> = s
        .split(' ')
        .map(|x| num(x, "subgroup id"))
        .collect::<Result<_, _>>()?;
    ids.try_into().map_err(|_| err(format!("expected four ids in `{s}`")))
}

fn quad_str(q: &[usize; 4]) -> String {
    format!("{} {} {} {}", q[0], q[1], q[2], q[3])
}

/// `a b c d  LHS  RHS  OK|VIOLATION slack=p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IngletonLine {
    pub quadruple: [usize; 4],
    pub lhs: Exact,
    pub rhs: Exact,
    pub satisfied: bool,
    pub slack: Fraction,
}

impl From<&IngletonReport> for IngletonLine {
    fn from(r: &IngletonReport) -> Self {
        IngletonLine {
            quadruple: r.quadruple,
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
            satisfied: r.satisfied,
            slack: r.slack.clone(),
        }
    }
}

impl fmt::Display for IngletonLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{} slack={}",
            quad_str(&self.quadruple),
            self.lhs,
            self.rhs,
            if self.satisfied { "OK" } else { "VIOLATION" },
            self.slack
        )
    }
}

impl FromStr for IngletonLine {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let f: Vec<&str> = s.split('\t').collect();
        let [q, lhs, rhs, tail] = f[..] else {
            return Err(err(format!("expected 4 columns in `{s}`")));
        };
        let (verdict, slack) = tail.split_once(" slack=").ok_or_else(|| err(format!("missing slack in `{s}`")))?;
        let satisfied = match verdict {
            "OK" => true,
            "VIOLATION" => false,
            _ => return Err(err(format!("bad verdict `{verdict}`"))),
        };
        Ok(IngletonLine {
            quadruple: quad(q)?,
            lhs: lhs.parse().map_err(err)?,
            rhs: rhs.parse().map_err(err)?,
            satisfied,
            slack: slack.parse().map_err(err)?,
        })
    }
}

/// `checked=N violations=V min_slack=p/q time=T`; time is seconds with an
/// `s` suffix, or `-` when timing is off.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub checked: u64,
    pub violations: u64,
    pub min_slack: Option<Fraction>,
    pub time: Option<f64>,
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked={} violations={} min_slack={} time=",
            self.checked,
            self.violations,
            opt_field(&self.min_slack)
        )?;
        match self.time {
            Some(t) => write!(f, "{t:.3}s"),
            None => write!(f, "-"),
        }
    }
}

impl FromStr for ScanSummary {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let v = key_values(s, &["checked", "violations", "min_slack", "time"])?;
        let time = match v[3] {
            "-" => None,
            t => Some(num(t.strip_suffix('s').ok_or_else(|| err("time needs an `s` suffix"))?, "time")?),
        };
        Ok(ScanSummary {
            checked: num(v[0], "checked")?,
            violations: num(v[1], "violations")?,
            min_slack: if v[2] == "-" {
                None
            } else {
                Some(v[2].parse().map_err(err)?)
            },
            time,
        })
    }
}

/// One violation: ids, the five left and five right orders, both products
/// and the slack.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationRow {
    pub quadruple: [usize; 4],
    pub lhs_orders: [u64; 5],
    pub rhs_orders: [u64; 5],
    pub lhs: Exact,
    pub rhs: Exact,
    pub slack: Fraction,
}

impl From<&IngletonReport> for ViolationRow {
    fn from(r: &IngletonReport) -> Self {
        ViolationRow {
            quadruple: r.quadruple,
            lhs_orders: r.lhs_orders,
            rhs_orders: r.rhs_orders,
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
            slack: r.slack.clone(),
        }
    }
}

fn five(s: &str) -> Result<[u64; 5], ParseError> {
    let v: Vec<u64> = s.split(',').map(|x| num(x, "order")).collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| err(format!("expected five orders in `{s}`")))
}

fn five_str(v: &[u64; 5]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ViolationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            quad_str(&self.quadruple),
            five_str(&self.lhs_orders),
            five_str(&self.rhs_orders),
            self.lhs,
            self.rhs,
            self.slack
        )
    }
}

impl FromStr for ViolationRow {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let f: Vec<&str> = s.split('\t').collect();
        let [q, lo, ro, lhs, rhs, slack] = f[..] else {
            return Err(err(format!("expected 6 columns in `{s}`")));
        };
        Ok(ViolationRow {
            quadruple: quad(q)?,
            lhs_orders: five(lo)?,
            rhs_orders: five(ro)?,
            lhs: lhs.parse().map_err(err)?,
            rhs: rhs.parse().map_err(err)?,
            slack: slack.parse().map_err(err)?,
        })
    }
}

/// `class=2 p=3 abelian=OK closure=OK indices=OK profile=(1:1,3:8,9:18)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LazardLine {
    pub class: usize,
    pub p: Option<u64>,
    pub abelian: bool,
    pub closure: bool,
    pub indices: bool,
    pub profile: Vec<(u64, usize)>,
}

impl fmt::Display for LazardLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class={} p={} abelian={} closure={} indices={} profile={}",
            self.class,
            opt_field(&self.p),
            ok_flag(self.abelian),
            ok_flag(self.closure),
            ok_flag(self.indices),
            crate::lazard::format_profile(&self.profile)
        )
    }
}

impl FromStr for LazardLine {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let v = key_values(s, &["class", "p", "abelian", "closure", "indices", "profile"])?;
        let inner = v[5]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("profile must be parenthesized"))?;
        let profile = inner
            .split(',')
            .filter(|x| !x.is_empty())
            .map(|pair| {
                let (o, c) = pair.split_once(':').ok_or_else(|| err(format!("bad profile entry `{pair}`")))?;
                Ok((num(o, "order")?, num(c, "count")?))
            })
            .collect::<Result<_, ParseError>>()?;
        Ok(LazardLine {
            class: num(v[0], "class")?,
            p: parse_opt(v[1], "p")?,
            abelian: parse_flag(v[2])?,
            closure: parse_flag(v[3])?,
            indices: parse_flag(v[4])?,
            profile,
        })
    }
}

pub const SYLOW_HEADER: &str = "p\torder\tclass\tlazard-ok";

/// `p  order  class  yes|no`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylowRow {
    pub p: u64,
    pub order: usize,
    pub class: usize,
    pub lazard_ok: bool,
}

impl fmt::Display for SylowRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.p,
            self.order,
            self.class,
            if self.lazard_ok { "yes" } else { "no" }
        )
    }
}

impl FromStr for SylowRow {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let f: Vec<&str> = s.split('\t').collect();
        let [p, order, class, ok] = f[..] else {
            return Err(err(format!("expected 4 columns in `{s}`")));
        };
        Ok(SylowRow {
            p: num(p, "p")?,
            order: num(order, "order")?,
            class: num(class, "class")?,
            lazard_ok: match ok {
                "yes" => true,
                "no" => false,
                _ => return Err(err(format!("expected yes or no, got `{ok}`"))),
            },
        })
    }
}

/// `corollary class=c smallest_prime=p applies=yes|no`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryLine {
    pub class: usize,
    pub smallest_prime: Option<u64>,
    pub applies: bool,
}

impl fmt::Display for CorollaryLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "corollary class={} smallest_prime={} applies={}",
            self.class,
            opt_field(&self.smallest_prime),
            if self.applies { "yes" } else { "no" }
        )
    }
}

impl FromStr for CorollaryLine {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let rest = s.strip_prefix("corollary ").ok_or_else(|| err("expected `corollary`"))?;
        let v = key_values(rest, &["class", "smallest_prime", "applies"])?;
        Ok(CorollaryLine {
            class: num(v[0], "class")?,
            smallest_prime: parse_opt(v[1], "smallest_prime")?,
            applies: match v[2] {
                "yes" => true,
                "no" => false,
                x => return Err(err(format!("expected yes or no, got `{x}`"))),
            },
        })
    }
}

/// `name OK|FAIL key=value ...`, the line shape of `audit` and
/// `nilpotent-verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub details: Vec<(String, String)>,
}

impl CheckLine {
    pub fn new(name: &str, passed: bool) -> Self {
        CheckLine {
            name: name.into(),
            passed,
            details: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, ok_flag(self.passed))?;
        for (k, v) in &self.details {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for CheckLine {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut it = s.split(' ');
        let name = it.next().filter(|n| !n.is_empty()).ok_or_else(|| err("empty check line"))?;
        let passed = parse_flag(it.next().ok_or_else(|| err("missing verdict"))?)?;
        let details = it
            .map(|kv| {
                kv.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| err(format!("expected key=value, got `{kv}`")))
            })
            .collect::<Result<_, _>>()?;
        Ok(CheckLine {
            name: name.into(),
            passed,
            details,
        })
    }
}
