//! The one-line group-spec mini-language.
//!
//! ```text
//! cyclic n=12
//! abelian 9,3
//! symmetric n=5
//! heisenberg p=3
//! modular p=3
//! unitriangular n=4 p=3
//! product: cyclic n=4 ; heisenberg p=3
//! perm gens=(1 2)(3 4),(1 2 3 4 5)
//! matrix n=3 mod=5 gens=[1 1 0;0 1 0;0 0 1],[1 0 0;0 1 1;0 0 1]
//! ```
//!
//! Whitespace around tokens is ignored and `#` starts a comment.

use std::fmt;

use thiserror::Error;

use crate::arith::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic { n: u64 },
    Abelian { moduli: Vec<u64> },
    Symmetric { n: u64 },
    Heisenberg { p: u64 },
    Modular { p: u64 },
    Unitriangular { n: u64, p: u64 },
    Product(Vec<GroupSpec>),
    /// Permutations as lists of 1-based cycles, acting on `1..=degree`.
    PermGens { degree: usize, gens: Vec<Vec<Vec<usize>>> },
    /// Upper unitriangular matrices, row-major.
    MatrixGens { dim: usize, modulus: u64, gens: Vec<Vec<u64>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecErrorKind {
    Syntax(String),
    UnknownFamily(String),
    BadParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {}", match kind {
    SpecErrorKind::Syntax(m) => format!("syntax error: {m}"),
    SpecErrorKind::UnknownFamily(m) => format!("unknown family `{m}`"),
    SpecErrorKind::BadParameter(m) => format!("bad parameter: {m}"),
})]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub kind: SpecErrorKind,
}

impl GroupSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GroupSpec::Cyclic { .. } => "cyclic",
            GroupSpec::Abelian { .. } => "abelian",
            GroupSpec::Symmetric { .. } => "symmetric",
            GroupSpec::Heisenberg { .. } => "heisenberg",
            GroupSpec::Modular { .. } => "modular",
            GroupSpec::Unitriangular { .. } => "unitriangular",
            GroupSpec::Product(_) => "product",
            GroupSpec::PermGens { .. } => "perm-gens",
            GroupSpec::MatrixGens { .. } => "matrix-gens",
        }
    }

    /// Re-checks the per-family parameter rules.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            GroupSpec::Cyclic { n } | GroupSpec::Symmetric { n } if *n == 0 => Err("n must be at least 1".into()),
            GroupSpec::Abelian { moduli } if moduli.is_empty() || moduli.contains(&0) => {
                Err("abelian needs a nonempty list of positive moduli".into())
            }
            GroupSpec::Heisenberg { p } | GroupSpec::Modular { p } if !is_prime(*p) => Err(format!("p={p} is not prime")),
            GroupSpec::Unitriangular { n, p } => {
                if *n == 0 {
                    Err("n must be at least 1".into())
                } else if !is_prime(*p) {
                    Err(format!("p={p} is not prime"))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Product(parts) => {
                if parts.len() < 2 {
                    return Err("product needs at least two factors".into());
                }
                parts.iter().try_for_each(|p| p.validate())
            }
            GroupSpec::PermGens { degree, gens } => {
                for g in gens {
                    let mut seen = vec![false; degree + 1];
                    for cyc in g {
                        for &pt in cyc {
                            if pt == 0 || pt > *degree {
                                return Err(format!("point {pt} outside 1..={degree}"));
                            }
                            if std::mem::replace(&mut seen[pt], true) {
                                return Err(format!("point {pt} repeated within one permutation"));
                            }
                        }
                    }
                }
                Ok(())
            }
            GroupSpec::MatrixGens { dim, modulus, gens } => {
                if *modulus < 2 {
                    return Err("mod must be at least 2".into());
                }
                if gens.iter().any(|g| g.len() != dim * dim) {
                    return Err(format!("every matrix must be {dim}x{dim}"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { n } => write!(f, "cyclic n={n}"),
            GroupSpec::Abelian { moduli } => {
                let m: Vec<String> = moduli.iter().map(u64::to_string).collect();
                write!(f, "abelian {}", m.join(","))
            }
            GroupSpec::Symmetric { n } => write!(f, "symmetric n={n}"),
            GroupSpec::Heisenberg { p } => write!(f, "heisenberg p={p}"),
            GroupSpec::Modular { p } => write!(f, "modular p={p}"),
            GroupSpec::Unitriangular { n, p } => write!(f, "unitriangular n={n} p={p}"),
            GroupSpec::Product(parts) => {
                let p: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                write!(f, "product: {}", p.join(" ; "))
            }
            GroupSpec::PermGens { degree, gens } => {
                let gs: Vec<String> = gens
                    .iter()
                    .map(|g| {
                        if g.is_empty() {
                            "()".to_string()
                        } else {
                            g.iter()
                                .map(|c| format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
                                .collect()
                        }
                    })
                    .collect();
                let gs = if gs.is_empty() { "()".to_string() } else { gs.join(",") };
                write!(f, "perm degree={degree} gens={gs}")
            }
            GroupSpec::MatrixGens { dim, modulus, gens } => {
                let gs: Vec<String> = gens
                    .iter()
                    .map(|g| {
                        let rows: Vec<String> = g
                            .chunks(*dim)
                            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                            .collect();
                        format!("[{}]", rows.join(";"))
                    })
                    .collect();
                write!(f, "matrix n={dim} mod={modulus} gens={}", gs.join(","))
            }
        }
    }
}

/// Parses one spec line (line number 1).
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    parse_line(text, 1)
}

/// Parses every non-blank, non-comment line.
pub fn parse_spec_lines(text: &str) -> Result<Vec<GroupSpec>, SpecError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !strip_comment(l).trim().is_empty())
        .map(|(i, l)| parse_line(l, i + 1))
        .collect()
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_line(line: &str, lineno: usize) -> Result<GroupSpec, SpecError> {
    let body = strip_comment(line);
    let p = Parser { line: lineno };
    p.spec(body, 0)
}

struct Parser {
    line: usize,
}

/// A parameter: optional key, raw value, 0-based column of the value.
struct Param<'a> {
    key: Option<&'a str>,
    value: &'a str,
    column: usize,
}

impl Parser {
    fn err(&self, column: usize, kind: SpecErrorKind) -> SpecError {
        SpecError {
            line: self.line,
            column: column + 1,
            kind,
        }
    }

    fn spec(&self, text: &str, offset: usize) -> Result<GroupSpec, SpecError> {
        let lead = text.len() - text.trim_start().len();
        let t = text.trim();
        let start = offset + lead;
        if t.is_empty() {
            return Err(self.err(start, SpecErrorKind::Syntax("empty group spec".into())));
        }
        let fam_len = t
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
            .unwrap_or(t.len());
        let family = &t[..fam_len];
        if family.is_empty() {
            return Err(self.err(start, SpecErrorKind::Syntax("expected a family name".into())));
        }
        let rest = &t[fam_len..];
        let rest_off = start + fam_len;

        if family == "product" {
            let after = rest.trim_start();
            let colon_off = rest_off + (rest.len() - after.len());
            let Some(items) = after.strip_prefix(':') else {
                return Err(self.err(colon_off, SpecErrorKind::Syntax("expected `:` after product".into())));
            };
            let mut parts = Vec::new();
            let mut off = colon_off + 1;
            for piece in items.split(';') {
                parts.push(self.spec(piece, off)?);
                off += piece.len() + 1;
            }
            if parts.len() < 2 {
                return Err(self.err(colon_off, SpecErrorKind::BadParameter("product needs at least two factors".into())));
            }
            return Ok(GroupSpec::Product(parts));
        }

        let params = self.params(rest, rest_off)?;
        let spec = match family {
            "cyclic" => GroupSpec::Cyclic {
                n: self.int_param(&params, &["n"], start)?,
            },
            "symmetric" => GroupSpec::Symmetric {
                n: self.int_param(&params, &["n"], start)?,
            },
            "heisenberg" => GroupSpec::Heisenberg {
                p: self.int_param(&params, &["p"], start)?,
            },
            "modular" => GroupSpec::Modular {
                p: self.int_param(&params, &["p"], start)?,
            },
            "unitriangular" => {
                self.only_keys(&params, &["n", "p"])?;
                GroupSpec::Unitriangular {
                    n: self.keyed_int(&params, "n", start)?,
                    p: self.keyed_int(&params, "p", start)?,
                }
            }
            "abelian" => {
                let param = self.single(&params, &["m", "moduli"], start)?;
                let moduli = param
                    .value
                    .split(',')
                    .map(|s| self.int(s, param.column))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupSpec::Abelian { moduli }
            }
            "perm" | "perm-gens" => self.perm(&params, start)?,
            "matrix" | "matrix-gens" => self.matrix(&params, start)?,
            other => return Err(self.err(start, SpecErrorKind::UnknownFamily(other.into()))),
        };
        spec.validate()
            .map_err(|m| self.err(params.first().map_or(start, |p| p.column), SpecErrorKind::BadParameter(m)))?;
        Ok(spec)
    }

    fn params<'a>(&self, text: &'a str, offset: usize) -> Result<Vec<Param<'a>>, SpecError> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        let skip_ws = |mut i: usize| {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            i
        };
        // A key is an identifier followed by optional spaces and `=`.
        let key_at = |i: usize| -> Option<(usize, usize)> {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphabetic() || bytes[j] == b'_') {
                j += 1;
            }
            if j == i {
                return None;
            }
            let k = skip_ws(j);
            (k < bytes.len() && bytes[k] == b'=').then_some((j, k + 1))
        };
        loop {
            i = skip_ws(i);
            if i >= bytes.len() {
                break;
            }
            let (key, vstart) = match key_at(i) {
                Some((kend, eq)) => (Some(&text[i..kend]), skip_ws(eq)),
                None => (None, i),
            };
            let mut depth: i32 = 0;
            let mut j = vstart;
            while j < bytes.len() {
                match bytes[j] {
                    b'(' | b'[' => depth += 1,
                    b')' | b']' => {
                        depth -= 1;
                        if depth < 0 {
                            return Err(self.err(offset + j, SpecErrorKind::Syntax("unbalanced bracket".into())));
                        }
                    }
                    c if c.is_ascii_whitespace() && depth == 0 => {
                        let k = skip_ws(j);
                        if k >= bytes.len() || key_at(k).is_some() {
                            break;
                        }
                    }
                    _ => {}
                }
                j += 1;
            }
            if depth != 0 {
                return Err(self.err(offset + vstart, SpecErrorKind::Syntax("unbalanced bracket".into())));
            }
            let value = text[vstart..j].trim();
            if value.is_empty() {
                return Err(self.err(offset + vstart, SpecErrorKind::Syntax("missing value".into())));
            }
            out.push(Param {
                key,
                value,
                column: offset + vstart,
            });
            i = j;
        }
        Ok(out)
    }

    fn int(&self, s: &str, column: usize) -> Result<u64, SpecError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        t.parse::<u64>()
            .map_err(|_| self.err(column, SpecErrorKind::BadParameter(format!("`{}` is not a nonnegative integer", s.trim()))))
    }

    fn only_keys(&self, params: &[Param], keys: &[&str]) -> Result<(), SpecError> {
        for p in params {
            match p.key {
                Some(k) if keys.contains(&k) => {}
                Some(k) => return Err(self.err(p.column, SpecErrorKind::BadParameter(format!("unexpected key `{k}`")))),
                None => {
                    return Err(self.err(p.column, SpecErrorKind::Syntax(format!("expected key=value, found `{}`", p.value))))
                }
            }
        }
        Ok(())
    }

    /// Exactly one parameter, either positional or under one of `keys`.
    fn single<'a>(&self, params: &'a [Param<'a>], keys: &[&str], start: usize) -> Result<&'a Param<'a>, SpecError> {
        match params {
            [p] if p.key.is_none() || keys.contains(&p.key.unwrap()) => Ok(p),
            [p] => Err(self.err(p.column, SpecErrorKind::BadParameter(format!("unexpected key `{}`", p.key.unwrap_or(""))))),
            [] => Err(self.err(start, SpecErrorKind::Syntax(format!("missing parameter `{}`", keys[0])))),
            [_, extra, ..] => Err(self.err(extra.column, SpecErrorKind::Syntax("too many parameters".into()))),
        }
    }

    fn int_param(&self, params: &[Param], keys: &[&str], start: usize) -> Result<u64, SpecError> {
        let p = self.single(params, keys, start)?;
        self.int(p.value, p.column)
    }

    fn keyed<'a>(&self, params: &'a [Param<'a>], key: &str) -> Option<&'a Param<'a>> {
        params.iter().find(|p| p.key == Some(key))
    }

    fn keyed_int(&self, params: &[Param], key: &str, start: usize) -> Result<u64, SpecError> {
        let p = self
            .keyed(params, key)
            .ok_or_else(|| self.err(start, SpecErrorKind::Syntax(format!("missing parameter `{key}`"))))?;
        self.int(p.value, p.column)
    }

    fn perm(&self, params: &[Param], start: usize) -> Result<GroupSpec, SpecError> {
        self.only_keys(params, &["gens", "degree"])?;
        let gp = self
            .keyed(params, "gens")
            .ok_or_else(|| self.err(start, SpecErrorKind::Syntax("missing parameter `gens`".into())))?;
        let mut gens = Vec::new();
        for (piece, off) in split_top(gp.value, ',') {
            let col = gp.column + off;
            let piece_t = piece.trim();
            let mut cycles = Vec::new();
            let mut rest = piece_t;
            while !rest.is_empty() {
                let Some(inner) = rest.strip_prefix('(') else {
                    return Err(self.err(col, SpecErrorKind::Syntax(format!("expected `(` in `{piece_t}`"))));
                };
                let close = inner
                    .find(')')
                    .ok_or_else(|| self.err(col, SpecErrorKind::Syntax("unclosed cycle".into())))?;
                let pts = inner[..close]
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| self.int(s, col).map(|v| v as usize))
                    .collect::<Result<Vec<_>, _>>()?;
                if pts.len() > 1 {
                    cycles.push(pts);
                }
                rest = inner[close + 1..].trim_start();
            }
            gens.push(cycles);
        }
        let max_pt = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
        let degree = match self.keyed(params, "degree") {
            Some(p) => {
                let d = self.int(p.value, p.column)? as usize;
                if d < max_pt {
                    return Err(self.err(p.column, SpecErrorKind::BadParameter(format!("degree {d} below largest point {max_pt}"))));
                }
                d
            }
            None => max_pt,
        };
        Ok(GroupSpec::PermGens { degree, gens })
    }

    fn matrix(&self, params: &[Param], start: usize) -> Result<GroupSpec, SpecError> {
        self.only_keys(params, &["n", "mod", "m", "gens"])?;
        let modulus = match (self.keyed(params, "mod"), self.keyed(params, "m")) {
            (Some(p), _) | (None, Some(p)) => self.int(p.value, p.column)?,
            (None, None) => return Err(self.err(start, SpecErrorKind::Syntax("missing parameter `mod`".into()))),
        };
        let gp = self
            .keyed(params, "gens")
            .ok_or_else(|| self.err(start, SpecErrorKind::Syntax("missing parameter `gens`".into())))?;
        let mut gens = Vec::new();
        let mut dim = None;
        for (piece, off) in split_top(gp.value, ',') {
            let col = gp.column + off;
            let t = piece.trim();
            let inner = t
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| self.err(col, SpecErrorKind::Syntax("matrix must be enclosed in [ ]".into())))?;
            let rows: Vec<Vec<u64>> = inner
                .split(';')
                .map(|r| {
                    r.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| self.int(s, col))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            let d = rows.len();
            if rows.iter().any(|r| r.len() != d) {
                return Err(self.err(col, SpecErrorKind::BadParameter("matrix is not square".into())));
            }
            if *dim.get_or_insert(d) != d {
                return Err(self.err(col, SpecErrorKind::BadParameter("matrices differ in size".into())));
            }
            gens.push(rows.concat());
        }
        let dim = match self.keyed(params, "n") {
            Some(p) => {
                let n = self.int(p.value, p.column)? as usize;
                if dim.is_some_and(|d| d != n) {
                    return Err(self.err(p.column, SpecErrorKind::BadParameter(format!("matrices are not {n}x{n}"))));
                }
                n
            }
            None => dim.unwrap_or(1),
        };
        Ok(GroupSpec::MatrixGens { dim, modulus, gens })
    }
}

/// Splits at `sep` outside brackets, returning pieces with their byte offsets.
fn split_top(s: &str, sep: char) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((&s[last..i], last));
                last = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((&s[last..], last));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_examples_parse() {
        assert_eq!(parse_group_spec("heisenberg p=3").unwrap(), GroupSpec::Heisenberg { p: 3 });
        assert_eq!(parse_group_spec("cyclic n=12").unwrap(), GroupSpec::Cyclic { n: 12 });
        assert_eq!(parse_group_spec("abelian 9,3").unwrap(), GroupSpec::Abelian { moduli: vec![9, 3] });
        assert_eq!(parse_group_spec("symmetric n=5").unwrap(), GroupSpec::Symmetric { n: 5 });
        assert_eq!(parse_group_spec("modular p=3").unwrap(), GroupSpec::Modular { p: 3 });
        assert_eq!(
            parse_group_spec("unitriangular n=4 p=3").unwrap(),
            GroupSpec::Unitriangular { n: 4, p: 3 }
        );
        assert_eq!(
            parse_group_spec("product: cyclic n=4 ; heisenberg p=3").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Cyclic { n: 4 }, GroupSpec::Heisenberg { p: 3 }])
        );
        assert_eq!(
            parse_group_spec("perm gens=(1 2)(3 4),(1 2 3 4 5)").unwrap(),
            GroupSpec::PermGens {
                degree: 5,
                gens: vec![vec![vec![1, 2], vec![3, 4]], vec![vec![1, 2, 3, 4, 5]]]
            }
        );
    }

    #[test]
    fn whitespace_and_comments() {
        assert_eq!(
            parse_group_spec("   heisenberg   p = 3   # the order-27 group").unwrap(),
            GroupSpec::Heisenberg { p: 3 }
        );
        assert_eq!(
            parse_group_spec("perm gens = (1 2), (1 2 3 4)").unwrap(),
            GroupSpec::PermGens {
                degree: 4,
                gens: vec![vec![vec![1, 2]], vec![vec![1, 2, 3, 4]]]
            }
        );
        assert_eq!(parse_group_spec("abelian 9, 3").unwrap(), GroupSpec::Abelian { moduli: vec![9, 3] });
        let lines = parse_spec_lines("# header\ncyclic n=2\n\n  # x\nmodular p=5\n").unwrap();
        assert_eq!(lines, vec![GroupSpec::Cyclic { n: 2 }, GroupSpec::Modular { p: 5 }]);
    }

    #[test]
    fn matrix_generators() {
        let s = parse_group_spec("matrix n=3 mod=5 gens=[1 1 0;0 1 0;0 0 1],[1 0 0;0 1 1;0 0 1]").unwrap();
        assert_eq!(
            s,
            GroupSpec::MatrixGens {
                dim: 3,
                modulus: 5,
                gens: vec![vec![1, 1, 0, 0, 1, 0, 0, 0, 1], vec![1, 0, 0, 0, 1, 1, 0, 0, 1]]
            }
        );
    }

    #[test]
    fn errors_carry_kind_and_column() {
        let e = parse_group_spec("heisenberg p=4").unwrap_err();
        assert!(matches!(e.kind, SpecErrorKind::BadParameter(_)));
        assert_eq!((e.line, e.column), (1, 14));

        let e = parse_group_spec("  dihedral n=4").unwrap_err();
        assert_eq!(e.kind, SpecErrorKind::UnknownFamily("dihedral".into()));
        assert_eq!(e.column, 3);

        assert!(matches!(parse_group_spec("cyclic n=x").unwrap_err().kind, SpecErrorKind::BadParameter(_)));
        assert!(matches!(parse_group_spec("perm gens=(1 2").unwrap_err().kind, SpecErrorKind::Syntax(_)));
        assert!(matches!(parse_group_spec("").unwrap_err().kind, SpecErrorKind::Syntax(_)));
        assert!(matches!(parse_group_spec("product: cyclic n=2").unwrap_err().kind, SpecErrorKind::BadParameter(_)));
        assert!(matches!(parse_group_spec("unitriangular n=3").unwrap_err().kind, SpecErrorKind::Syntax(_)));
        assert!(matches!(parse_group_spec("modular p=1").unwrap_err().kind, SpecErrorKind::BadParameter(_)));
        assert!(matches!(parse_group_spec("perm gens=(1 2 1)").unwrap_err().kind, SpecErrorKind::BadParameter(_)));

        let e = parse_spec_lines("cyclic n=2\nheisenberg p=6").unwrap_err();
        assert_eq!(e.line, 2);
    }

    fn leaf() -> impl Strategy<Value = GroupSpec> {
        let primes = prop::sample::select(vec![2u64, 3, 5, 7, 11]);
        prop_oneof![
            (1u64..100).prop_map(|n| GroupSpec::Cyclic { n }),
            prop::collection::vec(1u64..30, 1..4).prop_map(|moduli| GroupSpec::Abelian { moduli }),
            (1u64..7).prop_map(|n| GroupSpec::Symmetric { n }),
            primes.clone().prop_map(|p| GroupSpec::Heisenberg { p }),
            primes.clone().prop_map(|p| GroupSpec::Modular { p }),
            ((1u64..5), primes).prop_map(|(n, p)| GroupSpec::Unitriangular { n, p }),
            (2usize..7, 1usize..3).prop_map(|(d, k)| {
                let gens = (0..k).map(|i| if i == 0 { vec![] } else { vec![(1..=d).collect()] }).collect();
                GroupSpec::PermGens { degree: d, gens }
            }),
        ]
    }

    proptest! {
        #[test]
        fn display_round_trips(spec in leaf(), other in leaf(), product in any::<bool>()) {
            let s = if product { GroupSpec::Product(vec![spec, other]) } else { spec };
            let text = s.to_string();
            prop_assert_eq!(parse_group_spec(&text).unwrap(), s);
        }
    }
}
