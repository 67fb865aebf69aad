//! The `key=value` input format.
//!
//! ```text
//! # comments run to the end of the line
//! kind=multicube
//! sizes=1,2
//! suites=basicGD,compGD
//! ```
//!
//! Pairs may be separated by newlines or spaces. Kinds and their keys:
//!
//! * `multicube`: `sizes=n1,n2,...`
//! * `signed`, `interval`: `ground=k`
//! * `presented`: `atoms=k elements=m1,m2,... T=x:y,...` where the elements
//!   are subsets of `{1..k}` as bitmasks and `T` swaps the listed pairs
//! * `product`: `factors=signed:1,interval:2,multicube:1/2,boolean:1`
//!
//! Every kind accepts `suites=` and a `fault=` used to corrupt tables on
//! purpose: `fault=join:x,y,z` sets `x v y = y v x = z` (element indices)
//! and `fault=identity-reflection` replaces the reflection by
//! `delta(y, x) = x`.

use std::fmt;

use thiserror::Error;

use crate::suites::SUITES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Signed(u32),
    Interval(u32),
    Multicube(Vec<i64>),
    Boolean(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Multicube { sizes: Vec<i64> },
    Signed { ground: u32 },
    Interval { ground: u32 },
    Presented { atoms: u32, elements: Vec<u32>, swaps: Vec<(u32, u32)> },
    Product { factors: Vec<Factor> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    Join(usize, usize, usize),
    IdentityReflection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub algebra: AlgebraSpec,
    pub suites: Vec<String>,
    pub fault: Option<Fault>,
}

struct Entry {
    key: String,
    value: String,
    line: usize,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

fn list<T>(e: &Entry, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, ParseError> {
    if e.value.is_empty() {
        return Ok(Vec::new());
    }
    e.value
        .split(',')
        .map(|s| match item(s.trim()) {
            Some(v) => Ok(v),
            None => err(e.line, format!("bad item '{}' in {}", s.trim(), e.key)),
        })
        .collect()
}

fn sizes(e: &Entry, items: &str, sep: char) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    for s in items.split(sep) {
        let n: i64 = s.trim().parse().map_err(|_| ParseError { line: e.line, message: format!("bad size '{s}'") })?;
        if n < 0 {
            return err(e.line, format!("n_i must be ≥ 0 (got {n})"));
        }
        out.push(n);
    }
    Ok(out)
}

fn number(e: &Entry) -> Result<u32, ParseError> {
    e.value
        .parse()
        .map_err(|_| ParseError { line: e.line, message: format!("{} must be a non-negative integer", e.key) })
}

fn factor(e: &Entry, s: &str) -> Result<Factor, ParseError> {
    let Some((kind, arg)) = s.split_once(':') else {
        return err(e.line, format!("factor '{s}' needs the form kind:parameter"));
    };
    let k = || -> Result<u32, ParseError> {
        arg.parse().map_err(|_| ParseError { line: e.line, message: format!("bad parameter in factor '{s}'") })
    };
    Ok(match kind {
        "signed" => Factor::Signed(k()?),
        "interval" => Factor::Interval(k()?),
        "boolean" => Factor::Boolean(k()?),
        "multicube" => Factor::Multicube(sizes(e, arg, '/')?),
        _ => return err(e.line, format!("unknown factor kind '{kind}'")),
    })
}

fn fault(e: &Entry) -> Result<Fault, ParseError> {
    if e.value == "identity-reflection" {
        return Ok(Fault::IdentityReflection);
    }
    let parts: Option<Vec<usize>> =
        e.value.strip_prefix("join:").and_then(|r| r.split(',').map(|s| s.trim().parse().ok()).collect());
    match parts {
        Some(v) if v.len() == 3 => Ok(Fault::Join(v[0], v[1], v[2])),
        _ => err(e.line, "fault must be identity-reflection or join:x,y,z"),
    }
}

/// Parses a spec file; errors carry the offending line.
pub fn parse_spec(text: &str) -> Result<SpecFile, ParseError> {
    let mut entries: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        for tok in body.split_whitespace() {
            let Some((k, v)) = tok.split_once('=') else {
                return err(line, format!("expected key=value, found '{tok}'"));
            };
            if entries.iter().any(|e| e.key == k) {
                return err(line, format!("duplicate key '{k}'"));
            }
            entries.push(Entry { key: k.to_string(), value: v.to_string(), line });
        }
    }
    let Some(kind) = entries.iter().find(|e| e.key == "kind") else {
        return err(entries.first().map_or(1, |e| e.line), "missing kind");
    };
    let allowed: &[&str] = match kind.value.as_str() {
        "multicube" => &["sizes"],
        "signed" | "interval" => &["ground"],
        "presented" => &["atoms", "elements", "T"],
        "product" => &["factors"],
        other => return err(kind.line, format!("unknown kind '{other}'")),
    };
    for e in &entries {
        if !matches!(e.key.as_str(), "kind" | "suites" | "fault") && !allowed.contains(&e.key.as_str()) {
            return err(e.line, format!("unknown key '{}' for kind {}", e.key, kind.value));
        }
    }
    let get = |key: &str| -> Result<&Entry, ParseError> {
        match entries.iter().find(|e| e.key == key) {
            Some(e) => Ok(e),
            None => err(kind.line, format!("kind {} needs {key}=", kind.value)),
        }
    };
    let algebra = match kind.value.as_str() {
        "multicube" => {
            let e = get("sizes")?;
            AlgebraSpec::Multicube { sizes: sizes(e, &e.value, ',')? }
        }
        "signed" => AlgebraSpec::Signed { ground: number(get("ground")?)? },
        "interval" => AlgebraSpec::Interval { ground: number(get("ground")?)? },
        "presented" => {
            let swaps = match entries.iter().find(|e| e.key == "T") {
                Some(e) => list(e, |s| {
                    let (x, y) = s.split_once(':')?;
                    Some((x.parse().ok()?, y.parse().ok()?))
                })?,
                None => Vec::new(),
            };
            AlgebraSpec::Presented {
                atoms: number(get("atoms")?)?,
                elements: list(get("elements")?, |s| s.parse().ok())?,
                swaps,
            }
        }
        _ => {
            let e = get("factors")?;
            let factors = e.value.split(',').map(|s| factor(e, s.trim())).collect::<Result<Vec<_>, _>>()?;
            if factors.is_empty() {
                return err(e.line, "no factors");
            }
            AlgebraSpec::Product { factors }
        }
    };
    let suites = match entries.iter().find(|e| e.key == "suites") {
        Some(e) => {
            let names = list(e, |s| Some(s.to_string()))?;
            if let Some(bad) = names.iter().find(|n| *n != "all" && !SUITES.contains(&n.as_str())) {
                return err(e.line, format!("unknown suite '{bad}'"));
            }
            names
        }
        None => Vec::new(),
    };
    let fault = entries.iter().find(|e| e.key == "fault").map(fault).transpose()?;
    Ok(SpecFile { algebra, suites, fault })
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Signed(k) => write!(f, "signed:{k}"),
            Factor::Interval(k) => write!(f, "interval:{k}"),
            Factor::Boolean(k) => write!(f, "boolean:{k}"),
            Factor::Multicube(n) => write!(f, "multicube:{}", join(n, "/")),
        }
    }
}

/// Canonical text; `parse_spec` reads it back to the same value.
impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.algebra {
            AlgebraSpec::Multicube { sizes } => writeln!(f, "kind=multicube\nsizes={}", join(sizes, ","))?,
            AlgebraSpec::Signed { ground } => writeln!(f, "kind=signed\nground={ground}")?,
            AlgebraSpec::Interval { ground } => writeln!(f, "kind=interval\nground={ground}")?,
            AlgebraSpec::Presented { atoms, elements, swaps } => {
                writeln!(f, "kind=presented\natoms={atoms}\nelements={}", join(elements, ","))?;
                if !swaps.is_empty() {
                    let pairs: Vec<String> = swaps.iter().map(|(x, y)| format!("{x}:{y}")).collect();
                    writeln!(f, "T={}", pairs.join(","))?;
                }
            }
            AlgebraSpec::Product { factors } => writeln!(f, "kind=product\nfactors={}", join(factors, ","))?,
        }
        if !self.suites.is_empty() {
            writeln!(f, "suites={}", self.suites.join(","))?;
        }
        match self.fault {
            Some(Fault::Join(x, y, z)) => writeln!(f, "fault=join:{x},{y},{z}")?,
            Some(Fault::IdentityReflection) => writeln!(f, "fault=identity-reflection")?,
            None => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = parse_spec("kind=multicube\nsizes=1,1").unwrap();
        assert_eq!(s.algebra, AlgebraSpec::Multicube { sizes: vec![1, 1] });
        let s = parse_spec("kind=signed\nground=2").unwrap();
        assert_eq!(s.algebra, AlgebraSpec::Signed { ground: 2 });
        let e = parse_spec("kind=multicube\nsizes=1,-1").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("n_i must be ≥ 0"), "{e}");
    }

    #[test]
    fn one_line_stanza_and_comments() {
        let s = parse_spec("# A3\nkind=presented atoms=2 elements=1,2,3 T=1:2 # swap\n").unwrap();
        assert_eq!(s.algebra, AlgebraSpec::Presented { atoms: 2, elements: vec![1, 2, 3], swaps: vec![(1, 2)] });
    }

    #[test]
    fn rejects_unknown_keys_and_suites() {
        assert_eq!(parse_spec("kind=signed\nground=1\ncolour=red").unwrap_err().line, 3);
        assert!(parse_spec("kind=signed ground=1 sizes=1").is_err());
        assert!(parse_spec("kind=signed ground=1\nsuites=nope").unwrap_err().message.contains("nope"));
        assert!(parse_spec("kind=cube").is_err());
        assert!(parse_spec("kind=signed").is_err());
        assert!(parse_spec("kind=signed ground=1 ground=2").is_err());
        assert!(parse_spec("ground=1").is_err());
    }

    #[test]
    fn round_trips() {
        let texts = [
            "kind=multicube sizes=1,2 suites=basicGD,compGD",
            "kind=interval ground=3 fault=identity-reflection",
            "kind=presented atoms=3 elements=1,2,3,5,6,7 T=1:2,5:6",
            "kind=presented atoms=1 elements=1",
            "kind=product factors=signed:1,interval:2,multicube:1/2,boolean:1 fault=join:0,1,2",
        ];
        for t in texts {
            let s = parse_spec(t).unwrap();
            assert_eq!(parse_spec(&s.to_string()).unwrap(), s, "{t}");
        }
        assert!(parse_spec("kind=multicube sizes=").is_err());
    }
}
