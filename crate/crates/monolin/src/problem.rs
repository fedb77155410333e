//! Line-based problem files.
//!
//! ```text
//! # the diagonal of R x R
//! kind subspace
//! n 1
//! basis
//! 1 | 1
//! ```
//!
//! A point is written `x1 .. xn | y1 .. yn` with entries `p/q` or integers.
//! Cones use the sections `skew` and `generators`; sums use `m`, `M`, `N`
//! and `A` (rows of `A`, `m × n`); Gossez files hold `x` and `v` lines of
//! `index:value` pairs. Blank lines and `#` comments are ignored. The
//! writer emits the canonical form, which parses back to the same bytes.

use std::fmt::Write as _;

use monolin_core::doublecone::FinGenDoubleCone;
use monolin_core::gossez::FinSeq;
use monolin_core::matrix::Mat;
use monolin_core::pairing::Point;
use monolin_core::scalar::{self, Scalar};
use monolin_core::Subspace;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    Subspace {
        n: usize,
        basis: Vec<Point>,
    },
    DoubleCone {
        n: usize,
        skew: Vec<Point>,
        generators: Vec<Point>,
    },
    Sum {
        n: usize,
        m: usize,
        first: Vec<Point>,
        second: Vec<Point>,
        a: Mat,
    },
    Gossez {
        x: FinSeq,
        v: FinSeq,
    },
}

fn input(line: usize, message: impl Into<String>) -> CliError {
    CliError::Input(format!("line {line}: {}", message.into()))
}

/// Parses `x1 .. xn | y1 .. yn`.
pub fn parse_point(text: &str, n: Option<usize>) -> Result<Point, CliError> {
    let (xs, ys) = text
        .split_once('|')
        .ok_or_else(|| CliError::Input(format!("point `{text}` needs a `|` between x and y")))?;
    let parse = |part: &str| -> Result<Vec<Scalar>, CliError> {
        part.split_whitespace()
            .map(|t| scalar::parse_scalar(t).map_err(CliError::from))
            .collect()
    };
    let x = parse(xs)?;
    let y = parse(ys)?;
    if x.len() != y.len() {
        return Err(CliError::Input(format!(
            "point `{text}` has {} x and {} y entries",
            x.len(),
            y.len()
        )));
    }
    if let Some(n) = n {
        if x.len() != n {
            return Err(CliError::Input(format!("point `{text}` has dimension {}, expected {n}", x.len())));
        }
    }
    Ok(Point::new(x, y)?)
}

/// Parses `i:v i:v ...`.
pub fn parse_seq(text: &str) -> Result<FinSeq, CliError> {
    let pairs = text
        .split_whitespace()
        .map(|tok| {
            let (i, v) = tok
                .split_once(':')
                .ok_or_else(|| CliError::Input(format!("sequence entry `{tok}` is not index:value")))?;
            let i: usize = i
                .parse()
                .map_err(|_| CliError::Input(format!("bad sequence index `{i}`")))?;
            Ok((i, scalar::parse_scalar(v)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(FinSeq::from_pairs(pairs)?)
}

pub fn write_point(p: &Point) -> String {
    let join = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    format!("{} | {}", join(p.x()), join(p.y()))
}

pub fn write_seq(s: &FinSeq) -> String {
    s.support()
        .iter()
        .map(|(i, v)| format!("{i}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Default)]
struct Raw {
    kind: Option<(usize, String)>,
    n: Option<usize>,
    m: Option<usize>,
    sections: Vec<(String, Vec<(usize, String)>)>,
    x: Option<String>,
    v: Option<String>,
}

const SECTIONS: [&str; 6] = ["basis", "skew", "generators", "M", "N", "A"];

impl Problem {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut raw = Raw::default();
        for (idx, line) in text.lines().enumerate() {
            let no = idx + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "kind" => raw.kind = Some((no, rest.to_string())),
                "n" | "m" => {
                    let v: usize = rest.parse().map_err(|_| input(no, format!("bad dimension `{rest}`")))?;
                    if head == "n" {
                        raw.n = Some(v);
                    } else {
                        raw.m = Some(v);
                    }
                }
                "x" => raw.x = Some(rest.to_string()),
                "v" => raw.v = Some(rest.to_string()),
                h if SECTIONS.contains(&h) && rest.is_empty() => {
                    if raw.sections.iter().any(|(s, _)| s == h) {
                        return Err(input(no, format!("section `{h}` repeated")));
                    }
                    raw.sections.push((h.to_string(), Vec::new()));
                }
                _ => match raw.sections.last_mut() {
                    Some((_, lines)) => lines.push((no, line.to_string())),
                    None => return Err(input(no, format!("unexpected `{line}`"))),
                },
            }
        }
        raw.build()
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Subspace { .. } => "subspace",
            Problem::DoubleCone { .. } => "doublecone",
            Problem::Sum { .. } => "sum",
            Problem::Gossez { .. } => "gossez",
        }
    }

    /// Canonical text form.
    pub fn write(&self) -> String {
        let mut out = format!("kind {}\n", self.kind());
        let section = |out: &mut String, name: &str, pts: &[Point]| {
            writeln!(out, "{name}").unwrap();
            for p in pts {
                writeln!(out, "{}", write_point(p)).unwrap();
            }
        };
        match self {
            Problem::Subspace { n, basis } => {
                writeln!(out, "n {n}").unwrap();
                section(&mut out, "basis", basis);
            }
            Problem::DoubleCone { n, skew, generators } => {
                writeln!(out, "n {n}").unwrap();
                section(&mut out, "skew", skew);
                section(&mut out, "generators", generators);
            }
            Problem::Sum {
                n,
                m,
                first,
                second,
                a,
            } => {
                writeln!(out, "n {n}\nm {m}").unwrap();
                section(&mut out, "M", first);
                section(&mut out, "N", second);
                writeln!(out, "A").unwrap();
                for i in 0..a.rows() {
                    let row: Vec<String> = a.row(i).iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
            Problem::Gossez { x, v } => {
                writeln!(out, "x {}\nv {}", write_seq(x), write_seq(v)).unwrap();
            }
        }
        out
    }

    pub fn subspace(&self) -> Result<Subspace, CliError> {
        match self {
            Problem::Subspace { n, basis } => Ok(Subspace::from_points(*n, basis)?),
            Problem::DoubleCone { .. } => self
                .cone()?
                .as_subspace()
                .ok_or_else(|| CliError::Input("this double-cone is not a linear subspace".into())),
            _ => Err(CliError::Input(format!("a {} problem does not describe a subspace", self.kind()))),
        }
    }

    pub fn cone(&self) -> Result<FinGenDoubleCone, CliError> {
        match self {
            Problem::DoubleCone { n, skew, generators } => {
                let s = Subspace::from_points(*n, skew)?;
                Ok(FinGenDoubleCone::new(s, generators)?)
            }
            _ => Err(CliError::Input(format!("a {} problem does not describe a double-cone", self.kind()))),
        }
    }

    pub fn n(&self) -> Option<usize> {
        match self {
            Problem::Subspace { n, .. } | Problem::DoubleCone { n, .. } | Problem::Sum { n, .. } => Some(*n),
            Problem::Gossez { .. } => None,
        }
    }
}

impl Raw {
    fn take(&mut self, name: &str) -> Vec<(usize, String)> {
        match self.sections.iter().position(|(s, _)| s == name) {
            Some(i) => self.sections.remove(i).1,
            None => Vec::new(),
        }
    }

    fn points(&mut self, name: &str, n: usize) -> Result<Vec<Point>, CliError> {
        self.take(name)
            .into_iter()
            .map(|(no, l)| parse_point(&l, Some(n)).map_err(|e| input(no, e.to_string())))
            .collect()
    }

    fn require_n(&self, key: &str, v: Option<usize>) -> Result<usize, CliError> {
        v.ok_or_else(|| CliError::Input(format!("missing `{key}` line")))
    }

    fn build(mut self) -> Result<Problem, CliError> {
        let (kind_line, kind) = self
            .kind
            .clone()
            .ok_or_else(|| CliError::Input("missing `kind` line".into()))?;
        let allowed: &[&str] = match kind.as_str() {
            "subspace" => &["basis"],
            "doublecone" => &["skew", "generators"],
            "sum" => &["M", "N", "A"],
            "gossez" => &[],
            other => return Err(input(kind_line, format!("unknown kind `{other}`"))),
        };
        if let Some((s, lines)) = self.sections.iter().find(|(s, _)| !allowed.contains(&s.as_str())) {
            let no = lines.first().map_or(kind_line, |(no, _)| *no);
            return Err(input(no, format!("section `{s}` does not belong to kind {kind}")));
        }
        let problem = match kind.as_str() {
            "subspace" => {
                let n = self.require_n("n", self.n)?;
                Problem::Subspace {
                    n,
                    basis: self.points("basis", n)?,
                }
            }
            "doublecone" => {
                let n = self.require_n("n", self.n)?;
                Problem::DoubleCone {
                    n,
                    skew: self.points("skew", n)?,
                    generators: self.points("generators", n)?,
                }
            }
            "sum" => {
                let n = self.require_n("n", self.n)?;
                let m = self.require_n("m", self.m)?;
                let first = self.points("M", n)?;
                let second = self.points("N", m)?;
                let rows = self.take("A");
                if rows.len() != m {
                    return Err(CliError::Input(format!("A needs {m} rows, found {}", rows.len())));
                }
                let mut entries = Vec::with_capacity(m * n);
                for (no, row) in rows {
                    let vals: Vec<Scalar> = row
                        .split_whitespace()
                        .map(scalar::parse_scalar)
                        .collect::<Result<_, _>>()
                        .map_err(|e| input(no, e.to_string()))?;
                    if vals.len() != n {
                        return Err(input(no, format!("A rows need {n} entries")));
                    }
                    entries.extend(vals);
                }
                Problem::Sum {
                    n,
                    m,
                    first,
                    second,
                    a: Mat::new(m, n, entries)?,
                }
            }
            _ => Problem::Gossez {
                x: parse_seq(self.x.as_deref().unwrap_or(""))?,
                v: parse_seq(self.v.as_deref().unwrap_or(""))?,
            },
        };
        Ok(problem)
    }
}
