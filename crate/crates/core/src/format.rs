//! Line-based text formats for lattices and operations, and table rendering.
//!
//! Lattice files:
//!
//! ```text
//! # comments start with '#'
//! lattice L1
//! elements 0 b a c 1
//! bottom 0
//! top 1
//! cover 0 b
//! cover b a
//! ```
//!
//! Operation files:
//!
//! ```text
//! op T2
//! interval 0 a
//! map 0 0 0
//! map 0 a 0
//! map a a 0
//! ```
//!
//! `map x y v` also defines `(y,x)`; listing both with different values is
//! an error. After an `ordered` line no pair is mirrored and every pair must
//! be listed, which is how non-commutative tables are written.
//! A document may hold a lattice block followed by an operation block; the
//! operation is then resolved against the embedded lattice.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Elem, Interval, Lattice, LatticeError};
use crate::optable::{OpError, OpTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    /// Well-formed directives describing something that is not a bounded
    /// lattice.
    #[error("line {line}: {error}")]
    Invalid { line: usize, error: LatticeError },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Op(#[from] OpError),
}

impl FormatError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Syntax { line, msg: msg.into() }
    }

    /// Line number when the error is tied to one.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Syntax { line, .. } | FormatError::Invalid { line, .. } => Some(*line),
            _ => None,
        }
    }
}

struct Line<'a> {
    number: usize,
    directive: &'a str,
    args: Vec<&'a str>,
}

fn tokenize(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let directive = tokens.next()?;
        Some(Line {
            number: i + 1,
            directive,
            args: tokens.collect(),
        })
    })
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

const LATTICE_DIRECTIVES: [&str; 5] = ["lattice", "elements", "bottom", "top", "cover"];
const OP_DIRECTIVES: [&str; 4] = ["op", "interval", "ordered", "map"];

fn expect_args(line: &Line<'_>, n: usize) -> Result<(), FormatError> {
    if line.args.len() != n {
        return Err(FormatError::at(
            line.number,
            format!("'{}' takes {} argument(s), got {}", line.directive, n, line.args.len()),
        ));
    }
    Ok(())
}

#[derive(Default)]
struct LatticeBlock<'a> {
    first_line: usize,
    name: Option<&'a str>,
    elements: Option<Vec<&'a str>>,
    bottom: Option<(&'a str, usize)>,
    top: Option<(&'a str, usize)>,
    covers: Vec<(&'a str, &'a str)>,
}

impl<'a> LatticeBlock<'a> {
    fn accept(&mut self, line: &Line<'a>) -> Result<(), FormatError> {
        if self.first_line == 0 {
            self.first_line = line.number;
        }
        let once = |seen: bool| {
            if seen {
                Err(FormatError::at(
                    line.number,
                    format!("duplicate '{}' directive", line.directive),
                ))
            } else {
                Ok(())
            }
        };
        match line.directive {
            "lattice" => {
                expect_args(line, 1)?;
                once(self.name.is_some())?;
                self.name = Some(line.args[0]);
            }
            "elements" => {
                once(self.elements.is_some())?;
                if line.args.is_empty() {
                    return Err(FormatError::at(line.number, "'elements' needs at least one name"));
                }
                for (i, nm) in line.args.iter().enumerate() {
                    if line.args[..i].contains(nm) {
                        return Err(FormatError::at(line.number, format!("duplicate element name '{nm}'")));
                    }
                }
                self.elements = Some(line.args.clone());
            }
            "bottom" => {
                expect_args(line, 1)?;
                once(self.bottom.is_some())?;
                self.bottom = Some((line.args[0], line.number));
            }
            "top" => {
                expect_args(line, 1)?;
                once(self.top.is_some())?;
                self.top = Some((line.args[0], line.number));
            }
            "cover" => {
                expect_args(line, 2)?;
                let known = self
                    .elements
                    .as_ref()
                    .ok_or_else(|| FormatError::at(line.number, "'cover' before 'elements'"))?;
                for nm in &line.args {
                    if !known.contains(nm) {
                        return Err(FormatError::at(line.number, format!("unknown element '{nm}'")));
                    }
                }
                self.covers.push((line.args[0], line.args[1]));
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn build(self, end: usize) -> Result<Lattice, FormatError> {
        let name = self
            .name
            .ok_or_else(|| FormatError::at(end, "missing 'lattice' directive"))?;
        let elements = self
            .elements
            .ok_or_else(|| FormatError::at(end, "missing 'elements' directive"))?;
        let (bottom, bl) = self
            .bottom
            .ok_or_else(|| FormatError::at(end, "missing 'bottom' directive"))?;
        let (top, tl) = self
            .top
            .ok_or_else(|| FormatError::at(end, "missing 'top' directive"))?;
        for (nm, l) in [(bottom, bl), (top, tl)] {
            if !elements.contains(&nm) {
                return Err(FormatError::at(l, format!("unknown element '{nm}'")));
            }
        }
        Lattice::build(name, &elements, &self.covers, bottom, top).map_err(|e| match e {
            LatticeError::WrongBounds { role, .. } => FormatError::Invalid {
                line: if role == crate::lattice::Bound::Bottom { bl } else { tl },
                error: e,
            },
            LatticeError::CycleDetected(..) | LatticeError::NotALattice(..) => FormatError::Invalid {
                line: self.first_line,
                error: e,
            },
            other => FormatError::at(self.first_line, other.to_string()),
        })
    }
}

#[derive(Default)]
struct OpBlock<'a> {
    name: Option<&'a str>,
    interval: Option<(&'a str, &'a str, usize)>,
    maps: Vec<(&'a str, &'a str, &'a str, usize)>,
    ordered: bool,
}

impl<'a> OpBlock<'a> {
    fn accept(&mut self, line: &Line<'a>) -> Result<(), FormatError> {
        match line.directive {
            "op" => {
                expect_args(line, 1)?;
                if self.name.is_some() {
                    return Err(FormatError::at(line.number, "duplicate 'op' directive"));
                }
                self.name = Some(line.args[0]);
            }
            "interval" => {
                expect_args(line, 2)?;
                if self.interval.is_some() {
                    return Err(FormatError::at(line.number, "duplicate 'interval' directive"));
                }
                self.interval = Some((line.args[0], line.args[1], line.number));
            }
            "ordered" => {
                expect_args(line, 0)?;
                self.ordered = true;
            }
            "map" => {
                expect_args(line, 3)?;
                self.maps.push((line.args[0], line.args[1], line.args[2], line.number));
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn build(self, lattice: &Arc<Lattice>, end: usize) -> Result<NamedOp, FormatError> {
        let name = self
            .name
            .ok_or_else(|| FormatError::at(end, "missing 'op' directive"))?;
        let (lo, hi, il) = self
            .interval
            .ok_or_else(|| FormatError::at(end, "missing 'interval' directive"))?;
        let elem = |nm: &str, line: usize| {
            lattice
                .elem(nm)
                .map_err(|_| FormatError::at(line, format!("unknown element '{nm}'")))
        };
        let domain =
            Interval::new(lattice, elem(lo, il)?, elem(hi, il)?).map_err(|e| FormatError::at(il, e.to_string()))?;

        let mut explicit: BTreeMap<(Elem, Elem), (Elem, usize)> = BTreeMap::new();
        for &(x, y, v, line) in &self.maps {
            let (x, y, v) = (elem(x, line)?, elem(y, line)?, elem(v, line)?);
            for e in [x, y, v] {
                if !domain.contains(e) {
                    return Err(FormatError::at(
                        line,
                        format!("'{}' is not in [{lo},{hi}]", lattice.name_of(e)),
                    ));
                }
            }
            if let Some(&(prev, _)) = explicit.get(&(x, y)) {
                if prev != v {
                    return Err(FormatError::at(
                        line,
                        format!("conflicting values for ({},{})", lattice.name_of(x), lattice.name_of(y)),
                    ));
                }
            }
            if let (false, Some(&(prev, _))) = (self.ordered, explicit.get(&(y, x))) {
                if prev != v && x != y {
                    return Err(FormatError::at(
                        line,
                        format!(
                            "conflicting duplicate: ({},{}) and ({},{}) differ",
                            lattice.name_of(x),
                            lattice.name_of(y),
                            lattice.name_of(y),
                            lattice.name_of(x)
                        ),
                    ));
                }
            }
            explicit.insert((x, y), (v, line));
        }

        let mut missing = None;
        let table = OpTable::from_fn(domain, |x, y| {
            let mirrored = || if self.ordered { None } else { explicit.get(&(y, x)) };
            match explicit.get(&(x, y)).or_else(mirrored) {
                Some(&(v, _)) => v,
                None => {
                    missing.get_or_insert((x, y));
                    x
                }
            }
        })?;
        if let Some((x, y)) = missing {
            return Err(FormatError::at(
                end,
                format!("missing value for ({},{})", lattice.name_of(x), lattice.name_of(y)),
            ));
        }
        Ok(NamedOp {
            name: name.to_string(),
            table,
        })
    }
}

/// An operation together with its display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedOp {
    pub name: String,
    pub table: OpTable,
}

pub fn parse_lattice(text: &str) -> Result<Lattice, FormatError> {
    let mut block = LatticeBlock::default();
    for line in tokenize(text) {
        if LATTICE_DIRECTIVES.contains(&line.directive) {
            block.accept(&line)?;
        } else {
            return Err(FormatError::at(
                line.number,
                format!("unknown directive '{}'", line.directive),
            ));
        }
    }
    block.build(last_line(text))
}

/// A parsed document: an optional embedded lattice and an optional operation.
pub struct Document {
    pub lattice: Option<Arc<Lattice>>,
    pub op: Option<NamedOp>,
}

/// Parses a lattice block, an operation block, or a lattice block followed
/// by an operation block. The operation resolves against the embedded
/// lattice when there is one, otherwise against `external`.
pub fn parse_document(text: &str, external: Option<&Arc<Lattice>>) -> Result<Document, FormatError> {
    let mut lat_block = LatticeBlock::default();
    let mut op_block = OpBlock::default();
    let mut has_lattice = false;
    let mut has_op = false;
    for line in tokenize(text) {
        if LATTICE_DIRECTIVES.contains(&line.directive) {
            if has_op {
                return Err(FormatError::at(line.number, "lattice directive inside an op block"));
            }
            has_lattice = true;
            lat_block.accept(&line)?;
        } else if OP_DIRECTIVES.contains(&line.directive) {
            has_op = true;
            op_block.accept(&line)?;
        } else {
            return Err(FormatError::at(
                line.number,
                format!("unknown directive '{}'", line.directive),
            ));
        }
    }
    let end = last_line(text);
    let lattice = if has_lattice {
        Some(Arc::new(lat_block.build(end)?))
    } else {
        None
    };
    let op = if has_op {
        let lat = lattice
            .as_ref()
            .or(external)
            .ok_or_else(|| FormatError::at(1, "operation file has no lattice; pass one"))?;
        Some(op_block.build(lat, end)?)
    } else {
        None
    };
    Ok(Document { lattice, op })
}

pub fn parse_op(text: &str, lattice: &Arc<Lattice>) -> Result<NamedOp, FormatError> {
    parse_document(text, Some(lattice))?
        .op
        .ok_or_else(|| FormatError::at(last_line(text), "no operation in file"))
}

pub fn render_lattice(lattice: &Lattice) -> String {
    let mut out = String::new();
    out.push_str(&format!("lattice {}\n", lattice.name()));
    out.push_str(&format!("elements {}\n", lattice.names().join(" ")));
    out.push_str(&format!("bottom {}\n", lattice.name_of(lattice.bottom())));
    out.push_str(&format!("top {}\n", lattice.name_of(lattice.top())));
    for &(lo, hi) in lattice.covers() {
        out.push_str(&format!("cover {} {}\n", lattice.name_of(lo), lattice.name_of(hi)));
    }
    out
}

/// Operation file text. Symmetric tables list each unordered pair once
/// (upper triangle in interval order); others are marked `ordered` and list
/// every pair.
pub fn render_op(name: &str, op: &OpTable) -> String {
    let lat = op.lattice();
    let iv = op.domain();
    let mut out = format!(
        "op {name}\ninterval {} {}\n",
        lat.name_of(iv.lo()),
        lat.name_of(iv.hi())
    );
    let symmetric = op.is_symmetric();
    if !symmetric {
        out.push_str("ordered\n");
    }
    for (i, &x) in iv.members().iter().enumerate() {
        let start = if symmetric { i } else { 0 };
        for &y in &iv.members()[start..] {
            out.push_str(&format!(
                "map {} {} {}\n",
                lat.name_of(x),
                lat.name_of(y),
                lat.name_of(op.get(x, y))
            ));
        }
    }
    out
}

/// Lattice block followed by the operation block.
pub fn render_document(name: &str, op: &OpTable) -> String {
    format!("{}{}", render_lattice(op.lattice()), render_op(name, op))
}

/// The operation as a table: a header row naming the columns, then one
/// line per element in declaration order.
///
/// ```text
/// T | 0 a b 1
/// 0 | 0 0 0 0
/// a | 0 a 0 a
/// b | 0 0 0 b
/// 1 | 0 a b 1
/// ```
pub fn render_table(name: &str, op: &OpTable) -> String {
    let lat = op.lattice();
    let members = op.domain().members();
    let width = members.iter().map(|&x| lat.name_of(x).len()).max().unwrap_or(1);
    let label = width.max(name.len());
    let row = |head: &str, cells: Vec<&str>| {
        let cells: Vec<String> = cells.iter().map(|c| format!("{c:<width$}")).collect();
        let line = format!("{head:<label$} | {}", cells.join(" "));
        format!("{}\n", line.trim_end())
    };
    let mut out = row(name, members.iter().map(|&x| lat.name_of(x)).collect());
    for &x in members {
        out.push_str(&row(
            lat.name_of(x),
            members.iter().map(|&y| lat.name_of(op.get(x, y))).collect(),
        ));
    }
    out
}
