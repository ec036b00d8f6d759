//! Naive reference checks shared by the integration tests. Everything here
//! is recomputed from the order relation alone, without the library's meet
//! tables, axiom checker or condition code.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use ordsum::{Elem, Interval, Lattice, OpTable};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

/// Greatest lower bound by scanning the carrier.
pub fn glb(l: &Lattice, x: Elem, y: Elem) -> Elem {
    let lower: Vec<Elem> = l.elements().filter(|&z| l.leq(z, x) && l.leq(z, y)).collect();
    *lower
        .iter()
        .find(|&&g| lower.iter().all(|&z| l.leq(z, g)))
        .expect("meet exists")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Props {
    pub commutative: bool,
    pub associative: bool,
    pub increasing: bool,
    pub neutral: bool,
    pub range: bool,
}

impl Props {
    pub fn tnorm(&self) -> bool {
        self.commutative && self.associative && self.increasing && self.neutral
    }

    pub fn tsubnorm(&self) -> bool {
        self.commutative && self.associative && self.increasing && self.range
    }
}

/// Axiom flags of `f` restricted to `members`, with `top` as the candidate
/// neutral element.
pub fn props(l: &Lattice, members: &[Elem], top: Elem, f: &dyn Fn(Elem, Elem) -> Elem) -> Props {
    let all = |p: &dyn Fn(Elem, Elem) -> bool| members.iter().all(|&x| members.iter().all(|&y| p(x, y)));
    Props {
        commutative: all(&|x, y| f(x, y) == f(y, x)),
        associative: all(&|x, y| members.iter().all(|&z| f(f(x, y), z) == f(x, f(y, z)))),
        increasing: increasing_on(l, members, f),
        neutral: members.iter().all(|&x| f(top, x) == x && f(x, top) == x),
        range: all(&|x, y| l.leq(f(x, y), glb(l, x, y))),
    }
}

/// `x ≤ y` implies `f(x,z) ≤ f(y,z)` and `f(z,x) ≤ f(z,y)` for x, y, z in
/// `members`.
pub fn increasing_on(l: &Lattice, members: &[Elem], f: &dyn Fn(Elem, Elem) -> Elem) -> bool {
    members.iter().all(|&x| {
        members.iter().all(|&y| {
            !l.leq(x, y)
                || members
                    .iter()
                    .all(|&z| l.leq(f(x, z), f(y, z)) && l.leq(f(z, x), f(z, y)))
        })
    })
}

pub fn op_props(t: &OpTable) -> Props {
    let iv = t.domain();
    props(t.lattice(), iv.members(), iv.hi(), &|x, y| t.get(x, y))
}

pub fn incomparables(l: &Lattice, a: Elem) -> Vec<Elem> {
    l.elements().filter(|&x| !l.leq(x, a) && !l.leq(a, x)).collect()
}

/// Every lattice paired with each of its interior elements.
pub fn pivots(lattices: &[Arc<Lattice>]) -> Vec<(Arc<Lattice>, Elem)> {
    let mut out = Vec::new();
    for l in lattices {
        for a in l.elements() {
            if a != l.bottom() && a != l.top() {
                out.push((Arc::clone(l), a));
            }
        }
    }
    out
}

pub fn upper(l: &Arc<Lattice>, a: Elem) -> Interval {
    Interval::new(l, a, l.top()).unwrap()
}

pub fn lower(l: &Arc<Lattice>, a: Elem) -> Interval {
    Interval::new(l, l.bottom(), a).unwrap()
}

/// Chain with the given element names, bottom first.
pub fn chain(names: &[&str]) -> Arc<Lattice> {
    let covers: Vec<(&str, &str)> = names.windows(2).map(|w| (w[0], w[1])).collect();
    Arc::new(Lattice::build("chain", names, &covers, names[0], names[names.len() - 1]).unwrap())
}
