//! Finite bounded lattices built from a cover relation.
//!
//! The order is stored as one `u64` bitset row per element (`up[x]` has bit
//! `y` set iff `x <= y`), so a lattice holds at most 64 elements. Meet and
//! join tables are computed once at build time and validated: every pair
//! must have a unique greatest lower bound and least upper bound.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::condition::{Condition, ConditionVerdict, Witness};

/// Hard ceiling imposed by the one-word bitset rows.
pub const MAX_ELEMENTS: usize = 64;

/// Dense index of an element in its lattice, in declaration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u8);

impl Elem {
    pub(crate) fn new(index: usize) -> Self {
        debug_assert!(index < MAX_ELEMENTS);
        Elem(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Bottom,
    Top,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Bottom => f.write_str("bottom"),
            Bound::Top => f.write_str("top"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("lattice has {count} elements, limit is {max}")]
    TooLarge { count: usize, max: usize },
    #[error("duplicate element name '{0}'")]
    DuplicateName(String),
    #[error("invalid element name '{0}'")]
    InvalidName(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("covers induce a cycle through '{0}' and '{1}'")]
    CycleDetected(String, String),
    #[error("declared {role} '{declared}' is not the {role} of the order")]
    WrongBounds { role: Bound, declared: String },
    #[error("'{0}' and '{1}' have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("'{lo}' is not below '{hi}'")]
    NotComparable { lo: String, hi: String },
    #[error("pivot '{0}' is the bottom or top element")]
    PivotIsBound(String),
}

/// Construction limits.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_elements: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_elements: MAX_ELEMENTS,
        }
    }
}

/// An immutable, validated finite bounded lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: String,
    names: Vec<String>,
    covers: Vec<(Elem, Elem)>,
    up: Vec<u64>,
    down: Vec<u64>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl Lattice {
    /// Builds a lattice from element names, strict cover pairs `(lo, hi)`
    /// and the declared bounds.
    pub fn build<S: AsRef<str>>(
        name: &str,
        names: &[S],
        covers: &[(S, S)],
        bottom: &str,
        top: &str,
    ) -> Result<Lattice, LatticeError> {
        Self::build_with(BuildOptions::default(), name, names, covers, bottom, top)
    }

    pub fn build_with<S: AsRef<str>>(
        options: BuildOptions,
        name: &str,
        names: &[S],
        covers: &[(S, S)],
        bottom: &str,
        top: &str,
    ) -> Result<Lattice, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let max = options.max_elements.min(MAX_ELEMENTS);
        if n > max {
            return Err(LatticeError::TooLarge { count: n, max });
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, nm) in names.iter().enumerate() {
            if nm.is_empty() || nm.chars().any(char::is_whitespace) {
                return Err(LatticeError::InvalidName(nm.clone()));
            }
            if names[..i].contains(nm) {
                return Err(LatticeError::DuplicateName(nm.clone()));
            }
        }
        let lookup = |s: &str| -> Result<Elem, LatticeError> {
            names
                .iter()
                .position(|nm| nm == s)
                .map(Elem::new)
                .ok_or_else(|| LatticeError::UnknownElement(s.to_string()))
        };
        let mut cover_elems = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            cover_elems.push((lookup(lo.as_ref())?, lookup(hi.as_ref())?));
        }
        let bottom = lookup(bottom)?;
        let top = lookup(top)?;

        // reflexive-transitive closure (Warshall over bit rows)
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(lo, hi) in &cover_elems {
            if lo == hi {
                return Err(LatticeError::CycleDetected(
                    names[lo.index()].clone(),
                    names[hi.index()].clone(),
                ));
            }
            up[lo.index()] |= 1 << hi.index();
        }
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i] >> j & 1 == 1 && up[j] >> i & 1 == 1 {
                    return Err(LatticeError::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        let down = transpose(&up);

        let all = full_mask(n);
        if up[bottom.index()] != all {
            return Err(LatticeError::WrongBounds {
                role: Bound::Bottom,
                declared: names[bottom.index()].clone(),
            });
        }
        if down[top.index()] != all {
            return Err(LatticeError::WrongBounds {
                role: Bound::Top,
                declared: names[top.index()].clone(),
            });
        }

        let mut meet = vec![Elem(0); n * n];
        let mut join = vec![Elem(0); n * n];
        for x in 0..n {
            for y in x..n {
                let m = greatest(down[x] & down[y], &down)
                    .ok_or_else(|| LatticeError::NotALattice(names[x].clone(), names[y].clone(), "meet"))?;
                let j = greatest(up[x] & up[y], &up)
                    .ok_or_else(|| LatticeError::NotALattice(names[x].clone(), names[y].clone(), "join"))?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }

        Ok(Lattice {
            name: name.to_string(),
            names,
            covers: cover_elems,
            up,
            down,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Elements in declaration order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + Clone {
        (0..self.names.len()).map(Elem::new)
    }

    /// Cover pairs as declared.
    pub fn covers(&self) -> &[(Elem, Elem)] {
        &self.covers
    }

    pub fn elem(&self, name: &str) -> Result<Elem, LatticeError> {
        self.names
            .iter()
            .position(|nm| nm == name)
            .map(Elem::new)
            .ok_or_else(|| LatticeError::UnknownElement(name.to_string()))
    }

    pub fn name_of(&self, x: Elem) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x.index()] >> y.index() & 1 == 1
    }

    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Bitset of `{y : x <= y}`.
    pub fn up_set(&self, x: Elem) -> u64 {
        self.up[x.index()]
    }

    /// Bitset of `{y : y <= x}`.
    pub fn down_set(&self, x: Elem) -> u64 {
        self.down[x.index()]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x.index() * self.len() + y.index()]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x.index() * self.len() + y.index()]
    }

    pub fn meet_by_name(&self, x: &str, y: &str) -> Result<Elem, LatticeError> {
        Ok(self.meet(self.elem(x)?, self.elem(y)?))
    }

    pub fn join_by_name(&self, x: &str, y: &str) -> Result<Elem, LatticeError> {
        Ok(self.join(self.elem(x)?, self.elem(y)?))
    }

    pub fn is_interior(&self, a: Elem) -> bool {
        a != self.bottom && a != self.top
    }

    /// `I_a`: every element incomparable with `a`, in declaration order.
    pub fn incomparables(&self, a: Elem) -> Vec<Elem> {
        let mask = !(self.up[a.index()] | self.down[a.index()]) & full_mask(self.len());
        self.elements().filter(|x| mask >> x.index() & 1 == 1).collect()
    }

    /// Checks `x ∧ a < a` for every `x` incomparable with `a`.
    ///
    /// This always holds in a lattice; it is exposed as a self-test of the
    /// meet table.
    pub fn check_lemma_incomparable_meet(&self, a: Elem) -> Result<ConditionVerdict, LatticeError> {
        if !self.is_interior(a) {
            return Err(LatticeError::PivotIsBound(self.name_of(a).to_string()));
        }
        let witnesses = self
            .incomparables(a)
            .into_iter()
            .filter(|&x| !self.lt(self.meet(x, a), a))
            .map(Witness::Elem)
            .collect();
        Ok(ConditionVerdict::new(Condition::IncomparableMeetBelowPivot, witnesses))
    }

    /// Strict covers computed from the order (the Hasse diagram), in
    /// lexicographic index order.
    pub fn hasse_covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::render_lattice(self))
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn transpose(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut out = vec![0u64; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, col) in out.iter_mut().enumerate() {
            if row >> j & 1 == 1 {
                *col |= 1 << i;
            }
        }
    }
    out
}

/// The element `g` of `set` with `set ⊆ below[g]`, if any. `below` is either
/// the down-set table (greatest lower bound) or the up-set table (least upper
/// bound, where "greatest" in the dual order is the least).
fn greatest(set: u64, below: &[u64]) -> Option<Elem> {
    let mut bits = set;
    while bits != 0 {
        let g = bits.trailing_zeros() as usize;
        if set & !below[g] == 0 {
            return Some(Elem::new(g));
        }
        bits &= bits - 1;
    }
    None
}

/// A subinterval `[lo, hi]` of a lattice; itself a bounded lattice.
#[derive(Debug, Clone)]
pub struct Interval {
    lattice: Arc<Lattice>,
    lo: Elem,
    hi: Elem,
    members: Vec<Elem>,
    local: Vec<Option<u8>>,
}

impl Interval {
    pub fn new(lattice: &Arc<Lattice>, lo: Elem, hi: Elem) -> Result<Interval, LatticeError> {
        if !lattice.leq(lo, hi) {
            return Err(LatticeError::NotComparable {
                lo: lattice.name_of(lo).to_string(),
                hi: lattice.name_of(hi).to_string(),
            });
        }
        let members: Vec<Elem> = lattice
            .elements()
            .filter(|&x| lattice.leq(lo, x) && lattice.leq(x, hi))
            .collect();
        let mut local = vec![None; lattice.len()];
        for (i, m) in members.iter().enumerate() {
            local[m.index()] = Some(i as u8);
        }
        Ok(Interval {
            lattice: Arc::clone(lattice),
            lo,
            hi,
            members,
            local,
        })
    }

    pub fn by_name(lattice: &Arc<Lattice>, lo: &str, hi: &str) -> Result<Interval, LatticeError> {
        Interval::new(lattice, lattice.elem(lo)?, lattice.elem(hi)?)
    }

    /// The whole lattice as an interval.
    pub fn full(lattice: &Arc<Lattice>) -> Interval {
        Interval::new(lattice, lattice.bottom(), lattice.top()).expect("bottom <= top")
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn lo(&self) -> Elem {
        self.lo
    }

    pub fn hi(&self) -> Elem {
        self.hi
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.local_index(x).is_some()
    }

    pub fn local_index(&self, x: Elem) -> Option<usize> {
        self.local.get(x.index()).copied().flatten().map(usize::from)
    }

    pub fn member(&self, i: usize) -> Elem {
        self.members[i]
    }

    /// Members of `[lo, hi)`.
    pub fn without_hi(&self) -> Vec<Elem> {
        self.members.iter().copied().filter(|&x| x != self.hi).collect()
    }

    /// Members of `(lo, hi]`.
    pub fn without_lo(&self) -> Vec<Elem> {
        self.members.iter().copied().filter(|&x| x != self.lo).collect()
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
            && self.lo == other.lo
            && self.hi == other.hi
    }
}

impl Eq for Interval {}
