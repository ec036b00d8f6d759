//! Binary operations on an interval, stored as value tables.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{Elem, Interval, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("'{0}' is not in the interval")]
    NotInInterval(String),
    #[error("operations are defined on different intervals")]
    DomainMismatch,
    #[error("table has {got} entries, expected {expected}")]
    WrongShape { got: usize, expected: usize },
}

/// A total operation `T: [lo,hi]² → [lo,hi]`.
///
/// Entries are stored as interval-local indices in row-major order. No
/// axiom is assumed; see [`crate::axioms::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    domain: Interval,
    values: Vec<u8>,
}

impl OpTable {
    pub fn from_fn(domain: Interval, mut f: impl FnMut(Elem, Elem) -> Elem) -> Result<OpTable, OpError> {
        let m = domain.len();
        let mut values = Vec::with_capacity(m * m);
        for &x in domain.members() {
            for &y in domain.members() {
                let v = f(x, y);
                let local = domain
                    .local_index(v)
                    .ok_or_else(|| OpError::NotInInterval(domain.lattice().name_of(v).to_string()))?;
                values.push(local as u8);
            }
        }
        Ok(OpTable { domain, values })
    }

    /// Builds a table from interval-local indices (row-major).
    pub fn from_local(domain: Interval, values: Vec<u8>) -> Result<OpTable, OpError> {
        let m = domain.len();
        if values.len() != m * m {
            return Err(OpError::WrongShape {
                got: values.len(),
                expected: m * m,
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v as usize >= m) {
            return Err(OpError::NotInInterval(format!("local #{bad}")));
        }
        Ok(OpTable { domain, values })
    }

    /// `T_M(x,y) = x ∧ y`.
    pub fn meet_tnorm(domain: Interval) -> OpTable {
        let lat = Arc::clone(domain.lattice());
        OpTable::from_fn(domain, |x, y| lat.meet(x, y)).expect("intervals are meet-closed")
    }

    /// `T_D(x,y) = x ∧ y` if `hi ∈ {x,y}`, else `lo`.
    pub fn drastic_tnorm(domain: Interval) -> OpTable {
        let lat = Arc::clone(domain.lattice());
        let (lo, hi) = (domain.lo(), domain.hi());
        OpTable::from_fn(domain, |x, y| if x == hi || y == hi { lat.meet(x, y) } else { lo })
            .expect("intervals are meet-closed")
    }

    pub fn constant(domain: Interval, c: Elem) -> Result<OpTable, OpError> {
        OpTable::from_fn(domain, |_, _| c)
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.domain.lattice()
    }

    /// Number of interval members.
    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn local_values(&self) -> &[u8] {
        &self.values
    }

    pub fn get_local(&self, i: usize, j: usize) -> usize {
        self.values[i * self.size() + j] as usize
    }

    /// `T(x,y)`; panics when an argument is outside the interval.
    pub fn get(&self, x: Elem, y: Elem) -> Elem {
        self.try_get(x, y).expect("argument outside the operation's interval")
    }

    pub fn try_get(&self, x: Elem, y: Elem) -> Option<Elem> {
        let i = self.domain.local_index(x)?;
        let j = self.domain.local_index(y)?;
        Some(self.domain.member(self.get_local(i, j)))
    }

    /// Overwrites one entry (not its mirror).
    pub fn set(&mut self, x: Elem, y: Elem, v: Elem) -> Result<(), OpError> {
        let name = |e: Elem| self.domain.lattice().name_of(e).to_string();
        let i = self
            .domain
            .local_index(x)
            .ok_or_else(|| OpError::NotInInterval(name(x)))?;
        let j = self
            .domain
            .local_index(y)
            .ok_or_else(|| OpError::NotInInterval(name(y)))?;
        let k = self
            .domain
            .local_index(v)
            .ok_or_else(|| OpError::NotInInterval(name(v)))?;
        let m = self.size();
        self.values[i * m + j] = k as u8;
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (i + 1..m).all(|j| self.values[i * m + j] == self.values[j * m + i]))
    }
}

/// Pointwise comparison of two operations on the same interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpOrdering {
    Equal,
    /// `p <= q` everywhere; the pair is the first where `p < q`.
    Less(Elem, Elem),
    /// `q <= p` everywhere; the pair is the first where `q < p`.
    Greater(Elem, Elem),
    /// First pair with `p ≰ q`, then first pair with `q ≰ p`.
    Incomparable((Elem, Elem), (Elem, Elem)),
}

pub fn compare_ops(p: &OpTable, q: &OpTable) -> Result<OpOrdering, OpError> {
    if p.domain != q.domain {
        return Err(OpError::DomainMismatch);
    }
    let lat = p.lattice();
    let mut p_not_le_q = None;
    let mut q_not_le_p = None;
    let mut p_lt_q = None;
    let mut q_lt_p = None;
    for &x in p.domain.members() {
        for &y in p.domain.members() {
            let (u, v) = (p.get(x, y), q.get(x, y));
            if u == v {
                continue;
            }
            if lat.leq(u, v) {
                p_lt_q.get_or_insert((x, y));
            } else {
                p_not_le_q.get_or_insert((x, y));
            }
            if lat.leq(v, u) {
                q_lt_p.get_or_insert((x, y));
            } else {
                q_not_le_p.get_or_insert((x, y));
            }
        }
    }
    Ok(match (p_not_le_q, q_not_le_p) {
        (None, None) => OpOrdering::Equal,
        (None, Some(_)) => {
            let (x, y) = p_lt_q.expect("a strict pair exists");
            OpOrdering::Less(x, y)
        }
        (Some(_), None) => {
            let (x, y) = q_lt_p.expect("a strict pair exists");
            OpOrdering::Greater(x, y)
        }
        (Some(a), Some(b)) => OpOrdering::Incomparable(a, b),
    })
}
