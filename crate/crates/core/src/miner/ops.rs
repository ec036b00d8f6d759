//! Backtracking enumeration of commutative operations on an interval.

use std::fmt;
use std::str::FromStr;

use super::MinerError;
use crate::lattice::Interval;
use crate::optable::OpTable;

/// Largest interval the enumerator accepts.
pub const MAX_INTERVAL_SIZE: usize = 5;

/// Axiom set the enumerated operations must satisfy. Every mode is
/// commutative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Commutative, associative, increasing, top is neutral.
    TNorm,
    /// Commutative, associative, increasing, below the meet.
    TSubnorm,
    /// Commutative and increasing.
    CommutativeMonotone,
    /// Commutative, associative and increasing.
    CommutativeAssociativeMonotone,
    /// Commutative and below the meet.
    CommutativeRange,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::TNorm,
        Mode::TSubnorm,
        Mode::CommutativeMonotone,
        Mode::CommutativeAssociativeMonotone,
        Mode::CommutativeRange,
    ];

    fn range_capped(self) -> bool {
        matches!(self, Mode::TNorm | Mode::TSubnorm | Mode::CommutativeRange)
    }

    fn monotone(self) -> bool {
        !matches!(self, Mode::CommutativeRange)
    }

    fn associative(self) -> bool {
        matches!(
            self,
            Mode::TNorm | Mode::TSubnorm | Mode::CommutativeAssociativeMonotone
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::TNorm => "tnorm",
            Mode::TSubnorm => "tsubnorm",
            Mode::CommutativeMonotone => "commutative-monotone",
            Mode::CommutativeAssociativeMonotone => "commutative-associative-monotone",
            Mode::CommutativeRange => "commutative-range",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode '{s}'"))
    }
}

struct Search<'a> {
    m: usize,
    leq: Vec<bool>,
    cells: Vec<(usize, usize)>,
    domains: Vec<Vec<u8>>,
    table: Vec<Option<u8>>,
    mode: Mode,
    out: &'a mut Vec<Vec<u8>>,
}

impl Search<'_> {
    fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.m + j]
    }

    /// Monotonicity of row `r` after placing `v` at column `c`.
    fn row_ok(&self, r: usize, c: usize, v: u8) -> bool {
        (0..self.m).all(|k| match self.table[r * self.m + k] {
            None => true,
            Some(w) => {
                (!self.le(c, k) || self.le(v as usize, w as usize))
                    && (!self.le(k, c) || self.le(w as usize, v as usize))
            }
        })
    }

    fn associative(&self, t: &[u8]) -> bool {
        let m = self.m;
        (0..m).all(|x| {
            (0..m).all(|y| {
                let xy = t[x * m + y] as usize;
                (0..m).all(|z| t[xy * m + z] == t[x * m + t[y * m + z] as usize])
            })
        })
    }

    fn run(&mut self, depth: usize) {
        if depth == self.cells.len() {
            let t: Vec<u8> = self.table.iter().map(|v| v.expect("complete")).collect();
            if !self.mode.associative() || self.associative(&t) {
                self.out.push(t);
            }
            return;
        }
        let (i, j) = self.cells[depth];
        for vi in 0..self.domains[depth].len() {
            let v = self.domains[depth][vi];
            if self.mode.monotone() && !(self.row_ok(i, j, v) && self.row_ok(j, i, v)) {
                continue;
            }
            self.table[i * self.m + j] = Some(v);
            self.table[j * self.m + i] = Some(v);
            self.run(depth + 1);
            self.table[i * self.m + j] = None;
            self.table[j * self.m + i] = None;
        }
    }
}

/// Every commutative operation on `iv` satisfying `mode`, in a fixed
/// order (lexicographic over the free cells).
pub fn enumerate_ops(iv: &Interval, mode: Mode) -> Result<Vec<OpTable>, MinerError> {
    enumerate_ops_within(iv, mode, MAX_INTERVAL_SIZE)
}

pub fn enumerate_ops_within(iv: &Interval, mode: Mode, max_size: usize) -> Result<Vec<OpTable>, MinerError> {
    let m = iv.len();
    if m > max_size.min(MAX_INTERVAL_SIZE) {
        return Err(MinerError::BudgetExceeded(format!(
            "operation enumeration on an interval of {m} elements (limit {})",
            max_size.min(MAX_INTERVAL_SIZE)
        )));
    }
    let lat = iv.lattice();
    let local = |e| iv.local_index(e).expect("interval member") as u8;
    let hi = local(iv.hi());
    let mut leq = vec![false; m * m];
    for (i, &x) in iv.members().iter().enumerate() {
        for (j, &y) in iv.members().iter().enumerate() {
            leq[i * m + j] = lat.leq(x, y);
        }
    }

    let mut cells = Vec::new();
    let mut domains = Vec::new();
    for i in 0..m {
        for j in i..m {
            let meet = local(lat.meet(iv.member(i), iv.member(j)));
            let domain: Vec<u8> = if mode == Mode::TNorm && (i as u8 == hi || j as u8 == hi) {
                vec![meet]
            } else if mode.range_capped() {
                (0..m as u8).filter(|&v| leq[v as usize * m + meet as usize]).collect()
            } else {
                (0..m as u8).collect()
            };
            cells.push((i, j));
            domains.push(domain);
        }
    }
    // forced cells first; the sort is stable, so free cells stay lexicographic
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&c| domains[c].len() > 1);
    let cells: Vec<_> = order.iter().map(|&c| cells[c]).collect();
    let domains: Vec<_> = order.iter().map(|&c| domains[c].clone()).collect();

    let mut raw = Vec::new();
    Search {
        m,
        leq,
        cells,
        domains,
        table: vec![None; m * m],
        mode,
        out: &mut raw,
    }
    .run(0);
    raw.into_iter()
        .map(|t| OpTable::from_local(iv.clone(), t).map_err(|e| MinerError::Internal(e.to_string())))
        .collect()
}
