//! Ordinal sums of two operations on `[a,1]` and `[0,a]`, and the side
//! conditions that decide when such a sum is increasing or a t-norm.
//!
//! Four constructions are provided:
//!
//! * [`saminger_sum`]: `t1` on `[a,1]²`, `t2` on `[0,a]²`, meet elsewhere.
//! * [`ey_sum`]: `t1` on `[a,1)²`, `t2` on `[0,a)²`, meet on the mixed
//!   rectangles and on the row and column of the top, and
//!   `t2(x∧a, y∧a)` on every remaining pair (those touching `I_a`).
//! * [`corollary1_sum`] and [`corollary2_sum`]: the one-summand closed forms
//!   obtained from [`ey_sum`] with `t2` the meet or the drastic t-norm on
//!   `[0,a]`.

use std::sync::Arc;

use thiserror::Error;

use crate::axioms::{check_axioms, check_increasing_on, Axiom};
use crate::condition::{Condition, ConditionVerdict, Witness};
use crate::lattice::{Elem, Interval, Lattice, LatticeError};
use crate::optable::OpTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summand {
    Upper,
    Lower,
}

impl std::fmt::Display for Summand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Summand::Upper => "t1",
            Summand::Lower => "t2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdSumError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("malformed ordinal-sum input: {0}")]
    MalformedInput(String),
    #[error("hypothesis violated: {summand} is not {axiom}")]
    HypothesisViolated { summand: Summand, axiom: Axiom },
}

/// A pivot `a ∉ {0,1}` together with `t1` on `[a,1]` and `t2` on `[0,a]`.
#[derive(Debug, Clone)]
pub struct OrdinalSumInput {
    lattice: Arc<Lattice>,
    pivot: Elem,
    t1: OpTable,
    t2: OpTable,
}

impl OrdinalSumInput {
    pub fn new(lattice: Arc<Lattice>, pivot: Elem, t1: OpTable, t2: OpTable) -> Result<Self, OrdSumError> {
        require_interior(&lattice, pivot)?;
        let upper = Interval::new(&lattice, pivot, lattice.top())?;
        let lower = Interval::new(&lattice, lattice.bottom(), pivot)?;
        if *t1.domain() != upper {
            return Err(OrdSumError::MalformedInput(format!(
                "t1 must be defined on [{},{}]",
                lattice.name_of(pivot),
                lattice.name_of(lattice.top())
            )));
        }
        if *t2.domain() != lower {
            return Err(OrdSumError::MalformedInput(format!(
                "t2 must be defined on [{},{}]",
                lattice.name_of(lattice.bottom()),
                lattice.name_of(pivot)
            )));
        }
        Ok(OrdinalSumInput { lattice, pivot, t1, t2 })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn pivot(&self) -> Elem {
        self.pivot
    }

    pub fn t1(&self) -> &OpTable {
        &self.t1
    }

    pub fn t2(&self) -> &OpTable {
        &self.t2
    }

    fn regions(&self) -> Regions {
        Regions::new(&self.lattice, self.pivot)
    }
}

fn require_interior(lattice: &Lattice, a: Elem) -> Result<(), LatticeError> {
    if lattice.is_interior(a) {
        Ok(())
    } else {
        Err(LatticeError::PivotIsBound(lattice.name_of(a).to_string()))
    }
}

/// Partition of the carrier relative to an interior pivot `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// The top element.
    Top,
    /// `[a,1)`.
    Upper,
    /// `[0,a)`.
    Lower,
    /// `I_a`.
    Incomparable,
}

struct Regions {
    of: Vec<Region>,
}

impl Regions {
    fn new(lattice: &Lattice, a: Elem) -> Self {
        let of = lattice
            .elements()
            .map(|x| {
                if x == lattice.top() {
                    Region::Top
                } else if lattice.leq(a, x) {
                    Region::Upper
                } else if lattice.leq(x, a) {
                    Region::Lower
                } else {
                    Region::Incomparable
                }
            })
            .collect();
        Regions { of }
    }

    fn get(&self, x: Elem) -> Region {
        self.of[x.index()]
    }
}

/// Region of `x` with respect to pivot `a`.
pub fn region(lattice: &Lattice, a: Elem, x: Elem) -> Region {
    Regions::new(lattice, a).get(x)
}

/// Saminger's ordinal sum: `t1` on `[a,1]²`, `t2` on `[0,a]²`, `x ∧ y`
/// otherwise. The squares overlap only at `(a,a)`, where `t1` is used.
pub fn saminger_sum(input: &OrdinalSumInput) -> OpTable {
    let lat = &input.lattice;
    let a = input.pivot;
    OpTable::from_fn(Interval::full(lat), |x, y| {
        let upper = |e| lat.leq(a, e);
        let lower = |e| lat.leq(e, a);
        if upper(x) && upper(y) {
            input.t1.get(x, y)
        } else if lower(x) && lower(y) {
            input.t2.get(x, y)
        } else {
            lat.meet(x, y)
        }
    })
    .expect("values stay in the lattice")
}

/// The two-summand ordinal sum with the incomparable elements routed
/// through `t2(x∧a, y∧a)`.
///
/// Branches are tested in this order, and are pairwise disjoint:
/// 1. `x = 1` or `y = 1`: `x ∧ y`;
/// 2. both in `[a,1)`: `t1(x,y)`;
/// 3. both in `[0,a)`: `t2(x,y)`;
/// 4. one in `[0,a)`, the other in `[a,1)`: `x ∧ y`;
/// 5. otherwise (some argument in `I_a`): `t2(x∧a, y∧a)`.
pub fn ey_sum(input: &OrdinalSumInput) -> OpTable {
    let lat = &input.lattice;
    let a = input.pivot;
    let regions = input.regions();
    OpTable::from_fn(Interval::full(lat), |x, y| {
        use Region::*;
        let (rx, ry) = (regions.get(x), regions.get(y));
        debug_assert_eq!(
            [
                rx == Top || ry == Top,
                rx == Upper && ry == Upper,
                rx == Lower && ry == Lower,
                matches!((rx, ry), (Lower, Upper) | (Upper, Lower)),
                rx != Top && ry != Top && (rx == Incomparable || ry == Incomparable),
            ]
            .iter()
            .filter(|&&b| b)
            .count(),
            1,
            "ordinal-sum branches must partition L²"
        );
        match (rx, ry) {
            (Top, _) | (_, Top) => lat.meet(x, y),
            (Upper, Upper) => input.t1.get(x, y),
            (Lower, Lower) => input.t2.get(x, y),
            (Lower, Upper) | (Upper, Lower) => lat.meet(x, y),
            _ => input.t2.get(lat.meet(x, a), lat.meet(y, a)),
        }
    })
    .expect("values stay in the lattice")
}

/// Every `x ∈ I_a` must be incomparable with every element of `[a,1)` and
/// `(0,a]`. Witnesses are the offending `(x, y)` pairs.
pub fn check_saminger_conditions(lattice: &Lattice, a: Elem) -> Result<ConditionVerdict, OrdSumError> {
    require_interior(lattice, a)?;
    let (bottom, top) = (lattice.bottom(), lattice.top());
    let mut witnesses = Vec::new();
    for x in lattice.incomparables(a) {
        for y in lattice.elements() {
            let in_upper = lattice.leq(a, y) && y != top;
            let in_lower = lattice.leq(y, a) && y != bottom;
            if (in_upper || in_lower) && lattice.comparable(x, y) {
                witnesses.push(Witness::Pair(x, y));
            }
        }
    }
    Ok(ConditionVerdict::new(Condition::SamingerIncomparability, witnesses))
}

/// `{x ∈ I_a : t2(x∧a, a) < x∧a}`.
pub fn strict_drop_set(lattice: &Lattice, a: Elem, t2: &OpTable) -> Vec<Elem> {
    lattice
        .incomparables(a)
        .into_iter()
        .filter(|&x| {
            let xa = lattice.meet(x, a);
            lattice.lt(t2.get(xa, a), xa)
        })
        .collect()
}

/// Elements `z ∈ I_a` with `t2(z∧a, a) != z∧a`; empty exactly when the
/// pivot condition holds.
pub fn pivot_fix_failures(lattice: &Lattice, a: Elem, t2: &OpTable) -> Vec<Elem> {
    lattice
        .incomparables(a)
        .into_iter()
        .filter(|&z| {
            let za = lattice.meet(z, a);
            t2.get(za, a) != za
        })
        .collect()
}

/// `t1` increasing on `[a,1)²` and `t2` increasing on `[0,a)²`. Witnesses
/// are the first monotonicity failure of each summand, as `(x, y, z)`.
pub fn check_half_open_increasing(input: &OrdinalSumInput) -> ConditionVerdict {
    let mut witnesses = Vec::new();
    for op in [&input.t1, &input.t2] {
        let domain = op.domain().without_hi();
        if let Some(crate::axioms::Failure::NotIncreasing { x, y, z, .. }) = check_increasing_on(op, &domain) {
            witnesses.push(Witness::Triple(x, y, z));
        }
    }
    ConditionVerdict::new(Condition::HalfOpenIncreasing, witnesses)
}

fn require_commutative_below_meet(input: &OrdinalSumInput) -> Result<(), OrdSumError> {
    for (summand, op) in [(Summand::Upper, &input.t1), (Summand::Lower, &input.t2)] {
        let report = check_axioms(op);
        for (axiom, failed) in [
            (Axiom::Commutative, report.commutative.is_some()),
            (Axiom::RangeBelowMeet, report.range_leq_meet.is_some()),
        ] {
            if failed {
                return Err(OrdSumError::HypothesisViolated { summand, axiom });
            }
        }
    }
    Ok(())
}

fn require_tsubnorms(input: &OrdinalSumInput) -> Result<(), OrdSumError> {
    for (summand, op) in [(Summand::Upper, &input.t1), (Summand::Lower, &input.t2)] {
        if let Some(f) = check_axioms(op).first_tsubnorm_failure() {
            return Err(OrdSumError::HypothesisViolated {
                summand,
                axiom: f.axiom(),
            });
        }
    }
    Ok(())
}

fn pivot_condition(input: &OrdinalSumInput) -> ConditionVerdict {
    let (lat, a) = (&*input.lattice, input.pivot);
    let fixes = pivot_fix_failures(lat, a, &input.t2);
    let drops = strict_drop_set(lat, a, &input.t2);
    assert_eq!(
        drops, fixes,
        "empty-set and equality forms of the pivot condition disagree under the range hypothesis"
    );
    ConditionVerdict::new(
        Condition::PivotFixesMeets,
        fixes.into_iter().map(Witness::Elem).collect(),
    )
}

/// The increasingness side condition: `I_a = ∅` or `t2(z∧a, a) = z∧a` for
/// all `z ∈ I_a`.
///
/// Requires `t1`, `t2` commutative and below the meet; both the empty-set
/// and the equality formulation are computed and must agree.
pub fn check_increasingness_condition(input: &OrdinalSumInput) -> Result<ConditionVerdict, OrdSumError> {
    require_commutative_below_meet(input)?;
    Ok(pivot_condition(input))
}

/// The t-norm side condition for t-subnorm summands. Same set as
/// [`check_increasingness_condition`], under stronger hypotheses.
pub fn check_tnorm_condition(input: &OrdinalSumInput) -> Result<ConditionVerdict, OrdSumError> {
    require_tsubnorms(input)?;
    Ok(pivot_condition(input))
}

fn require_upper_tnorm(lattice: &Arc<Lattice>, a: Elem, t1: &OpTable) -> Result<(), OrdSumError> {
    require_interior(lattice, a)?;
    if *t1.domain() != Interval::new(lattice, a, lattice.top())? {
        return Err(OrdSumError::MalformedInput(format!(
            "t1 must be defined on [{},{}]",
            lattice.name_of(a),
            lattice.name_of(lattice.top())
        )));
    }
    if let Some(f) = check_axioms(t1).first_tnorm_failure() {
        return Err(OrdSumError::HypothesisViolated {
            summand: Summand::Upper,
            axiom: f.axiom(),
        });
    }
    Ok(())
}

/// One-summand sum: `x ∧ y` on the top's row and column, `t1` on `[a,1)²`,
/// `x ∧ y ∧ a` otherwise. `t1` must be a t-norm.
pub fn corollary1_sum(lattice: &Arc<Lattice>, a: Elem, t1: &OpTable) -> Result<OpTable, OrdSumError> {
    require_upper_tnorm(lattice, a, t1)?;
    let regions = Regions::new(lattice, a);
    Ok(
        OpTable::from_fn(Interval::full(lattice), |x, y| match (regions.get(x), regions.get(y)) {
            (Region::Top, _) | (_, Region::Top) => lattice.meet(x, y),
            (Region::Upper, Region::Upper) => t1.get(x, y),
            _ => lattice.meet(lattice.meet(x, y), a),
        })
        .expect("values stay in the lattice"),
    )
}

/// One-summand sum with a zero block: like [`corollary1_sum`] but `0` on
/// `([0,a) ∪ I_a)²`. `t1` must be a t-norm.
pub fn corollary2_sum(lattice: &Arc<Lattice>, a: Elem, t1: &OpTable) -> Result<OpTable, OrdSumError> {
    require_upper_tnorm(lattice, a, t1)?;
    let regions = Regions::new(lattice, a);
    let low = |r| matches!(r, Region::Lower | Region::Incomparable);
    Ok(OpTable::from_fn(Interval::full(lattice), |x, y| {
        let (rx, ry) = (regions.get(x), regions.get(y));
        match (rx, ry) {
            (Region::Top, _) | (_, Region::Top) => lattice.meet(x, y),
            _ if low(rx) && low(ry) => lattice.bottom(),
            (Region::Upper, Region::Upper) => t1.get(x, y),
            _ => lattice.meet(lattice.meet(x, y), a),
        }
    })
    .expect("values stay in the lattice"))
}
