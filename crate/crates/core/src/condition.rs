//! Holds/fails verdicts for the side conditions of the ordinal-sum theorems.

use std::fmt;

use crate::lattice::{Elem, Lattice};

/// Which condition a [`ConditionVerdict`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `x ∧ a < a` for every `x ∈ I_a`.
    IncomparableMeetBelowPivot,
    /// Every `x ∈ I_a` is incomparable with all of `[a,1)` and `(0,a]`.
    SamingerIncomparability,
    /// `F(x,y) <= x ∧ y`, on the closed or half-open square.
    RangeBelowMeet,
    /// `t1` increasing on `[a,1)²` and `t2` increasing on `[0,a)²`.
    HalfOpenIncreasing,
    /// `{x ∈ I_a : t2(x∧a, a) < x∧a}` is empty.
    NoStrictDrop,
    /// `I_a = ∅` or `t2(z∧a, a) = z∧a` for all `z ∈ I_a`.
    PivotFixesMeets,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        match self {
            Condition::IncomparableMeetBelowPivot => "incomparable-meet-below-pivot",
            Condition::SamingerIncomparability => "saminger-incomparability",
            Condition::RangeBelowMeet => "range-below-meet",
            Condition::HalfOpenIncreasing => "half-open-increasing",
            Condition::NoStrictDrop => "no-strict-drop",
            Condition::PivotFixesMeets => "pivot-fixes-meets",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An offending element, pair, or triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    Elem(Elem),
    Pair(Elem, Elem),
    Triple(Elem, Elem, Elem),
}

impl Witness {
    pub fn render(&self, lattice: &Lattice) -> String {
        let n = |x: Elem| lattice.name_of(x);
        match *self {
            Witness::Elem(x) => n(x).to_string(),
            Witness::Pair(x, y) => format!("({},{})", n(x), n(y)),
            Witness::Triple(x, y, z) => format!("({},{},{})", n(x), n(y), n(z)),
        }
    }
}

/// Result of testing a condition; it holds exactly when there are no
/// witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub witnesses: Vec<Witness>,
}

impl ConditionVerdict {
    pub fn new(condition: Condition, witnesses: Vec<Witness>) -> Self {
        ConditionVerdict { condition, witnesses }
    }

    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }

    /// One line: `<tag>: holds` or `<tag>: fail at w1 w2 ...`.
    pub fn render(&self, lattice: &Lattice) -> String {
        if self.holds() {
            format!("{}: holds", self.condition)
        } else {
            let ws: Vec<String> = self.witnesses.iter().map(|w| w.render(lattice)).collect();
            format!("{}: fail at {}", self.condition, ws.join(" "))
        }
    }
}
