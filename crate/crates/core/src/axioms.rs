//! Exhaustive checks of the t-norm and t-subnorm axioms.
//!
//! Every failure carries the lexicographically first witness in
//! interval-local order, so reports are deterministic.

use std::fmt;

use crate::condition::{Condition, ConditionVerdict, Witness};
use crate::lattice::{Elem, Lattice};
use crate::optable::OpTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Commutative,
    Associative,
    Increasing,
    NeutralTop,
    RangeBelowMeet,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Commutative => "commutative",
            Axiom::Associative => "associative",
            Axiom::Increasing => "increasing",
            Axiom::NeutralTop => "neutral",
            Axiom::RangeBelowMeet => "range",
        })
    }
}

/// Which argument a monotonicity or neutrality witness varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Argument {
    First,
    Second,
}

/// A concrete counterexample to one axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Failure {
    /// `T(x,y) != T(y,x)`.
    NotCommutative { x: Elem, y: Elem, xy: Elem, yx: Elem },
    /// `T(T(x,y),z) != T(x,T(y,z))`.
    NotAssociative {
        x: Elem,
        y: Elem,
        z: Elem,
        left: Elem,
        right: Elem,
    },
    /// `x <= y` but `T(x,z) ≰ T(y,z)` (or `T(z,x) ≰ T(z,y)` for the second
    /// argument).
    NotIncreasing {
        x: Elem,
        y: Elem,
        z: Elem,
        arg: Argument,
        lower: Elem,
        upper: Elem,
    },
    /// `T(hi,x) != x` (or `T(x,hi) != x`).
    NotNeutral {
        x: Elem,
        hi: Elem,
        arg: Argument,
        value: Elem,
    },
    /// `T(x,y) ≰ x ∧ y`.
    AboveMeet { x: Elem, y: Elem, value: Elem, meet: Elem },
}

impl Failure {
    pub fn axiom(&self) -> Axiom {
        match self {
            Failure::NotCommutative { .. } => Axiom::Commutative,
            Failure::NotAssociative { .. } => Axiom::Associative,
            Failure::NotIncreasing { .. } => Axiom::Increasing,
            Failure::NotNeutral { .. } => Axiom::NeutralTop,
            Failure::AboveMeet { .. } => Axiom::RangeBelowMeet,
        }
    }

    /// The witness text after `fail at `, e.g.
    /// `x=b<=y=c, z=a: T(b,a)=b !<= T(c,a)=0`.
    pub fn render(&self, lattice: &Lattice) -> String {
        let n = |e: Elem| lattice.name_of(e);
        match *self {
            Failure::NotCommutative { x, y, xy, yx } => format!(
                "x={}, y={}: T({},{})={} != T({},{})={}",
                n(x),
                n(y),
                n(x),
                n(y),
                n(xy),
                n(y),
                n(x),
                n(yx)
            ),
            Failure::NotAssociative { x, y, z, left, right } => format!(
                "x={}, y={}, z={}: T(T({},{}),{})={} != T({},T({},{}))={}",
                n(x),
                n(y),
                n(z),
                n(x),
                n(y),
                n(z),
                n(left),
                n(x),
                n(y),
                n(z),
                n(right)
            ),
            Failure::NotIncreasing {
                x,
                y,
                z,
                arg,
                lower,
                upper,
            } => {
                let (l, u) = match arg {
                    Argument::First => (format!("T({},{})", n(x), n(z)), format!("T({},{})", n(y), n(z))),
                    Argument::Second => (format!("T({},{})", n(z), n(x)), format!("T({},{})", n(z), n(y))),
                };
                format!(
                    "x={}<=y={}, z={}: {}={} !<= {}={}",
                    n(x),
                    n(y),
                    n(z),
                    l,
                    n(lower),
                    u,
                    n(upper)
                )
            }
            Failure::NotNeutral { x, hi, arg, value } => {
                let call = match arg {
                    Argument::First => format!("T({},{})", n(hi), n(x)),
                    Argument::Second => format!("T({},{})", n(x), n(hi)),
                };
                format!("x={}: {}={} != {}", n(x), call, n(value), n(x))
            }
            Failure::AboveMeet { x, y, value, meet } => format!(
                "x={}, y={}: T({},{})={} !<= {}",
                n(x),
                n(y),
                n(x),
                n(y),
                n(value),
                n(meet)
            ),
        }
    }
}

/// Per-axiom verdicts; `None` means the axiom holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub commutative: Option<Failure>,
    pub associative: Option<Failure>,
    pub increasing: Option<Failure>,
    pub neutral_top: Option<Failure>,
    pub range_leq_meet: Option<Failure>,
}

impl AxiomReport {
    pub fn is_tnorm(&self) -> bool {
        self.commutative.is_none()
            && self.associative.is_none()
            && self.increasing.is_none()
            && self.neutral_top.is_none()
    }

    pub fn is_tsubnorm(&self) -> bool {
        self.commutative.is_none()
            && self.associative.is_none()
            && self.increasing.is_none()
            && self.range_leq_meet.is_none()
    }

    pub fn get(&self, axiom: Axiom) -> Option<&Failure> {
        match axiom {
            Axiom::Commutative => self.commutative.as_ref(),
            Axiom::Associative => self.associative.as_ref(),
            Axiom::Increasing => self.increasing.as_ref(),
            Axiom::NeutralTop => self.neutral_top.as_ref(),
            Axiom::RangeBelowMeet => self.range_leq_meet.as_ref(),
        }
    }

    /// First failure among the t-norm axioms, in the order commutative,
    /// associative, increasing, neutral.
    pub fn first_tnorm_failure(&self) -> Option<Failure> {
        self.commutative
            .or(self.associative)
            .or(self.increasing)
            .or(self.neutral_top)
    }

    /// First failure among the t-subnorm axioms.
    pub fn first_tsubnorm_failure(&self) -> Option<Failure> {
        self.commutative
            .or(self.associative)
            .or(self.increasing)
            .or(self.range_leq_meet)
    }

    /// One line per axiom followed by the derived flags.
    pub fn render(&self, lattice: &Lattice) -> String {
        let mut out = String::new();
        for axiom in [
            Axiom::Commutative,
            Axiom::Associative,
            Axiom::Increasing,
            Axiom::NeutralTop,
            Axiom::RangeBelowMeet,
        ] {
            match self.get(axiom) {
                None => out.push_str(&format!("{axiom}: ok\n")),
                Some(f) => out.push_str(&format!("{axiom}: fail at {}\n", f.render(lattice))),
            }
        }
        let yn = |b: bool| if b { "yes" } else { "no" };
        out.push_str(&format!("tnorm: {}\n", yn(self.is_tnorm())));
        out.push_str(&format!("tsubnorm: {}\n", yn(self.is_tsubnorm())));
        out
    }
}

pub fn check_axioms(op: &OpTable) -> AxiomReport {
    let members = op.domain().members();
    AxiomReport {
        commutative: check_commutative(op),
        associative: check_associative(op),
        increasing: check_increasing_on(op, members),
        neutral_top: check_neutral(op),
        range_leq_meet: check_range_on(op, members),
    }
}

pub fn check_commutative(op: &OpTable) -> Option<Failure> {
    let members = op.domain().members();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let (xy, yx) = (op.get(x, y), op.get(y, x));
            if xy != yx {
                return Some(Failure::NotCommutative { x, y, xy, yx });
            }
        }
    }
    None
}

pub fn check_associative(op: &OpTable) -> Option<Failure> {
    let members = op.domain().members();
    for &x in members {
        for &y in members {
            let xy = op.get(x, y);
            for &z in members {
                let left = op.get(xy, z);
                let right = op.get(x, op.get(y, z));
                if left != right {
                    return Some(Failure::NotAssociative { x, y, z, left, right });
                }
            }
        }
    }
    None
}

/// Monotonicity in both arguments with `x`, `y`, `z` ranging over `domain`
/// (a subset of the operation's interval). Values are compared in the
/// lattice order, so incomparable results count as failures.
pub fn check_increasing_on(op: &OpTable, domain: &[Elem]) -> Option<Failure> {
    let lat = op.lattice();
    for &x in domain {
        for &y in domain {
            if !lat.lt(x, y) {
                continue;
            }
            for &z in domain {
                let (lower, upper) = (op.get(x, z), op.get(y, z));
                if !lat.leq(lower, upper) {
                    return Some(Failure::NotIncreasing {
                        x,
                        y,
                        z,
                        arg: Argument::First,
                        lower,
                        upper,
                    });
                }
                let (lower, upper) = (op.get(z, x), op.get(z, y));
                if !lat.leq(lower, upper) {
                    return Some(Failure::NotIncreasing {
                        x,
                        y,
                        z,
                        arg: Argument::Second,
                        lower,
                        upper,
                    });
                }
            }
        }
    }
    None
}

pub fn check_neutral(op: &OpTable) -> Option<Failure> {
    let hi = op.domain().hi();
    for &x in op.domain().members() {
        let value = op.get(hi, x);
        if value != x {
            return Some(Failure::NotNeutral {
                x,
                hi,
                arg: Argument::First,
                value,
            });
        }
        let value = op.get(x, hi);
        if value != x {
            return Some(Failure::NotNeutral {
                x,
                hi,
                arg: Argument::Second,
                value,
            });
        }
    }
    None
}

fn check_range_on(op: &OpTable, domain: &[Elem]) -> Option<Failure> {
    range_failures(op, domain).next()
}

fn range_failures<'a>(op: &'a OpTable, domain: &'a [Elem]) -> impl Iterator<Item = Failure> + 'a {
    let lat = op.lattice();
    domain.iter().flat_map(move |&x| {
        domain.iter().filter_map(move |&y| {
            let value = op.get(x, y);
            let meet = lat.meet(x, y);
            (!lat.leq(value, meet)).then_some(Failure::AboveMeet { x, y, value, meet })
        })
    })
}

/// `op(x,y) <= x ∧ y` for every pair, or only for pairs in `[lo,hi)²` when
/// `open_hi` is set. All offending pairs are listed.
pub fn check_range_condition(op: &OpTable, open_hi: bool) -> ConditionVerdict {
    let domain = if open_hi {
        op.domain().without_hi()
    } else {
        op.domain().members().to_vec()
    };
    let witnesses = range_failures(op, &domain)
        .map(|f| match f {
            Failure::AboveMeet { x, y, .. } => Witness::Pair(x, y),
            _ => unreachable!(),
        })
        .collect();
    ConditionVerdict::new(Condition::RangeBelowMeet, witnesses)
}
