use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use super::lattices::enumerate_lattices_up_to;
use super::ops::{enumerate_ops_within, Mode, MAX_INTERVAL_SIZE};
use super::{MinerError, MAX_ENUMERATED_SIZE};
use crate::axioms::{check_axioms, AxiomReport, Failure};
use crate::format::{render_lattice, render_op, render_table};
use crate::lattice::{Elem, Interval, Lattice};
use crate::optable::OpTable;
use crate::ordsum::{
    check_half_open_increasing, check_saminger_conditions, ey_sum, pivot_fix_failures, saminger_sum, strict_drop_set,
    OrdSumError, OrdinalSumInput,
};

/// The equivalence being verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// Saminger's sum is a t-norm for every pair of t-norms iff every
    /// element incomparable with the pivot is incomparable with `[a,1)` and
    /// `(0,a]`.
    SamingerThm2,
    /// The two-summand sum of t-norms is a t-norm.
    EyThm3,
    /// For commutative summands below the meet, the sum is increasing iff
    /// the summands are increasing on the half-open squares and the pivot
    /// condition holds.
    IncreasingThm4,
    /// For t-subnorm summands, the sum is a t-norm iff the pivot condition
    /// holds.
    TnormThm5,
}

impl Target {
    pub const ALL: [Target; 4] = [
        Target::SamingerThm2,
        Target::EyThm3,
        Target::IncreasingThm4,
        Target::TnormThm5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::SamingerThm2 => "saminger-thm2",
            Target::EyThm3 => "ey-thm3",
            Target::IncreasingThm4 => "increasing-thm4",
            Target::TnormThm5 => "tnorm-thm5",
        }
    }

    fn construction(self) -> &'static str {
        match self {
            Target::SamingerThm2 => "saminger",
            _ => "ey",
        }
    }

    fn construct(self, input: &OrdinalSumInput) -> OpTable {
        match self {
            Target::SamingerThm2 => saminger_sum(input),
            _ => ey_sum(input),
        }
    }

    /// The property the constructed sum is tested for.
    fn property_failure(self, report: &AxiomReport) -> Option<Failure> {
        match self {
            Target::IncreasingThm4 => report.increasing,
            _ => report.first_tnorm_failure(),
        }
    }

    fn hypotheses(self, t1: &AxiomReport, t2: &AxiomReport) -> bool {
        match self {
            Target::SamingerThm2 | Target::EyThm3 => t1.is_tnorm() && t2.is_tnorm(),
            Target::IncreasingThm4 => [t1, t2]
                .iter()
                .all(|r| r.commutative.is_none() && r.range_leq_meet.is_none()),
            Target::TnormThm5 => t1.is_tsubnorm() && t2.is_tsubnorm(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem '{s}'"))
    }
}

#[derive(Debug, Clone)]
pub struct MinerConfig {
    pub min_lattice_size: usize,
    pub max_lattice_size: usize,
    pub max_interval_size: usize,
    pub t1_mode: Mode,
    pub t2_mode: Mode,
    pub target: Target,
    /// Only examine instances where the target's side condition holds.
    pub require_condition: bool,
    /// Counterexamples kept in the result (all are counted).
    pub max_recorded: usize,
}

impl MinerConfig {
    pub fn new(target: Target, mode: Mode) -> Self {
        MinerConfig {
            min_lattice_size: 3,
            max_lattice_size: 6,
            max_interval_size: MAX_INTERVAL_SIZE,
            t1_mode: mode,
            t2_mode: mode,
            target,
            require_condition: false,
            max_recorded: 16,
        }
    }

    pub fn with_max_size(mut self, n: usize) -> Self {
        self.max_lattice_size = n;
        self
    }

    fn validate(&self) -> Result<(), MinerError> {
        if self.max_lattice_size > MAX_ENUMERATED_SIZE {
            return Err(MinerError::BudgetExceeded(format!(
                "max lattice size {} (limit {MAX_ENUMERATED_SIZE})",
                self.max_lattice_size
            )));
        }
        if self.max_interval_size > MAX_INTERVAL_SIZE {
            return Err(MinerError::BudgetExceeded(format!(
                "max interval size {} (limit {MAX_INTERVAL_SIZE})",
                self.max_interval_size
            )));
        }
        Ok(())
    }
}

/// An instance whose constructed sum fails the target property.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub target: Target,
    pub lattice: Arc<Lattice>,
    pub pivot: Elem,
    pub t1: OpTable,
    pub t2: OpTable,
    pub failure: Failure,
}

impl Counterexample {
    pub fn input(&self) -> OrdinalSumInput {
        OrdinalSumInput::new(Arc::clone(&self.lattice), self.pivot, self.t1.clone(), self.t2.clone())
            .expect("recorded inputs are well-formed")
    }

    pub fn sum(&self) -> OpTable {
        self.target.construct(&self.input())
    }

    /// Rebuilds the sum and re-checks the axioms; true when the same
    /// failure with the same witness is found.
    pub fn replays(&self) -> bool {
        self.target.property_failure(&check_axioms(&self.sum())) == Some(self.failure)
    }

    pub fn summary(&self) -> String {
        format!(
            "{} pivot={}: {} sum fails {}: {}",
            self.lattice.name(),
            self.lattice.name_of(self.pivot),
            self.target.construction(),
            self.failure.axiom(),
            self.failure.render(&self.lattice)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// The condition verdict and the axiom check of the sum disagree.
    Equivalence,
    /// The empty-set and equality forms of the pivot condition disagree.
    ConditionForms,
    /// Condition holds but some admissible pair gives a non-t-norm.
    Sufficiency,
    /// Condition fails yet every admissible pair gives a t-norm.
    Necessity,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub kind: ViolationKind,
    pub lattice: Arc<Lattice>,
    pub pivot: Elem,
    pub t1: Option<OpTable>,
    pub t2: Option<OpTable>,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct MinerResult {
    /// Instances examined (after the condition filter).
    pub instances: u64,
    /// Instances dropped because the side condition was required and failed.
    pub filtered: u64,
    /// `(lattice, pivot)` partitions skipped for exceeding the interval budget.
    pub skipped_pivots: u64,
    pub violations: Vec<Violation>,
    pub counterexamples: Vec<Counterexample>,
    pub counterexample_count: u64,
}

impl MinerResult {
    pub fn summary(&self) -> String {
        format!(
            "{} instances, {} violations, {} counterexamples",
            self.instances,
            self.violations.len(),
            self.counterexample_count
        )
    }

    fn merge(&mut self, other: MinerResult, max_recorded: usize) {
        self.instances += other.instances;
        self.filtered += other.filtered;
        self.skipped_pivots += other.skipped_pivots;
        self.violations.extend(other.violations);
        self.counterexample_count += other.counterexample_count;
        let room = max_recorded.saturating_sub(self.counterexamples.len());
        self.counterexamples
            .extend(other.counterexamples.into_iter().take(room));
    }
}

fn partitions(lattices: &[Arc<Lattice>]) -> Vec<(Arc<Lattice>, Elem)> {
    lattices
        .iter()
        .flat_map(|l| {
            l.elements()
                .filter(|&a| l.is_interior(a))
                .map(move |a| (Arc::clone(l), a))
        })
        .collect()
}

fn lift(e: OrdSumError) -> MinerError {
    match e {
        OrdSumError::Lattice(l) => MinerError::Lattice(l),
        other => MinerError::Internal(other.to_string()),
    }
}

fn run_partition(
    cfg: &MinerConfig,
    lattice: &Arc<Lattice>,
    a: Elem,
    stop_at_first: bool,
) -> Result<MinerResult, MinerError> {
    let mut out = MinerResult::default();
    let upper = Interval::new(lattice, a, lattice.top())?;
    let lower = Interval::new(lattice, lattice.bottom(), a)?;
    if upper.len() > cfg.max_interval_size || lower.len() > cfg.max_interval_size {
        out.skipped_pivots = 1;
        return Ok(out);
    }
    let t1s = enumerate_ops_within(&upper, cfg.t1_mode, cfg.max_interval_size)?;
    let t2s = enumerate_ops_within(&lower, cfg.t2_mode, cfg.max_interval_size)?;
    let r1: Vec<AxiomReport> = t1s.iter().map(check_axioms).collect();
    let r2: Vec<AxiomReport> = t2s.iter().map(check_axioms).collect();
    let target = cfg.target;
    let saminger = match target {
        Target::SamingerThm2 => check_saminger_conditions(lattice, a).map_err(lift)?.holds(),
        _ => false,
    };

    let mut admissible = 0u64;
    let mut first_admissible_failure: Option<(usize, usize, Failure)> = None;

    for (i, t1) in t1s.iter().enumerate() {
        for (j, t2) in t2s.iter().enumerate() {
            let input = OrdinalSumInput::new(Arc::clone(lattice), a, t1.clone(), t2.clone()).map_err(lift)?;
            let fixes = pivot_fix_failures(lattice, a, t2);
            let condition = match target {
                Target::SamingerThm2 => saminger,
                Target::EyThm3 => true,
                Target::IncreasingThm4 => fixes.is_empty() && check_half_open_increasing(&input).holds(),
                Target::TnormThm5 => fixes.is_empty(),
            };
            if cfg.require_condition && !condition {
                out.filtered += 1;
                continue;
            }
            out.instances += 1;
            let hyp = target.hypotheses(&r1[i], &r2[j]);
            let sum = target.construct(&input);
            let failure = target.property_failure(&check_axioms(&sum));

            let violation = |kind, detail: String| Violation {
                kind,
                lattice: Arc::clone(lattice),
                pivot: a,
                t1: Some(t1.clone()),
                t2: Some(t2.clone()),
                detail,
            };
            if hyp && target != Target::SamingerThm2 && failure.is_none() != condition {
                out.violations.push(violation(
                    ViolationKind::Equivalence,
                    format!(
                        "condition {} but sum property {}",
                        verdict(condition),
                        verdict(failure.is_none())
                    ),
                ));
            }
            if hyp && matches!(target, Target::IncreasingThm4 | Target::TnormThm5) {
                let drops = strict_drop_set(lattice, a, t2);
                if drops.is_empty() != fixes.is_empty() {
                    out.violations.push(violation(
                        ViolationKind::ConditionForms,
                        format!("strict-drop set {:?} vs fix failures {:?}", drops, fixes),
                    ));
                }
            }
            if hyp {
                admissible += 1;
                if let (None, Some(f)) = (&first_admissible_failure, failure) {
                    first_admissible_failure = Some((i, j, f));
                }
            }
            if let Some(f) = failure {
                out.counterexample_count += 1;
                if out.counterexamples.len() < cfg.max_recorded {
                    out.counterexamples.push(Counterexample {
                        target,
                        lattice: Arc::clone(lattice),
                        pivot: a,
                        t1: t1.clone(),
                        t2: t2.clone(),
                        failure: f,
                    });
                }
                if stop_at_first {
                    return Ok(out);
                }
            }
        }
    }

    if target == Target::SamingerThm2 && admissible > 0 {
        match (saminger, first_admissible_failure) {
            (true, Some((i, j, f))) => out.violations.push(Violation {
                kind: ViolationKind::Sufficiency,
                lattice: Arc::clone(lattice),
                pivot: a,
                t1: Some(t1s[i].clone()),
                t2: Some(t2s[j].clone()),
                detail: format!("conditions hold but {} fails: {}", f.axiom(), f.render(lattice)),
            }),
            (false, None) => out.violations.push(Violation {
                kind: ViolationKind::Necessity,
                lattice: Arc::clone(lattice),
                pivot: a,
                t1: None,
                t2: None,
                detail: format!("conditions fail but all {admissible} t-norm pairs give t-norms"),
            }),
            _ => {}
        }
    }
    Ok(out)
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

/// Runs the target equivalence over every lattice with
/// `min_lattice_size..=max_lattice_size` elements.
pub fn verify_theorem(cfg: &MinerConfig) -> Result<MinerResult, MinerError> {
    cfg.validate()?;
    let lattices = enumerate_lattices_up_to(cfg.min_lattice_size, cfg.max_lattice_size)?;
    verify_theorem_on(cfg, &lattices)
}

/// Same as [`verify_theorem`] over an explicit list of lattices. Partitions
/// `(lattice, pivot)` run in parallel and merge in input order, so the
/// result does not depend on scheduling.
pub fn verify_theorem_on(cfg: &MinerConfig, lattices: &[Arc<Lattice>]) -> Result<MinerResult, MinerError> {
    cfg.validate()?;
    let parts = partitions(lattices);
    let outcomes: Vec<Result<MinerResult, MinerError>> = parts
        .par_iter()
        .map(|(l, a)| run_partition(cfg, l, *a, false))
        .collect();
    let mut result = MinerResult::default();
    for o in outcomes {
        result.merge(o?, cfg.max_recorded);
    }
    Ok(result)
}

/// First counterexample in canonical order. An empty `counterexamples`
/// list means none was found within the budget, not that none exists.
pub fn find_counterexample(cfg: &MinerConfig) -> Result<MinerResult, MinerError> {
    cfg.validate()?;
    let lattices = enumerate_lattices_up_to(cfg.min_lattice_size, cfg.max_lattice_size)?;
    find_counterexample_on(cfg, &lattices)
}

pub fn find_counterexample_on(cfg: &MinerConfig, lattices: &[Arc<Lattice>]) -> Result<MinerResult, MinerError> {
    cfg.validate()?;
    let mut result = MinerResult::default();
    for (l, a) in partitions(lattices) {
        let part = run_partition(cfg, &l, a, true)?;
        let found = part.counterexample_count > 0;
        result.merge(part, 1);
        if found {
            break;
        }
    }
    Ok(result)
}

/// Writes a counterexample as a directory of text files: the lattice, both
/// summands, the constructed sum, and a verdict line plus rendered table.
pub fn write_bundle(dir: &Path, cx: &Counterexample) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let sum = cx.sum();
    fs::write(dir.join("lattice.lat"), render_lattice(&cx.lattice))?;
    fs::write(dir.join("t1.op"), render_op("T1", &cx.t1))?;
    fs::write(dir.join("t2.op"), render_op("T2", &cx.t2))?;
    fs::write(dir.join("sum.op"), render_op("T", &sum))?;
    fs::write(
        dir.join("verdict.txt"),
        format!("{}\n{}", cx.summary(), render_table("T", &sum)),
    )?;
    Ok(())
}
