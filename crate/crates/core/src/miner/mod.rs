//! Exhaustive verification of the ordinal-sum theorems on small lattices,
//! and counterexample search for weakened hypotheses.

mod lattices;
mod ops;
mod search;

use thiserror::Error;

pub use lattices::{canonical_key, enumerate_lattices, enumerate_lattices_up_to, CanonicalKey, MAX_ENUMERATED_SIZE};
pub use ops::{enumerate_ops, enumerate_ops_within, Mode, MAX_INTERVAL_SIZE};
pub use search::{
    find_counterexample, find_counterexample_on, verify_theorem, verify_theorem_on, write_bundle, Counterexample,
    MinerConfig, MinerResult, Target, Violation, ViolationKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinerError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
    #[error("internal error: {0}")]
    Internal(String),
}
