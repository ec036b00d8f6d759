//! Ordinal sums of t-norms on bounded lattices.
//!
//! Finite lattices and binary operations on their intervals, axiom checking
//! with first-failure witnesses, the two ordinal-sum constructions and their
//! side conditions, and an exhaustive miner over small lattices.

pub mod axioms;
pub mod cli;
pub mod condition;
pub mod format;
pub mod lattice;
pub mod miner;
pub mod optable;
pub mod ordsum;

pub use axioms::{check_axioms, AxiomReport, Failure};
pub use lattice::{Elem, Interval, Lattice, LatticeError};
pub use optable::OpTable;
pub use ordsum::{ey_sum, saminger_sum, OrdinalSumInput};
