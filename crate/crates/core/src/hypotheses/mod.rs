//! Decision engine for the hypotheses of the surjection theorem.
//!
//! Nothing here touches Galois cohomology. Each condition is reduced to
//! integer tests on `(k, N, p, D, a_p)` plus externally asserted facts, and
//! evaluates to a three-valued [`Tri`]. Adding facts can only turn `Unknown`
//! into a definite answer, never flip `Holds` and `Fails`.

mod context;
mod engine;
pub mod facts;

pub use context::{reduction_type, DClass, ReductionType, TwistContext};
pub use engine::{
    check_conditions, selmer_bound, st3_violations, tamagawa_triviality, ConditionReport,
    SelmerBound, SplitFacts, St3Branch, St3Case, Tri, TriState, DELTA_EXCEPTIONAL_PRIMES,
    DELTA_IMAGE_PROVENANCE,
};
pub use facts::{FactEntry, FactHit, FactsError, FactsFile};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypothesisError {
    #[error("p = {p} divides the level N = {level}; reduction type is undefined")]
    BadReduction { p: u64, level: u64 },
    #[error("weight {0} is not an even integer >= 2")]
    InvalidWeight(u32),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("level must be positive")]
    InvalidLevel,
    #[error("{0} is not a quadratic discriminant")]
    InvalidDiscriminant(i64),
    #[error("{0}")]
    FormMismatch(String),
}
