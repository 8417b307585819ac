//! Exact q-expansions for Δ and its weight 13/2 plus-space partner, p-adic
//! valuations of twisted central L-value ratios, and certificates that the
//! hypotheses of a class-group surjection theorem hold for a pair of quadratic
//! twists.
//!
//! The crate is organised bottom-up:
//!
//! - [`qseries`]: truncated power series over the rationals
//! - [`forms`]: Δ, G4, θ, the level-11 newform and the plus-space form
//! - [`arith`]: Kronecker symbols, discriminants, factorization, valuations
//! - [`hypotheses`]: three-valued decision engine for conditions (A)-(D)
//! - [`bkratio`]: coefficient ratios, Sha valuations and verdicts
//! - [`cli`]: command implementations, JSON documents, caches and facts files
//!
//! Runnable walkthroughs live in `examples/`.

pub mod arith;
pub mod bkratio;
pub mod cli;
pub mod forms;
pub mod hypotheses;
pub mod qseries;

pub use arith::{Discriminant, Factorization};
pub use forms::{FormId, PlusCoefficient};
pub use qseries::QSeries;
