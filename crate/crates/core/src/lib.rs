//! Word combinatorics for subshifts over a finite alphabet: substring
//! statistics at scale, return words and u-partitions, and estimators for
//! uniform additive and subadditive ergodic averages, with the diagnostics
//! (quasiweights, occurrence densities, highest powers, repetitivity
//! constants) that separate the uniquely ergodic samples from the rest.
//!
//! The crate works on long finite sample words produced by deterministic
//! generators (substitution fixed points, mechanical words, periodic words,
//! a non-converging control) or read from files. All limit quantities are
//! reported as series over declared scales together with the tolerance any
//! verdict was judged at.

pub mod ergodic;
pub mod error;
pub mod generate;
pub mod index;
pub mod returns;
pub mod word;

pub use ergodic::{
    AdditiveFunction, CylinderFunction, ErgodicReport, SubadditiveFunction, Verdict,
};
pub use error::{Error, Result};
pub use generate::{GeneratorSpec, Substitution};
pub use index::{FactorIndex, RecurrenceProfile};
pub use returns::{ReturnStats, ReturnWordSet, UPartition};
pub use word::{Alphabet, OccurrenceList, Word};
