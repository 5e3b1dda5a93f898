//! Additive and subadditive function frameworks with their convergence
//! estimators and diagnostics.
//!
//! Every limit quantity is reported as a series over declared scales plus a
//! terminal value; every verdict carries the tolerance and scale it was
//! judged at. The default thresholds below are configuration values recorded
//! in each report, not facts about the mathematics.

mod diagnostics;
mod functions;
mod report;
mod series;
mod subadditive;

pub use diagnostics::run_diagnostics;
pub use functions::{
    layered_neg_disjoint, neg_disjoint, word_length, AdditiveFunction, CylinderFunction,
    SubadditiveFunction,
};
pub use report::{DiagnosticSummary, ErgodicReport, SeriesRow, Verdict};
pub use series::{
    birkhoff_series, hierarchical_estimate, prefix_average_series, window_agreement_defect,
    AgreementDefect, HierarchicalEstimate,
};
pub use subadditive::{
    density_estimate_with_stride, quasiweight_estimate, quasiweight_estimate_with_stride,
    subadditive_level_max, subadditive_limit_report, subadditive_prefix_series,
};

/// A sample passes the uniform-positivity check when the smallest windowed
/// quasiweight stays above this.
pub const DEFAULT_PQ_THRESHOLD: f64 = 0.05;

/// Oscillation over same-length factors below this counts as converged.
pub const DEFAULT_OSCILLATION_THRESHOLD: f64 = 0.05;

/// Allowed gap between the terminal prefix average of a subadditive function
/// and the infimum of its per-length maxima.
pub const DEFAULT_SET_AGREEMENT_TOLERANCE: f64 = 0.02;
