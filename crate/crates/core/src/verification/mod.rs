//! Numerical theorem harness: hypothesis checkers, per-theorem drivers,
//! seeded fixture suites and counterexample search.

mod monotone;
mod sampling;
mod schur;
mod search;
mod suite;
mod theorems;

pub use monotone::{check_monotone, MonotoneVerdict, Monotonicity};
pub use sampling::{majorized_by, sample_f_pair, trial_rng, Box1, PairSampler};
pub use schur::{check_coordinatewise, schur_test, CoordinatewiseVerdict, SchurMode, SchurVerdict};
pub use search::{
    search_counterexample, search_theorem_violation, Counterexample, Expected, SearchFamily, SearchOutcome,
    SearchSpec,
};
pub use suite::{
    random_instance, run_arch_batch, run_fixture_suite, ArchBatchReport, ArchSetSummary, DirectionConflict,
    SuiteSummary,
};
pub use theorems::{
    verify_theorem, Case, Evidence, HypothesisResult, Part, Status, TheoremId, TheoremInstance,
    TheoremReport, VerifyOptions, REPORT_SCHEMA,
};
