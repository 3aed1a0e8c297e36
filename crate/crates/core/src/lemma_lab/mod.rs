//! Thresholds, constructive lemma procedures and exact inequality checks.

pub mod inequalities;
pub mod keyint;
pub mod sweeps;
pub mod thresholds;

pub use inequalities::{
    below_threshold_count, verify_family_vs_star, verify_mu_quotient, verify_sperner_ratio, verify_star_ratio,
    verify_transversal_bound, Check, LemmaOutcome, ThresholdCount,
};
pub use keyint::{
    check_keyint_hypotheses, keyint_check_exhaustive, keyint_min_union, keyint_search_exhaustive, keyint_witness,
    max_parts, sharpness_witness, transversal_core, SharpnessBranch, SharpnessWitness, TransversalCore,
    WitnessBundle,
};
pub use sweeps::{sweep_downsets, sweep_keyint, sweep_transversal_bound, LemmaKind, SweepReport, Violation};
pub use thresholds::{meets_large_mu_sum, meets_root_bound, thresholds, union_bound, Thresholds};
