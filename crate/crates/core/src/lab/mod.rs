//! Recorded fixtures and the verification procedures that compare engine
//! output against them.

pub mod fixtures;
pub mod verify;

pub use fixtures::{expected_ext_dim, nk_pretty, nk_row, nk_table, upsilon};
pub use verify::{
    check_doubling_square, desk_scale_note, explore_conjecture, phi_f1, phi_iterate, run_suite,
    verify_counterexamples, verify_ext_table, verify_hk_vs_table, verify_hulls, verify_j2k,
    Finding, Report, TwistTower, Verdict,
};
