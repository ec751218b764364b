//! Exact counting of indistinguishable balls in distinct boxes under per-box
//! occupancy bounds.
//!
//! A [`ProblemSpec`] `(m, n, k1, k2)` asks for the number of sequences
//! `(X_1, ..., X_n)` with `sum X_i = m` and `k1 <= X_i <= k2`. [`count`]
//! answers it in closed form for any size, returning the case region it falls
//! in and the inclusion-exclusion terms it summed. The [`oracle`] module holds
//! brute-force counterparts used to check the closed forms, plus an exact
//! uniform sampler; [`probability`] turns the counts into exact probabilities.
//!
//! ```
//! use capacity_urns::{count, CaseLabel, ProblemSpec};
//!
//! let spec = ProblemSpec::new(7, 3, 1, Some(3)).unwrap();
//! let report = count(&spec);
//! assert_eq!(report.count.to_string(), "6");
//! assert_eq!(report.label, CaseLabel::DoubleBoundShifted);
//! ```

#![forbid(unsafe_code)]

pub mod arith;
pub mod counting;
pub mod error;
pub mod oracle;
pub mod probability;

pub use arith::{binomial, binomial_cached, BinomialCache, ExactRational, Natural};
pub use counting::{
    classify, count, count_lower_only, count_upper_only, count_upper_single_violation,
    inclusion_exclusion_terms, lower_bound_feasible, max_violating_boxes, omega_untruncated, shift,
    stars_and_bars, stars_and_bars_nonempty, upper_bound_feasible, CaseLabel, CountReport,
    InclusionExclusionTerm, ProblemSpec, ShiftedProblem,
};
pub use error::{Error, Result};
pub use oracle::{
    check_lemma23, enumerate, oracle_count_dp, oracle_count_polynomial, uniform_sample,
    verify_grid, Composition, Sampler, VerificationReport,
};
pub use probability::{prob_all_boxes_within, prob_at_least_one_exceeds, ProbabilityReport};
