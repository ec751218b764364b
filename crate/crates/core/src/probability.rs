//! Exact probabilities under the uniform measure on unrestricted
//! compositions, where each of the `C(m+n-1, n-1)` outcomes is equally likely.

use serde::{Deserialize, Serialize};

use crate::arith::{ExactRational, Natural};
use crate::counting::{
    count_upper_only, inclusion_exclusion_terms, max_violating_boxes, stars_and_bars,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityReport {
    pub value: ExactRational,
    pub numerator_count: Natural,
    pub denominator_count: Natural,
    /// Display only.
    pub decimal_approx: f64,
}

impl ProbabilityReport {
    fn new(numerator_count: Natural, denominator_count: Natural) -> Self {
        let value = ExactRational::from_counts(&numerator_count, &denominator_count)
            .expect("stars-and-bars count is positive for n >= 1");
        let decimal_approx = value.to_f64();
        ProbabilityReport {
            value,
            numerator_count,
            denominator_count,
            decimal_approx,
        }
    }
}

/// Serialized view: exact values as strings, approximation as a number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityRecord {
    pub value: String,
    pub numerator_count: Natural,
    pub denominator_count: Natural,
    pub decimal_approx: f64,
}

impl From<&ProbabilityReport> for ProbabilityRecord {
    fn from(r: &ProbabilityReport) -> Self {
        ProbabilityRecord {
            value: r.value.to_string(),
            numerator_count: r.numerator_count.clone(),
            denominator_count: r.denominator_count.clone(),
            decimal_approx: r.decimal_approx,
        }
    }
}

/// Probability that every box holds at most `kappa` balls.
pub fn prob_all_boxes_within(m: u64, n: u64, kappa: u64) -> ProbabilityReport {
    assert!(n >= 1, "at least one box is required");
    ProbabilityReport::new(count_upper_only(m, n, kappa).count, stars_and_bars(m, n))
}

/// Probability that some box holds more than `kappa` balls, evaluated directly
/// from the alternating sum over the number of overflowing boxes.
pub fn prob_at_least_one_exceeds(m: u64, n: u64, kappa: u64) -> ProbabilityReport {
    assert!(n >= 1, "at least one box is required");
    let terms = inclusion_exclusion_terms(m, n, kappa, max_violating_boxes(m, kappa));
    let union: num_bigint::BigInt = terms.iter().map(|t| &t.term_value).sum();
    let union = Natural::from_bigint(union).expect("union count is nonnegative");
    ProbabilityReport::new(union, stars_and_bars(m, n))
}
