//! Closed-form counts of bounded compositions.
//!
//! A valid distribution of `m` identical balls into `n` distinct boxes is an
//! occupancy sequence `(X_1, ..., X_n)` with `sum X_i = m` and
//! `lower <= X_i <= upper` for every box. Counting goes through one path:
//! check both feasibility conditions, pre-place `lower` balls in every box,
//! then apply a single inclusion-exclusion over the number of boxes that
//! overflow the residual cap. The specialised one-violation formula is kept
//! as a cross-check.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_cached, Natural};
use crate::error::{Error, Result};

/// The tuple `(m, n, k1, k2)`; `upper = None` means no cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub balls: u64,
    pub boxes: u64,
    pub lower: u64,
    pub upper: Option<u64>,
}

impl ProblemSpec {
    pub fn new(balls: u64, boxes: u64, lower: u64, upper: Option<u64>) -> Result<Self> {
        if boxes == 0 {
            return Err(Error::ZeroBoxes);
        }
        if let Some(upper) = upper {
            if lower > upper {
                return Err(Error::LowerExceedsUpper { lower, upper });
            }
        }
        Ok(ProblemSpec {
            balls,
            boxes,
            lower,
            upper,
        })
    }

    /// No bounds at all.
    pub fn unrestricted(balls: u64, boxes: u64) -> Result<Self> {
        Self::new(balls, boxes, 0, None)
    }

    /// The cap, with "unbounded" replaced by `balls` (no box can hold more).
    pub fn effective_upper(&self) -> u64 {
        self.upper.map_or(self.balls, |u| u.min(self.balls))
    }

    /// Whether an occupancy sequence satisfies this spec.
    pub fn admits(&self, parts: &[u64]) -> bool {
        parts.len() as u64 == self.boxes
            && parts.iter().map(|&p| p as u128).sum::<u128>() == self.balls as u128
            && parts
                .iter()
                .all(|&p| p >= self.lower && self.upper.is_none_or(|u| p <= u))
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m={}, n={}, k1={}, k2=",
            self.balls, self.boxes, self.lower
        )?;
        match self.upper {
            Some(u) => write!(f, "{u})"),
            None => f.write_str("inf)"),
        }
    }
}

/// The problem left after pre-placing `lower` balls in every box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedProblem {
    pub residual_balls: u64,
    pub residual_lower: u64,
    pub residual_upper: Option<u64>,
}

/// Parameter regions of the case analysis. Every valid spec falls in exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    /// `k1 > floor(m/n)`.
    InfeasibleLowerLemma21,
    /// `k2 < ceil(m/n)`.
    InfeasibleUpperLemma22,
    /// `k1 = 1`, cap inactive.
    NoEmptyBaseline,
    /// `k1 = 0`, cap inactive, `m >= n`.
    UnrestrictedBaseline,
    /// `k1 >= 2`, cap inactive.
    LowerOnly,
    /// `k1 = 0`, `floor(m/2) <= k2 < m`, `m >= n`.
    UpperOnlySingleViolation,
    /// `k1 = 0`, `ceil(m/n) <= k2 < floor(m/2)`, `m >= n`.
    UpperOnlyInclusionExclusion,
    /// `k1 >= 1` and the residual cap still binds.
    DoubleBoundShifted,
    /// `k1 = 0`, `m < n`.
    FewerBallsThanBoxes,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 9] = [
        CaseLabel::InfeasibleLowerLemma21,
        CaseLabel::InfeasibleUpperLemma22,
        CaseLabel::NoEmptyBaseline,
        CaseLabel::UnrestrictedBaseline,
        CaseLabel::LowerOnly,
        CaseLabel::UpperOnlySingleViolation,
        CaseLabel::UpperOnlyInclusionExclusion,
        CaseLabel::DoubleBoundShifted,
        CaseLabel::FewerBallsThanBoxes,
    ];

    /// Section reference string reported alongside the label.
    pub fn section(self) -> &'static str {
        match self {
            CaseLabel::InfeasibleLowerLemma21 => "§2.1.3 (Lemma 2.1)",
            CaseLabel::InfeasibleUpperLemma22 => "§2.2.2 (Lemma 2.2)",
            CaseLabel::NoEmptyBaseline => "§2.1.1",
            CaseLabel::UnrestrictedBaseline => "§2.1.2",
            CaseLabel::LowerOnly => "§2.1.4",
            CaseLabel::UpperOnlySingleViolation => "§2.2.1",
            CaseLabel::UpperOnlyInclusionExclusion => "§2.2.3",
            CaseLabel::DoubleBoundShifted => "§2.3",
            CaseLabel::FewerBallsThanBoxes => "§3",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::InfeasibleLowerLemma21 => "InfeasibleLowerLemma21",
            CaseLabel::InfeasibleUpperLemma22 => "InfeasibleUpperLemma22",
            CaseLabel::NoEmptyBaseline => "NoEmptyBaseline",
            CaseLabel::UnrestrictedBaseline => "UnrestrictedBaseline",
            CaseLabel::LowerOnly => "LowerOnly",
            CaseLabel::UpperOnlySingleViolation => "UpperOnlySingleViolation",
            CaseLabel::UpperOnlyInclusionExclusion => "UpperOnlyInclusionExclusion",
            CaseLabel::DoubleBoundShifted => "DoubleBoundShifted",
            CaseLabel::FewerBallsThanBoxes => "FewerBallsThanBoxes",
        }
    }

    pub fn is_infeasible(self) -> bool {
        matches!(
            self,
            CaseLabel::InfeasibleLowerLemma21 | CaseLabel::InfeasibleUpperLemma22
        )
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.section())
    }
}

/// One summand `(-1)^(alpha+1) C(n, alpha) C(m - alpha(cap+1) + n - 1, n - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionExclusionTerm {
    pub alpha: u64,
    pub sign: i8,
    pub choose_boxes: Natural,
    pub remaining_count: Natural,
    #[serde(with = "signed_digits")]
    pub term_value: BigInt,
}

mod signed_digits {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact count plus how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub count: Natural,
    pub label: CaseLabel,
    pub shifted: Option<ShiftedProblem>,
    pub terms: Vec<InclusionExclusionTerm>,
}

impl CountReport {
    fn zero(label: CaseLabel) -> Self {
        CountReport {
            count: Natural::zero(),
            label,
            shifted: None,
            terms: Vec::new(),
        }
    }

    /// `sum term_value` over the inclusion-exclusion terms.
    pub fn correction(&self) -> BigInt {
        self.terms.iter().map(|t| &t.term_value).sum()
    }
}

fn int(v: u64) -> i128 {
    v as i128
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Compositions of `m` into `n` positive parts: `C(m-1, n-1)`.
pub fn stars_and_bars_nonempty(m: u64, n: u64) -> Natural {
    binomial_cached(int(m) - 1, int(n) - 1)
}

/// Compositions of `m` into `n` nonnegative parts: `C(m+n-1, n-1)`.
pub fn stars_and_bars(m: u64, n: u64) -> Natural {
    binomial_cached(int(m) + int(n) - 1, int(n) - 1)
}

/// `k1 <= floor(m/n)`: every box can receive its minimum.
pub fn lower_bound_feasible(m: u64, n: u64, k1: u64) -> bool {
    n != 0 && k1 <= m / n
}

/// `k2 >= ceil(m/n)`: the boxes can absorb all balls.
pub fn upper_bound_feasible(m: u64, n: u64, k2: u64) -> bool {
    n != 0 && k2 >= ceil_div(m, n)
}

/// At least `k1` balls per box: `C(m - n k1 + n - 1, n - 1)`.
pub fn count_lower_only(m: u64, n: u64, k1: u64) -> Result<Natural> {
    if n == 0 {
        return Err(Error::ZeroBoxes);
    }
    if !lower_bound_feasible(m, n, k1) {
        return Err(Error::InfeasibleLower {
            balls: m,
            boxes: n,
            lower: k1,
        });
    }
    Ok(stars_and_bars(m - n * k1, n))
}

/// Most boxes that can hold more than `kappa` balls: `floor(m / (kappa+1))`.
pub fn max_violating_boxes(m: u64, kappa: u64) -> u64 {
    (int(m) / (int(kappa) + 1)) as u64
}

/// Closed form for the band `floor(m/2) <= k2 < m`, where at most one box can
/// overflow: `C(m+n-1, n-1) - n C(m - k2 + n - 2, n - 1)`.
pub fn count_upper_single_violation(m: u64, n: u64, k2: u64) -> Result<Natural> {
    if n < 2 || k2 < m / 2 || k2 >= m {
        return Err(Error::OutOfBand {
            balls: m,
            boxes: n,
            upper: k2,
        });
    }
    let total = stars_and_bars(m, n);
    let overflow = &Natural::from(n) * &binomial_cached(int(m) - int(k2) + int(n) - 2, int(n) - 1);
    Ok(total
        .checked_sub(&overflow)
        .expect("single-violation correction never exceeds the unrestricted count"))
}

/// Inclusion-exclusion terms for `alpha = 1..=max_alpha` with cap `kappa`.
///
/// The exact sum stops at [`max_violating_boxes`]; any larger `max_alpha`
/// only appends zero terms.
pub fn inclusion_exclusion_terms(
    m: u64,
    n: u64,
    kappa: u64,
    max_alpha: u64,
) -> Vec<InclusionExclusionTerm> {
    (1..=max_alpha)
        .map(|alpha| {
            let sign: i8 = if alpha % 2 == 1 { 1 } else { -1 };
            let choose_boxes = binomial_cached(int(n), int(alpha));
            let residual = int(m) - int(alpha) * (int(kappa) + 1);
            let remaining_count = binomial_cached(residual + int(n) - 1, int(n) - 1);
            let magnitude = (&choose_boxes * &remaining_count).to_bigint();
            let term_value = if sign > 0 { magnitude } else { -magnitude };
            InclusionExclusionTerm {
                alpha,
                sign,
                choose_boxes,
                remaining_count,
                term_value,
            }
        })
        .collect()
}

/// `C(m+n-1, n-1) - sum term_value`.
fn omega_from_terms(m: u64, n: u64, terms: &[InclusionExclusionTerm]) -> Natural {
    let correction: BigInt = terms.iter().map(|t| &t.term_value).sum();
    let value = stars_and_bars(m, n).to_bigint() - correction;
    Natural::from_bigint(value).expect("inclusion-exclusion count is nonnegative")
}

/// Compositions of `m` into `n` parts each at most `k2`, with the term breakdown.
pub fn count_upper_only(m: u64, n: u64, k2: u64) -> CountReport {
    let label = ProblemSpec {
        balls: m,
        boxes: n,
        lower: 0,
        upper: Some(k2),
    }
    .classify();
    if n == 0 {
        return CountReport::zero(label);
    }
    if !upper_bound_feasible(m, n, k2) {
        return CountReport::zero(CaseLabel::InfeasibleUpperLemma22);
    }
    if k2 >= m {
        return CountReport {
            count: stars_and_bars(m, n),
            label,
            shifted: None,
            terms: Vec::new(),
        };
    }
    let terms = inclusion_exclusion_terms(m, n, k2, max_violating_boxes(m, k2));
    CountReport {
        count: omega_from_terms(m, n, &terms),
        label,
        shifted: None,
        terms,
    }
}

/// Pre-places `lower` balls in every box.
pub fn shift(spec: &ProblemSpec) -> Result<ShiftedProblem> {
    if !lower_bound_feasible(spec.balls, spec.boxes, spec.lower) {
        return Err(Error::InfeasibleLower {
            balls: spec.balls,
            boxes: spec.boxes,
            lower: spec.lower,
        });
    }
    Ok(ShiftedProblem {
        residual_balls: spec.balls - spec.boxes * spec.lower,
        residual_lower: 0,
        residual_upper: spec.upper.map(|u| u - spec.lower),
    })
}

/// Counts the valid distributions of `spec`. Infeasible bounds give a
/// labelled zero.
pub fn count(spec: &ProblemSpec) -> CountReport {
    let label = spec.classify();
    if label.is_infeasible() {
        return CountReport::zero(label);
    }
    let shifted = shift(spec).expect("lower bound checked by classify");
    let m = shifted.residual_balls;
    let cap = shifted.residual_upper.map_or(m, |u| u.min(m));
    let inner = count_upper_only(m, spec.boxes, cap);
    debug_assert!(!inner.label.is_infeasible());
    CountReport {
        count: inner.count,
        label,
        shifted: (spec.lower > 0).then_some(shifted),
        terms: inner.terms,
    }
}

/// The case region containing `spec`.
pub fn classify(spec: &ProblemSpec) -> CaseLabel {
    let (m, n, k1) = (spec.balls, spec.boxes, spec.lower);
    if !lower_bound_feasible(m, n, k1) {
        return CaseLabel::InfeasibleLowerLemma21;
    }
    if spec.upper.is_some_and(|k2| !upper_bound_feasible(m, n, k2)) {
        return CaseLabel::InfeasibleUpperLemma22;
    }
    let residual = m - n * k1;
    let cap_binds = spec.upper.is_some_and(|k2| k2 - k1 < residual);
    match (k1, cap_binds) {
        (0, _) if m < n => CaseLabel::FewerBallsThanBoxes,
        (0, false) => CaseLabel::UnrestrictedBaseline,
        (1, false) => CaseLabel::NoEmptyBaseline,
        (_, false) => CaseLabel::LowerOnly,
        (0, true) if spec.upper.is_some_and(|k2| k2 >= m / 2) => {
            CaseLabel::UpperOnlySingleViolation
        }
        (0, true) => CaseLabel::UpperOnlyInclusionExclusion,
        (_, true) => CaseLabel::DoubleBoundShifted,
    }
}

impl ProblemSpec {
    pub fn classify(&self) -> CaseLabel {
        classify(self)
    }

    pub fn count(&self) -> CountReport {
        count(self)
    }
}

/// Sum of all terms of [`inclusion_exclusion_terms`] up to `n`, without
/// truncating at the violating-box bound.
pub fn omega_untruncated(m: u64, n: u64, kappa: u64) -> Natural {
    omega_from_terms(m, n, &inclusion_exclusion_terms(m, n, kappa, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: u64, n: u64, k1: u64, k2: Option<u64>) -> ProblemSpec {
        ProblemSpec::new(m, n, k1, k2).unwrap()
    }

    /// Direct enumeration of every tuple in `[lo, hi]^n`; independent of the
    /// closed forms.
    fn brute(m: u64, n: u64, lo: u64, hi: u64) -> u64 {
        fn go(left: u64, boxes: u64, lo: u64, hi: u64) -> u64 {
            if boxes == 0 {
                return u64::from(left == 0);
            }
            (lo..=hi.min(left))
                .map(|x| go(left - x, boxes - 1, lo, hi))
                .sum()
        }
        go(m, n, lo, hi)
    }

    #[test]
    fn brute_force_reference_values() {
        // Frozen from the enumerator above before the closed forms existed.
        assert_eq!(brute(5, 3, 1, 5), 6);
        assert_eq!(brute(3, 2, 0, 3), 4);
        assert_eq!(brute(7, 3, 2, 7), 3);
        assert_eq!(brute(5, 3, 0, 3), 12);
        assert_eq!(brute(5, 3, 0, 4), 18);
        assert_eq!(brute(4, 2, 0, 2), 1);
        assert_eq!(brute(5, 3, 0, 2), 3);
        assert_eq!(brute(6, 3, 0, 2), 1);
        assert_eq!(brute(7, 3, 1, 3), 6);
        assert_eq!(brute(2, 5, 0, 1), 10);
    }

    #[test]
    fn stars_and_bars_values() {
        assert_eq!(stars_and_bars_nonempty(5, 3), 6);
        assert_eq!(stars_and_bars_nonempty(3, 3), 1);
        assert_eq!(stars_and_bars_nonempty(2, 3), 0);
        assert_eq!(stars_and_bars(3, 2), 4);
        assert_eq!(stars_and_bars(0, 5), 1);
        assert_eq!(stars_and_bars(5, 1), 1);
    }

    #[test]
    fn feasibility_checks() {
        assert!(!lower_bound_feasible(5, 3, 2));
        assert!(lower_bound_feasible(6, 3, 2));
        assert!(lower_bound_feasible(0, 4, 0));
        assert!(!upper_bound_feasible(7, 3, 2));
        assert!(upper_bound_feasible(6, 3, 2));
        assert!(upper_bound_feasible(0, 3, 0));
    }

    #[test]
    fn lower_only() {
        assert_eq!(count_lower_only(7, 3, 2).unwrap(), 3);
        assert_eq!(count_lower_only(6, 3, 2).unwrap(), 1);
        for m in 0..10 {
            assert_eq!(count_lower_only(m, 4, 0).unwrap(), stars_and_bars(m, 4));
        }
        assert_eq!(
            count_lower_only(5, 3, 2),
            Err(Error::InfeasibleLower {
                balls: 5,
                boxes: 3,
                lower: 2
            })
        );
    }

    #[test]
    fn violating_box_bound() {
        assert_eq!(max_violating_boxes(10, 3), 2);
        assert_eq!(max_violating_boxes(5, 2), 1);
        assert_eq!(max_violating_boxes(3, 5), 0);
    }

    #[test]
    fn single_violation_band() {
        assert_eq!(count_upper_single_violation(5, 3, 3).unwrap(), 12);
        assert_eq!(count_upper_single_violation(5, 3, 4).unwrap(), 18);
        assert_eq!(count_upper_single_violation(4, 2, 2).unwrap(), 1);
        assert!(matches!(
            count_upper_single_violation(5, 3, 1),
            Err(Error::OutOfBand { .. })
        ));
        assert!(matches!(
            count_upper_single_violation(5, 3, 5),
            Err(Error::OutOfBand { .. })
        ));
        assert!(matches!(
            count_upper_single_violation(5, 1, 3),
            Err(Error::OutOfBand { .. })
        ));
    }

    #[test]
    fn upper_only() {
        let r = count_upper_only(5, 3, 2);
        assert_eq!(r.count, 3);
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].choose_boxes, 3);
        assert_eq!(r.terms[0].remaining_count, 6);
        assert_eq!(r.terms[0].term_value, BigInt::from(18));

        let r = count_upper_only(6, 3, 2);
        assert_eq!(r.count, 1);
        let values: Vec<BigInt> = r.terms.iter().map(|t| t.term_value.clone()).collect();
        assert_eq!(values, vec![BigInt::from(30), BigInt::from(-3)]);

        let r = count_upper_only(7, 3, 2);
        assert_eq!(r.count, 0);
        assert_eq!(r.label, CaseLabel::InfeasibleUpperLemma22);

        let r = count_upper_only(5, 3, 5);
        assert_eq!(r.count, 21);
        assert!(r.terms.is_empty());
    }

    #[test]
    fn term_invariants() {
        for t in inclusion_exclusion_terms(20, 6, 4, 6) {
            assert_eq!(t.sign, if t.alpha % 2 == 1 { 1 } else { -1 });
            let mag = (&t.choose_boxes * &t.remaining_count).to_bigint();
            assert_eq!(t.term_value, if t.sign > 0 { mag } else { -mag });
        }
        let r = count_upper_only(20, 6, 4);
        assert_eq!(r.terms.len(), 4);
        assert!(r
            .terms
            .iter()
            .all(|t| t.alpha <= max_violating_boxes(20, 4)));
        assert_eq!(
            stars_and_bars(20, 6).to_bigint() - r.correction(),
            r.count.to_bigint()
        );
    }

    #[test]
    fn shift_examples() {
        let s = shift(&spec(7, 3, 1, Some(3))).unwrap();
        assert_eq!(
            s,
            ShiftedProblem {
                residual_balls: 4,
                residual_lower: 0,
                residual_upper: Some(2)
            }
        );
        let s = shift(&spec(6, 3, 2, Some(2))).unwrap();
        assert_eq!(
            (s.residual_balls, s.residual_lower, s.residual_upper),
            (0, 0, Some(0))
        );
        let s = shift(&spec(5, 2, 0, Some(4))).unwrap();
        assert_eq!(
            (s.residual_balls, s.residual_lower, s.residual_upper),
            (5, 0, Some(4))
        );
        assert_eq!(s.residual_lower, 0);
        assert!(shift(&spec(5, 3, 2, None)).is_err());
    }

    #[test]
    fn dispatcher_examples() {
        let r = count(&spec(7, 3, 1, Some(3)));
        assert_eq!(r.count, 6);
        assert_eq!(r.label, CaseLabel::DoubleBoundShifted);
        assert_eq!(r.shifted.unwrap().residual_balls, 4);

        let r = count(&spec(5, 3, 2, Some(4)));
        assert_eq!(r.count, 0);
        assert_eq!(r.label, CaseLabel::InfeasibleLowerLemma21);

        assert_eq!(count(&spec(0, 4, 0, None)).count, 1);

        let r = count(&spec(2, 5, 0, Some(1)));
        assert_eq!(r.count, 10);
        assert_eq!(r.label, CaseLabel::FewerBallsThanBoxes);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&spec(5, 3, 0, Some(3))),
            CaseLabel::UpperOnlySingleViolation
        );
        assert_eq!(
            classify(&spec(7, 3, 1, Some(3))),
            CaseLabel::DoubleBoundShifted
        );
        assert_eq!(
            classify(&spec(7, 3, 0, Some(2))),
            CaseLabel::InfeasibleUpperLemma22
        );
        assert_eq!(
            classify(&spec(9, 3, 0, Some(4))),
            CaseLabel::UpperOnlySingleViolation
        );
        assert_eq!(
            classify(&spec(9, 3, 0, Some(3))),
            CaseLabel::UpperOnlyInclusionExclusion
        );
        assert_eq!(
            classify(&spec(12, 3, 0, Some(4))),
            CaseLabel::UpperOnlyInclusionExclusion
        );
        assert_eq!(
            classify(&spec(7, 3, 0, None)),
            CaseLabel::UnrestrictedBaseline
        );
        assert_eq!(classify(&spec(7, 3, 1, None)), CaseLabel::NoEmptyBaseline);
        assert_eq!(classify(&spec(7, 3, 2, None)), CaseLabel::LowerOnly);
        assert_eq!(
            classify(&spec(5, 3, 2, None)),
            CaseLabel::InfeasibleLowerLemma21
        );
        assert_eq!(CaseLabel::UpperOnlySingleViolation.section(), "§2.2.1");
    }

    #[test]
    fn single_box_and_empty_edge_cases() {
        for m in 0..8 {
            for k1 in 0..8 {
                for k2 in k1..8 {
                    let expected = u64::from(k1 <= m && m <= k2);
                    assert_eq!(
                        count(&spec(m, 1, k1, Some(k2))).count,
                        expected,
                        "m={m} k1={k1} k2={k2}"
                    );
                }
            }
        }
        for n in 1..6 {
            for k1 in 0..4 {
                assert_eq!(count(&spec(0, n, k1, None)).count, u64::from(k1 == 0));
            }
        }
    }

    #[test]
    fn matches_brute_force_small() {
        for m in 0..=10 {
            for n in 1..=4 {
                for k1 in 0..=6 {
                    for k2 in k1..=10 {
                        let got = count(&spec(m, n, k1, Some(k2))).count;
                        assert_eq!(got, brute(m, n, k1, k2), "{}", spec(m, n, k1, Some(k2)));
                    }
                    assert_eq!(count(&spec(m, n, k1, None)).count, brute(m, n, k1, m));
                }
            }
        }
    }

    #[test]
    fn malformed_specs() {
        assert_eq!(ProblemSpec::new(3, 0, 0, None), Err(Error::ZeroBoxes));
        assert_eq!(
            ProblemSpec::new(3, 2, 4, Some(2)),
            Err(Error::LowerExceedsUpper { lower: 4, upper: 2 })
        );
    }

    #[test]
    fn huge_lower_bound_does_not_overflow() {
        let s = spec(10, u64::MAX, u64::MAX, None);
        assert_eq!(count(&s).label, CaseLabel::InfeasibleLowerLemma21);
    }
}
