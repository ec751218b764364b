use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Natural;
use crate::counting::{count, ProblemSpec};
use crate::error::Result;

use super::{oracle_count_dp_with, oracle_count_polynomial_with, OracleLimits};

/// Inclusive grid extents: `m <= max_m`, `1 <= n <= max_n`,
/// `0 <= k1 <= k2 <= max_k`, plus `k2` unbounded for each `k1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBounds {
    pub max_m: u64,
    pub max_n: u64,
    pub max_k: u64,
}

impl GridBounds {
    pub fn new(max_m: u64, max_n: u64, max_k: u64) -> Self {
        GridBounds {
            max_m,
            max_n,
            max_k,
        }
    }

    /// Every spec of the grid, in a fixed order.
    pub fn specs(&self) -> Vec<ProblemSpec> {
        let mut out = Vec::new();
        for balls in 0..=self.max_m {
            for boxes in 1..=self.max_n {
                for lower in 0..=self.max_k {
                    for upper in (lower..=self.max_k).map(Some).chain([None]) {
                        out.push(ProblemSpec {
                            balls,
                            boxes,
                            lower,
                            upper,
                        });
                    }
                }
            }
        }
        out
    }
}

/// A grid point where the closed form and an oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub spec: ProblemSpec,
    pub closed_form: Natural,
    pub oracle: Natural,
    /// `"dp"` or `"polynomial"`.
    pub oracle_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub specs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(with = "seconds")]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

mod seconds {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        f64::deserialize(d).map(Duration::from_secs_f64)
    }
}

/// Compares the closed form against both oracles over the whole grid.
pub fn verify_grid(max_m: u64, max_n: u64, max_k: u64) -> Result<VerificationReport> {
    verify_grid_with(
        GridBounds::new(max_m, max_n, max_k),
        &OracleLimits::from_env(),
        |spec| count(spec).count,
    )
}

/// Grid verification with a caller-supplied counting function, so the harness
/// itself can be tested against a deliberately wrong one.
///
/// Grid points are evaluated in parallel on the current rayon pool; the
/// mismatch list is in grid order regardless.
pub fn verify_grid_with<F>(
    bounds: GridBounds,
    limits: &OracleLimits,
    closed_form: F,
) -> Result<VerificationReport>
where
    F: Fn(&ProblemSpec) -> Natural + Sync,
{
    let start = Instant::now();
    let specs = bounds.specs();
    let per_spec: Vec<Vec<Mismatch>> = specs
        .par_iter()
        .map(|spec| {
            let value = closed_form(spec);
            let dp = oracle_count_dp_with(spec, limits)?;
            let poly = oracle_count_polynomial_with(spec, limits)?;
            Ok([("dp", dp), ("polynomial", poly)]
                .into_iter()
                .filter(|(_, oracle)| *oracle != value)
                .map(|(name, oracle)| Mismatch {
                    spec: *spec,
                    closed_form: value.clone(),
                    oracle,
                    oracle_name: name.to_string(),
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(VerificationReport {
        specs_checked: specs.len(),
        mismatches: per_spec.into_iter().flatten().collect(),
        elapsed: start.elapsed(),
    })
}
