//! Independent ground truth for the closed forms.
//!
//! Nothing in here calls into [`crate::counting`] except the sampler (which
//! needs exact completion counts) and the grid verifier (which compares the
//! two). The dynamic program and the polynomial product are implemented
//! separately so that a shared off-by-one cannot hide.

mod enumerate;
mod sample;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Natural;
use crate::counting::ProblemSpec;
use crate::error::{Error, Result};

pub use enumerate::{enumerate, Compositions};
pub use sample::{uniform_sample, Sampler};
pub use verify::{verify_grid, verify_grid_with, GridBounds, Mismatch, VerificationReport};

/// Default ceiling on DP/polynomial table cells.
pub const DEFAULT_CELL_LIMIT: u128 = 100_000_000;

/// Environment variable overriding [`DEFAULT_CELL_LIMIT`].
pub const CELL_LIMIT_ENV: &str = "CAPACITY_URNS_DP_CELL_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub cell_limit: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            cell_limit: DEFAULT_CELL_LIMIT,
        }
    }
}

impl OracleLimits {
    /// Reads [`CELL_LIMIT_ENV`], falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(CELL_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, |cell_limit| OracleLimits { cell_limit })
    }

    fn check(&self, spec: &ProblemSpec) -> Result<()> {
        let cells = (spec.boxes as u128 + 1) * (spec.balls as u128 + 1);
        if cells > self.cell_limit {
            return Err(Error::ResourceLimit {
                cells,
                limit: self.cell_limit,
            });
        }
        Ok(())
    }
}

/// One occupancy assignment `(X_1, ..., X_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition { parts }
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Parts strictly greater than `kappa`.
    pub fn count_above(&self, kappa: u64) -> usize {
        self.parts.iter().filter(|&&p| p > kappa).count()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Count by the recurrence `f(i, r) = sum_{j=k1}^{min(k2, r)} f(i-1, r-j)`, `f(0, 0) = 1`.
pub fn oracle_count_dp(spec: &ProblemSpec) -> Result<Natural> {
    oracle_count_dp_with(spec, &OracleLimits::from_env())
}

pub fn oracle_count_dp_with(spec: &ProblemSpec, limits: &OracleLimits) -> Result<Natural> {
    limits.check(spec)?;
    let m = spec.balls as usize;
    let lo = spec.lower as usize;
    let hi = spec.upper.map_or(m, |u| (u as usize).min(m));
    let mut prev = vec![Natural::zero(); m + 1];
    prev[0] = Natural::one();
    for _ in 0..spec.boxes {
        let mut next = vec![Natural::zero(); m + 1];
        for (r, slot) in next.iter_mut().enumerate() {
            if r < lo {
                continue;
            }
            for j in lo..=hi.min(r) {
                *slot += &prev[r - j];
            }
        }
        prev = next;
    }
    Ok(prev.swap_remove(m))
}

/// Coefficient of `x^m` in `(x^k1 + ... + x^k2)^n`, multiplying one factor at a
/// time and discarding degrees above `m`.
pub fn oracle_count_polynomial(spec: &ProblemSpec) -> Result<Natural> {
    oracle_count_polynomial_with(spec, &OracleLimits::from_env())
}

pub fn oracle_count_polynomial_with(spec: &ProblemSpec, limits: &OracleLimits) -> Result<Natural> {
    limits.check(spec)?;
    let m = spec.balls as usize;
    let lo = spec.lower;
    let hi = spec.upper.unwrap_or(spec.balls);
    // Exponents of the factor that can still contribute below the degree cap.
    let factor: Vec<usize> = if lo as u128 > m as u128 {
        Vec::new()
    } else {
        (lo as usize..=hi.min(spec.balls) as usize).collect()
    };
    let mut product: Vec<Natural> = vec![Natural::one()];
    for _ in 0..spec.boxes {
        let degree = (product.len() - 1 + factor.last().copied().unwrap_or(0)).min(m);
        let mut next = vec![Natural::zero(); degree + 1];
        for (d, coeff) in product.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for &e in &factor {
                if d + e > degree {
                    break;
                }
                next[d + e] += coeff;
            }
        }
        product = next;
    }
    Ok(product.get(m).cloned().unwrap_or_else(Natural::zero))
}

/// Whether every valid composition of `spec` has at most `floor(m/(kappa+1))`
/// parts above `kappa`.
pub fn check_lemma23(spec: &ProblemSpec, kappa: u64) -> bool {
    let bound = spec.balls / (kappa.saturating_add(1));
    enumerate(spec, None).all(|c| c.count_above(kappa) as u64 <= bound)
}
