use thiserror::Error;

/// Errors raised by the counting library.
///
/// Infeasible bounds are not errors for [`crate::count`]; they produce a
/// labelled zero. The `Infeasible*` variants below are only returned by the
/// narrower operations whose preconditions exclude those regions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of boxes must be at least 1")]
    ZeroBoxes,

    #[error("lower bound {lower} exceeds upper bound {upper}")]
    LowerExceedsUpper { lower: u64, upper: u64 },

    #[error("lower bound {lower} exceeds floor({balls}/{boxes}); no distribution exists")]
    InfeasibleLower { balls: u64, boxes: u64, lower: u64 },

    #[error("upper bound {upper} is outside the single-violation band for {balls} balls in {boxes} boxes")]
    OutOfBand { balls: u64, boxes: u64, upper: u64 },

    #[error("spec admits no distribution")]
    InfeasibleSpec,

    #[error("oracle table needs {cells} cells, above the limit of {limit}")]
    ResourceLimit { cells: u128, limit: u128 },

    #[error("denominator is zero")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
