use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A size parameter exceeds the configured enumeration bound.
    #[error("capacity exceeded: {what} = {requested} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// Exact division left a nonzero remainder.
    #[error("not divisible: ({dividend}) / ({divisor})")]
    NotDivisible { dividend: String, divisor: String },

    /// An internal invariant failed; indicates a bug or an identity failure.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_capacity(what: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        Err(Error::Capacity {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
