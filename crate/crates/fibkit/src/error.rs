//! Error and result types shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// `Capacity` marks inputs that are mathematically fine but cross one of the
/// hard 64-bit working limits; `Domain` marks inputs that are wrong outright
/// (zero moduli, composite arguments to prime-only operations, and so on).
/// `Contract` and `Internal` flag states that finite counterexample-free
/// mathematics says cannot happen — if one ever surfaces, the computation
/// that produced it is wrong and must not be papered over.
#[derive(Debug, Error)]
pub enum Error {
    /// A value crossed one of the hard arithmetic caps.
    #[error("capacity exceeded: {what} {value} must stay below {cap}")]
    Capacity {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    /// The input is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-supplied guarantee did not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A checkpoint file could not be trusted.
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),

    /// An invariant the implementation relies on failed.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capacity(what: &'static str, value: u128, cap: u128) -> Self {
        Error::Capacity { what, value, cap }
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn checkpoint(msg: impl Into<String>) -> Self {
        Error::Checkpoint(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
