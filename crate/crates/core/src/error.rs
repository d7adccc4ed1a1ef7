//! Error type shared by all modules.

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// `k < 2` or `k > n - 2`: every Latin rectangle is trivially a Youden
    /// rectangle for these row counts, so they are rejected outright.
    #[error("trivial parameters: need 2 <= k <= n-2, got n={n}, k={k}")]
    TrivialParams { n: usize, k: usize },

    /// Invalid parameter combination (duplicate residues, `n` too large, ...).
    #[error("invalid parameters: {0}")]
    Params(String),

    /// Malformed grid: wrong dimensions or symbol out of range.
    #[error("structural error: {0}")]
    Structure(String),

    /// Row or column index out of range.
    #[error("index out of bounds: {0}")]
    Bounds(String),

    /// An operation's precondition does not hold (e.g. non-Latin input).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Requested kind is incompatible with the parameters
    /// (e.g. a Youden run with non-integral lambda).
    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    /// A brute-force guard was exceeded; pass the explicit override to proceed.
    #[error("guard refused: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
