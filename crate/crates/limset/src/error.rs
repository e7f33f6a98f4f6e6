use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("the subshift is empty: no bi-infinite sequence avoids the forbidden words")]
    EmptySubshift,

    #[error("index {index} is outside the one-sided domain")]
    OutOfSide { index: i64 },

    #[error("window set at length {len} is not consistent with the set at length {shorter}")]
    InconsistentWindows { len: usize, shorter: usize },

    #[error("window generator undefined at length {0}")]
    GeneratorRange(usize),

    #[error("window scan did not stabilise within budget {budget}")]
    NotStabilised { budget: usize },

    #[error("delta {delta} is too large: shadowing at epsilon 2^-{k} in an SFT with memory {memory} needs delta <= 2^-{required}")]
    DeltaTooLarge {
        delta: String,
        k: u32,
        memory: usize,
        required: u32,
    },

    #[error("window set is not chain transitive at resolution {k}")]
    NotChainTransitive { k: u32 },

    #[error("budget {budget} too small: the construction needs at least {needed} symbols")]
    BudgetExceeded { budget: usize, needed: usize },

    #[error("{0} is outside the map's domain")]
    OutsideDomain(String),

    #[error("operation requires affine pieces; piece over [{lo}, {hi}] is quadratic")]
    UnsupportedPiece { lo: String, hi: String },

    #[error("iteration budget exceeded while {0}")]
    IterationBudget(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
