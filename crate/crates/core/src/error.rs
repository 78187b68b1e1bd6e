use thiserror::Error;

/// Error type shared by every pipeline.
///
/// `PrecisionLoss` is the one callers are expected to recover from: it means
/// a truncated series did not carry enough q-orders to decide a valuation,
/// and rerunning with higher orders will succeed. Everything else is either
/// invalid input or a mathematical inconsistency (which a correct build never
/// produces).
#[derive(Error, Debug)]
pub enum Error {
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("leading coefficient has no square root in the coefficient field")]
    NonSquareLeading,
    #[error("series square root of odd valuation")]
    OddValuation,
    #[error("series reversion needs an invertible linear coefficient")]
    NonUnitDerivative,
    #[error("omega_{{{g},{n}}} requested but 2g-2+n <= 0")]
    UnstableIndex { g: u32, n: u32 },
    #[error("genus {0} not supported on this path (load a g=2 table or lower the genus)")]
    UnsupportedGenus(u32),
    #[error("framing data violates Q*delta - P*gamma = 1")]
    InvalidFraming,
    #[error("quantum multiplication eigenvalues collide at the working truncation")]
    EigenvalueCollision,
    #[error("unitarity violation: {0}")]
    UnitarityViolation(String),
    #[error("pole collided with the open expansion point")]
    RegularityViolation,
    #[error("hodge table: {0}")]
    TableFormat(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precision(ctx: impl Into<String>) -> Self {
        Error::PrecisionLoss(ctx.into())
    }
}
