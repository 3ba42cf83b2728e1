use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{a} is not prime to {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("elements belong to different base rings")]
    RingMismatch,
    #[error("reduction mod {to} is not a map on the group mod {from}")]
    BadQuotient { from: u64, to: u64 },
    #[error("cyclotomic character unavailable: {0}")]
    KappaUndefined(String),
    #[error("prime {l} divides the conductor {c}")]
    PrimeDividesConductor { l: u64, c: u64 },
    #[error("beta*Theta is not integral")]
    NonIntegralExponent,
    #[error("element does not lie in Z[zeta_{c}]")]
    NotInSubring { c: u64 },
    #[error("degenerate exponents (i, j, i+j must be nonzero mod c)")]
    DegenerateExponents,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("zero element where a nonzero one is required")]
    Zero,
    #[error("p divides the order of Delta")]
    NotSemisimple,
    #[error("unsupported character: {0}")]
    BadCharacter(String),
    #[error("constant term is not a unit")]
    NotUnit,
    #[error("1/p division not exact at coefficient {index}")]
    IntegralityFailure { index: usize },
    #[error("lcm not determined at the working precision")]
    LcmIllDefined,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[macro_export]
#[doc(hidden)]
macro_rules! invalid {
    ($($t:tt)*) => { $crate::Error::InvalidArgument(alloc::format!($($t)*)) };
}

#[macro_export]
#[doc(hidden)]
macro_rules! internal {
    ($($t:tt)*) => { $crate::Error::Internal(alloc::format!($($t)*)) };
}
