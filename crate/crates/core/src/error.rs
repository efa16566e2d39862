use alloc::string::String;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An instance or set violates one of its invariants.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A parameter is outside the range an operation accepts.
    #[error("invalid parameter: {0}")]
    Param(String),
    /// Checked arithmetic overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// A size guard (oracle enumeration, memory budget) was exceeded.
    #[error("size limit exceeded: {0}")]
    Limit(String),
    /// A value asked for reconstruction is not in the computed set.
    #[error("value {0} is not in the computed set")]
    NotInSet(u64),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::Error::Invalid(alloc::format!($($arg)*)) };
}
macro_rules! param {
    ($($arg:tt)*) => { $crate::Error::Param(alloc::format!($($arg)*)) };
}
pub(crate) use invalid;
pub(crate) use param;
