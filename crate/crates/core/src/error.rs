use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DegreeMismatch { left: usize, right: usize },
    /// A point, position or index outside its valid range.
    OutOfRange { what: &'static str, value: usize, limit: usize },
    NotBijection(String),
    IdentityMoved,
    Parse { input: String, reason: String },
    /// Work refused because it would exceed a fixed capacity.
    Capacity { what: &'static str, limit: u128 },
    /// Coset enumeration ran out of room before closing.
    Overflow { max_cosets: usize },
    NotClosed,
    GroupMismatch,
    NotHomogeneous,
    NotPrime(u64),
    InvalidInput(String),
    /// A condition that can only fail through a program bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
            Error::OutOfRange { what, value, limit } => {
                write!(f, "{what} {value} out of range (limit {limit})")
            }
            Error::NotBijection(s) => write!(f, "not a bijection: {s}"),
            Error::IdentityMoved => write!(f, "bijection moves the identity"),
            Error::Parse { input, reason } => write!(f, "cannot parse {input:?}: {reason}"),
            Error::Capacity { what, limit } => write!(f, "capacity exceeded: {what} (limit {limit})"),
            Error::Overflow { max_cosets } => {
                write!(f, "coset enumeration overflowed {max_cosets} cosets")
            }
            Error::NotClosed => write!(f, "coset table is not closed"),
            Error::GroupMismatch => write!(f, "elements belong to different groups"),
            Error::NotHomogeneous => write!(f, "group is not elementary abelian"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
            Error::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

impl core::error::Error for Error {}
