use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    Domain(String),
    /// Linear system without a unique solution.
    Singular { size: usize, rank: usize },
    /// A computed formula disagrees with its ground truth, or produced a
    /// non-integer count. Both indicate a bug, never a user mistake.
    Integrity(String),
    /// The operation is not defined for this input shape.
    Unsupported(String),
    /// A configured resource bound would be exceeded.
    Resource(String),
    /// Working precision cannot represent the result.
    Precision(String),
    /// The Rademacher evaluator could not certify its rounding.
    Certification { n: String, attempts: u32 },
    /// No stored formula for the requested key.
    NotFound { kind: String, parameter: u64, available: Vec<u64> },
    /// Malformed textual input.
    Parse(String),
}

impl Error {
    /// Integrity and certification failures are the "the math went wrong"
    /// class; everything else is a caller error.
    pub fn is_integrity(&self) -> bool {
        matches!(
            self,
            Error::Integrity(_) | Error::Certification { .. } | Error::Singular { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Singular { size, rank } => {
                write!(f, "singular {size}x{size} system: rank {rank}")
            }
            Error::Integrity(msg) => write!(f, "integrity error: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Resource(msg) => write!(f, "resource limit: {msg}"),
            Error::Precision(msg) => write!(f, "precision error: {msg}"),
            Error::Certification { n, attempts } => {
                write!(f, "could not certify p({n}) after {attempts} attempts")
            }
            Error::NotFound { kind, parameter, available } => {
                write!(f, "no {kind} formula for parameter {parameter}; available: ")?;
                if available.is_empty() {
                    return write!(f, "none");
                }
                for (i, p) in available.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
