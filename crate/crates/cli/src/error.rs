use std::fmt;

use crate::dbfile::DbError;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(partitions_core::Error),
    Db(DbError),
    /// A formula disagreed with an independent oracle.
    Mismatch(String),
}

impl CliError {
    /// Process exit status: 2 for integrity failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let integrity = match self {
            CliError::Usage(_) => false,
            CliError::Core(e) => e.is_integrity(),
            CliError::Db(e) => e.is_integrity(),
            CliError::Mismatch(_) => true,
        };
        if integrity {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Db(e) => write!(f, "{e}"),
            CliError::Mismatch(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<partitions_core::Error> for CliError {
    fn from(e: partitions_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<DbError> for CliError {
    fn from(e: DbError) -> Self {
        CliError::Db(e)
    }
}
