use std::fmt;

/// Why a command did not succeed, and the exit status that reports it.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, config or output location. Exit status 2.
    Usage(String),
    /// A computed identity or invariant fell outside tolerance. Exit status 1.
    Invariant(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Invariant(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Invariant(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

impl From<dcsim_core::Error> for Failure {
    fn from(e: dcsim_core::Error) -> Self {
        match e {
            dcsim_core::Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub(crate) fn io_failure(path: &std::path::Path, e: impl fmt::Display) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}
