use std::fmt;

use thiserror::Error;

use crate::treedecomp::Violation;

/// Errors produced by the solvers, converters and file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (universe has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is not a candidate (not in X)")]
    NotInX(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid tree decomposition: {}", ViolationList(.0))]
    InvalidDecomposition(Vec<Violation>),
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

struct ViolationList<'a>(&'a [Violation]);

impl fmt::Display for ViolationList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
