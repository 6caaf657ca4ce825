use thiserror::Error;

use crate::formula::{Formula, SyntaxError};
use crate::net::{End, Switching};

/// Everything that can go wrong when building or combining nets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("link endpoint {0} does not address a variable occurrence")]
    UnknownLeaf(End),

    #[error("not a perfect matching: leaf {end} is {problem}")]
    NotPerfectMatching { end: End, problem: MatchingProblem },

    #[error("link {0} -- {1} does not join complementary occurrences of one variable")]
    PolarityMismatch(End, End),

    #[error("linking fails the switching criterion: {0}")]
    NotCorrect(Switching),

    #[error("{leaves} leaves exceed the enumeration bound of {bound}")]
    SizeBoundExceeded { leaves: usize, bound: usize },

    #[error("expected {expected}, found formula {found}")]
    ShapeMismatch { expected: &'static str, found: Formula },

    #[error("cannot compose: codomain {left} differs from domain {right}")]
    InterfaceMismatch { left: Formula, right: Formula },

    #[error("path tracing closed a cycle through interface leaf {0}")]
    CutCycle(End),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingProblem {
    Unused,
    Reused,
}

impl std::fmt::Display for MatchingProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatchingProblem::Unused => "not linked",
            MatchingProblem::Reused => "linked more than once",
        })
    }
}

impl Error {
    /// Stable machine-readable code, used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "SyntaxError",
            Error::UnknownLeaf(_) => "UnknownLeaf",
            Error::NotPerfectMatching { .. } => "NotPerfectMatching",
            Error::PolarityMismatch(..) => "PolarityMismatch",
            Error::NotCorrect(_) => "NotCorrect",
            Error::SizeBoundExceeded { .. } => "SizeBoundExceeded",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::InterfaceMismatch { .. } => "InterfaceMismatch",
            Error::CutCycle(_) => "CutCycle",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
