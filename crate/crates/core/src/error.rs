use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A malformed input string, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Which resource limit of a [`Budget`](crate::Budget) was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetKind {
    Bits,
    Steps,
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetKind::Bits => f.write_str("bits"),
            BudgetKind::Steps => f.write_str("steps"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    /// Not a mathematical failure: the query is infeasible at this budget.
    #[error("budget exceeded ({0})")]
    BudgetExceeded(BudgetKind),
    #[error("formula is not Sigma^b_1: {0}")]
    NotSigmaB1(String),
    #[error("value is not a sequence code")]
    NotASequence,
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("unexpected free variables {found:?} (only `{expected}` may be free)")]
    UnexpectedFreeVariables { expected: String, found: Vec<String> },
}

impl Error {
    /// Short machine-readable tag used in JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax(_) => "syntax",
            Error::UnboundVariable(_) => "unbound_variable",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::NotSigmaB1(_) => "not_sigma_b1",
            Error::NotASequence => "not_a_sequence",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::UnexpectedFreeVariables { .. } => "unexpected_free_variables",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
