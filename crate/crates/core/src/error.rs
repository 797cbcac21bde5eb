use std::fmt;

use thiserror::Error;

/// Which line of a Latin square failed the permutation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Col(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a Latin square: {line} repeats value {value}")]
    NotLatinSquare { line: Line, value: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})", .triple.0, .triple.1, .triple.2)]
    NotAssociative { triple: (usize, usize, usize) },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not Abelian")]
    NotAbelian,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("group is not generated by {d} elements")]
    NotDGenerated { d: usize },
    #[error("direct factor {factor} (order {order}) is not generated by {d} elements")]
    FactorNotDGenerated { factor: usize, order: usize, d: usize },
    #[error("quasigroup is not central")]
    NotCentral,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
