use thiserror::Error;

use crate::tree::{Address, RotationSymbol};

/// Errors raised by the library. Variants are shared across modules so callers
/// can match on a single type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("caret set is not prefix closed: the parent of {0} is missing")]
    NotPrefixClosed(Address),
    #[error("{0} is not a vertex of the tree")]
    NotAVertex(Address),
    #[error("{0} is not a leaf of the tree")]
    NotALeaf(Address),
    #[error("the tree needs at least two leaves")]
    TooSmall,
    #[error("interval family is not laminar or does not describe a tree")]
    NotLaminar,
    #[error("expected {expected} intervals, found {found}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("rotation {symbol} has a pivot missing (symbol index {index})")]
    PivotMissing { symbol: RotationSymbol, index: usize },
    #[error("projection subtrees share an edge")]
    NotEdgeDisjoint,
    #[error("projection subtree has fewer than three leaves")]
    SubtreeTooSmall,
    #[error("address exceeds the supported length of {0} letters")]
    AddressTooLong(usize),
    #[error("vector length {found} does not match leaf count {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("edge coloring uses the zero color")]
    ImproperColoring,
    #[error("root color must be nonzero")]
    ZeroRoot,
    #[error("color vector contains a zero entry")]
    ZeroEntry,
    #[error("color vector must have length at least 2")]
    TooShort,
    #[error("no relation template matches at index {0}")]
    NoMatch(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("dimension {found} exceeds the configured bound {bound}")]
    DimensionTooLarge { found: usize, bound: usize },
    #[error("graph has {found} vertices, more than the supported {bound}")]
    TooLarge { found: usize, bound: usize },
    #[error("argument {n} is outside the valid range for {what}")]
    OutOfRange { what: &'static str, n: i64 },
    #[error("argument {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("vector is not of the form 1^m 2 1^n or the tree is not valid for it")]
    NotAVineColoring,
    #[error("integer overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
