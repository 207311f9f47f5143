use thiserror::Error;

/// Errors raised by the group constructions and counters.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("size guard exceeded: {what} is {value}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("operands belong to different groups ({left} vs {right})")]
    ParamsMismatch { left: String, right: String },

    #[error("matrix is not a well-defined endomorphism: row 0, column {column} holds {entry}, not divisible by {divisor}")]
    NotWellDefined {
        column: usize,
        entry: u64,
        divisor: u64,
    },

    #[error("matrix shape {rows}x{cols} does not match dimension {dim}")]
    Shape {
        rows: usize,
        cols: usize,
        dim: usize,
    },

    #[error("{what} = {value} out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i128,
        min: i128,
        max: i128,
    },

    #[error("cannot parse element at token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error(transparent)]
    Table(#[from] TableError),

    /// A computation contradicted an identity that must hold for S(p,j).
    #[error("verification failure: {0}")]
    Verification(String),
}

/// Reasons a multiplication table is rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table is empty")]
    Empty,

    #[error("declared order {declared} but table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },

    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("entry ({row}, {col}) = {value} is not an element index")]
    EntryOutOfRange { row: usize, col: usize, value: i64 },

    #[error("Latin-square violation: row {row} repeats {value} at columns {first} and {second}")]
    LatinRow {
        row: usize,
        value: usize,
        first: usize,
        second: usize,
    },

    #[error("Latin-square violation: column {col} repeats {value} at rows {first} and {second}")]
    LatinColumn {
        col: usize,
        value: usize,
        first: usize,
        second: usize,
    },

    #[error("associativity violation: ({x}*{y})*{z} = {left} but {x}*({y}*{z}) = {right}")]
    Associativity {
        x: usize,
        y: usize,
        z: usize,
        left: usize,
        right: usize,
    },

    #[error("no two-sided identity element")]
    NoIdentity,

    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),

    #[error("malformed table document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
