use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("objects live over different weight algebras")]
    AlgebraMismatch,
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("{tag} expects {expected} object parameters, got {got}")]
    Arity {
        tag: String,
        expected: usize,
        got: usize,
    },
    #[error("relation is not rho-compatible: {0}")]
    Incompatible(String),
    #[error("order has no greatest element")]
    NoTop,
    #[error("order has no least element")]
    NoBottom,
    #[error("{table} table disagrees with the order at ({a}, {b})")]
    TableDisagrees { table: String, a: usize, b: usize },
    #[error("lattice is not distributive at ({a}, {b}, {c})")]
    NotDistributive { a: usize, b: usize, c: usize },
    #[error("atom `{0}` has no assignment")]
    Unassigned(String),
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("pattern mismatch for {rule}: expected {expected}")]
    Pattern { rule: String, expected: String },
    #[error("bad path `{0}`")]
    BadPath(String),
    #[error("step {index}: {reason}")]
    Step { index: usize, reason: Box<Error> },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("nullary mix is not invertible (top differs from bottom)")]
    NotInvertible,
    #[error("not a cartesian posetal algebra: {0}")]
    NotCartesian(String),
    #[error("unknown name `{0}`")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
