use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("{0} is not a prime modulus")]
    InvalidModulus(u64),
    #[error("invalid entry: {0}")]
    InvalidEntry(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("subspaces are not in direct sum")]
    NotDirect,
    #[error("subspace is not contained in the ambient subspace")]
    NotSubspaceOf,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid block split: {0}")]
    InvalidSplit(String),
    #[error("wrong construction case: p2 = {p2}, m+n-p1-p4 = {threshold}")]
    CaseMismatch { p2: usize, threshold: i64 },
    #[error("P1 - L*P3 is singular, L is not admissible")]
    SingularCore,
    #[error("rank of R already equals its lower bound m - p4 = {0}")]
    AtBound(usize),
    #[error("infeasible target (rank L, rank R) = ({l}, {r}): {reason}")]
    InfeasibleTarget { l: usize, r: usize, reason: String },
    #[error("value {value} out of range for width {width}")]
    OutOfRange { value: u64, width: usize },
    #[error("permutation is not linear: {0}")]
    NotLinear(String),
    #[error("stage is not streamable: {0}")]
    StageNotStreamable(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Syntax-level failures, as opposed to domain failures.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::InvalidEntry(_))
    }
}
