use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeonError {
    #[error("variable count {0} outside 1..={max}", max = crate::MAX_VARS)]
    VarCount(usize),
    #[error("tolerance must be finite and nonnegative, got {0}")]
    Tolerance(f64),
    #[error("subset mask {mask:#b} out of range for n = {n}")]
    IndexOutOfRange { mask: u32, n: usize },
    #[error("duplicate subset index {0:#b}")]
    DuplicateIndex(u32),
    #[error("coefficient table of length {got} does not match 2^{n}")]
    LengthMismatch { got: usize, n: usize },
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("operands live in different contexts (n = {0} vs n = {1})")]
    ContextMismatch(usize, usize),
    #[error("body {0:e} is zero within tolerance")]
    ZeroBody(f64),
    #[error("variable {var} out of range 1..={n}")]
    VariableOutOfRange { var: usize, n: usize },
    #[error("variable {0} listed twice")]
    DuplicateVariable(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("odd dimension {0}")]
    OddDimension(usize),
    #[error("size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("integer rounding guard tripped: {0} is not within 1e-6 of an integer")]
    IntegerGuard(f64),
    #[error("{op} needs n in {allowed}, got {n}")]
    UnsupportedN { op: &'static str, allowed: &'static str, n: usize },
    #[error("state is not normalized (<F,F> = {0})")]
    Unnormalized(f64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("malformed operator: {0}")]
    MalformedOperator(String),
    #[error("malformed index label '{0}'")]
    MalformedLabel(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl ZeonError {
    /// Domain errors are caused by the input value; everything else is
    /// either a usage mistake or an internal consistency failure.
    pub fn is_internal(&self) -> bool {
        matches!(self, ZeonError::IntegerGuard(_) | ZeonError::NoConvergence(_) | ZeonError::Consistency(_))
    }
}
