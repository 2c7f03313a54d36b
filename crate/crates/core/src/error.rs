use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("unsupported field size: {0}")]
    UnsupportedField(String),

    #[error("modulus {modulus} is not irreducible over GF({p})")]
    ReducibleModulus { modulus: String, p: u32 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value {value} is not an element of GF({order})")]
    ForeignElement { value: u32, order: u32 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("Jacobi identity fails on (e{}, e{}, e{})", .0 + 1, .1 + 1, .2 + 1)]
    Jacobi(usize, usize, usize),

    #[error("ad(e{}^[p]) != (ad e{})^p", .0 + 1, .0 + 1)]
    NotAPMap(usize),

    #[error("not restrictable: {0}")]
    NotRestrictable(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a restricted 2-cocycle: {0}")]
    NotACocycle(String),

    #[error("prime {0} too large for compatible-map word enumeration")]
    PrimeTooLarge(u32),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for input-syntax errors (as opposed to mathematical preconditions).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    /// True when the error signals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
