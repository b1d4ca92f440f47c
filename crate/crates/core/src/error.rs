use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("coefficient not in field: {0}")]
    NotInField(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),

    #[error("elementary map on coordinate {index} must not involve that coordinate")]
    ElementaryInvolvesTarget { index: usize },

    #[error("diagonal entry {index} is zero")]
    ZeroDiagonalEntry { index: usize },

    #[error("map is not diagonal linear: {0}")]
    NotDiagonal(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("derivation not verified locally nilpotent: {variable} survives {bound} iterations as {survivor}")]
    NotLocallyNilpotent {
        variable: String,
        bound: usize,
        survivor: String,
    },

    #[error("characteristic {characteristic} too small: exponential needs {required}! to be invertible")]
    CharacteristicTooSmall { characteristic: u32, required: usize },

    #[error("image of {variable} is not homogeneous")]
    InhomogeneousImage { variable: String },

    #[error("derivation degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("the zero derivation has no well-defined degree or conjugation scalar")]
    ZeroDerivation,

    #[error("conjugate is not a scalar multiple of the derivation (component {variable})")]
    NotProportional { variable: String },

    #[error("degenerate conjugation scalar c = 1: the diagonal map commutes with the exponential")]
    Degenerate,

    #[error("internal identity check failed: {0}")]
    IdentityViolated(String),

    #[error("degree bound {given} too small, transported elements need {required}")]
    DegreeBoundTooSmall { given: usize, required: usize },

    #[error("map is not bijective: points {first} and {second} both map to {image}")]
    NotBijective {
        first: String,
        second: String,
        image: String,
    },

    #[error("point table of {points} points exceeds the enumeration guard of {limit}")]
    GuardExceeded { points: u64, limit: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
