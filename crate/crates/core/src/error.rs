use alloc::string::String;
use core::fmt;

/// Errors raised by the core computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed cycle notation or cyclotomic text.
    Parse(String),
    /// A point outside `1..=degree`.
    PointOutOfRange { point: usize, degree: usize },
    /// A point occurring twice in a product of disjoint cycles.
    RepeatedPoint(usize),
    /// Generators or permutations of different degrees were mixed.
    DegreeMismatch { expected: usize, found: usize },
    /// A size guard was exceeded.
    TooLarge { what: &'static str, limit: usize },
    /// An element or subgroup is not contained where it has to be.
    NotMember(&'static str),
    /// An index is out of range.
    Index { what: &'static str, index: usize, len: usize },
    /// Two class functions from different tables were combined.
    ContextMismatch,
    /// Eigenspace splitting of the class algebra did not terminate.
    Splitting(String),
    /// A quantity that must be an integer (or rational) was not.
    NotIntegral(String),
    /// A linear system had no solution.
    Inconsistent(String),
    /// Input data does not have the expected shape.
    Shape(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::PointOutOfRange { point, degree } => {
                write!(f, "point {point} out of range 1..={degree}")
            }
            Error::RepeatedPoint(p) => write!(f, "point {p} repeated in cycle product"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::TooLarge { what, limit } => write!(f, "{what} exceeds the limit {limit}"),
            Error::NotMember(what) => write!(f, "not a member: {what}"),
            Error::Index { what, index, len } => {
                write!(f, "{what} index {index} out of range (len {len})")
            }
            Error::ContextMismatch => f.write_str("class functions belong to different tables"),
            Error::Splitting(msg) => write!(f, "eigenspace splitting failed: {msg}"),
            Error::NotIntegral(msg) => write!(f, "not integral: {msg}"),
            Error::Inconsistent(msg) => write!(f, "inconsistent system: {msg}"),
            Error::Shape(msg) => write!(f, "unexpected shape: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
