use core::fmt;

/// Errors raised by the core operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violated its documented domain.
    InvalidArgument {
        name: &'static str,
        constraint: &'static str,
    },
    /// A vertex label outside `1..=n`.
    VertexOutOfRange { vertex: u64, n: usize },
    /// An edge `{v, v}`.
    SelfLoop { vertex: u32 },
    /// The same unordered pair appeared twice.
    DuplicateEdge { u: u32, v: u32 },
    /// Blocks overlap, miss a vertex, or are empty.
    InvalidPartition(&'static str),
    /// A subset violating `|S| - |S̄| ∈ {0, 1}`.
    Unbalanced { size: usize, n: usize },
    /// An exhaustive routine was asked to run above its size cap.
    CapExceeded {
        operation: &'static str,
        n: usize,
        cap: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument { name, constraint } => {
                write!(f, "invalid {name}: must satisfy {constraint}")
            }
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} is outside 1..={n}")
            }
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::DuplicateEdge { u, v } => write!(f, "duplicate edge {{{u}, {v}}}"),
            Error::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            Error::Unbalanced { size, n } => write!(
                f,
                "subset of size {size} is not a balanced bisection of {n} vertices"
            ),
            Error::CapExceeded { operation, n, cap } => write!(
                f,
                "{operation} refuses n = {n}: the cap is n <= {cap}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid<T>(name: &'static str, constraint: &'static str) -> Result<T> {
    Err(Error::InvalidArgument { name, constraint })
}
