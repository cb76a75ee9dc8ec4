use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact integer operation left the representable range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// Malformed input shape or out-of-range argument.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input is well-formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Points whose affine span has rank below two.
    #[error("degenerate span: {0}")]
    DegenerateSpan(String),

    /// Quotient group is not of the required shape.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(#[from] PolygonError),

    /// A proven identity failed to hold; this always indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a bug.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("fewer than three distinct vertices")]
    TooFewVertices,
    #[error("all points are collinear (zero area)")]
    ZeroArea,
    #[error("boundary is not convex at vertex {0:?}")]
    NonConvex([i64; 2]),
    #[error("boundary crosses or doubles back on itself")]
    SelfIntersecting,
    #[error("coordinate {0} exceeds the bound |c| <= {1}")]
    CoordinateBound(i64, i64),
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
