use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Library-wide error type.
///
/// The CLI maps these onto exit codes: input/schema problems exit 2,
/// mathematical precondition failures exit 3, scale guards exit 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: operands live over different fields")]
    FieldMismatch,
    #[error("subspace is not isotropic")]
    NotIsotropic,
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("containment violation: {0}")]
    Containment(String),
    #[error("vector is not a member of the required subspace")]
    NotMember,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("graph data is invalid: {0}")]
    InvalidGraph(String),
    #[error("inputs lie in different orbits: {0}")]
    NotSameOrbit(String),
    #[error("same orbit invariants, but no rational witness exists for this pair")]
    NoRationalWitness,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("no deeper stratum below i = {0}")]
    NoDeeperStratum(usize),
    #[error("instance exceeds the exhaustive-search scale guard: {0}")]
    ScaleGuard(String),
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("operation requires rational scalars")]
    RationalsOnly,
}

impl Error {
    /// CLI exit code class for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidField(_) | Error::DimensionMismatch(_) | Error::Shape(_) => 2,
            Error::ScaleGuard(_) => 4,
            _ => 3,
        }
    }

    /// Stable machine-readable code for JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidField(_) => "invalid_field",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::FieldMismatch => "field_mismatch",
            Error::NotIsotropic => "not_isotropic",
            Error::NotLagrangian => "not_lagrangian",
            Error::Containment(_) => "containment",
            Error::NotMember => "not_member",
            Error::NotInvertible => "not_invertible",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::NotSameOrbit(_) => "not_same_orbit",
            Error::NoRationalWitness => "no_rational_witness",
            Error::OutOfRange(_) => "out_of_range",
            Error::NoDeeperStratum(_) => "no_deeper_stratum",
            Error::ScaleGuard(_) => "scale_guard",
            Error::Shape(_) => "shape",
            Error::RationalsOnly => "rationals_only",
        }
    }
}
