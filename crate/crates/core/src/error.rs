//! Error type shared by every module of the kernel.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("{function} is not defined at {x} (value or derivative outside the domain)")]
    Domain { function: &'static str, x: f64 },

    #[error("dual vector has a vanishing real part; it has no norm")]
    Degenerate,

    #[error("division by a dual number with real part {0:e}")]
    DivisionByPureDual(f64),

    #[error("dual angle is parallel-degenerate (sin = {0:e}); use the two-argument extraction")]
    ParallelDegenerate(f64),

    #[error("line direction has zero length")]
    ZeroDirection,

    #[error("not a line: {0}")]
    NotALine(String),

    #[error("surface is cylindrical at t = {t} (|dq| = {speed:e})")]
    Cylindrical { t: f64, speed: f64 },

    #[error("surface is not closed: {0}")]
    NotClosed(String),

    #[error("director closes onto its reverse; non-orientable surfaces are not supported")]
    NonOrientable,

    #[error("curve is degenerate at t = {t} (speed {speed:e})")]
    DegenerateCurve { t: f64, speed: f64 },

    #[error("striction line degenerates to a point; {0}")]
    DegenerateStriction(String),

    #[error("striction {sigma} at t = {t} lies outside (-pi/2, pi/2)")]
    StrictionOrientation { t: f64, sigma: f64 },

    #[error("Frenet frame undefined at t = {t} (curvature {curvature:e})")]
    FrenetDegenerate { t: f64, curvature: f64 },

    #[error("ruling correspondence could not be established: {0}")]
    Alignment(String),

    #[error("relation requires a constant offset angle")]
    VariableOffsetAngle,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown function '{name}' at line {line}, column {column}")]
    UnknownFunction {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("expression evaluates to a non-finite value at t = {t}")]
    NonFinite { t: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl GeomError {
    /// Stable machine-readable identifier used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            GeomError::Domain { .. } => "domain",
            GeomError::Degenerate => "degenerate",
            GeomError::DivisionByPureDual(_) => "division",
            GeomError::ParallelDegenerate(_) => "parallel-degenerate",
            GeomError::ZeroDirection => "zero-direction",
            GeomError::NotALine(_) => "not-a-line",
            GeomError::Cylindrical { .. } => "cylindrical",
            GeomError::NotClosed(_) => "not-closed",
            GeomError::NonOrientable => "non-orientable",
            GeomError::DegenerateCurve { .. } => "degenerate-curve",
            GeomError::DegenerateStriction(_) => "degenerate-striction",
            GeomError::StrictionOrientation { .. } => "striction-orientation",
            GeomError::FrenetDegenerate { .. } => "frenet-degenerate",
            GeomError::Alignment(_) => "alignment",
            GeomError::VariableOffsetAngle => "variable-offset-angle",
            GeomError::Precondition(_) => "precondition",
            GeomError::Parse { .. } => "parse",
            GeomError::UnknownFunction { .. } => "unknown-function",
            GeomError::NonFinite { .. } => "non-finite",
            GeomError::Config(_) => "config",
            GeomError::Io(_) => "io",
        }
    }

    /// Process exit status: 2 for input problems, 3 for geometric degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            GeomError::Parse { .. }
            | GeomError::UnknownFunction { .. }
            | GeomError::NonFinite { .. }
            | GeomError::Config(_)
            | GeomError::Io(_) => 2,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for GeomError {
    fn from(e: std::io::Error) -> Self {
        GeomError::Io(e.to_string())
    }
}
