use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("metric is not symmetric (entry ({row}, {col}) differs from its transpose)")]
    NotSymmetric { row: usize, col: usize },

    #[error("metric is not positive definite (leading minor {order} = {value:e})")]
    NotPositiveDefinite { order: usize, value: f64 },

    #[error("metric is not compatible with S (residual {residual:e})")]
    NotCompatible { residual: f64 },

    #[error("zero vector has no {0}")]
    ZeroVector(&'static str),

    #[error("u does not induce an S-basis (|det| = {det:e})")]
    NotAnSBasis { det: f64 },

    #[error("S-basis angle law violated: {0}")]
    AngleLaw(String),

    #[error("phi = {phi} is outside the open interval (pi/4, 3pi/4)")]
    PhiOutOfRange { phi: f64 },

    #[error("frame is degenerate at phi = {phi} (|1 - 2cos^2 phi| = {gap:e})")]
    DegenerateFrame { phi: f64, gap: f64 },

    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),

    #[error("axis {axis} is out of range for a {dim}-dimensional form")]
    InvalidAxis { axis: usize, dim: usize },

    #[error("empty quadric")]
    EmptyQuadric,

    #[error("cannot sample a {0} quadric")]
    Unsampleable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
