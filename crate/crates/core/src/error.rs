use thiserror::Error;

/// Errors raised by the solver pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BemError {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("invalid interior grid: m = {0}, need m >= 2")]
    InvalidGrid(usize),

    #[error("parameter {name} = {value} outside its domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("degenerate element {0}: endpoints coincide")]
    DegenerateElement(usize),

    #[error("kernel evaluated at coincident field and source point ({x}, {y})")]
    SingularKernel { x: f64, y: f64 },

    #[error("unknown test problem {0}, expected 1..=5")]
    UnknownProblem(u32),

    #[error("unsupported quadrature order {0}, expected 1..=64")]
    UnsupportedOrder(usize),

    #[error("non-finite integrand value at t = {0}")]
    Integration(f64),

    #[error("unsupported mesh: {0}")]
    UnsupportedMesh(String),

    #[error("linear solve failed: smallest pivot {pivot:e} at column {column}")]
    SolveFailure { pivot: f64, column: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("point ({x}, {y}) is not strictly inside the unit disk")]
    OutOfDomain { x: f64, y: f64 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, BemError>;
