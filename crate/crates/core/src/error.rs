use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("jet is not invertible (constant term vanishes)")]
    NotInvertible,
    #[error("incompatible monomials: a_mod3 flags differ")]
    IncompatibleMonoids,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("invalid deformation spec: {0}")]
    Spec(String),
    #[error("dimension {0} exceeds the exact oracle envelope (n <= 4)")]
    Scale(usize),
    #[error("gauge fixing failed: {0}")]
    Gauge(String),
    #[error("constraint system infeasible: {0}")]
    Infeasible(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
