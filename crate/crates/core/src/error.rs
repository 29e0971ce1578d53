use crate::expr::ExprError;

/// Errors raised by the geometric and algebraic layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("metric determinant is zero")]
    SingularMetric,
    #[error("metric is not symmetric at ({i}, {j})")]
    AsymmetricMetric { i: usize, j: usize },
    #[error("{what} depends on the fiber coordinates")]
    NotBaseOnly { what: String },
    #[error("{what} is not homogeneous of degree 2 in y")]
    NotHomogeneous { what: String },
    #[error("Christoffel symbol Γ^{k}_{i}{j} depends on y")]
    NonQuadratic { k: usize, i: usize, j: usize },
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("basis element {index} is not in the horizontal nullity space")]
    NotInNullity { index: usize },
    #[error("dd_J E has rank {rank}, expected {expected}")]
    DegenerateEnergy { rank: usize, expected: usize },
    #[error("bracket [{i}, {j}] = {bracket} is not in the span of the family")]
    NotClosed {
        i: String,
        j: String,
        bracket: String,
    },
    #[error("generators are linearly dependent over the rationals")]
    DependentGenerators,
    #[error("invalid structure constants: {reason} at (i, j, k, r) = ({i}, {j}, {k}, {r})")]
    InvalidStructure {
        reason: String,
        i: usize,
        j: usize,
        k: usize,
        r: usize,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
