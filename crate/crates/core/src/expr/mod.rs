//! Exact symbolic expressions on the tangent bundle `TM`.
//!
//! The expression class is sums of `rational * monomial(x, y) * exp(P(x))`
//! ([`Expr`]) and formal quotients of such sums ([`RatExpr`]). The class is
//! closed under `+`, `*` and partial differentiation, and zero is decided
//! exactly by the canonical form.

mod linsolve;
mod parse;
mod poly;
mod rat;
mod term;

use std::fmt;

use num_rational::BigRational;

pub use linsolve::{determinant, kernel, rank, rref, solve, FieldElement};
pub use parse::parse_expr;
pub use poly::Expr;
pub use rat::RatExpr;
pub use term::{ExpFactor, Monomial, Term};

/// Arbitrary-precision exact rational.
pub type Rational = BigRational;

/// Denominators with absolute value at or below this are rejected by
/// numeric evaluation.
pub const SINGULAR_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable index {index} at offset {pos} is outside 1..={dim}")]
    Index {
        pos: usize,
        index: usize,
        dim: usize,
    },
    #[error("unsupported construct at offset {pos}: {msg}")]
    Unsupported { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {value:e} is too close to zero")]
    NearSingular { value: f64 },
    #[error("linear system has no solution")]
    NoSolution,
}

/// A coordinate on `TM`, zero-based: `X(0)` is `x1`, `Y(0)` is `y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Y(usize),
}

impl Var {
    /// Position in the frame `(x1..xn, y1..yn)`.
    pub fn slot(self, dim: usize) -> usize {
        match self {
            Var::X(i) => i,
            Var::Y(i) => dim + i,
        }
    }

    pub fn from_slot(slot: usize, dim: usize) -> Self {
        if slot < dim {
            Var::X(slot)
        } else {
            Var::Y(slot - dim)
        }
    }

    /// All `2n` coordinates in frame order.
    pub fn all(dim: usize) -> impl Iterator<Item = Var> {
        (0..2 * dim).map(move |s| Var::from_slot(s, dim))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::Y(i) => write!(f, "y{}", i + 1),
        }
    }
}

/// Shorthand for an exact rational `p / q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
