use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::expr::{RatExpr, Var};

use super::sum;

/// Vector field on `TM`, components on the frame
/// `(∂/∂x1..∂/∂xn, ∂/∂y1..∂/∂yn)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    dim: usize,
    comps: Vec<RatExpr>,
}

impl VectorField {
    /// Panics unless `comps` has length `2 * dim`.
    pub fn new(dim: usize, comps: Vec<RatExpr>) -> Self {
        assert_eq!(comps.len(), 2 * dim, "vector field needs 2n components");
        Self { dim, comps }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, vec![RatExpr::zero(dim); 2 * dim])
    }

    /// Coordinate frame field `∂/∂z^a`.
    pub fn frame(dim: usize, a: usize) -> Self {
        let mut v = Self::zero(dim);
        v.comps[a] = RatExpr::one(dim);
        v
    }

    pub fn from_parts(x_part: Vec<RatExpr>, y_part: Vec<RatExpr>) -> Self {
        let dim = x_part.len();
        assert_eq!(y_part.len(), dim, "x and y parts differ in length");
        let mut comps = x_part;
        comps.extend(y_part);
        Self::new(dim, comps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[RatExpr] {
        &self.comps
    }

    pub fn component(&self, a: usize) -> &RatExpr {
        &self.comps[a]
    }

    pub fn x_part(&self) -> &[RatExpr] {
        &self.comps[..self.dim]
    }

    pub fn y_part(&self) -> &[RatExpr] {
        &self.comps[self.dim..]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatExpr::is_zero)
    }

    /// True when every `∂/∂x` component vanishes.
    pub fn is_vertical(&self) -> bool {
        self.x_part().iter().all(RatExpr::is_zero)
    }

    /// Pointwise multiple `f X`.
    pub fn scale(&self, f: &RatExpr) -> Self {
        Self {
            dim: self.dim,
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    /// Derivative of a function along the field, `X(f) = X^a ∂f/∂z^a`.
    pub fn apply(&self, f: &RatExpr) -> RatExpr {
        sum(
            self.dim,
            self.comps
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, c)| c * &f.diff(Var::from_slot(a, self.dim))),
        )
    }

    /// Componentwise partial derivative, i.e. `[∂/∂z^a, X]`.
    pub fn diff(&self, a: usize) -> Self {
        let v = Var::from_slot(a, self.dim);
        Self {
            dim: self.dim,
            comps: self.comps.iter().map(|c| c.diff(v)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> Self {
        Self {
            dim: self.dim,
            comps: self.comps.iter().map(f).collect(),
        }
    }
}

/// Liouville field `C = y^i ∂/∂y^i`.
pub fn liouville(dim: usize) -> VectorField {
    VectorField::from_parts(
        vec![RatExpr::zero(dim); dim],
        (0..dim).map(|i| RatExpr::y(dim, i)).collect(),
    )
}

/// `[X, Y]^a = X^b ∂Y^a/∂z^b − Y^b ∂X^a/∂z^b`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    assert_eq!(x.dim, y.dim, "dimension mismatch");
    VectorField {
        dim: x.dim,
        comps: x
            .comps
            .iter()
            .zip(&y.comps)
            .map(|(xa, ya)| &x.apply(ya) - &y.apply(xa))
            .collect(),
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            dim: self.dim,
            comps: self
                .comps
                .iter()
                .zip(&rhs.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            dim: self.dim,
            comps: self
                .comps
                .iter()
                .zip(&rhs.comps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.map(|c| -c)
    }
}

impl fmt::Display for VectorField {
    /// `c*d/dx1 + ...`, zero components skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (a, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*d/d{}", Var::from_slot(a, self.dim))?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}
