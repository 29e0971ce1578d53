use std::ops::{Add, Sub};

use crate::expr::{RatExpr, Rational};

use super::field::{lie_bracket, VectorField};

/// Vector 1-form as a `2n × 2n` matrix; column `b` is the image of the
/// `b`-th frame field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOneForm {
    dim: usize,
    cols: Vec<VectorField>,
}

impl VectorOneForm {
    pub fn from_columns(dim: usize, cols: Vec<VectorField>) -> Self {
        assert_eq!(cols.len(), 2 * dim, "vector 1-form needs 2n columns");
        Self { dim, cols }
    }

    /// `m[a][b]` is the `a`-th component of the image of `∂_b`.
    pub fn from_matrix(dim: usize, m: Vec<Vec<RatExpr>>) -> Self {
        assert_eq!(m.len(), 2 * dim, "vector 1-form needs 2n rows");
        let cols = (0..2 * dim)
            .map(|b| VectorField::new(dim, m.iter().map(|row| row[b].clone()).collect()))
            .collect();
        Self { dim, cols }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_columns(dim, vec![VectorField::zero(dim); 2 * dim])
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_columns(
            dim,
            (0..2 * dim).map(|b| VectorField::frame(dim, b)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, a: usize, b: usize) -> &RatExpr {
        self.cols[b].component(a)
    }

    /// Image of the `b`-th frame field.
    pub fn column(&self, b: usize) -> &VectorField {
        &self.cols[b]
    }

    pub fn matrix(&self) -> Vec<Vec<RatExpr>> {
        (0..2 * self.dim)
            .map(|a| {
                (0..2 * self.dim)
                    .map(|b| self.entry(a, b).clone())
                    .collect()
            })
            .collect()
    }

    pub fn apply(&self, x: &VectorField) -> VectorField {
        let mut out = VectorField::zero(self.dim);
        for (b, xb) in x.components().iter().enumerate() {
            if !xb.is_zero() {
                out = &out + &self.cols[b].scale(xb);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            dim: self.dim,
            cols: self.cols.iter().map(|v| v.map(|e| e.scale(c))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(VectorField::is_zero)
    }
}

impl Add for &VectorOneForm {
    type Output = VectorOneForm;
    fn add(self, rhs: &VectorOneForm) -> VectorOneForm {
        VectorOneForm {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VectorOneForm {
    type Output = VectorOneForm;
    fn sub(self, rhs: &VectorOneForm) -> VectorOneForm {
        VectorOneForm {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Tangent structure: `J(∂/∂x^i) = ∂/∂y^i`, `J(∂/∂y^i) = 0`.
pub fn tangent_structure(dim: usize) -> VectorOneForm {
    let cols = (0..2 * dim)
        .map(|b| {
            if b < dim {
                VectorField::frame(dim, dim + b)
            } else {
                VectorField::zero(dim)
            }
        })
        .collect();
    VectorOneForm::from_columns(dim, cols)
}

/// Antisymmetric vector 2-form, stored as its values `N(∂_a, ∂_b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorTwoForm {
    dim: usize,
    values: Vec<Vec<VectorField>>,
}

impl VectorTwoForm {
    /// Builds from `f(a, b)` evaluated for `a < b`; the rest follows by
    /// antisymmetry.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> VectorField) -> Self {
        let size = 2 * dim;
        let mut values = vec![vec![VectorField::zero(dim); size]; size];
        for a in 0..size {
            for b in a + 1..size {
                let v = f(a, b);
                values[b][a] = -&v;
                values[a][b] = v;
            }
        }
        Self { dim, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, a: usize, b: usize) -> &VectorField {
        &self.values[a][b]
    }

    /// `N^c_{ab}`.
    pub fn component(&self, c: usize, a: usize, b: usize) -> &RatExpr {
        self.values[a][b].component(c)
    }

    /// Multilinear expansion on arbitrary fields.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let mut out = VectorField::zero(self.dim);
        for (a, xa) in x.components().iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.components().iter().enumerate() {
                if a == b || yb.is_zero() {
                    continue;
                }
                out = &out + &self.values[a][b].scale(&(xa * yb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            dim: self.dim,
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.map(|e| e.scale(c))).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(VectorField::is_zero)
    }
}

/// Frölicher–Nijenhuis bracket of two vector 1-forms, evaluated on frame
/// pairs where `[∂_a, ∂_b] = 0`:
///
/// `[K,L](∂a,∂b) = [K∂a, L∂b] + [L∂a, K∂b] − K(∂_a L∂b) + K(∂_b L∂a)
///                 − L(∂_a K∂b) + L(∂_b K∂a)`
pub fn fn_bracket(k: &VectorOneForm, l: &VectorOneForm) -> VectorTwoForm {
    assert_eq!(k.dim, l.dim, "dimension mismatch");
    VectorTwoForm::from_fn(k.dim, |a, b| {
        let (ka, kb, la, lb) = (k.column(a), k.column(b), l.column(a), l.column(b));
        let mut v = &lie_bracket(ka, lb) + &lie_bracket(la, kb);
        v = &v - &k.apply(&lb.diff(a));
        v = &v + &k.apply(&la.diff(b));
        v = &v - &l.apply(&kb.diff(a));
        &v + &l.apply(&ka.diff(b))
    })
}

/// `([X, L])(∂_b) = [X, L∂_b] − L[X, ∂_b]` with `[X, ∂_b] = −∂_b X`.
pub fn lie_derivative_vector_one_form(x: &VectorField, l: &VectorOneForm) -> VectorOneForm {
    let cols = (0..2 * l.dim)
        .map(|b| &lie_bracket(x, l.column(b)) + &l.apply(&x.diff(b)))
        .collect();
    VectorOneForm::from_columns(l.dim, cols)
}
