//! Vector fields, vector-valued forms and scalar forms on `TM` in the
//! coordinate frame `(∂/∂x1..∂/∂xn, ∂/∂y1..∂/∂yn)`.
//!
//! Frame indices run over `0..2n`, x-block first. Everything here is
//! exact; identities such as `d∘d = 0` hold as canonical-form equalities.

mod field;
mod form;
mod vform;

pub use field::{lie_bracket, liouville, VectorField};
pub use form::{
    contract_two_form, d_along, exterior_derivative, interior_product, interior_vector_one_form,
    lie_derivative_form, wedge, ScalarForm, MAX_DEGREE,
};
pub use vform::{
    fn_bracket, lie_derivative_vector_one_form, tangent_structure, VectorOneForm, VectorTwoForm,
};

use crate::expr::RatExpr;

/// Sum of expressions, zero when empty.
pub fn sum(dim: usize, items: impl IntoIterator<Item = RatExpr>) -> RatExpr {
    items
        .into_iter()
        .fold(RatExpr::zero(dim), |acc, t| &acc + &t)
}

#[cfg(test)]
mod tests;
