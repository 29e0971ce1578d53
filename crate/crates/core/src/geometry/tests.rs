use proptest::prelude::*;

use super::*;
use crate::expr::{parse_expr, rat, RatExpr};

fn p(text: &str, dim: usize) -> RatExpr {
    parse_expr(text, dim).unwrap()
}

/// `S = y^i ∂/∂x^i − 2 G^i ∂/∂y^i`.
fn spray_field(g: &[&str]) -> VectorField {
    let dim = g.len();
    VectorField::from_parts(
        (0..dim).map(|i| RatExpr::y(dim, i)).collect(),
        g.iter().map(|s| p(s, dim).scale(&rat(-2, 1))).collect(),
    )
}

fn r3_spray() -> VectorField {
    spray_field(&["exp(x3)*y1^2 + y2*y3", "0", "0"])
}

fn base_field(dim: usize, comps: &[&str]) -> VectorField {
    VectorField::from_parts(
        comps.iter().map(|s| p(s, dim)).collect(),
        vec![RatExpr::zero(dim); dim],
    )
}

#[test]
fn liouville_bracket_with_spray() {
    let s = r3_spray();
    assert_eq!(lie_bracket(&liouville(3), &s), s);
}

#[test]
fn bracket_with_self_vanishes() {
    let s = r3_spray();
    assert!(lie_bracket(&s, &s).is_zero());
}

#[test]
fn bracket_of_base_fields() {
    let g2 = base_field(4, &["0", "-2", "0", "x4"]);
    let g3 = base_field(4, &["0", "0", "0", "1"]);
    assert_eq!(lie_bracket(&g2, &g3), -&g3);
}

#[test]
fn identity_brackets_vanish() {
    let i = VectorOneForm::identity(2);
    assert!(fn_bracket(&i, &i).is_zero());
    let x = spray_field(&["x1*y2^2", "y1*y2"]);
    assert!(lie_derivative_vector_one_form(&x, &i).is_zero());
}

#[test]
fn liouville_and_tangent_structure() {
    let j = tangent_structure(3);
    let cj = lie_derivative_vector_one_form(&liouville(3), &j);
    assert_eq!(cj, j.scale(&rat(-1, 1)));
    assert!(j.compose(&j).is_zero());
    // Im J = Ker J = span of the vertical frame.
    for b in 0..6 {
        let col = j.column(b);
        assert!(col.is_vertical());
        assert_eq!(col.is_zero(), b >= 3);
    }
}

#[test]
fn tangent_structure_with_spray_gives_connection() {
    let s = r3_spray();
    let j = tangent_structure(3);
    let gamma = lie_derivative_vector_one_form(&s, &j).scale(&rat(-1, 1));
    // Γ(∂/∂x^i) = ∂/∂x^i − 2Γ^j_i ∂/∂y^j and Γ(∂/∂y^j) = −∂/∂y^j.
    let expected = [(0, 0, "-4*exp(x3)*y1"), (0, 1, "-2*y3"), (0, 2, "-2*y2")];
    for i in 0..3 {
        assert!(gamma.entry(i, i).is_one());
        assert_eq!(gamma.entry(3 + i, 3 + i), &RatExpr::integer(3, -1));
        for j in 0..3 {
            let want = expected
                .iter()
                .find(|(r, c, _)| *r == j && *c == i)
                .map_or(RatExpr::zero(3), |(_, _, t)| p(t, 3));
            assert_eq!(gamma.entry(3 + j, i), &want, "Γ^{}_{}", j + 1, i + 1);
        }
    }
    assert_eq!(gamma.compose(&gamma), VectorOneForm::identity(3));
}

#[test]
fn differential_of_energy() {
    let e = ScalarForm::function(p("1/2*exp(x3)*y1^2", 3));
    let de = exterior_derivative(&e);
    assert_eq!(de.component(&[2]), p("1/2*exp(x3)*y1^2", 3));
    assert_eq!(de.component(&[3]), p("exp(x3)*y1", 3));
    assert_eq!(de.components().count(), 2);
    assert!(exterior_derivative(&de).is_zero());
}

#[test]
fn d_along_tangent_structure() {
    let e = ScalarForm::function(p("1/2*y1^2 + 1/2*y2^2", 2));
    let dje = d_along(&tangent_structure(2), &e);
    let want = &ScalarForm::coordinate_differential(2, 0).scale(&p("y1", 2))
        + &ScalarForm::coordinate_differential(2, 1).scale(&p("y2", 2));
    assert_eq!(dje, want);
}

#[test]
fn wedge_convention_anchor() {
    let dx1 = ScalarForm::coordinate_differential(2, 0);
    let dx2 = ScalarForm::coordinate_differential(2, 1);
    let w = wedge(&dx1, &dx2);
    let e1 = VectorField::frame(2, 0);
    let e2 = VectorField::frame(2, 1);
    assert!(w.eval(&[&e1, &e2]).is_one());
    assert_eq!(w.component(&[1, 0]), RatExpr::integer(2, -1));
    assert!(wedge(&dx1, &dx1).is_zero());
}

#[test]
fn interior_product_of_zero() {
    let x = r3_spray();
    assert!(interior_product(&x, &ScalarForm::zero(3, 2)).is_zero());
}

#[test]
fn two_form_contraction_reads_vertical_part() {
    let r = VectorTwoForm::from_fn(2, |a, b| {
        if (a, b) == (0, 1) {
            VectorField::new(
                2,
                vec![RatExpr::zero(2), RatExpr::zero(2), p("y2", 2), p("x1", 2)],
            )
        } else {
            VectorField::zero(2)
        }
    });
    let df = exterior_derivative(&ScalarForm::function(p("y1*y2", 2)));
    let c = contract_two_form(&r, &df);
    assert_eq!(c.component(&[0, 1]), p("y2^2 + x1*y1", 2));
    assert_eq!(c.component(&[1, 0]), p("-y2^2 - x1*y1", 2));
}

#[test]
fn lie_derivative_of_function() {
    let x = base_field(2, &["x2", "-x1"]);
    let f = ScalarForm::function(p("x1^2 + x2^2", 2));
    assert!(lie_derivative_form(&x, &f).is_zero());
}

fn small_poly(dim: usize) -> impl Strategy<Value = RatExpr> {
    let term = (
        -2i64..=2,
        prop::collection::vec(0u32..=2, 2 * dim),
        prop::bool::ANY,
    )
        .prop_map(move |(c, exps, with_exp)| {
            let mut s = c.to_string();
            for (slot, e) in exps.iter().enumerate() {
                if *e > 0 {
                    s.push_str(&format!("*{}^{e}", crate::expr::Var::from_slot(slot, dim)));
                }
            }
            if with_exp {
                s.push_str("*exp(x1)");
            }
            s
        });
    prop::collection::vec(term, 1..3).prop_map(move |ts| parse_expr(&ts.join(" + "), dim).unwrap())
}

fn one_form(dim: usize) -> impl Strategy<Value = ScalarForm> {
    prop::collection::vec(small_poly(dim), 2 * dim)
        .prop_map(move |c| ScalarForm::from_fn(dim, 1, |idx| c[idx[0]].clone()))
}

fn vector_one_form(dim: usize) -> impl Strategy<Value = VectorOneForm> {
    prop::collection::vec(prop::collection::vec(small_poly(dim), 2 * dim), 2 * dim)
        .prop_map(move |m| VectorOneForm::from_matrix(dim, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squared_vanishes_on_functions(f in small_poly(2)) {
        let ddf = exterior_derivative(&exterior_derivative(&ScalarForm::function(f)));
        prop_assert!(ddf.is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_one_forms(w in one_form(2)) {
        prop_assert!(exterior_derivative(&exterior_derivative(&w)).is_zero());
    }

    #[test]
    fn wedge_is_alternating(w in one_form(2)) {
        prop_assert!(wedge(&w, &w).is_zero());
    }

    #[test]
    fn fn_bracket_of_one_forms_is_symmetric(k in vector_one_form(1), l in vector_one_form(1)) {
        prop_assert_eq!(fn_bracket(&k, &l), fn_bracket(&l, &k));
    }
}
