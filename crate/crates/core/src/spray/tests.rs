use super::*;
use crate::error::Error;
use crate::expr::{parse_expr, rat, RatExpr};
use crate::geometry::{d_along, fn_bracket, ScalarForm, VectorField, VectorOneForm};
use crate::report::Status;

fn p(text: &str, dim: usize) -> RatExpr {
    parse_expr(text, dim).unwrap()
}

fn r3_spray() -> SprayData {
    SprayData::parse(3, &["exp(x3)*y1^2 + y2*y3", "0", "0"]).unwrap()
}

fn r4_metric() -> MetricData {
    MetricData::parse(
        4,
        &[
            vec!["exp(x3)", "0", "0", "0"],
            vec!["0", "1", "0", "0"],
            vec!["0", "0", "exp(x1)", "0"],
            vec!["0", "0", "0", "exp(x2)"],
        ],
    )
    .unwrap()
}

fn assert_coefficients(c: &ConnectionData, expected: &[(usize, usize, &str)]) {
    let n = c.dim();
    for j in 0..n {
        for i in 0..n {
            let want = expected
                .iter()
                .find(|(jj, ii, _)| *jj == j + 1 && *ii == i + 1)
                .map_or(RatExpr::zero(n), |(_, _, t)| p(t, n));
            assert_eq!(c.coefficient(j, i), &want, "Γ^{}_{}", j + 1, i + 1);
        }
    }
}

#[test]
fn r3_connection_coefficients() {
    let c = connection_from_spray(&r3_spray()).unwrap();
    assert_coefficients(&c, &[(1, 1, "2*exp(x3)*y1"), (1, 2, "y3"), (1, 3, "y2")]);
    assert_eq!(c.nonzero_coefficients().len(), 3);
}

#[test]
fn flat_connection() {
    let c = connection_from_spray(&SprayData::flat(2)).unwrap();
    assert_coefficients(&c, &[]);
    for i in 0..2 {
        assert_eq!(c.horizontal().column(i), &VectorField::frame(2, i));
    }
}

#[test]
fn r4_metric_spray_coefficients() {
    let s = spray_from_metric(&r4_metric());
    let c = connection_from_spray(&s).unwrap();
    assert_coefficients(
        &c,
        &[
            (1, 1, "y3/2"),
            (1, 3, "-(y3*exp(x1 - x3) - y1)/2"),
            (2, 4, "-y4*exp(x2)/2"),
            (3, 1, "-(y1*exp(x3 - x1) - y3)/2"),
            (3, 3, "y1/2"),
            (4, 2, "y4/2"),
            (4, 4, "y2/2"),
        ],
    );
}

#[test]
fn euclidean_metric_gives_flat_spray() {
    let g = MetricData::diagonal(vec![RatExpr::one(3); 3]).unwrap();
    assert_eq!(spray_from_metric(&g), SprayData::flat(3));
}

#[test]
fn two_dimensional_metric_spray() {
    let g = MetricData::diagonal(vec![RatExpr::one(2), p("exp(x1)", 2)]).unwrap();
    let s = spray_from_metric(&g);
    assert_eq!(s.coefficients()[0], p("-1/4*exp(x1)*y2^2", 2));
    assert_eq!(s.coefficients()[1], p("1/2*y1*y2", 2));
    let f = ScalarForm::function(g.energy());
    assert!(d_along(&horizontal_projector(&s), &f).is_zero());
}

#[test]
fn metric_validation_errors() {
    let singular = MetricData::diagonal(vec![RatExpr::one(2), RatExpr::zero(2)]);
    assert_eq!(singular.unwrap_err(), Error::SingularMetric);
    let asym = MetricData::parse(2, &[vec!["1", "x1"], vec!["0", "1"]]);
    assert!(matches!(asym, Err(Error::AsymmetricMetric { .. })));
    let fiber = MetricData::parse(2, &[vec!["y1", "0"], vec!["0", "1"]]);
    assert!(matches!(fiber, Err(Error::NotBaseOnly { .. })));
}

#[test]
fn spray_validation_errors() {
    let cubic = SprayData::parse(2, &["y1^3", "0"]);
    assert!(matches!(cubic, Err(Error::NotHomogeneous { .. })));
    let finsler = SprayData::parse(2, &["y1^3/y2", "0"]).unwrap();
    assert!(matches!(
        connection_from_spray(&finsler),
        Err(Error::NonQuadratic { .. })
    ));
}

#[test]
fn r3_curvature() {
    let c = connection_from_spray(&r3_spray()).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let expected = [(0, 0, 1, "-2*exp(x3)*y3"), (0, 0, 2, "2*exp(x3)*(y1 - y2)")];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let want = expected
                    .iter()
                    .find_map(|&(kk, ii, jj, t)| {
                        if (kk, ii, jj) == (k, i, j) {
                            Some(p(t, 3))
                        } else if (kk, jj, ii) == (k, i, j) {
                            Some(-p(t, 3))
                        } else {
                            None
                        }
                    })
                    .unwrap_or_else(|| RatExpr::zero(3));
                assert_eq!(
                    r.component(k, i, j),
                    &want,
                    "R^{}_{}{}",
                    k + 1,
                    i + 1,
                    j + 1
                );
            }
        }
    }
    assert!(r.is_y_linear());
    assert_eq!(r.factored(0, 2, 0, 1), Some(&p("-2*exp(x3)", 3)));
}

#[test]
fn flat_curvature_vanishes() {
    let c = connection_from_spray(&SprayData::flat(3)).unwrap();
    assert!(curvature_coefficients(&c).unwrap().is_zero());
}

#[test]
fn r3_nullity() {
    let c = connection_from_spray(&r3_spray()).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let basis = horizontal_nullity_basis(&r, &c);
    assert_eq!(basis.len(), 1);
    let g = &basis[0];
    assert_eq!(
        g.direction,
        vec![RatExpr::zero(3), RatExpr::one(3), p("y3/(y1 - y2)", 3)]
    );
    assert_eq!(
        g.primitive,
        vec![RatExpr::zero(3), p("y1 - y2", 3), p("y3", 3)]
    );
    let lift = VectorField::new(
        3,
        vec![
            RatExpr::zero(3),
            p("y1 - y2", 3),
            p("y3", 3),
            p("-y1*y3", 3),
            RatExpr::zero(3),
            RatExpr::zero(3),
        ],
    );
    assert_eq!(g.lift, lift);
    assert!(!g.projectable);

    let report = involutivity_check(std::slice::from_ref(&g.lift), &r, &c).unwrap();
    assert_eq!(report.checks[0].status, Status::Vacuous);
}

#[test]
fn flat_nullity_is_everything() {
    let c = connection_from_spray(&SprayData::flat(2)).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let basis = horizontal_nullity_basis(&r, &c);
    assert_eq!(basis.len(), 2);
    assert!(basis.iter().all(|g| g.projectable));
    let lifts: Vec<VectorField> = basis.iter().map(|g| g.lift.clone()).collect();
    let report = involutivity_check(&lifts, &r, &c).unwrap();
    assert_eq!(report.checks[0].status, Status::Pass);
}

#[test]
fn corrupted_generator_is_rejected() {
    let c = connection_from_spray(&r3_spray()).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let bad = c.horizontal_lift(&[RatExpr::one(3), RatExpr::zero(3), RatExpr::zero(3)]);
    assert_eq!(
        involutivity_check(&[bad], &r, &c).unwrap_err(),
        Error::NotInNullity { index: 0 }
    );
}

#[test]
fn r4_nullity_is_zero() {
    let s = spray_from_metric(&r4_metric());
    let c = connection_from_spray(&s).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    assert!(!r.is_zero());
    assert!(horizontal_nullity_basis(&r, &c).is_empty());
    let report = nullity_orthogonality(&r4_metric(), &c, &r);
    assert_eq!(report.checks[0].status, Status::Vacuous);
}

#[test]
fn energy_compat_cases() {
    let g = r4_metric();
    let e = g.energy();
    let own = energy_compat(&spray_from_metric(&g), &e).unwrap();
    assert!(own.all_passed());
    let flat = energy_compat(&SprayData::flat(4), &e).unwrap();
    assert_eq!(flat.checks[0].status, Status::Fail);
    assert_eq!(flat.checks[1].status, Status::Fail);
    assert_eq!(flat.checks[2].status, Status::Pass);
    let euclid = p("1/2*y1^2 + 1/2*y2^2", 2);
    assert!(energy_compat(&SprayData::flat(2), &euclid)
        .unwrap()
        .all_passed());
    assert!(matches!(
        energy_compat(&SprayData::flat(2), &p("y1", 2)),
        Err(Error::NotHomogeneous { .. })
    ));
}

#[test]
fn metrizability_cases() {
    let g = r4_metric();
    let c = connection_from_spray(&spray_from_metric(&g)).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let v = metrizability_conditions(&c, &r, &g.energy()).unwrap();
    assert!(v.curvature_annihilates && v.frobenius && v.scaling_identity && v.metrizable);

    let c = connection_from_spray(&r3_spray()).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let e0 = p("1/2*y1^2 + 1/2*y2^2 + 1/2*y3^2", 3);
    let v = metrizability_conditions(&c, &r, &e0).unwrap();
    assert!(!v.curvature_annihilates);
    assert!(!v.metrizable);

    let c = connection_from_spray(&SprayData::flat(3)).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let v = metrizability_conditions(&c, &r, &e0).unwrap();
    assert!(v.curvature_annihilates && v.frobenius && v.scaling_identity);

    let degenerate = p("1/2*y1^2", 3);
    assert!(matches!(
        metrizability_conditions(&c, &r, &degenerate),
        Err(Error::DegenerateEnergy {
            rank: 2,
            expected: 6
        })
    ));
}

fn cartan_identity_holds(s: &SprayData) {
    let n = s.dim();
    let c = connection_from_spray(s).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let sf = s.field();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (VectorField::frame(n, i), VectorField::frame(n, j));
            let lhs = cartan_curvature(&c, &x, &y, &sf);
            assert_eq!(lhs, -&r.eval(&x, &y), "frame pair ({i}, {j})");
        }
    }
}

#[test]
fn cartan_curvature_on_spray_is_minus_curvature() {
    cartan_identity_holds(&r3_spray());
    cartan_identity_holds(&SprayData::flat(2));
}

#[test]
fn cartan_curvature_r4_pair() {
    let s = spray_from_metric(&r4_metric());
    let c = connection_from_spray(&s).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let (x, y) = (VectorField::frame(4, 0), VectorField::frame(4, 2));
    assert_eq!(cartan_curvature(&c, &x, &y, &s.field()), -&r.eval(&x, &y));
}

#[test]
fn flat_cartan_curvature_vanishes() {
    let c = connection_from_spray(&SprayData::flat(2)).unwrap();
    let z = VectorField::new(
        2,
        vec![p("x1", 2), p("y2", 2), p("x2*y1", 2), RatExpr::one(2)],
    );
    for i in 0..4 {
        for j in 0..4 {
            let out =
                cartan_curvature(&c, &VectorField::frame(2, i), &VectorField::frame(2, j), &z);
            assert!(out.is_zero());
        }
    }
}

#[test]
fn projector_identities() {
    for s in [r3_spray(), spray_from_metric(&r4_metric())] {
        let c = connection_from_spray(&s).unwrap();
        let n = s.dim();
        let (h, v) = (c.horizontal(), c.vertical());
        let gamma = c.almost_product();
        let id = VectorOneForm::identity(n);
        assert_eq!(gamma.compose(&gamma), id);
        assert_eq!(&h.compose(h), h);
        assert_eq!(&v.compose(v), v);
        assert!(h.compose(v).is_zero() && v.compose(h).is_zero());
        assert_eq!(&(h + v), &id);
        let half = fn_bracket(h, h).scale(&rat(1, 2));
        let eighth = fn_bracket(&gamma, &gamma).scale(&rat(1, 8));
        assert_eq!(half, eighth);
    }
}

#[test]
fn orthogonality_on_two_dimensional_metric() {
    let g = MetricData::diagonal(vec![RatExpr::one(2), p("exp(x1)", 2)]).unwrap();
    let c = connection_from_spray(&spray_from_metric(&g)).unwrap();
    let r = curvature_coefficients(&c).unwrap();
    let report = nullity_orthogonality(&g, &c, &r);
    assert!(report.all_passed());
}

#[test]
fn identity_report_on_examples() {
    for s in [
        r3_spray(),
        spray_from_metric(&r4_metric()),
        SprayData::flat(2),
    ] {
        let c = connection_from_spray(&s).unwrap();
        let curv = curvature_coefficients(&c).unwrap();
        let r = connection_identities(&s, &c, &curv);
        assert_eq!(r.checks.len(), 4);
        assert!(r.all_passed(), "{r:?}");
    }
}
