//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use spraylab::expr::{parse_expr, rat, RatExpr, Rational, Var};
use spraylab::geometry::{
    exterior_derivative, fn_bracket, interior_product, ScalarForm, VectorField,
};
use spraylab::liealg::catalog::{gl2, sl2, sl2_plus_line, so3, solvable2};
use spraylab::liealg::{Dim3Class, LieAlgebra, Subspace};
use spraylab::numeric::{bracket_agreement, compare, derivative_agreement};
use spraylab::spray::{
    connection_from_spray, connection_identities, curvature_coefficients, energy_compat,
    fundamental_form, horizontal_nullity_basis, metrizability_conditions, spray_from_metric,
    ConnectionData, MetricData, SprayData,
};
use spraylab::symmetry::{
    affine_check, commutes_with_connection, commutes_with_spray, complete_lift,
    dimension_bound_report, structure_constants, BaseVectorField, GeneratorFamily,
};

const ZERO_TOL: f64 = 1e-9;
const FD_TOL: f64 = 1e-6;
const SAMPLES: usize = 10;

fn p(text: &str, dim: usize) -> RatExpr {
    parse_expr(text, dim).unwrap()
}

fn base(dim: usize, comps: &[&str]) -> BaseVectorField {
    BaseVectorField::parse(dim, comps).unwrap()
}

fn family(fields: &[BaseVectorField]) -> GeneratorFamily {
    GeneratorFamily::new(
        fields
            .iter()
            .enumerate()
            .map(|(i, f)| (format!("g{}", i + 1), f.clone()))
            .collect(),
    )
    .unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&e| rat(e, 1)).collect()
}

fn r3_spray() -> SprayData {
    SprayData::parse(3, &["exp(x3)*y1^2 + y2*y3", "0", "0"]).unwrap()
}

fn r3_generators() -> Vec<BaseVectorField> {
    vec![
        base(3, &["x1", "x2", "-1"]),
        base(3, &["1", "0", "0"]),
        base(3, &["0", "1", "0"]),
    ]
}

fn diagonal(dim: usize, entries: &[&str]) -> MetricData {
    MetricData::diagonal(entries.iter().map(|e| p(e, dim)).collect()).unwrap()
}

fn r4_metric() -> MetricData {
    diagonal(4, &["exp(x3)", "1", "exp(x1)", "exp(x2)"])
}

fn r4_generators() -> Vec<BaseVectorField> {
    vec![
        base(4, &["0", "x4", "0", "exp(-x2) - x4^2/4"]),
        base(4, &["0", "-2", "0", "x4"]),
        base(4, &["0", "0", "0", "1"]),
        base(4, &["1", "0", "1", "0"]),
    ]
}

fn test_metrics() -> Vec<MetricData> {
    vec![
        diagonal(2, &["1", "exp(x1)"]),
        diagonal(2, &["exp(-x2)", "exp(x1 - x2)"]),
        diagonal(3, &["exp(x2)", "1", "exp(x1 - x3)"]),
        diagonal(3, &["1", "exp(-x1)", "exp(x2)"]),
        r4_metric(),
    ]
}

fn test_sprays() -> Vec<SprayData> {
    let mut out = vec![
        r3_spray(),
        SprayData::flat(2),
        SprayData::parse(2, &["x1*y1^2 + y1*y2", "y2^2"]).unwrap(),
    ];
    out.extend(test_metrics().iter().map(spray_from_metric));
    out
}

fn assert_coefficients(c: &ConnectionData, expected: &[(usize, usize, &str)]) {
    let n = c.dim();
    let nonzero = c.nonzero_coefficients();
    assert_eq!(
        nonzero.len(),
        expected.len(),
        "number of nonzero coefficients"
    );
    for (j, i, text) in expected {
        assert_eq!(c.coefficient(j - 1, i - 1), &p(text, n), "Gamma^{j}_{i}");
    }
}

fn criterion_1() {
    let c = connection_from_spray(&r3_spray()).unwrap();
    assert_coefficients(&c, &[(1, 1, "2*exp(x3)*y1"), (1, 2, "y3"), (1, 3, "y2")]);
}

fn criterion_2() {
    let c = connection_from_spray(&r3_spray()).unwrap();
    let curv = curvature_coefficients(&c).unwrap();
    let basis = horizontal_nullity_basis(&curv, &c);
    assert_eq!(basis.len(), 1);
    let want = [p("0", 3), p("y1 - y2", 3), p("y3", 3)];
    assert_eq!(basis[0].primitive, want);
    let lift = VectorField::new(
        3,
        vec![
            p("0", 3),
            p("y1 - y2", 3),
            p("y3", 3),
            p("-y1*y3", 3),
            p("0", 3),
            p("0", 3),
        ],
    );
    assert_eq!(basis[0].lift, lift);
}

fn criterion_3() {
    let s = r3_spray();
    let gens = r3_generators();
    for g in &gens {
        assert!(commutes_with_spray(g, &s).unwrap().all_passed(), "{g}");
    }
    let a = structure_constants(&family(&gens)).unwrap();
    let ideal = Subspace::span(3, vec![ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
    assert!(a.bracket_basis(1, 2).iter().all(|c| *c == rat(0, 1)));
    for i in 0..3 {
        for j in 1..3 {
            assert!(ideal.contains(a.bracket_basis(i, j)));
        }
    }
    let crit = a.semisimplicity_criterion();
    assert!(!crit.semisimple && !crit.derived_is_whole && crit.consistent);
}

fn criterion_4() {
    let c = connection_from_spray(&spray_from_metric(&r4_metric())).unwrap();
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
    let curv = curvature_coefficients(&c).unwrap();
    assert!(horizontal_nullity_basis(&curv, &c).is_empty());
}

fn criterion_5() {
    let s = spray_from_metric(&r4_metric());
    let gens = r4_generators();
    for g in &gens {
        assert!(commutes_with_spray(g, &s).unwrap().all_passed(), "{g}");
    }
    let full = structure_constants(&family(&gens)).unwrap();
    assert_eq!(full.center(), Subspace::span(4, vec![ints(&[0, 0, 0, 1])]));
    let a = structure_constants(&family(&gens[..3])).unwrap();
    assert_eq!(a.bracket_basis(1, 0), ints(&[1, 0, 0]).as_slice());
    assert_eq!(a.bracket_basis(1, 2), ints(&[0, 0, -1]).as_slice());
    assert_eq!(
        a.bracket_basis(0, 2),
        [rat(0, 1), rat(1, 2), rat(0, 1)].as_slice()
    );
    let k = a.killing_form();
    assert_ne!(k.det, rat(0, 1));
    assert_eq!((k.signature.pos, k.signature.neg), (2, 1));
    assert_eq!(a.classify_dim3_simple(), Dim3Class::Sl2Type);
}

fn criterion_6() {
    for g in test_metrics() {
        let s = spray_from_metric(&g);
        let e = g.energy();
        assert!(energy_compat(&s, &e).unwrap().all_passed(), "{e}");
        let c = connection_from_spray(&s).unwrap();
        let curv = curvature_coefficients(&c).unwrap();
        let v = metrizability_conditions(&c, &curv, &e).unwrap();
        assert!(
            v.curvature_annihilates && v.frobenius && v.scaling_identity,
            "{e}"
        );
    }
}

fn criterion_7() {
    for s in test_sprays() {
        let c = connection_from_spray(&s).unwrap();
        let curv = curvature_coefficients(&c).unwrap();
        let r = connection_identities(&s, &c, &curv);
        assert!(r.all_passed(), "{r:?}");
    }
}

fn criterion_8() {
    let r3 = structure_constants(&family(&r3_generators())).unwrap();
    let r4 = r4_generators();
    let r4_full = structure_constants(&family(&r4)).unwrap();
    let r4_sl2 = structure_constants(&family(&r4[..3])).unwrap();
    let battery: Vec<(&str, LieAlgebra)> = vec![
        ("sl2", sl2()),
        ("so3", so3()),
        ("abelian2", LieAlgebra::abelian(2)),
        ("abelian3", LieAlgebra::abelian(3)),
        ("solvable2", solvable2()),
        ("sl2+R", sl2_plus_line()),
        ("gl2", gl2()),
        ("r3 symmetries", r3),
        ("r4 symmetries", r4_full),
        ("r4 isometries", r4_sl2),
    ];
    for (name, a) in battery {
        let crit = a.semisimplicity_criterion();
        let det_nonzero = a.killing_form().det != rat(0, 1);
        assert_eq!(
            crit.derived_is_whole && crit.all_inner && crit.reductive,
            det_nonzero,
            "{name}"
        );
    }
}

fn worst_compare(pairs: &[(RatExpr, RatExpr)], seed: u64) -> f64 {
    pairs
        .iter()
        .map(|(a, b)| compare(a, b, SAMPLES, seed).unwrap().max_scaled_error)
        .fold(0.0, f64::max)
}

fn criterion_9() {
    let mut seed = 1u64;
    let mut next = || {
        seed += 1;
        seed
    };
    for s in test_sprays() {
        let n = s.dim();
        let c = connection_from_spray(&s).unwrap();
        let curv = curvature_coefficients(&c).unwrap();
        // Symbolic derivatives against central differences.
        let mut targets: Vec<RatExpr> = s.coefficients().to_vec();
        for j in 0..n {
            for i in 0..n {
                targets.push(c.coefficient(j, i).clone());
            }
        }
        for e in &targets {
            for v in Var::all(n) {
                let fd = derivative_agreement(e, v, SAMPLES, next()).unwrap();
                assert!(fd.within(FD_TOL), "d({e})/d{v}: {}", fd.max_scaled_error);
            }
        }
        // Quantities computed along different routes and found equal.
        let two = curv.two_form();
        let half = fn_bracket(c.horizontal(), c.horizontal()).scale(&rat(1, 2));
        let eighth = fn_bracket(&c.almost_product(), &c.almost_product()).scale(&rat(1, 8));
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    pairs.push((
                        curv.component(k, i, j).clone(),
                        two.component(n + k, i, j).clone(),
                    ));
                }
            }
        }
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                for k in 0..2 * n {
                    pairs.push((
                        half.component(k, a, b).clone(),
                        eighth.component(k, a, b).clone(),
                    ));
                }
            }
        }
        let worst = worst_compare(&pairs, next());
        assert!(worst <= ZERO_TOL, "curvature routes differ by {worst}");
    }
    // Energy identity i_S dd_J E = -dE, sides evaluated separately.
    for g in test_metrics() {
        let s = spray_from_metric(&g);
        let e = g.energy();
        let lhs = interior_product(&s.field(), &fundamental_form(&e));
        let de = exterior_derivative(&ScalarForm::function(e.clone()));
        let pairs: Vec<(RatExpr, RatExpr)> = (0..2 * g.dim())
            .map(|a| (lhs.component(&[a]), -de.component(&[a])))
            .collect();
        let worst = worst_compare(&pairs, next());
        assert!(worst <= ZERO_TOL, "energy identity differs by {worst}");
    }
    // Symmetry residuals cancel numerically.
    let cases = [
        (r3_spray(), r3_generators()),
        (spray_from_metric(&r4_metric()), r4_generators()),
    ];
    for (s, gens) in cases {
        for g in gens {
            let a = bracket_agreement(&complete_lift(&g), &s.field(), SAMPLES, next()).unwrap();
            assert!(a.within(ZERO_TOL), "[{g}, S]: {}", a.max_scaled_error);
        }
    }
}

fn criterion_10() {
    let s = SprayData::flat(2);
    let c = connection_from_spray(&s).unwrap();
    let gens = vec![
        base(2, &["1", "0"]),
        base(2, &["0", "1"]),
        base(2, &["x1", "0"]),
        base(2, &["x2", "0"]),
        base(2, &["0", "x1"]),
        base(2, &["0", "x2"]),
    ];
    for g in &gens {
        assert!(commutes_with_spray(g, &s).unwrap().all_passed());
        assert!(commutes_with_connection(g, &s, &c).unwrap().all_passed());
        assert!(affine_check(g, &s, &c).unwrap().all_passed());
    }
    let a = structure_constants(&family(&gens)).unwrap();
    let bound = dimension_bound_report(a.dim(), 2);
    assert!(bound.flat && bound.report.all_passed());
}

type Criterion = (u32, &'static str, f64, fn());

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            1,
            "connection coefficients of the R^3 spray",
            1.0,
            criterion_1,
        ),
        (2, "nullity generator of the R^3 spray", 1.0, criterion_2),
        (3, "R^3 symmetries and their algebra", 1.0, criterion_3),
        (
            4,
            "connection and nullity of the R^4 metric",
            2.0,
            criterion_4,
        ),
        (
            5,
            "R^4 symmetries, center and sl2-type subalgebra",
            2.0,
            criterion_5,
        ),
        (
            6,
            "Riemannian energy identities on 5 diagonal metrics",
            10.0,
            criterion_6,
        ),
        (
            7,
            "curvature identities on every test spray",
            10.0,
            criterion_7,
        ),
        (8, "semisimplicity criterion battery", 5.0, criterion_8),
        (
            9,
            "numeric oracle and finite differences",
            30.0,
            criterion_9,
        ),
        (
            10,
            "flat R^2 affine family reaches n^2 + n",
            2.0,
            criterion_10,
        ),
    ];
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (id, what, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs_f64(limit);
        let status = match (outcome.is_ok(), in_time) {
            (true, true) => "PASS",
            (true, false) => "FAIL (time limit)",
            (false, _) => "FAIL",
        };
        if status != "PASS" {
            failed += 1;
        }
        println!(
            "criterion {id:>2}: {status:<17} {:>8.3}s / {limit:>4}s  {what}",
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
