use proptest::prelude::*;

use super::catalog::*;
use super::*;
use crate::expr::rat;

fn v(entries: &[(i64, i64)]) -> Vec<Rational> {
    entries.iter().map(|&(p, q)| rat(p, q)).collect()
}

fn ints(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&e| rat(e, 1)).collect()
}

/// `[g1,g2] = −g2`, `[g1,g3] = −g3`, `[g2,g3] = 0`.
fn dilation_algebra() -> LieAlgebra {
    LieAlgebra::from_brackets(3, &[(0, 1, ints(&[0, -1, 0])), (0, 2, ints(&[0, 0, -1]))])
}

/// `[g2,g1] = g1`, `[g2,g3] = −g3`, `[g1,g3] = ½g2`, `g4` central.
fn sl2_like_plus_center() -> LieAlgebra {
    LieAlgebra::from_brackets(
        4,
        &[
            (1, 0, ints(&[1, 0, 0, 0])),
            (1, 2, ints(&[0, 0, -1, 0])),
            (0, 2, v(&[(0, 1), (1, 2), (0, 1), (0, 1)])),
        ],
    )
}

fn sl2_like() -> LieAlgebra {
    LieAlgebra::from_brackets(
        3,
        &[
            (1, 0, ints(&[1, 0, 0])),
            (1, 2, ints(&[0, 0, -1])),
            (0, 2, v(&[(0, 1), (1, 2), (0, 1)])),
        ],
    )
}

fn battery() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("sl2", sl2()),
        ("so3", so3()),
        ("abelian2", LieAlgebra::abelian(2)),
        ("abelian3", LieAlgebra::abelian(3)),
        ("solvable2", solvable2()),
        ("sl2+R", sl2_plus_line()),
        ("gl2", gl2()),
        ("dilation", dilation_algebra()),
        ("sl2-like+center", sl2_like_plus_center()),
    ]
}

#[test]
fn validation() {
    for (name, a) in battery() {
        assert!(a.validate().is_ok(), "{name}");
    }
    let mut c = vec![vec![vec![rat(0, 1); 2]; 2]; 2];
    c[0][1][0] = rat(1, 1);
    c[1][0][0] = rat(1, 1);
    let err = LieAlgebra::from_constants(c).validate().unwrap_err();
    assert!(matches!(err, Error::InvalidStructure { ref reason, .. } if reason == "antisymmetry"));
}

#[test]
fn jacobi_violation_is_reported() {
    // Antisymmetric, but [e1,e2] = e2 and [e2,e3] = e1 leave a Jacobi sum of -e1.
    let a = LieAlgebra::from_brackets(3, &[(0, 1, ints(&[0, 1, 0])), (1, 2, ints(&[1, 0, 0]))]);
    let err = a.validate().unwrap_err();
    assert!(
        matches!(err, Error::InvalidStructure { ref reason, .. } if reason == "Jacobi identity")
    );
}

#[test]
fn derived_and_center() {
    let s = sl2();
    assert_eq!(s.derived_ideal(), Subspace::whole(3));
    assert_eq!(s.center().dim(), 0);
    let a = LieAlgebra::abelian(2);
    assert_eq!(a.derived_ideal().dim(), 0);
    assert_eq!(a.center(), Subspace::whole(2));
    let g = sl2_like_plus_center();
    assert_eq!(g.center(), Subspace::span(4, vec![ints(&[0, 0, 0, 1])]));
}

#[test]
fn killing_form_of_sl2() {
    let k = sl2().killing_form();
    assert_eq!(
        k.matrix,
        vec![ints(&[8, 0, 0]), ints(&[0, 0, 4]), ints(&[0, 4, 0])]
    );
    assert_eq!(k.det, rat(-128, 1));
    assert_eq!((k.signature.pos, k.signature.neg), (2, 1));
    assert!(LieAlgebra::abelian(3)
        .killing_form()
        .matrix
        .iter()
        .flatten()
        .all(Zero::is_zero));
}

#[test]
fn killing_form_of_example_algebra() {
    let k = sl2_like().killing_form();
    assert!(!k.det.is_zero());
    assert_eq!((k.signature.pos, k.signature.neg), (2, 1));
    assert_eq!(
        so3().killing_form().matrix,
        vec![ints(&[-2, 0, 0]), ints(&[0, -2, 0]), ints(&[0, 0, -2])]
    );
}

#[test]
fn semisimplicity_and_radical() {
    let s = sl2();
    assert!(s.is_semisimple() && s.is_reductive());
    assert_eq!(s.radical().dim(), 0);
    let a = LieAlgebra::abelian(3);
    assert!(!a.is_semisimple() && a.is_reductive());
    assert_eq!(a.radical(), Subspace::whole(3));
    let d = dilation_algebra();
    assert!(!d.is_semisimple());
    let ideal = Subspace::span(3, vec![ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
    assert!(d.radical().contains_subspace(&ideal));
    assert!(!d.is_reductive());
}

#[test]
fn derivation_dimensions() {
    let s = sl2().derivations();
    assert_eq!((s.dimension, s.all_inner), (3, true));
    let a = LieAlgebra::abelian(2).derivations();
    assert_eq!((a.dimension, a.all_inner), (4, false));
    for d in &s.basis {
        assert!(sl2().is_derivation(d));
    }
}

#[test]
fn ideal_projection_is_a_derivation() {
    let d = dilation_algebra();
    let map = vec![ints(&[0, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])];
    assert!(d.is_derivation(&map));
    let not = vec![ints(&[1, 0, 0]), ints(&[0, 0, 0]), ints(&[0, 0, 0])];
    assert!(!d.is_derivation(&not));
}

#[test]
fn criterion_on_battery() {
    for (name, a) in battery() {
        let r = a.semisimplicity_criterion();
        assert!(r.consistent, "{name}");
    }
    let s = sl2().semisimplicity_criterion();
    assert!(s.derived_is_whole && s.all_inner && s.reductive && s.semisimple);
    assert!(
        !LieAlgebra::abelian(2)
            .semisimplicity_criterion()
            .derived_is_whole
    );
    let sol = solvable2();
    assert_eq!(sol.derived_ideal(), Subspace::span(2, vec![ints(&[0, 1])]));
    assert!(!sol.semisimplicity_criterion().semisimple);
    let gl = gl2().semisimplicity_criterion();
    assert!(gl.reductive && !gl.semisimple && !gl.derived_is_whole);
}

#[test]
fn dim3_classification() {
    assert_eq!(sl2_like().classify_dim3_simple(), Dim3Class::Sl2Type);
    assert_eq!(so3().classify_dim3_simple(), Dim3Class::So3Type);
    assert_eq!(
        LieAlgebra::abelian(3).classify_dim3_simple(),
        Dim3Class::NotApplicable
    );
    assert_eq!(
        sl2_plus_line().classify_dim3_simple(),
        Dim3Class::NotApplicable
    );
}

#[test]
fn json_round_trip() {
    let a = sl2_like_plus_center();
    let back = LieAlgebra::from_json(&a.to_json()).unwrap();
    assert_eq!(a, back);
    let text = r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": [0, "1"]}]}"#;
    assert_eq!(LieAlgebra::from_json(text).unwrap(), solvable2());
    let both = r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": [1, 0]}, {"i": 2, "j": 1, "coeffs": [1, 0]}]}"#;
    let err = LieAlgebra::from_json(both).unwrap().validate().unwrap_err();
    assert!(matches!(err, Error::InvalidStructure { .. }));
    assert!(matches!(LieAlgebra::from_json("{"), Err(Error::Input(_))));
}

fn killing(a: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Rational {
    let k = a.killing_form().matrix;
    let mut s = Rational::zero();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            s += &x[i] * &k[i][j] * &y[j];
        }
    }
    s
}

fn unit(m: usize, i: usize) -> Vec<Rational> {
    (0..m).map(|k| rat(i64::from(k == i), 1)).collect()
}

#[test]
fn killing_form_is_invariant() {
    for (name, a) in battery() {
        let m = a.dim();
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let (ex, ey, ez) = (unit(m, x), unit(m, y), unit(m, z));
                    let lhs = killing(&a, &a.bracket(&ex, &ey), &ez)
                        + killing(&a, &ey, &a.bracket(&ex, &ez));
                    assert!(lhs.is_zero(), "{name}");
                }
            }
        }
    }
}

#[test]
fn radical_is_an_ideal() {
    for (name, a) in battery() {
        let r = a.radical();
        for v in r.basis() {
            for i in 0..a.dim() {
                assert!(r.contains(&a.bracket(v, &unit(a.dim(), i))), "{name}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Direct sums of a random-scaled sl2 with an abelian part keep the
    /// criterion consistent.
    #[test]
    fn criterion_on_scaled_sums(scale in 1i64..5, extra in 0usize..3) {
        let s = sl2();
        let m = 3 + extra;
        let brackets: Vec<_> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| {
                let mut c: Vec<Rational> = s.bracket_basis(i, j).iter().map(|x| x * rat(scale, 1)).collect();
                c.resize(m, rat(0, 1));
                (i, j, c)
            })
            .collect();
        let a = LieAlgebra::from_brackets(m, &brackets);
        prop_assert!(a.validate().is_ok());
        let r = a.semisimplicity_criterion();
        prop_assert!(r.consistent);
        prop_assert_eq!(r.semisimple, extra == 0);
        prop_assert!(r.reductive);
    }
}
