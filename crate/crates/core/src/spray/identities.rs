use crate::expr::{rat, RatExpr};
use crate::geometry::{fn_bracket, VectorField, VectorOneForm};
use crate::report::{Check, Report};

use super::cartan::cartan_curvature;
use super::curvature::CurvatureData;
use super::{ConnectionData, SprayData};

fn differences<'a>(
    pairs: impl IntoIterator<Item = (&'a VectorField, &'a VectorField)>,
) -> Vec<RatExpr> {
    pairs
        .into_iter()
        .flat_map(|(a, b)| (a - b).components().to_vec())
        .collect()
}

/// Structural identities every spray connection satisfies: `Γ² = I`, the
/// coordinate curvature against `½[h,h]` and `⅛[Γ,Γ]`, and
/// `ℛ(∂_i, ∂_j)S = −R(∂_i, ∂_j)`.
pub fn connection_identities(s: &SprayData, c: &ConnectionData, curv: &CurvatureData) -> Report {
    let n = c.dim();
    let gamma = c.almost_product();
    let mut report = Report::new();

    let sq = &gamma.compose(&gamma) - &VectorOneForm::identity(n);
    report.push(Check::zero(
        "Gamma^2 = I",
        (0..2 * n).flat_map(|b| sq.column(b).components()),
    ));

    let two = curv.two_form();
    let mut direct = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                direct.push(curv.component(k, i, j) - two.component(n + k, i, j));
            }
        }
    }
    report.push(Check::zero("R direct = 1/2[h,h]", &direct));

    let half = fn_bracket(c.horizontal(), c.horizontal()).scale(&rat(1, 2));
    let eighth = fn_bracket(&gamma, &gamma).scale(&rat(1, 8));
    let size = 2 * n;
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (a + 1..size).map(move |b| (a, b)))
        .collect();
    let bracket_diff = differences(
        pairs
            .iter()
            .map(|&(a, b)| (half.value(a, b), eighth.value(a, b))),
    );
    report.push(Check::zero("1/2[h,h] = 1/8[Gamma,Gamma]", &bracket_diff));

    let sf = s.field();
    let mut cartan = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (VectorField::frame(n, i), VectorField::frame(n, j));
            let lhs = cartan_curvature(c, &x, &y, &sf);
            cartan.extend((&lhs + &curv.eval(&x, &y)).components().to_vec());
        }
    }
    report.push(Check::zero("Cartan(X,Y)S = -R(X,Y)", &cartan));
    report
}
