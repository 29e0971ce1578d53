use crate::error::{Error, Result};
use crate::expr::{rank, rat, RatExpr};
use crate::geometry::{
    contract_two_form, d_along, exterior_derivative, interior_product, liouville,
    tangent_structure, wedge, ScalarForm, VectorField,
};
use crate::report::{Check, Report, Status};

use super::cartan::vertical_preimage;
use super::curvature::{horizontal_nullity_basis, CurvatureData};
use super::{horizontal_projector, ConnectionData, MetricData, SprayData};

fn check_homogeneous(e: &RatExpr) -> Result<()> {
    if liouville(e.dim()).apply(e) != e.scale(&rat(2, 1)) {
        return Err(Error::NotHomogeneous {
            what: "energy".to_string(),
        });
    }
    Ok(())
}

/// `Ω = d d_J E`.
pub fn fundamental_form(e: &RatExpr) -> ScalarForm {
    let dje = d_along(
        &tangent_structure(e.dim()),
        &ScalarForm::function(e.clone()),
    );
    exterior_derivative(&dje)
}

fn first_nonzero(w: &ScalarForm) -> String {
    w.components()
        .next()
        .map_or_else(|| "0".to_string(), |(_, v)| v.to_string())
}

fn zero_form_check(name: &str, w: &ScalarForm) -> Check {
    Check::new(name, Status::from_bool(w.is_zero())).with_residual(first_nonzero(w))
}

/// Rank of `Ω` must be `2n`.
pub(crate) fn require_nondegenerate(omega: &ScalarForm) -> Result<()> {
    let expected = 2 * omega.dim();
    let r = rank(&omega.matrix());
    if r < expected {
        return Err(Error::DegenerateEnergy { rank: r, expected });
    }
    Ok(())
}

/// Compares `i_S dd_J E + dE` and `d_h E`; the two vanish together.
pub fn energy_compat(s: &SprayData, e: &RatExpr) -> Result<Report> {
    check_homogeneous(e)?;
    let f = ScalarForm::function(e.clone());
    let de = exterior_derivative(&f);
    let omega = fundamental_form(e);
    let first = &interior_product(&s.field(), &omega) + &de;
    let second = d_along(&horizontal_projector(s), &f);
    let mut report = Report::new();
    report.push(zero_form_check("i_S ddJE + dE = 0", &first));
    report.push(zero_form_check("d_h E = 0", &second));
    report.push(
        Check::new(
            "energy_compat_equivalence",
            Status::from_bool(first.is_zero() == second.is_zero()),
        )
        .with_notes("both residuals vanish or neither does"),
    );
    Ok(report)
}

/// Truth values of the metrizability conditions for a candidate energy.
#[derive(Clone, Debug, PartialEq)]
pub struct MetrizabilityVerdict {
    /// `d_R E0 = 0`.
    pub curvature_annihilates: bool,
    /// `dd_v E0 ∧ d_v E0 = 0`.
    pub frobenius: bool,
    /// `E0 dd_h E0 − dE0 ∧ d_h E0 = 0`.
    pub scaling_identity: bool,
    /// Conditions (a) and (b) together.
    pub metrizable: bool,
    pub report: Report,
}

pub fn metrizability_conditions(
    c: &ConnectionData,
    curv: &CurvatureData,
    e0: &RatExpr,
) -> Result<MetrizabilityVerdict> {
    check_homogeneous(e0)?;
    require_nondegenerate(&fundamental_form(e0))?;
    let f = ScalarForm::function(e0.clone());
    let de = exterior_derivative(&f);

    let dr = contract_two_form(curv.two_form(), &de);
    let dv = d_along(c.vertical(), &f);
    let frob = wedge(&exterior_derivative(&dv), &dv);
    let dh = d_along(c.horizontal(), &f);
    let ident = &exterior_derivative(&dh).scale(e0) - &wedge(&de, &dh);

    let mut report = Report::new();
    report.push(zero_form_check("d_R E0 = 0", &dr));
    report.push(zero_form_check("dd_vE0 ^ d_vE0 = 0", &frob));
    report.push(zero_form_check("E0 dd_hE0 - dE0 ^ d_hE0 = 0", &ident));
    Ok(MetrizabilityVerdict {
        curvature_annihilates: dr.is_zero(),
        frobenius: frob.is_zero(),
        scaling_identity: ident.is_zero(),
        metrizable: dr.is_zero() && frob.is_zero(),
        report,
    })
}

/// `g(Jξ, R(∂_i, ∂_j)) = 0` for nullity generators `ξ`, with the vertical
/// metric `g(JX, JY) = Ω(JX, Y)`.
pub fn nullity_orthogonality(
    metric: &MetricData,
    c: &ConnectionData,
    curv: &CurvatureData,
) -> Report {
    let n = metric.dim();
    let basis = horizontal_nullity_basis(curv, c);
    let mut report = Report::new();
    if basis.is_empty() {
        report.push(
            Check::new("nullity_orthogonal_to_image", Status::Vacuous)
                .with_notes("horizontal nullity space is zero"),
        );
        return report;
    }
    let omega = fundamental_form(&metric.energy());
    let j = tangent_structure(n);
    let mut residuals = Vec::new();
    for gen in &basis {
        let jx = j.apply(&gen.lift);
        for a in 0..n {
            for b in a + 1..n {
                let image = curv.eval(&VectorField::frame(n, a), &VectorField::frame(n, b));
                let y = vertical_preimage(&image);
                residuals.push(omega.eval(&[&jx, &y]));
            }
        }
    }
    report.push(Check::zero("nullity_orthogonal_to_image", &residuals));
    report
}
