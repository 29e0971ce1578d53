use crate::error::{Error, Result};
use crate::expr::{kernel, rat, RatExpr, Var};
use crate::geometry::{fn_bracket, lie_bracket, sum, VectorField, VectorTwoForm};
use crate::report::{Check, Report, Status};

use super::ConnectionData;

/// Curvature `R = ½[h, h]` of a spray connection.
#[derive(Clone, Debug)]
pub struct CurvatureData {
    dim: usize,
    /// `r[k][i][j] = R^k_ij`.
    r: Vec<Vec<Vec<RatExpr>>>,
    /// `factored[k][l][i][j] = R^k_{l,ij}(x)` when every `R^k_ij` is linear in y.
    factored: Option<Vec<Vec<Vec<Vec<RatExpr>>>>>,
    two_form: VectorTwoForm,
}

impl CurvatureData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `R^k_ij`.
    pub fn component(&self, k: usize, i: usize, j: usize) -> &RatExpr {
        &self.r[k][i][j]
    }

    /// `R^k_{l,ij}` with `R^k_ij = y^l R^k_{l,ij}`.
    pub fn factored(&self, k: usize, l: usize, i: usize, j: usize) -> Option<&RatExpr> {
        self.factored.as_ref().map(|f| &f[k][l][i][j])
    }

    pub fn is_y_linear(&self) -> bool {
        self.factored.is_some()
    }

    /// `½[h, h]` as a vector 2-form on the full frame.
    pub fn two_form(&self) -> &VectorTwoForm {
        &self.two_form
    }

    pub fn is_zero(&self) -> bool {
        self.r.iter().flatten().flatten().all(RatExpr::is_zero)
    }

    /// `R(X, Y)` on arbitrary fields.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.two_form.eval(x, y)
    }
}

/// Direct coordinate formula
/// `R^k_ij = ∂_jΓ^k_i − ∂_iΓ^k_j + Γ^l_i ∂_{y^l}Γ^k_j − Γ^l_j ∂_{y^l}Γ^k_i`
/// (with `∂_i = ∂/∂x^i`), cross-checked against `½[h, h]`.
pub fn curvature_coefficients(c: &ConnectionData) -> Result<CurvatureData> {
    let n = c.dim();
    let g = |k: usize, i: usize| c.coefficient(k, i);
    let r: Vec<Vec<Vec<RatExpr>>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let lin = &g(k, i).diff(Var::X(j)) - &g(k, j).diff(Var::X(i));
                            let quad = sum(
                                n,
                                (0..n).map(|l| {
                                    &(g(l, i) * &g(k, j).diff(Var::Y(l)))
                                        - &(g(l, j) * &g(k, i).diff(Var::Y(l)))
                                }),
                            );
                            &lin + &quad
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let half = fn_bracket(c.horizontal(), c.horizontal()).scale(&rat(1, 2));
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            let expected = if b < n {
                VectorField::from_parts(
                    vec![RatExpr::zero(n); n],
                    (0..n).map(|k| r[k][a][b].clone()).collect(),
                )
            } else {
                VectorField::zero(n)
            };
            if *half.value(a, b) != expected {
                return Err(Error::InternalMismatch(format!(
                    "curvature formula and ½[h,h] differ on frame pair ({}, {})",
                    a + 1,
                    b + 1
                )));
            }
        }
    }

    let factored = factor(&r, n);
    Ok(CurvatureData {
        dim: n,
        r,
        factored,
        two_form: half,
    })
}

fn factor(r: &[Vec<Vec<RatExpr>>], n: usize) -> Option<Vec<Vec<Vec<Vec<RatExpr>>>>> {
    let mut out = vec![vec![vec![vec![RatExpr::zero(n); n]; n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let parts: Vec<RatExpr> = (0..n).map(|l| r[k][i][j].diff(Var::Y(l))).collect();
                if !parts.iter().all(RatExpr::is_y_free) {
                    return None;
                }
                let rebuilt = sum(n, (0..n).map(|l| &parts[l] * &RatExpr::y(n, l)));
                if rebuilt != r[k][i][j] {
                    return None;
                }
                for (l, p) in parts.into_iter().enumerate() {
                    out[k][l][i][j] = p;
                }
            }
        }
    }
    Some(out)
}

/// One generator of the horizontal nullity space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullityGenerator {
    /// Kernel vector `ξ`, first nonzero entry 1.
    pub direction: Vec<RatExpr>,
    /// `ξ` with denominators cleared.
    pub primitive: Vec<RatExpr>,
    /// Horizontal lift of `primitive`.
    pub lift: VectorField,
    /// `ξ` depends on x only, so the generator is the lift of a base field.
    pub projectable: bool,
}

/// Kernel of `ξ ↦ (Σ_i ξ^i R^k_ij)_{j,k}` over the fraction field.
pub fn horizontal_nullity_basis(curv: &CurvatureData, c: &ConnectionData) -> Vec<NullityGenerator> {
    let n = curv.dim;
    let mut rows: Vec<Vec<RatExpr>> = Vec::new();
    for j in 0..n {
        for k in 0..n {
            let row: Vec<RatExpr> = (0..n).map(|i| curv.r[k][i][j].clone()).collect();
            if row.iter().any(|e| !e.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![RatExpr::zero(n); n]);
    }
    kernel(&rows)
        .into_iter()
        .map(|direction| {
            let primitive = clear_denominators(&direction);
            let lift = c.horizontal_lift(&primitive);
            let projectable = direction.iter().all(RatExpr::is_y_free);
            NullityGenerator {
                direction,
                primitive,
                lift,
                projectable,
            }
        })
        .collect()
}

/// Multiplies by the product of the distinct denominators.
fn clear_denominators(v: &[RatExpr]) -> Vec<RatExpr> {
    let mut dens: Vec<RatExpr> = Vec::new();
    for e in v {
        let d = RatExpr::from(e.den().clone());
        if !d.is_one() && !dens.contains(&d) {
            dens.push(d);
        }
    }
    let factor = dens
        .iter()
        .fold(RatExpr::one(v[0].dim()), |acc, d| &acc * d);
    v.iter().map(|e| e * &factor).collect()
}

fn in_nullity(x: &VectorField, curv: &CurvatureData, c: &ConnectionData) -> bool {
    let n = curv.dim;
    c.vertical().apply(x).is_zero()
        && (0..n).all(|j| curv.eval(x, &VectorField::frame(n, j)).is_zero())
}

/// Brackets of nullity elements stay horizontal and in the nullity space.
pub fn involutivity_check(
    basis: &[VectorField],
    curv: &CurvatureData,
    c: &ConnectionData,
) -> Result<Report> {
    for (index, x) in basis.iter().enumerate() {
        if !in_nullity(x, curv, c) {
            return Err(Error::NotInNullity { index });
        }
    }
    let n = curv.dim;
    let mut report = Report::new();
    if basis.len() < 2 {
        report.push(
            Check::new("nullity_involutive", Status::Vacuous)
                .with_notes(format!("{} generator(s), no brackets to test", basis.len())),
        );
        return Ok(report);
    }
    let mut residuals = Vec::new();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let br = lie_bracket(&basis[a], &basis[b]);
            residuals.extend(c.vertical().apply(&br).components().iter().cloned());
            for j in 0..n {
                let rv = curv.eval(&br, &VectorField::frame(n, j));
                residuals.extend(rv.components().iter().cloned());
            }
        }
    }
    report.push(Check::zero("nullity_involutive", &residuals));
    Ok(report)
}
