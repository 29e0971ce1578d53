//! Projectable symmetries: complete lifts of base vector fields, membership
//! tests against a spray, its connection and an energy, and exact structure
//! constants of closed generator families.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::{parse_expr, rank, solve, ExpFactor, Expr, Monomial, RatExpr, Rational, Var};
use crate::geometry::{
    lie_bracket, lie_derivative_form, lie_derivative_vector_one_form, sum, VectorField,
};
use crate::liealg::LieAlgebra;
use crate::report::{Check, Report, Status};
use crate::spray::{fundamental_form, require_nondegenerate, ConnectionData, SprayData};

/// Vector field `X^i(x) ∂/∂x^i` on the base manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseVectorField {
    dim: usize,
    comps: Vec<RatExpr>,
}

impl BaseVectorField {
    pub fn new(comps: Vec<RatExpr>) -> Result<Self> {
        let dim = comps.len();
        for (i, c) in comps.iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.dim(),
                });
            }
            if !c.is_y_free() {
                return Err(Error::NotBaseOnly {
                    what: format!("component {}", i + 1),
                });
            }
        }
        Ok(Self { dim, comps })
    }

    pub fn parse(dim: usize, comps: &[&str]) -> Result<Self> {
        if comps.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: comps.len(),
            });
        }
        let parsed = comps
            .iter()
            .map(|s| parse_expr(s, dim))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(parsed)
    }

    /// `∂/∂x^i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let comps = (0..dim)
            .map(|k| RatExpr::integer(dim, i64::from(k == i)))
            .collect();
        Self { dim, comps }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[RatExpr] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatExpr::is_zero)
    }

    /// Bracket on `M`: `[X,Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i`.
    pub fn bracket(&self, other: &Self) -> Self {
        let n = self.dim;
        let along =
            |a: &Self, f: &RatExpr| sum(n, (0..n).map(|j| &a.comps[j] * &f.diff(Var::X(j))));
        let comps = (0..n)
            .map(|i| &along(self, &other.comps[i]) - &along(other, &self.comps[i]))
            .collect();
        Self { dim: n, comps }
    }

    fn combination(dim: usize, fields: &[BaseVectorField], coeffs: &[Rational]) -> Self {
        let comps = (0..dim)
            .map(|i| {
                sum(
                    dim,
                    fields.iter().zip(coeffs).map(|(f, c)| f.comps[i].scale(c)),
                )
            })
            .collect();
        Self { dim, comps }
    }
}

impl fmt::Display for BaseVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Named list of base vector fields of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    names: Vec<String>,
    fields: Vec<BaseVectorField>,
}

impl GeneratorFamily {
    pub fn new(members: Vec<(String, BaseVectorField)>) -> Result<Self> {
        if let Some(first) = members.first() {
            let dim = first.1.dim();
            if let Some((_, bad)) = members.iter().find(|(_, f)| f.dim() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: bad.dim(),
                });
            }
        }
        let (names, fields) = members.into_iter().unzip();
        Ok(Self { names, fields })
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn fields(&self) -> &[BaseVectorField] {
        &self.fields
    }

    pub fn dim(&self) -> Option<usize> {
        self.fields.first().map(BaseVectorField::dim)
    }
}

/// `X̄ = X^i ∂/∂x^i + y^j ∂X^i/∂x^j ∂/∂y^i`.
pub fn complete_lift(x: &BaseVectorField) -> VectorField {
    let n = x.dim;
    let y_part = x
        .comps
        .iter()
        .map(|c| sum(n, (0..n).map(|j| &RatExpr::y(n, j) * &c.diff(Var::X(j)))))
        .collect();
    VectorField::from_parts(x.comps.clone(), y_part)
}

fn require_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `[X̄, S]`.
pub fn spray_residual(x: &BaseVectorField, s: &SprayData) -> VectorField {
    lie_bracket(&complete_lift(x), &s.field())
}

pub fn commutes_with_spray(x: &BaseVectorField, s: &SprayData) -> Result<Report> {
    require_dim(s.dim(), x.dim)?;
    let r = spray_residual(x, s);
    let mut report = Report::new();
    report.push(Check::zero("[X,S] = 0", r.components()));
    Ok(report)
}

/// `[X̄, Γ]`, checked together with `[X̄, S]`: the two vanish together.
pub fn commutes_with_connection(
    x: &BaseVectorField,
    s: &SprayData,
    c: &ConnectionData,
) -> Result<Report> {
    require_dim(s.dim(), x.dim)?;
    require_dim(c.dim(), x.dim)?;
    let gamma = lie_derivative_vector_one_form(&complete_lift(x), &c.almost_product());
    let on_spray = spray_residual(x, s).is_zero();
    let entries: Vec<&RatExpr> = (0..2 * x.dim)
        .flat_map(|b| gamma.column(b).components())
        .collect();
    let mut report = Report::new();
    report.push(Check::zero("[X,Gamma] = 0", entries));
    report.push(
        Check::new(
            "[X,S] = 0 iff [X,Gamma] = 0",
            Status::from_bool(on_spray == gamma.is_zero()),
        )
        .with_notes(format!("[X,S] = 0: {on_spray}")),
    );
    Ok(report)
}

/// Left-hand side of the affine equation, indexed `[k][i][j]`:
/// `X^l ∂_l Γ^k_ij + ∂_j X^l Γ^k_il + ∂_i X^l Γ^k_lj + ∂_i ∂_j X^k − ∂_l X^k Γ^l_ij`.
pub fn affine_residual(
    x: &BaseVectorField,
    christoffel: &[Vec<Vec<RatExpr>>],
) -> Result<Vec<Vec<Vec<RatExpr>>>> {
    let n = x.dim;
    require_dim(n, christoffel.len())?;
    if christoffel
        .iter()
        .flatten()
        .flatten()
        .any(|g| !g.is_y_free())
    {
        return Err(Error::NotBaseOnly {
            what: "Christoffel symbols".to_string(),
        });
    }
    let dx = |k: usize, l: usize| x.comps[k].diff(Var::X(l));
    let g = |k: usize, i: usize, j: usize| &christoffel[k][i][j];
    Ok((0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let terms = (0..n).flat_map(|l| {
                                [
                                    &x.comps[l] * &g(k, i, j).diff(Var::X(l)),
                                    &dx(l, j) * g(k, i, l),
                                    &dx(l, i) * g(k, l, j),
                                    -(&dx(k, l) * g(l, i, j)),
                                ]
                            });
                            &sum(n, terms) + &dx(k, i).diff(Var::X(j))
                        })
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// Affine equation residual, checked together with `[X̄, S]`.
pub fn affine_check(x: &BaseVectorField, s: &SprayData, c: &ConnectionData) -> Result<Report> {
    require_dim(s.dim(), x.dim)?;
    let res = affine_residual(x, c.christoffel_symbols())?;
    let flat: Vec<&RatExpr> = res.iter().flatten().flatten().collect();
    let zero = flat.iter().all(|r| r.is_zero());
    let on_spray = spray_residual(x, s).is_zero();
    let mut report = Report::new();
    report.push(Check::zero("affine equation", flat));
    report.push(
        Check::new(
            "affine equation iff [X,S] = 0",
            Status::from_bool(zero == on_spray),
        )
        .with_notes(format!("[X,S] = 0: {on_spray}")),
    );
    Ok(report)
}

/// `L_X̄ Ω` for `Ω = dd_J E`; `L_X̄ E` is recorded in the notes.
pub fn isometry_check(x: &BaseVectorField, e: &RatExpr) -> Result<Report> {
    require_dim(e.dim(), x.dim)?;
    let omega = fundamental_form(e);
    require_nondegenerate(&omega)?;
    let lift = complete_lift(x);
    let lie = lie_derivative_form(&lift, &omega);
    let on_energy = lift.apply(e);
    let mut report = Report::new();
    let residual = lie
        .components()
        .next()
        .map_or_else(|| "0".to_string(), |(_, v)| v.to_string());
    report.push(
        Check::new("L_X Omega = 0", Status::from_bool(lie.is_zero()))
            .with_residual(residual)
            .with_notes(format!("L_X E = {on_energy}")),
    );
    Ok(report)
}

type TermKey = (usize, Monomial, ExpFactor);

/// Coefficients of each field over the functions `monomial * exp(P)`,
/// after clearing denominators componentwise. Columns follow `fields`.
fn term_matrix(dim: usize, fields: &[&BaseVectorField]) -> Vec<Vec<Rational>> {
    let mut rows: BTreeMap<TermKey, Vec<Rational>> = BTreeMap::new();
    for i in 0..dim {
        let mut dens: Vec<&Expr> = Vec::new();
        for f in fields {
            let d = f.comps[i].den();
            if !d.is_one() && !dens.contains(&d) {
                dens.push(d);
            }
        }
        for (col, f) in fields.iter().enumerate() {
            let c = &f.comps[i];
            let cleared = dens
                .iter()
                .filter(|d| **d != c.den())
                .fold(c.num().clone(), |acc, d| &acc * *d);
            for t in cleared.terms() {
                let row = rows
                    .entry((i, t.mono.clone(), t.exp.clone()))
                    .or_insert_with(|| vec![Rational::zero(); fields.len()]);
                row[col] += &t.coeff;
            }
        }
    }
    rows.into_values().collect()
}

/// Structure constants `[X_i, X_j] = c^k_ij X_k`, matched exactly.
pub fn structure_constants(fam: &GeneratorFamily) -> Result<LieAlgebra> {
    let m = fam.len();
    let Some(dim) = fam.dim() else {
        return Ok(LieAlgebra::abelian(0));
    };
    let all: Vec<&BaseVectorField> = fam.fields.iter().collect();
    if rank(&term_matrix(dim, &all)) < m {
        return Err(Error::DependentGenerators);
    }
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let b = fam.fields[i].bracket(&fam.fields[j]);
            if b.is_zero() {
                continue;
            }
            let mut with_b = all.clone();
            with_b.push(&b);
            let aug = term_matrix(dim, &with_b);
            let a: Vec<Vec<Rational>> = aug.iter().map(|r| r[..m].to_vec()).collect();
            let rhs: Vec<Rational> = aug.iter().map(|r| r[m].clone()).collect();
            let not_closed = || Error::NotClosed {
                i: fam.names[i].clone(),
                j: fam.names[j].clone(),
                bracket: b.to_string(),
            };
            let coeffs = solve(&a, &rhs).map_err(|_| not_closed())?;
            if BaseVectorField::combination(dim, &fam.fields, &coeffs) != b {
                return Err(Error::InternalMismatch(format!(
                    "bracket [{}, {}] reconstruction",
                    fam.names[i], fam.names[j]
                )));
            }
            c[j][i] = coeffs.iter().map(|v| -v).collect();
            c[i][j] = coeffs;
        }
    }
    let algebra = LieAlgebra::from_constants(c);
    algebra.validate()?;
    Ok(algebra)
}

/// `dim ≤ n² + n`, with equality flagged as the flat case.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionBound {
    pub dim: usize,
    pub bound: usize,
    pub flat: bool,
    pub report: Report,
}

pub fn dimension_bound_report(dim: usize, n: usize) -> DimensionBound {
    let bound = n * n + n;
    let flat = dim == bound;
    let mut report = Report::new();
    let note = if flat {
        "maximal dimension: flat case"
    } else {
        ""
    };
    report.push(
        Check::new("dim <= n^2 + n", Status::from_bool(dim <= bound))
            .with_residual(format!("{dim} <= {bound}"))
            .with_notes(note),
    );
    DimensionBound {
        dim,
        bound,
        flat,
        report,
    }
}
