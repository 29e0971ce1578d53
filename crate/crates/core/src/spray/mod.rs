//! Sprays, their linear connections and curvature, and the Riemannian
//! checks built on an energy function.

mod cartan;
mod curvature;
mod energy;
mod identities;

pub use cartan::{cartan_curvature, covariant_horizontal, covariant_vertical, vertical_preimage};
pub use curvature::{
    curvature_coefficients, horizontal_nullity_basis, involutivity_check, CurvatureData,
    NullityGenerator,
};
pub(crate) use energy::require_nondegenerate;
pub use energy::{
    energy_compat, fundamental_form, metrizability_conditions, nullity_orthogonality,
    MetrizabilityVerdict,
};
pub use identities::connection_identities;

use crate::error::{Error, Result};
use crate::expr::{determinant, parse_expr, rat, RatExpr, Var};
use crate::geometry::{
    lie_derivative_vector_one_form, liouville, sum, tangent_structure, VectorField, VectorOneForm,
};

/// `S = y^i ∂/∂x^i − 2 G^i ∂/∂y^i` given by its coefficients `G^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SprayData {
    dim: usize,
    g: Vec<RatExpr>,
}

impl SprayData {
    /// Rejects coefficients that are not homogeneous of degree 2 in y.
    pub fn new(g: Vec<RatExpr>) -> Result<Self> {
        let dim = g.len();
        let c = liouville(dim);
        for (i, gi) in g.iter().enumerate() {
            if gi.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: gi.dim(),
                });
            }
            if c.apply(gi) != gi.scale(&rat(2, 1)) {
                return Err(Error::NotHomogeneous {
                    what: format!("G{}", i + 1),
                });
            }
        }
        Ok(Self { dim, g })
    }

    pub fn parse(dim: usize, g: &[&str]) -> Result<Self> {
        let g = g
            .iter()
            .map(|s| parse_expr(s, dim))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
        Self::new(g)
    }

    /// `G = 0`, the geodesics of which are straight lines.
    pub fn flat(dim: usize) -> Self {
        Self {
            dim,
            g: vec![RatExpr::zero(dim); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficients(&self) -> &[RatExpr] {
        &self.g
    }

    pub fn field(&self) -> VectorField {
        VectorField::from_parts(
            (0..self.dim).map(|i| RatExpr::y(self.dim, i)).collect(),
            self.g.iter().map(|gi| gi.scale(&rat(-2, 1))).collect(),
        )
    }
}

/// Riemannian metric `g_ij(x)` on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricData {
    dim: usize,
    g: Vec<Vec<RatExpr>>,
}

impl MetricData {
    pub fn new(g: Vec<Vec<RatExpr>>) -> Result<Self> {
        let dim = g.len();
        for (i, row) in g.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for (j, e) in row.iter().enumerate() {
                if !e.is_y_free() {
                    return Err(Error::NotBaseOnly {
                        what: format!("g{}{}", i + 1, j + 1),
                    });
                }
                if j > i && *e != g[j][i] {
                    return Err(Error::AsymmetricMetric { i: i + 1, j: j + 1 });
                }
            }
        }
        if dim == 0 || determinant(&g).is_zero() {
            return Err(Error::SingularMetric);
        }
        Ok(Self { dim, g })
    }

    pub fn parse(dim: usize, g: &[Vec<&str>]) -> Result<Self> {
        let m = g
            .iter()
            .map(|row| row.iter().map(|s| parse_expr(s, dim)).collect())
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
        if m.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.len(),
            });
        }
        Self::new(m)
    }

    pub fn diagonal(entries: Vec<RatExpr>) -> Result<Self> {
        let dim = entries.len();
        let g = entries
            .into_iter()
            .enumerate()
            .map(|(i, e)| {
                let mut row = vec![RatExpr::zero(dim); dim];
                row[i] = e;
                row
            })
            .collect();
        Self::new(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatExpr {
        &self.g[i][j]
    }

    /// `E = ½ g_ij y^i y^j`.
    pub fn energy(&self) -> RatExpr {
        let n = self.dim;
        sum(
            n,
            (0..n).flat_map(|i| {
                (0..n).map(move |j| &(&self.g[i][j] * &RatExpr::y(n, i)) * &RatExpr::y(n, j))
            }),
        )
        .scale(&rat(1, 2))
    }

    /// `g^{kl}` as adjugate over determinant, cofactors by Laplace expansion.
    pub fn inverse(&self) -> Vec<Vec<RatExpr>> {
        let det = laplace_det(&self.g, self.dim);
        let n = self.dim;
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| {
                        // adj(g)_{kl} = (−1)^{k+l} M_{lk}
                        let c = laplace_det(&minor(&self.g, l, k), n);
                        let c = if (k + l) % 2 == 1 { -c } else { c };
                        &c / &det
                    })
                    .collect()
            })
            .collect()
    }
}

fn minor(m: &[Vec<RatExpr>], row: usize, col: usize) -> Vec<Vec<RatExpr>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn laplace_det(m: &[Vec<RatExpr>], dim: usize) -> RatExpr {
    match m.len() {
        0 => RatExpr::one(dim),
        1 => m[0][0].clone(),
        n => sum(
            dim,
            (0..n).filter(|&j| !m[0][j].is_zero()).map(|j| {
                let t = &m[0][j] * &laplace_det(&minor(m, 0, j), dim);
                if j % 2 == 1 {
                    -t
                } else {
                    t
                }
            }),
        ),
    }
}

/// Geodesic spray of a metric:
/// `γ_{ikj} = ½(∂_i g_kj + ∂_j g_ik − ∂_k g_ij)`, `γ^k_ij = g^{kl} γ_{ilj}`,
/// `G^k = ½ y^i y^j γ^k_ij`.
pub fn spray_from_metric(metric: &MetricData) -> SprayData {
    let n = metric.dim;
    let g = &metric.g;
    let d = |e: &RatExpr, i: usize| e.diff(Var::X(i));
    let lower = |i: usize, k: usize, j: usize| {
        (&(&d(&g[k][j], i) + &d(&g[i][k], j)) - &d(&g[i][j], k)).scale(&rat(1, 2))
    };
    let inv = metric.inverse();
    let coeffs = (0..n)
        .map(|k| {
            let terms = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
            let gk = sum(
                n,
                terms.map(|(i, j)| {
                    let upper = sum(n, (0..n).map(|l| &inv[k][l] * &lower(i, l, j)));
                    &(&upper * &RatExpr::y(n, i)) * &RatExpr::y(n, j)
                }),
            );
            gk.scale(&rat(1, 2))
        })
        .collect();
    SprayData { dim: n, g: coeffs }
}

/// Linear connection `Γ = [J, S]` of a spray, with its projectors.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    dim: usize,
    /// `gamma[j][i] = Γ^j_i = ∂G^j/∂y^i`.
    gamma: Vec<Vec<RatExpr>>,
    /// `christoffel[k][i][j] = Γ^k_ij`, x-only.
    christoffel: Vec<Vec<Vec<RatExpr>>>,
    h: VectorOneForm,
    v: VectorOneForm,
}

impl ConnectionData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^j_i`.
    pub fn coefficient(&self, j: usize, i: usize) -> &RatExpr {
        &self.gamma[j][i]
    }

    /// `Γ^k_ij`.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &RatExpr {
        &self.christoffel[k][i][j]
    }

    pub fn christoffel_symbols(&self) -> &[Vec<Vec<RatExpr>>] {
        &self.christoffel
    }

    pub fn horizontal(&self) -> &VectorOneForm {
        &self.h
    }

    pub fn vertical(&self) -> &VectorOneForm {
        &self.v
    }

    /// The almost product structure `Γ = 2h − I`.
    pub fn almost_product(&self) -> VectorOneForm {
        &self.h.scale(&rat(2, 1)) - &VectorOneForm::identity(self.dim)
    }

    /// `ξ^i (∂/∂x^i − Γ^j_i ∂/∂y^j)`.
    pub fn horizontal_lift(&self, xi: &[RatExpr]) -> VectorField {
        let n = self.dim;
        let y_part = (0..n)
            .map(|j| -sum(n, (0..n).map(|i| &xi[i] * &self.gamma[j][i])))
            .collect();
        VectorField::from_parts(xi.to_vec(), y_part)
    }

    /// Nonzero `Γ^j_i` as `(j, i, value)`, zero-based.
    pub fn nonzero_coefficients(&self) -> Vec<(usize, usize, RatExpr)> {
        let mut out = Vec::new();
        for (j, row) in self.gamma.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push((j, i, e.clone()));
                }
            }
        }
        out
    }
}

/// `Γ^j_i` and `h` without the quadratic check, for use on any spray.
fn projectors(s: &SprayData) -> (Vec<Vec<RatExpr>>, VectorOneForm) {
    let n = s.dim;
    let gamma: Vec<Vec<RatExpr>> = (0..n)
        .map(|j| (0..n).map(|i| s.g[j].diff(Var::Y(i))).collect())
        .collect();
    let cols = (0..2 * n)
        .map(|b| {
            if b < n {
                let mut x_part = vec![RatExpr::zero(n); n];
                x_part[b] = RatExpr::one(n);
                VectorField::from_parts(x_part, (0..n).map(|j| -&gamma[j][b]).collect())
            } else {
                VectorField::zero(n)
            }
        })
        .collect();
    (gamma, VectorOneForm::from_columns(n, cols))
}

/// Horizontal projector `h` of any spray.
pub fn horizontal_projector(s: &SprayData) -> VectorOneForm {
    projectors(s).1
}

pub fn connection_from_spray(s: &SprayData) -> Result<ConnectionData> {
    let n = s.dim;
    let (gamma, h) = projectors(s);
    let mut christoffel = vec![vec![vec![RatExpr::zero(n); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let c = gamma[k][i].diff(Var::Y(j));
                if !c.is_y_free() {
                    return Err(Error::NonQuadratic {
                        k: k + 1,
                        i: i + 1,
                        j: j + 1,
                    });
                }
                christoffel[k][i][j] = c;
            }
        }
    }
    let v = &VectorOneForm::identity(n) - &h;
    let conn = ConnectionData {
        dim: n,
        gamma,
        christoffel,
        h,
        v,
    };
    // [J, S] = −L_S J must reproduce 2h − I.
    let js = lie_derivative_vector_one_form(&s.field(), &tangent_structure(n)).scale(&rat(-1, 1));
    if js != conn.almost_product() {
        return Err(Error::InternalMismatch(
            "[J,S] differs from 2h - I".to_string(),
        ));
    }
    Ok(conn)
}

#[cfg(test)]
mod tests;
