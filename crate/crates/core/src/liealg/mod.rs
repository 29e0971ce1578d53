//! Finite-dimensional Lie algebras over the rationals, given by structure
//! constants `[e_i, e_j] = c^k_ij e_k`.

pub mod catalog;
mod json;
mod subspace;

pub use json::{parse_rational, AlgebraFile};
pub use subspace::Subspace;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::{determinant, kernel, Rational};
use crate::report::{Check, Report, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `c[i][j][k] = c^k_ij`.
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Structure constants are taken as given; see [`LieAlgebra::validate`].
    pub fn from_constants(c: Vec<Vec<Vec<Rational>>>) -> Self {
        let dim = c.len();
        assert!(
            c.iter()
                .all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim)),
            "structure constants must be m x m x m"
        );
        Self { dim, c }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_constants(vec![vec![vec![Rational::zero(); dim]; dim]; dim])
    }

    /// Builds from brackets `(i, j, coeffs)` with zero-based indices; the
    /// antisymmetric partner is filled in.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<Rational>)]) -> Self {
        let mut a = Self::abelian(dim);
        for (i, j, coeffs) in brackets {
            a.c[*i][*j] = coeffs.clone();
            a.c[*j][*i] = coeffs.iter().map(|v| -v).collect();
        }
        a
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let w = ui * vj;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &w * &self.c[i][j][k];
                }
            }
        }
        out
    }

    /// Matrix of `ad e_i`: entry `(k, j)` is `c^k_ij`.
    pub fn ad(&self, i: usize) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|k| (0..self.dim).map(|j| self.c[i][j][k].clone()).collect())
            .collect()
    }

    /// Antisymmetry and Jacobi, exactly; the first failure is an error.
    pub fn validate(&self) -> Result<Report> {
        let m = self.dim;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if self.c[i][j][k] != -&self.c[j][i][k] {
                        return Err(Error::InvalidStructure {
                            reason: "antisymmetry".to_string(),
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            r: 0,
                        });
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for r in 0..m {
                        let mut s = Rational::zero();
                        for l in 0..m {
                            s += &self.c[i][j][l] * &self.c[l][k][r];
                            s += &self.c[j][k][l] * &self.c[l][i][r];
                            s += &self.c[k][i][l] * &self.c[l][j][r];
                        }
                        if !s.is_zero() {
                            return Err(Error::InvalidStructure {
                                reason: "Jacobi identity".to_string(),
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                r: r + 1,
                            });
                        }
                    }
                }
            }
        }
        let mut report = Report::new();
        report.push(Check::new("antisymmetry", Status::Pass).with_residual("0"));
        report.push(Check::new("jacobi", Status::Pass).with_residual("0"));
        Ok(report)
    }

    /// Span of all `[e_i, e_j]`.
    pub fn derived_ideal(&self) -> Subspace {
        let mut vecs = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                vecs.push(self.c[i][j].clone());
            }
        }
        Subspace::span(self.dim, vecs)
    }

    /// `{x : [x, e_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace {
        let m = self.dim;
        let mut rows = Vec::new();
        for j in 0..m {
            for k in 0..m {
                rows.push((0..m).map(|i| self.c[i][j][k].clone()).collect());
            }
        }
        Subspace::kernel_of(m, rows)
    }

    /// `K_ij = tr(ad e_i ∘ ad e_j) = Σ_{k,l} c^l_ik c^k_jl`.
    pub fn killing_form(&self) -> KillingForm {
        let m = self.dim;
        let matrix: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let mut s = Rational::zero();
                        for k in 0..m {
                            for l in 0..m {
                                s += &self.c[i][k][l] * &self.c[j][l][k];
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let det = if m == 0 {
            Rational::one()
        } else {
            determinant(&matrix)
        };
        let signature = signature(&matrix);
        KillingForm {
            matrix,
            det,
            signature,
        }
    }

    /// Killing-orthogonal complement of the derived ideal.
    pub fn radical(&self) -> Subspace {
        let k = self.killing_form().matrix;
        let rows = self
            .derived_ideal()
            .basis()
            .iter()
            .map(|d| {
                (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| &k[i][j] * &d[j]).sum())
                    .collect()
            })
            .collect();
        Subspace::kernel_of(self.dim, rows)
    }

    /// Cartan's criterion: `det K ≠ 0`. The zero algebra is not semisimple.
    pub fn is_semisimple(&self) -> bool {
        self.dim > 0 && !self.killing_form().det.is_zero()
    }

    /// Radical equals center.
    pub fn is_reductive(&self) -> bool {
        self.radical() == self.center()
    }

    /// Checks `D[x,y] = [Dx,y] + [x,Dy]` on basis pairs; `d[k][i]` is the
    /// `k`-th coordinate of `D e_i`.
    pub fn is_derivation(&self, d: &[Vec<Rational>]) -> bool {
        let m = self.dim;
        let apply = |v: &[Rational]| -> Vec<Rational> {
            (0..m)
                .map(|k| (0..m).map(|i| &d[k][i] * &v[i]).sum())
                .collect()
        };
        let basis = |i: usize| -> Vec<Rational> {
            (0..m)
                .map(|k| {
                    if k == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        };
        (0..m).all(|i| {
            (i + 1..m).all(|j| {
                let (ei, ej) = (basis(i), basis(j));
                let lhs = apply(&self.c[i][j]);
                let a = self.bracket(&apply(&ei), &ej);
                let b = self.bracket(&ei, &apply(&ej));
                lhs.iter()
                    .zip(a.iter().zip(&b))
                    .all(|(l, (x, y))| *l == x + y)
            })
        })
    }

    /// Solves the derivation system on the `m²` entries of `D`.
    pub fn derivations(&self) -> DerivationData {
        let m = self.dim;
        let idx = |k: usize, i: usize| k * m + i;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for r in 0..m {
                    let mut row = vec![Rational::zero(); m * m];
                    for k in 0..m {
                        // D[e_i, e_j] = Σ_k c^k_ij D e_k
                        row[idx(r, k)] += &self.c[i][j][k];
                        // − [D e_i, e_j] − [e_i, D e_j]
                        row[idx(k, i)] -= &self.c[k][j][r];
                        row[idx(k, j)] -= &self.c[i][k][r];
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let basis: Vec<Vec<Vec<Rational>>> = if m == 0 {
            Vec::new()
        } else {
            if rows.is_empty() {
                rows.push(vec![Rational::zero(); m * m]);
            }
            kernel(&rows)
                .into_iter()
                .map(|v| v.chunks(m).map(<[Rational]>::to_vec).collect())
                .collect()
        };
        let dimension = basis.len();
        let inner_dimension = m - self.center().dim();
        DerivationData {
            dimension,
            inner_dimension,
            all_inner: dimension == inner_dimension,
            basis,
        }
    }

    /// The three conditions of the semisimplicity criterion and their
    /// agreement with Cartan's criterion.
    pub fn semisimplicity_criterion(&self) -> CriterionReport {
        let derived_is_whole = self.derived_ideal().dim() == self.dim;
        let all_inner = self.derivations().all_inner;
        let reductive = self.is_reductive();
        let semisimple = self.is_semisimple();
        let consistent = (derived_is_whole && all_inner && reductive) == semisimple;
        let mut report = Report::new();
        report.push(Check::new(
            "derived_ideal_is_whole",
            Status::from_bool(derived_is_whole),
        ));
        report.push(Check::new(
            "all_derivations_inner",
            Status::from_bool(all_inner),
        ));
        report.push(Check::new("reductive", Status::from_bool(reductive)));
        report.push(Check::new("semisimple", Status::from_bool(semisimple)));
        report.push(
            Check::new("criterion_consistent", Status::from_bool(consistent))
                .with_notes("(derived = whole and all inner and reductive) iff det K != 0"),
        );
        CriterionReport {
            derived_is_whole,
            all_inner,
            reductive,
            semisimple,
            consistent,
            report,
        }
    }

    pub fn classify_dim3_simple(&self) -> Dim3Class {
        if self.dim != 3 || !self.is_semisimple() {
            return Dim3Class::NotApplicable;
        }
        match self.killing_form().signature {
            Signature { pos: 2, neg: 1, .. } => Dim3Class::Sl2Type,
            Signature { pos: 0, neg: 3, .. } => Dim3Class::So3Type,
            _ => Dim3Class::NotApplicable,
        }
    }
}

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingForm {
    pub matrix: Vec<Vec<Rational>>,
    pub det: Rational,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationData {
    pub dimension: usize,
    /// `m − dim center`.
    pub inner_dimension: usize,
    pub all_inner: bool,
    /// Basis of the derivation algebra, each as an `m × m` matrix.
    pub basis: Vec<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub derived_is_whole: bool,
    pub all_inner: bool,
    pub reductive: bool,
    pub semisimple: bool,
    pub consistent: bool,
    pub report: Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim3Class {
    Sl2Type,
    So3Type,
    NotApplicable,
}

impl Dim3Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Dim3Class::Sl2Type => "sl2-type",
            Dim3Class::So3Type => "so3-type",
            Dim3Class::NotApplicable => "not-applicable",
        }
    }
}

/// Symmetric congruence diagonalization over the rationals.
fn signature(k: &[Vec<Rational>]) -> Signature {
    let m = k.len();
    let mut a = k.to_vec();
    let mut diag = Vec::with_capacity(m);
    for p in 0..m {
        if a[p][p].is_zero() {
            if let Some(q) = (p + 1..m).find(|&q| !a[q][q].is_zero()) {
                a.swap(p, q);
                for row in a.iter_mut() {
                    row.swap(p, q);
                }
            } else if let Some(q) = (p + 1..m).find(|&q| !a[p][q].is_zero()) {
                // row_p += row_q, col_p += col_q makes a[p][p] = 2 a[p][q] + a[q][q] ≠ 0
                for j in 0..m {
                    let v = a[q][j].clone();
                    a[p][j] += v;
                }
                for row in a.iter_mut() {
                    let v = row[q].clone();
                    row[p] += v;
                }
            }
        }
        let piv = a[p][p].clone();
        diag.push(piv.clone());
        if piv.is_zero() {
            continue;
        }
        for i in p + 1..m {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &piv;
            for j in p..m {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
            for row in a.iter_mut() {
                let v = &f * &row[p];
                row[i] -= v;
            }
        }
    }
    Signature {
        pos: diag.iter().filter(|d| d.is_positive()).count(),
        neg: diag.iter().filter(|d| d.is_negative()).count(),
        zero: diag.iter().filter(|d| d.is_zero()).count(),
    }
}

#[cfg(test)]
mod tests;
