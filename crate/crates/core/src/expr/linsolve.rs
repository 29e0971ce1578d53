//! Gaussian elimination over an exact field.
//!
//! Used both over the fraction field of [`RatExpr`](super::RatExpr) (nullity
//! spaces, ranks of forms) and over the rationals (Lie algebra computations).
//! Pivoting is deterministic: scan columns left to right and take the
//! lightest nonzero entry at or below the current row (ties go to the
//! first such row). Weight is the term count for expressions, which keeps
//! intermediate swell down.

use num_traits::{One, Zero};

use super::{ExprError, RatExpr, Rational};

pub trait FieldElement: Clone + PartialEq {
    fn is_zero_elem(&self) -> bool;
    /// Additive identity living in the same ambient space as `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_elem(&self, rhs: &Self) -> Self;
    fn sub_elem(&self, rhs: &Self) -> Self;
    fn mul_elem(&self, rhs: &Self) -> Self;
    /// `rhs` is nonzero.
    fn div_elem(&self, rhs: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// Pivot preference, lower is better.
    fn weight(&self) -> usize {
        0
    }
}

macro_rules! impl_field_element {
    ($t:ty, $zero:expr, $one:expr, $weight:expr) => {
        impl FieldElement for $t {
            fn is_zero_elem(&self) -> bool {
                self.is_zero()
            }
            fn zero_like(&self) -> Self {
                ($zero)(self)
            }
            fn one_like(&self) -> Self {
                ($one)(self)
            }
            fn add_elem(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_elem(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_elem(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn div_elem(&self, rhs: &Self) -> Self {
                self / rhs
            }
            fn neg_elem(&self) -> Self {
                -self
            }
            fn weight(&self) -> usize {
                ($weight)(self)
            }
        }
    };
}

impl_field_element!(
    Rational,
    |_: &Rational| Rational::zero(),
    |_: &Rational| Rational::one(),
    |_: &Rational| 0
);
impl_field_element!(
    RatExpr,
    |e: &RatExpr| RatExpr::zero(e.dim()),
    |e: &RatExpr| RatExpr::one(e.dim()),
    |e: &RatExpr| e.num().terms().len() + e.den().terms().len()
);

fn lightest<F: FieldElement>(m: &[Vec<F>], from: usize, c: usize) -> Option<usize> {
    (from..m.len())
        .filter(|&i| !m[i][c].is_zero_elem())
        .min_by_key(|&i| m[i][c].weight())
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
pub fn rref<F: FieldElement>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = lightest(m, r, c) else {
            continue;
        };
        m.swap(r, p);
        let inv_pivot = m[r][c].one_like().div_elem(&m[r][c]);
        for entry in m[r].iter_mut().skip(c) {
            *entry = entry.mul_elem(&inv_pivot);
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero_elem() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                if m[r][j].is_zero_elem() {
                    continue;
                }
                let delta = factor.mul_elem(&m[r][j]);
                m[i][j] = m[i][j].sub_elem(&delta);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldElement>(m: &[Vec<F>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Basis of `{v : m v = 0}`, each vector scaled so its first nonzero entry
/// is one. `m` must have at least one row.
pub fn kernel<F: FieldElement>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    assert!(!m.is_empty(), "kernel of a matrix with no rows");
    let template = m[0].first().expect("matrix with no columns").clone();
    let cols = m[0].len();
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let zero = template.zero_like();
    let one = template.one_like();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = work[row][free].neg_elem();
        }
        let lead = v
            .iter()
            .find(|e| !e.is_zero_elem())
            .cloned()
            .expect("nonzero kernel vector");
        if lead != one {
            v = v.iter().map(|e| e.div_elem(&lead)).collect();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `m v = b` (free variables set to zero).
pub fn solve<F: FieldElement>(m: &[Vec<F>], b: &[F]) -> Result<Vec<F>, ExprError> {
    assert_eq!(m.len(), b.len(), "right-hand side has wrong length");
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return Err(ExprError::NoSolution);
    }
    let zero = b.first().map(F::zero_like).ok_or(ExprError::NoSolution)?;
    let mut v = vec![zero; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = aug[row][cols].clone();
    }
    Ok(v)
}

/// Determinant of a square matrix by elimination.
pub fn determinant<F: FieldElement>(m: &[Vec<F>]) -> F {
    let n = m.len();
    assert!(
        n > 0 && m.iter().all(|r| r.len() == n),
        "determinant of a non-square matrix"
    );
    let mut a = m.to_vec();
    let mut det = a[0][0].one_like();
    for c in 0..n {
        let Some(p) = lightest(&a, c, c) else {
            return det.zero_like();
        };
        if p != c {
            a.swap(p, c);
            det = det.neg_elem();
        }
        det = det.mul_elem(&a[c][c]);
        for i in c + 1..n {
            if a[i][c].is_zero_elem() {
                continue;
            }
            let factor = a[i][c].div_elem(&a[c][c]);
            for j in c..n {
                let delta = factor.mul_elem(&a[c][j]);
                a[i][j] = a[i][j].sub_elem(&delta);
            }
        }
    }
    det
}
