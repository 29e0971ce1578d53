use num_traits::Zero;

use crate::expr::{kernel, rref, Rational};

/// Subspace of `ℚ^m`, held by its reduced row echelon basis so that `==`
/// is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(ambient: usize, vecs: Vec<Vec<Rational>>) -> Self {
        let mut m = vecs;
        let r = rref(&mut m).len();
        m.truncate(r);
        Self { ambient, basis: m }
    }

    /// Null space of the linear map with the given rows.
    pub fn kernel_of(ambient: usize, rows: Vec<Vec<Rational>>) -> Self {
        if ambient == 0 {
            return Self::zero(0);
        }
        let mut rows: Vec<Vec<Rational>> = rows
            .into_iter()
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        if rows.is_empty() {
            rows.push(vec![Rational::zero(); ambient]);
        }
        Self::span(ambient, kernel(&rows))
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        let vecs = (0..ambient)
            .map(|i| {
                (0..ambient)
                    .map(|j| Rational::from_integer(i64::from(i == j).into()))
                    .collect()
            })
            .collect();
        Self::span(ambient, vecs)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut vecs = self.basis.clone();
        vecs.push(v.to_vec());
        Self::span(self.ambient, vecs).dim() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }
}
