use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use crate::expr::{RatExpr, Var};

use super::field::VectorField;
use super::sum;
use super::vform::{VectorOneForm, VectorTwoForm};

/// Highest degree a [`ScalarForm`] may have.
pub const MAX_DEGREE: usize = 3;

/// Scalar differential form of degree at most 3 on `TM`.
///
/// Only components on strictly increasing index tuples are stored, and
/// only the nonzero ones, so `==` is exact equality of forms. A 0-form is
/// stored under the empty tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarForm {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, RatExpr>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// All strictly increasing `k`-tuples from `0..size`.
fn increasing(size: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in increasing(size, k - 1) {
        let start = rest.last().map_or(0, |l| l + 1);
        for a in start..size {
            let mut t = rest.clone();
            t.push(a);
            out.push(t);
        }
    }
    out
}

impl ScalarForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "form degree above {MAX_DEGREE}");
        Self {
            dim,
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn function(f: RatExpr) -> Self {
        let mut out = Self::zero(f.dim(), 0);
        out.insert(Vec::new(), f);
        out
    }

    /// Builds from `f(idx)` evaluated on increasing tuples.
    pub fn from_fn(dim: usize, degree: usize, mut f: impl FnMut(&[usize]) -> RatExpr) -> Self {
        let mut out = Self::zero(dim, degree);
        for idx in increasing(2 * dim, degree) {
            let v = f(&idx);
            out.insert(idx, v);
        }
        out
    }

    /// The 1-form `dz^a`.
    pub fn coordinate_differential(dim: usize, a: usize) -> Self {
        let mut out = Self::zero(dim, 1);
        out.insert(vec![a], RatExpr::one(dim));
        out
    }

    fn insert(&mut self, idx: Vec<usize>, v: RatExpr) {
        if !v.is_zero() {
            self.comps.insert(idx, v);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component on an arbitrary index tuple, antisymmetry applied.
    pub fn component(&self, idx: &[usize]) -> RatExpr {
        assert_eq!(idx.len(), self.degree, "index tuple has wrong length");
        match sort_sign(idx) {
            None => RatExpr::zero(self.dim),
            Some((sorted, odd)) => match self.comps.get(&sorted) {
                None => RatExpr::zero(self.dim),
                Some(v) if odd => -v,
                Some(v) => v.clone(),
            },
        }
    }

    /// Nonzero components on increasing tuples.
    pub fn components(&self) -> impl Iterator<Item = (&[usize], &RatExpr)> {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Value of a 0-form.
    pub fn as_function(&self) -> RatExpr {
        assert_eq!(self.degree, 0, "not a 0-form");
        self.component(&[])
    }

    /// `2n × 2n` component matrix of a 2-form.
    pub fn matrix(&self) -> Vec<Vec<RatExpr>> {
        assert_eq!(self.degree, 2, "not a 2-form");
        let size = 2 * self.dim;
        (0..size)
            .map(|a| (0..size).map(|b| self.component(&[a, b])).collect())
            .collect()
    }

    pub fn map(&self, f: impl Fn(&RatExpr) -> RatExpr) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.comps {
            out.insert(k.clone(), f(v));
        }
        out
    }

    fn combine(&self, rhs: &Self, sub: bool) -> Self {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.comps {
            let cur = out
                .comps
                .remove(k)
                .unwrap_or_else(|| RatExpr::zero(self.dim));
            let next = if sub { &cur - v } else { &cur + v };
            out.insert(k.clone(), next);
        }
        out
    }

    /// Pointwise product with a function.
    pub fn scale(&self, f: &RatExpr) -> Self {
        self.map(|v| v * f)
    }

    /// `ω(X1, …, Xk)`.
    pub fn eval(&self, fields: &[&VectorField]) -> RatExpr {
        assert_eq!(fields.len(), self.degree, "wrong number of arguments");
        let mut w = self.clone();
        for x in fields {
            w = interior_product(x, &w);
        }
        w.as_function()
    }
}

impl Add for &ScalarForm {
    type Output = ScalarForm;
    fn add(self, rhs: &ScalarForm) -> ScalarForm {
        self.combine(rhs, false)
    }
}

impl Sub for &ScalarForm {
    type Output = ScalarForm;
    fn sub(self, rhs: &ScalarForm) -> ScalarForm {
        self.combine(rhs, true)
    }
}

/// `(dω)_{a0..ak} = Σ_i (−1)^i ∂ω_{a0..âi..ak}/∂z^{a_i}`.
pub fn exterior_derivative(w: &ScalarForm) -> ScalarForm {
    assert!(
        w.degree < MAX_DEGREE,
        "exterior derivative would exceed degree {MAX_DEGREE}"
    );
    let dim = w.dim;
    ScalarForm::from_fn(dim, w.degree + 1, |idx| {
        sum(
            dim,
            (0..idx.len()).map(|i| {
                let mut rest = idx.to_vec();
                let a = rest.remove(i);
                let term = w.component(&rest).diff(Var::from_slot(a, dim));
                if i % 2 == 1 {
                    -term
                } else {
                    term
                }
            }),
        )
    })
}

/// `i_X ω`, contracting the first slot.
pub fn interior_product(x: &VectorField, w: &ScalarForm) -> ScalarForm {
    assert!(w.degree >= 1, "interior product of a 0-form");
    let dim = w.dim;
    ScalarForm::from_fn(dim, w.degree - 1, |idx| {
        sum(
            dim,
            x.components()
                .iter()
                .enumerate()
                .filter(|(_, xc)| !xc.is_zero())
                .map(|(c, xc)| {
                    let mut full = vec![c];
                    full.extend_from_slice(idx);
                    xc * &w.component(&full)
                }),
        )
    })
}

/// `(i_L ω)(v1..vk) = Σ_i ω(v1, …, L vi, …, vk)`; zero on functions.
pub fn interior_vector_one_form(l: &VectorOneForm, w: &ScalarForm) -> ScalarForm {
    let dim = w.dim;
    if w.degree == 0 {
        return ScalarForm::zero(dim, 0);
    }
    ScalarForm::from_fn(dim, w.degree, |idx| {
        sum(
            dim,
            (0..idx.len()).flat_map(|slot| {
                let col = l.column(idx[slot]);
                col.components()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(c, e)| {
                        let mut full = idx.to_vec();
                        full[slot] = c;
                        e * &w.component(&full)
                    })
                    .collect::<Vec<_>>()
            }),
        )
    })
}

/// `d_L = i_L d − d i_L` for forms of degree 0 or 1.
pub fn d_along(l: &VectorOneForm, w: &ScalarForm) -> ScalarForm {
    assert!(w.degree <= 1, "d_L is only provided on 0- and 1-forms");
    let first = interior_vector_one_form(l, &exterior_derivative(w));
    if w.degree == 0 {
        return first;
    }
    &first - &exterior_derivative(&interior_vector_one_form(l, w))
}

/// `(a, b) ↦ α(R(∂_a, ∂_b))`; for `α = df` this is `d_R f`.
pub fn contract_two_form(r: &VectorTwoForm, alpha: &ScalarForm) -> ScalarForm {
    assert_eq!(alpha.degree, 1, "contract_two_form needs a 1-form");
    ScalarForm::from_fn(r.dim(), 2, |idx| alpha.eval(&[r.value(idx[0], idx[1])]))
}

/// Shuffle-sum wedge, so `(α∧β)_{ab} = α_a β_b − α_b β_a` on 1-forms.
pub fn wedge(alpha: &ScalarForm, beta: &ScalarForm) -> ScalarForm {
    let (k, l) = (alpha.degree, beta.degree);
    assert!(
        k + l <= MAX_DEGREE,
        "wedge would exceed degree {MAX_DEGREE}"
    );
    let dim = alpha.dim;
    ScalarForm::from_fn(dim, k + l, |idx| {
        sum(
            dim,
            increasing(k + l, k).into_iter().map(|pos| {
                let left: Vec<usize> = pos.iter().map(|&p| idx[p]).collect();
                let rest: Vec<usize> = (0..k + l).filter(|p| !pos.contains(p)).collect();
                let right: Vec<usize> = rest.iter().map(|&p| idx[p]).collect();
                let mut order = pos.clone();
                order.extend(&rest);
                let (_, odd) = sort_sign(&order).expect("positions are distinct");
                let term = &alpha.component(&left) * &beta.component(&right);
                if odd {
                    -term
                } else {
                    term
                }
            }),
        )
    })
}

/// Cartan formula `L_X ω = i_X dω + d i_X ω`.
pub fn lie_derivative_form(x: &VectorField, w: &ScalarForm) -> ScalarForm {
    let first = interior_product(x, &exterior_derivative(w));
    if w.degree == 0 {
        return first;
    }
    &first + &exterior_derivative(&interior_product(x, w))
}
