use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::{Rational, Var};

/// Power product of the fiber-bundle coordinates `x1..xn, y1..yn`.
///
/// Exponents are stored densely, x-block first, so the derived ordering is
/// lexicographic on the x-exponents and then on the y-exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Self {
            exps: vec![0; 2 * dim],
        }
    }

    pub fn var(dim: usize, v: Var) -> Self {
        let mut m = Self::one(dim);
        m.exps[v.slot(dim)] = 1;
        m
    }

    /// Builds a monomial from an x-only exponent vector of length `dim`.
    pub fn from_x(x: &[u32]) -> Self {
        let mut exps = x.to_vec();
        exps.resize(2 * x.len(), 0);
        Self { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len() / 2
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.exps[..self.dim()]
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.exps[self.dim()..]
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exps[v.slot(self.dim())]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn y_degree(&self) -> u32 {
        self.y_exponents().iter().sum()
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub(crate) fn gcd(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// Caller guarantees `other` divides `self`.
    pub(crate) fn div_exact(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `(k, m / v)` where `k` is the exponent of `v`, or `None` when `v` is absent.
    pub(crate) fn lowered(&self, v: Var) -> Option<(u32, Self)> {
        let slot = v.slot(self.dim());
        let k = self.exps[slot];
        if k == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[slot] -= 1;
        Some((k, Self { exps }))
    }

    pub(crate) fn eval(&self, point: &[f64]) -> f64 {
        self.exps
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .map(|(e, p)| p.powi(*e as i32))
            .product()
    }

    pub(crate) fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        let dim = self.dim();
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(move |(slot, e)| (Var::from_slot(slot, dim), *e))
    }
}

/// `exp(P(x))` for a polynomial `P` in the base coordinates.
///
/// Keys are x-exponent vectors (length `n`); an empty map is `exp(0) = 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpFactor {
    poly: BTreeMap<Vec<u32>, Rational>,
}

impl ExpFactor {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_poly(poly: BTreeMap<Vec<u32>, Rational>) -> Self {
        Self {
            poly: poly.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn exponent(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.poly
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut poly = self.poly.clone();
        for (k, c) in &other.poly {
            let entry = poly.entry(k.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                poly.remove(k);
            }
        }
        Self { poly }
    }

    pub(crate) fn neg(&self) -> Self {
        Self {
            poly: self.poly.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// Translation-invariant total order: sign of the leading coefficient of
    /// `self - other` (leading = greatest x-exponent key).
    pub(crate) fn cmp_shift(&self, other: &Self) -> Ordering {
        let diff = self.add(&other.neg());
        match diff.poly.iter().next_back() {
            None => Ordering::Equal,
            Some((_, c)) if c > &Rational::zero() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Partial derivative of the exponent polynomial in `x_i`, as
    /// `(coefficient, x-exponents)` pairs.
    pub(crate) fn exponent_derivative(&self, i: usize) -> Vec<(Rational, Vec<u32>)> {
        self.poly
            .iter()
            .filter(|(k, _)| k[i] > 0)
            .map(|(k, c)| {
                let mut lowered = k.clone();
                lowered[i] -= 1;
                (c * Rational::from_integer(k[i].into()), lowered)
            })
            .collect()
    }

    pub(crate) fn eval_exponent(&self, x: &[f64]) -> f64 {
        self.poly
            .iter()
            .map(|(k, c)| {
                let m: f64 = k
                    .iter()
                    .zip(x)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, p)| p.powi(*e as i32))
                    .product();
                c.to_f64().unwrap_or(f64::NAN) * m
            })
            .sum()
    }
}

/// `coeff * mono * exp`, with `coeff != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
    pub exp: ExpFactor,
}
