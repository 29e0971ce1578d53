use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::term::{ExpFactor, Monomial, Term};
use super::{Rational, Var};

type Key = (Monomial, ExpFactor);

/// Canonical finite sum of [`Term`]s.
///
/// Terms are sorted by `(mono, exp)` and no key repeats, so structural
/// equality is mathematical equality. The empty sum is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    dim: usize,
    terms: Vec<Term>,
}

impl Expr {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::from_term(dim, c, Monomial::one(dim), ExpFactor::one())
    }

    pub fn var(dim: usize, v: Var) -> Self {
        Self::from_term(
            dim,
            Rational::one(),
            Monomial::var(dim, v),
            ExpFactor::one(),
        )
    }

    pub fn exp(dim: usize, exponent: ExpFactor) -> Self {
        Self::from_term(dim, Rational::one(), Monomial::one(dim), exponent)
    }

    pub fn from_term(dim: usize, coeff: Rational, mono: Monomial, exp: ExpFactor) -> Self {
        if coeff.is_zero() {
            return Self::zero(dim);
        }
        Self {
            dim,
            terms: vec![Term { coeff, mono, exp }],
        }
    }

    pub(crate) fn from_map(dim: usize, map: BTreeMap<Key, Rational>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((mono, exp), coeff)| Term { coeff, mono, exp })
            .collect();
        Self { dim, terms }
    }

    pub(crate) fn from_terms(dim: usize, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut map: BTreeMap<Key, Rational> = BTreeMap::new();
        for t in terms {
            *map.entry((t.mono, t.exp)).or_insert_with(Rational::zero) += t.coeff;
        }
        Self::from_map(dim, map)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.mono.is_one() && t.exp.is_one() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// True when no term carries a y-factor.
    pub fn is_y_free(&self) -> bool {
        self.terms.iter().all(|t| t.mono.y_degree() == 0)
    }

    pub fn has_exp(&self) -> bool {
        self.terms.iter().any(|t| !t.exp.is_one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// Multiplies by a single term; the order of terms is preserved for
    /// the monomial part but not for the exponential part, so re-sort.
    pub(crate) fn mul_term(&self, coeff: &Rational, mono: &Monomial, exp: &ExpFactor) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().map(|t| Term {
                coeff: &t.coeff * coeff,
                mono: t.mono.mul(mono),
                exp: t.exp.add(exp),
            }),
        )
    }

    /// Divides every monomial by `m`, which must divide all of them.
    pub(crate) fn div_monomial(&self, m: &Monomial) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.div_exact(m),
                    ..t.clone()
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn diff(&self, v: Var) -> Self {
        let dim = self.dim;
        let mut out = Vec::new();
        for t in &self.terms {
            if let Some((k, lowered)) = t.mono.lowered(v) {
                out.push(Term {
                    coeff: &t.coeff * Rational::from_integer(k.into()),
                    mono: lowered,
                    exp: t.exp.clone(),
                });
            }
            if let Var::X(i) = v {
                for (c, xexp) in t.exp.exponent_derivative(i) {
                    out.push(Term {
                        coeff: &t.coeff * c,
                        mono: t.mono.mul(&Monomial::from_x(&xexp)),
                        exp: t.exp.clone(),
                    });
                }
            }
        }
        Self::from_terms(dim, out)
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        let x = &point[..self.dim];
        self.terms
            .iter()
            .map(|t| {
                let e = if t.exp.is_one() {
                    1.0
                } else {
                    t.exp.eval_exponent(x).exp()
                };
                t.coeff.to_f64().unwrap_or(f64::NAN) * t.mono.eval(point) * e
            })
            .sum()
    }

    /// Coefficient of the greatest term.
    pub(crate) fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.last().map(|t| &t.coeff)
    }

    /// Greatest common monomial divisor of all terms, `None` for zero.
    pub(crate) fn monomial_content(&self) -> Option<Monomial> {
        let mut it = self.terms.iter();
        let first = it.next()?.mono.clone();
        Some(it.fold(first, |acc, t| acc.gcd(&t.mono)))
    }

    /// Greatest term under the multiplicative order: monomial first, then
    /// the shift-invariant order on exponentials.
    fn lead_term(&self) -> Option<&Term> {
        self.terms
            .iter()
            .max_by(|a, b| a.mono.cmp(&b.mono).then_with(|| a.exp.cmp_shift(&b.exp)))
    }

    /// `self / d` when `d` divides `self` exactly, found by cancelling
    /// leading terms. Gives up (`None`) after a bounded number of steps, so
    /// a `None` does not prove non-divisibility.
    pub(crate) fn try_div(&self, d: &Self) -> Option<Self> {
        let ld = d.lead_term()?.clone();
        let budget = 16 + 4 * (self.terms.len() + d.terms.len());
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        for _ in 0..budget {
            let Some(lt) = rem.lead_term() else {
                return Some(Self::from_terms(self.dim, quotient));
            };
            let divisible = lt.mono.gcd(&ld.mono).eq(&ld.mono);
            if !divisible {
                return None;
            }
            let q = Term {
                coeff: &lt.coeff / &ld.coeff,
                mono: lt.mono.div_exact(&ld.mono),
                exp: lt.exp.add(&ld.exp.neg()),
            };
            rem = &rem - &d.mul_term(&q.coeff, &q.mono, &q.exp);
            quotient.push(q);
        }
        None
    }

    /// Smallest exponential factor under the shift-invariant order.
    pub(crate) fn min_exp(&self) -> Option<&ExpFactor> {
        self.terms
            .iter()
            .map(|t| &t.exp)
            .min_by(|a, b| a.cmp_shift(b))
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        debug_assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut map: BTreeMap<Key, Rational> = self
            .terms
            .iter()
            .map(|t| ((t.mono.clone(), t.exp.clone()), t.coeff.clone()))
            .collect();
        for t in &other.terms {
            let entry = map
                .entry((t.mono.clone(), t.exp.clone()))
                .or_insert_with(Rational::zero);
            if sign {
                *entry += &t.coeff;
            } else {
                *entry -= &t.coeff;
            }
        }
        Self::from_map(self.dim, map)
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.combine(rhs, true)
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, false)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        debug_assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero(self.dim);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut map: BTreeMap<Key, Rational> = BTreeMap::new();
        for a in &self.terms {
            for b in &rhs.terms {
                let key = (a.mono.mul(&b.mono), a.exp.add(&b.exp));
                *map.entry(key).or_insert_with(Rational::zero) += &a.coeff * &b.coeff;
            }
        }
        Expr::from_map(self.dim, map)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Writes the factors of a term (everything but the coefficient), joined
/// by `*`. Returns whether anything was written.
fn write_factors(f: &mut fmt::Formatter<'_>, dim: usize, t: &Term) -> Result<bool, fmt::Error> {
    let mut wrote = false;
    for (v, e) in t.mono.factors() {
        if wrote {
            f.write_str("*")?;
        }
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
        wrote = true;
    }
    if !t.exp.is_one() {
        if wrote {
            f.write_str("*")?;
        }
        let exponent = Expr::from_terms(
            dim,
            t.exp.exponent().iter().map(|(k, c)| Term {
                coeff: c.clone(),
                mono: Monomial::from_x(k),
                exp: ExpFactor::one(),
            }),
        );
        write!(f, "exp({exponent})")?;
        wrote = true;
    }
    Ok(wrote)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().rev().enumerate() {
            let negative = t.coeff.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = t.coeff.abs();
            let bare = t.mono.is_one() && t.exp.is_one();
            if bare {
                write_rational(f, &mag)?;
                continue;
            }
            if !mag.is_one() {
                write_rational(f, &mag)?;
                f.write_str("*")?;
            }
            write_factors(f, self.dim, t)?;
        }
        Ok(())
    }
}
