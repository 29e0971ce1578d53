use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Expr;
use super::term::Monomial;
use super::{ExprError, Rational, Var};

/// Formal quotient `num / den` of two [`Expr`]s.
///
/// Normal form: `den != 0`; zero is `0 / 1`; the greatest monomial common
/// to every term of both sides is cancelled; the smallest exponential of
/// `den` is shifted to `exp(0)`; the greatest term of `den` has coefficient 1.
/// When one side divides the other exactly the quotient replaces it, but
/// no general multi-term gcd is attempted, so equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: Expr,
    den: Expr,
}

impl RatExpr {
    pub fn new(num: Expr, den: Expr) -> Result<Self, ExprError> {
        if den.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero(dim: usize) -> Self {
        Expr::zero(dim).into()
    }

    pub fn one(dim: usize) -> Self {
        Expr::one(dim).into()
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Expr::constant(dim, c).into()
    }

    pub fn integer(dim: usize, c: i64) -> Self {
        Self::constant(dim, Rational::from_integer(c.into()))
    }

    pub fn var(dim: usize, v: Var) -> Self {
        Expr::var(dim, v).into()
    }

    pub fn x(dim: usize, i: usize) -> Self {
        Self::var(dim, Var::X(i))
    }

    pub fn y(dim: usize, i: usize) -> Self {
        Self::var(dim, Var::Y(i))
    }

    pub fn num(&self) -> &Expr {
        &self.num
    }

    pub fn den(&self) -> &Expr {
        &self.den
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Exact dependence test: `false` iff the partial derivative in `v` is zero.
    pub fn depends_on(&self, v: Var) -> bool {
        !self.diff(v).is_zero()
    }

    /// True when the value does not depend on any fiber coordinate.
    pub fn is_y_free(&self) -> bool {
        if self.num.is_y_free() && self.den.is_y_free() {
            return true;
        }
        (0..self.dim()).all(|i| !self.depends_on(Var::Y(i)))
    }

    fn normalized(num: Expr, den: Expr) -> Self {
        let dim = num.dim();
        if num.is_zero() {
            return Self {
                num,
                den: Expr::one(dim),
            };
        }
        if den.is_one() {
            return Self { num, den };
        }
        if let Some(c) = den.as_constant() {
            return Self {
                num: num.scale(&c.recip()),
                den: Expr::one(dim),
            };
        }
        let (mut num, mut den) = (num, den);
        if let Some(q) = num.try_div(&den) {
            return Self {
                num: q,
                den: Expr::one(dim),
            };
        }
        if num.terms().len() > 1 {
            if let Some(q) = den.try_div(&num) {
                num = Expr::one(dim);
                den = q;
            }
        }
        let content = num
            .monomial_content()
            .zip(den.monomial_content())
            .map(|(a, b)| a.gcd(&b));
        if let Some(m) = content.filter(|m| !m.is_one()) {
            num = num.div_monomial(&m);
            den = den.div_monomial(&m);
        }
        if let Some(shift) = den.min_exp().filter(|e| !e.is_one()).map(|e| e.neg()) {
            let one = Rational::one();
            let unit = Monomial::one(dim);
            num = num.mul_term(&one, &unit, &shift);
            den = den.mul_term(&one, &unit, &shift);
        }
        let lc = den.leading_coeff().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim());
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, ExprError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExprError> {
        if rhs.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        if rhs.den.is_one() && self.den.is_one() {
            return Ok(Self::normalized(self.num.clone(), rhs.num.clone()));
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, k: i32) -> Result<Self, ExprError> {
        let p = k.unsigned_abs();
        let raised = Self {
            num: self.num.pow(p),
            den: self.den.pow(p),
        };
        if k < 0 {
            raised.recip()
        } else {
            Ok(raised)
        }
    }

    pub fn diff(&self, v: Var) -> Self {
        let dn = self.num.diff(v);
        if self.den.is_one() {
            return Self {
                num: dn,
                den: self.den.clone(),
            };
        }
        let dd = self.den.diff(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, self.den.pow(2))
    }

    /// IEEE evaluation at `point = (x1..xn, y1..yn)`.
    pub fn eval(&self, point: &[f64]) -> Result<f64, ExprError> {
        assert_eq!(point.len(), 2 * self.dim(), "point has wrong length");
        let d = self.den.eval(point);
        if d.abs() <= super::SINGULAR_THRESHOLD {
            return Err(ExprError::NearSingular { value: d });
        }
        Ok(self.num.eval(point) / d)
    }
}

impl From<Expr> for RatExpr {
    fn from(num: Expr) -> Self {
        let den = Expr::one(num.dim());
        Self { num, den }
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatExpr {}

impl Add for &RatExpr {
    type Output = RatExpr;
    fn add(self, rhs: &RatExpr) -> RatExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatExpr::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatExpr::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatExpr {
    type Output = RatExpr;
    fn sub(self, rhs: &RatExpr) -> RatExpr {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatExpr::normalized(&self.num - &rhs.num, self.den.clone());
        }
        RatExpr::normalized(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatExpr {
    type Output = RatExpr;
    fn mul(self, rhs: &RatExpr) -> RatExpr {
        if self.is_zero() || rhs.is_zero() {
            return RatExpr::zero(self.dim());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatExpr {
                num: &self.num * &rhs.num,
                den: self.den.clone(),
            };
        }
        RatExpr::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatExpr {
    type Output = RatExpr;
    /// Panics on a zero divisor; use [`RatExpr::checked_div`] otherwise.
    fn div(self, rhs: &RatExpr) -> RatExpr {
        self.checked_div(rhs).expect("division by zero expression")
    }
}

impl Neg for &RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        RatExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: RatExpr) -> RatExpr { (&self).$m(&rhs) }
        }
        impl $tr<&RatExpr> for RatExpr {
            type Output = RatExpr;
            fn $m(self, rhs: &RatExpr) -> RatExpr { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatExpr {
    type Output = RatExpr;
    fn neg(self) -> RatExpr {
        -&self
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() > 1 {
            write!(f, "({})/({})", self.num, self.den)
        } else {
            write!(f, "{}/({})", self.num, self.den)
        }
    }
}
