//! Floating-point cross-checks for symbolic results.
//!
//! Nothing here feeds back into the exact computations; these helpers only
//! sample expressions at random points to confirm what the symbolic engine
//! already decided.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::expr::{ExprError, RatExpr, Var};
use crate::geometry::VectorField;

/// Step used for central differences.
pub const FD_STEP: f64 = 1e-5;

/// Sampled denominators must exceed this in absolute value.
pub const DENOMINATOR_MARGIN: f64 = 1e-2;

/// `|a - b| <= tol * max(|a|, |b|, 1)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= tol * scale
}

/// Draws `count` points of `[-1, 1]^{2n}` at which every denominator of
/// `exprs` stays above [`DENOMINATOR_MARGIN`]. Deterministic in `seed`.
pub fn sample_points(dim: usize, exprs: &[&RatExpr], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts < 10_000 * count.max(1),
            "could not find non-singular sample points"
        );
        let p: Vec<f64> = (0..2 * dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let ok = exprs
            .iter()
            .all(|e| e.den().eval(&p).abs() > DENOMINATOR_MARGIN);
        if ok {
            out.push(p);
        }
    }
    out
}

/// Central difference of `e` in `v` at `point`.
pub fn central_difference(e: &RatExpr, v: Var, point: &[f64], step: f64) -> Result<f64, ExprError> {
    let slot = v.slot(e.dim());
    let mut plus = point.to_vec();
    let mut minus = point.to_vec();
    plus[slot] += step;
    minus[slot] -= step;
    Ok((e.eval(&plus)? - e.eval(&minus)?) / (2.0 * step))
}

/// Outcome of comparing two symbolically-equal expressions numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericAgreement {
    pub points: usize,
    pub max_scaled_error: f64,
}

impl NumericAgreement {
    pub fn within(&self, tol: f64) -> bool {
        self.max_scaled_error <= tol
    }
}

/// Evaluates `lhs` and `rhs` at sampled points and records the largest
/// error relative to `max(|lhs|, |rhs|, 1)`.
pub fn compare(
    lhs: &RatExpr,
    rhs: &RatExpr,
    count: usize,
    seed: u64,
) -> Result<NumericAgreement, ExprError> {
    let points = sample_points(lhs.dim(), &[lhs, rhs], count, seed);
    let mut worst = 0.0f64;
    for p in &points {
        let a = lhs.eval(p)?;
        let b = rhs.eval(p)?;
        let scale = a.abs().max(b.abs()).max(1.0);
        worst = worst.max((a - b).abs() / scale);
    }
    Ok(NumericAgreement {
        points: points.len(),
        max_scaled_error: worst,
    })
}

/// Compares the symbolic derivative `∂e/∂v` against central differences.
pub fn derivative_agreement(
    e: &RatExpr,
    v: Var,
    count: usize,
    seed: u64,
) -> Result<NumericAgreement, ExprError> {
    let d = e.diff(v);
    let points = sample_points(e.dim(), &[e, &d], count, seed);
    let mut worst = 0.0f64;
    for p in &points {
        let exact = d.eval(p)?;
        let approx = central_difference(e, v, p, FD_STEP)?;
        let scale = exact.abs().max(approx.abs()).max(1.0);
        worst = worst.max((exact - approx).abs() / scale);
    }
    Ok(NumericAgreement {
        points: points.len(),
        max_scaled_error: worst,
    })
}

/// Evaluates `[X, Y]^a = X(Y^a) − Y(X^a)` term by term in floating point
/// and records, per component, `|Σ terms| / max(Σ |terms|, 1)`. For a
/// bracket that vanishes symbolically this measures cancellation error.
pub fn bracket_agreement(
    x: &VectorField,
    y: &VectorField,
    count: usize,
    seed: u64,
) -> Result<NumericAgreement, ExprError> {
    let dim = x.dim();
    let all: Vec<&RatExpr> = x.components().iter().chain(y.components()).collect();
    let points = sample_points(dim, &all, count, seed);
    let slots = 2 * dim;
    let mut terms: Vec<Vec<(RatExpr, RatExpr, f64)>> = Vec::with_capacity(slots);
    for a in 0..slots {
        let mut row = Vec::new();
        for b in 0..slots {
            let v = Var::from_slot(b, dim);
            row.push((x.component(b).clone(), y.component(a).diff(v), 1.0));
            row.push((y.component(b).clone(), x.component(a).diff(v), -1.0));
        }
        terms.push(row);
    }
    let mut worst = 0.0f64;
    for p in &points {
        for row in &terms {
            let (mut total, mut scale) = (0.0f64, 0.0f64);
            for (f, g, sign) in row {
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let t = sign * f.eval(p)? * g.eval(p)?;
                total += t;
                scale += t.abs();
            }
            worst = worst.max(total.abs() / scale.max(1.0));
        }
    }
    Ok(NumericAgreement {
        points: points.len(),
        max_scaled_error: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    #[test]
    fn mixed_tolerance() {
        assert!(close(1e-12, 0.0, 1e-9));
        assert!(close(1e6, 1e6 + 1e-4, 1e-9));
        assert!(!close(1.0, 1.1, 1e-3));
    }

    #[test]
    fn derivatives_match_central_differences() {
        let e = parse_expr("x1^2*y1*exp(x1 - x2)/(2 + x2^2)", 2).unwrap();
        for v in Var::all(2) {
            assert!(derivative_agreement(&e, v, 10, 7).unwrap().within(1e-6));
        }
    }

    #[test]
    fn sampling_avoids_small_denominators() {
        let e = parse_expr("1/x1", 1).unwrap();
        for p in sample_points(1, &[&e], 20, 3) {
            assert!(p[0].abs() > DENOMINATOR_MARGIN);
        }
        assert_eq!(sample_points(1, &[&e], 5, 3), sample_points(1, &[&e], 5, 3));
    }

    #[test]
    fn bracket_agreement_detects_nonzero_brackets() {
        let x = VectorField::frame(1, 0);
        let y = VectorField::new(1, vec![parse_expr("x1", 1).unwrap(), RatExpr::zero(1)]);
        let nonzero = bracket_agreement(&x, &y, 5, 1).unwrap();
        assert!(!nonzero.within(1e-3));
        let commuting = bracket_agreement(&x, &x, 5, 1).unwrap();
        assert!(commuting.within(1e-12));
    }
}
