//! Small numerical kernels shared by the evaluators: bracketed bisection,
//! cdf inversion with automatic bracket growth, and Richardson-extrapolated
//! central differences.

use crate::defaults::QUANTILE_XTOL;
use crate::error::{Error, Result};

const MAX_BRACKET_STEPS: usize = 4000;
const MAX_BISECTION_STEPS: usize = 400;

/// `lhs <= rhs` within `tol`, scale-free: `lhs <= rhs + tol * max(1, |rhs|)`.
#[inline]
pub fn le_within(lhs: f64, rhs: f64, tol: f64) -> bool {
    lhs <= rhs + tol * rhs.abs().max(1.0)
}

/// Two-sided equality within `tol` under the same scale convention.
#[inline]
pub fn eq_within(lhs: f64, rhs: f64, tol: f64) -> bool {
    (lhs - rhs).abs() <= tol * rhs.abs().max(1.0)
}

/// Symmetric comparison scale `max(1, |a|, |b|)`.
#[inline]
pub fn pair_scale(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs()).max(1.0)
}

/// Root of a nondecreasing `f(x) - target` inside `[lo, hi]`, assuming
/// `f(lo) <= target <= f(hi)`. Stops when the bracket is narrower than
/// `xtol * max(1, |x|)` or stops shrinking.
pub fn bisect_nondecreasing<F>(f: F, target: f64, mut lo: f64, mut hi: f64, xtol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if hi - lo <= xtol * mid.abs().max(1.0) {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Generic root of a continuous function with a sign change on `[lo, hi]`.
pub fn bisect_sign_change<F>(f: F, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    for _ in 0..MAX_BISECTION_STEPS {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return (mid, mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Inverts a continuous nondecreasing cdf at `p`, growing the bracket
/// `[lo_hint, hi_hint]` as needed. `left` is the left endpoint of the support.
pub fn invert_cdf<F>(cdf: F, p: f64, left: f64, lo_hint: f64, hi_hint: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain {
            what: "quantile",
            value: p,
            domain: "(0, 1)".into(),
        });
    }
    let mut lo = if lo_hint.is_finite() && lo_hint > left {
        lo_hint
    } else {
        left + 1.0
    };
    let mut hi = if hi_hint.is_finite() && hi_hint > lo {
        hi_hint
    } else {
        lo + 1.0
    };
    let mut steps = 0;
    while cdf(hi) < p {
        hi = left + 2.0 * (hi - left);
        steps += 1;
        if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
            return Err(Error::Bracket(format!("no upper bracket for p = {p}")));
        }
    }
    steps = 0;
    while cdf(lo) > p {
        lo = left + 0.5 * (lo - left);
        steps += 1;
        if steps > MAX_BRACKET_STEPS || lo <= left {
            return Err(Error::Bracket(format!("no lower bracket for p = {p}")));
        }
    }
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    Ok(bisect_nondecreasing(&cdf, p, lo, hi, QUANTILE_XTOL))
}

/// Central difference with one Richardson step: `(4 D(h/2) - D(h)) / 3`.
pub fn richardson_derivative<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let d = |step: f64| (f(x + step) - f(x - step)) / (2.0 * step);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}
