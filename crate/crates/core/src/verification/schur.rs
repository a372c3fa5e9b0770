//! Randomized Schur-convexity checks: transfer pairs plus a finite-difference
//! spot check of `(x_i - x_j)(∂_i F - ∂_j F)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::monotone::Monotonicity;
use super::sampling::{majorized_by, trial_rng, Box1};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurMode {
    Convex,
    Concave,
}

impl fmt::Display for SchurMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchurMode::Convex => "convex",
            SchurMode::Concave => "concave",
        })
    }
}

impl FromStr for SchurMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "convex" => Ok(SchurMode::Convex),
            "concave" => Ok(SchurMode::Concave),
            _ => Err(Error::parse(s, "expected convex|concave")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurVerdict {
    pub holds: bool,
    pub mode: SchurMode,
    pub n_pairs: usize,
    pub n_violations: usize,
    pub max_violation: f64,
    /// `(x, y)` with `x ≺ y` at the worst transfer violation.
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
    pub n_differential: usize,
    pub n_differential_violations: usize,
    pub max_differential_violation: f64,
    pub n_skipped: usize,
    pub tolerance: f64,
}

type VecFn<'a> = &'a (dyn Fn(&[f64]) -> f64 + Sync);

fn scaled(a: f64, b: f64) -> f64 {
    a.abs().max(b.abs()).max(1.0)
}

fn partial(f: VecFn<'_>, z: &[f64], i: usize) -> f64 {
    let h = 1e-5 * z[i].abs().max(1.0);
    let mut p = z.to_vec();
    p[i] = z[i] + h;
    let up = f(&p);
    p[i] = z[i] - h;
    let down = f(&p);
    (up - down) / (2.0 * h)
}

enum Trial {
    Pair { v: f64, x: Vec<f64>, y: Vec<f64> },
    Skipped,
}

/// Tests `F(x) ≤ F(y)` (convex) or `≥` (concave) on `n_pairs` seeded pairs
/// `x ≺ y`, where `y` is uniform in `sampler` and `x` comes from random
/// T-transforms of `y`. Also checks the differential condition at `n_pairs`
/// random points.
pub fn schur_test(
    f: VecFn<'_>,
    dim: usize,
    sampler: Box1,
    seed: u64,
    n_pairs: usize,
    mode: SchurMode,
    tol: f64,
) -> Result<SchurVerdict> {
    if dim < 2 {
        return Err(Error::InvalidParameter {
            name: "dim",
            value: dim as f64,
            reason: "Schur tests need dim >= 2",
        });
    }
    if n_pairs == 0 {
        return Err(Error::InvalidParameter {
            name: "n_pairs",
            value: 0.0,
            reason: "must be >= 1",
        });
    }
    let sign = match mode {
        SchurMode::Convex => 1.0,
        SchurMode::Concave => -1.0,
    };
    let trials: Vec<(Trial, Option<f64>)> = (0..n_pairs as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let y: Vec<f64> = (0..dim).map(|_| sampler.sample(&mut rng)).collect();
            let k = rng.gen_range(1..=2 * dim);
            let x = majorized_by(&y, k, &mut rng);
            let (fx, fy) = (f(&x), f(&y));
            let pair = if fx.is_finite() && fy.is_finite() {
                Trial::Pair {
                    v: sign * (fx - fy) / scaled(fx, fy),
                    x,
                    y,
                }
            } else {
                Trial::Skipped
            };
            // differential spot check at an interior point
            let z: Vec<f64> = (0..dim).map(|_| sampler.sample(&mut rng)).collect();
            let a = rng.gen_range(0..dim);
            let mut b = rng.gen_range(0..dim - 1);
            if b >= a {
                b += 1;
            }
            let (da, db) = (partial(f, &z, a), partial(f, &z, b));
            let diff = if da.is_finite() && db.is_finite() {
                let s = (z[a] - z[b]) * (da - db);
                Some(-sign * s / ((z[a] - z[b]).abs() * (da.abs() + db.abs())).max(1.0))
            } else {
                None
            };
            (pair, diff)
        })
        .collect();

    let mut v = SchurVerdict {
        holds: true,
        mode,
        n_pairs: 0,
        n_violations: 0,
        max_violation: 0.0,
        witness: None,
        n_differential: 0,
        n_differential_violations: 0,
        max_differential_violation: 0.0,
        n_skipped: 0,
        tolerance: tol,
    };
    // finite differences carry O(h^2) error
    let dtol = tol.max(1e-6);
    for (pair, diff) in trials {
        match pair {
            Trial::Pair { v: d, x, y } => {
                v.n_pairs += 1;
                if d > tol {
                    v.n_violations += 1;
                }
                if d > v.max_violation {
                    v.max_violation = d;
                    v.witness = Some((x, y));
                }
            }
            Trial::Skipped => v.n_skipped += 1,
        }
        if let Some(d) = diff {
            v.n_differential += 1;
            if d > dtol {
                v.n_differential_violations += 1;
            }
            v.max_differential_violation = v.max_differential_violation.max(d);
        }
    }
    if v.n_pairs == 0 {
        return Err(Error::TooManyDegenerate {
            skipped: v.n_skipped,
            total: n_pairs,
            limit_pct: 100,
        });
    }
    v.holds = v.n_violations == 0 && v.n_differential_violations == 0;
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinatewiseVerdict {
    pub holds: bool,
    pub direction: Monotonicity,
    pub n_checks: usize,
    pub max_violation: f64,
    pub witness: Option<Vec<f64>>,
    pub tolerance: f64,
}

/// Raises one random coordinate of a random point and checks that `F`
/// moves in `direction`.
pub fn check_coordinatewise(
    f: VecFn<'_>,
    dim: usize,
    sampler: Box1,
    seed: u64,
    n_checks: usize,
    direction: Monotonicity,
    tol: f64,
) -> Result<CoordinatewiseVerdict> {
    let sign = match direction {
        Monotonicity::Nondecreasing => 1.0,
        Monotonicity::Nonincreasing => -1.0,
    };
    let results: Vec<Option<(f64, Vec<f64>)>> = (0..n_checks as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let z: Vec<f64> = (0..dim).map(|_| sampler.sample(&mut rng)).collect();
            let k = rng.gen_range(0..dim);
            let mut w = z.clone();
            w[k] = rng.gen_range(z[k]..=sampler.hi);
            let (a, b) = (f(&z), f(&w));
            (a.is_finite() && b.is_finite()).then(|| (sign * (a - b) / scaled(a, b), z))
        })
        .collect();
    let mut worst: (f64, Option<Vec<f64>>) = (0.0, None);
    let mut n = 0;
    for (v, z) in results.into_iter().flatten() {
        n += 1;
        if v > worst.0 {
            worst = (v, Some(z));
        }
    }
    if n == 0 {
        return Err(Error::TooManyDegenerate {
            skipped: n_checks,
            total: n_checks,
            limit_pct: 100,
        });
    }
    Ok(CoordinatewiseVerdict {
        holds: worst.0 <= tol,
        direction,
        n_checks: n,
        max_violation: worst.0,
        witness: worst.1,
        tolerance: tol,
    })
}
