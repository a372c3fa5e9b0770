use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults::MAX_MONOTONE_FAILURE_FRACTION;
use crate::error::{Error, Result};
use crate::grid::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Nondecreasing,
    Nonincreasing,
}

impl Monotonicity {
    pub fn flip(self) -> Self {
        match self {
            Monotonicity::Nondecreasing => Monotonicity::Nonincreasing,
            Monotonicity::Nonincreasing => Monotonicity::Nondecreasing,
        }
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Nondecreasing => "nondecreasing",
            Monotonicity::Nonincreasing => "nonincreasing",
        })
    }
}

impl FromStr for Monotonicity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nondecreasing" | "increasing" => Ok(Monotonicity::Nondecreasing),
            "nonincreasing" | "decreasing" => Ok(Monotonicity::Nonincreasing),
            _ => Err(Error::parse(s, "expected nondecreasing|nonincreasing")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneVerdict {
    pub holds: bool,
    pub direction: Monotonicity,
    /// Worst scaled step against `direction`.
    pub max_violation: f64,
    /// Adjacent evaluated points bracketing the worst step.
    pub witness: Option<(f64, f64)>,
    pub n_points: usize,
    pub n_failed: usize,
    pub tolerance: f64,
    pub grid: GridSpec,
}

/// Checks that `f` moves in `direction` between adjacent grid points, with
/// steps scaled by `max(1, |f(a)|, |f(b)|)`. Points where `f` fails are
/// skipped; more than 5% of them is an error.
pub fn check_monotone<F>(f: F, grid: GridSpec, direction: Monotonicity, tol: f64) -> Result<MonotoneVerdict>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    grid.validate()?;
    let xs = grid.points();
    let ys: Vec<Option<f64>> = xs
        .par_iter()
        .map(|&x| f(x).ok().filter(|v| v.is_finite()))
        .collect();
    let n_failed = ys.iter().filter(|v| v.is_none()).count();
    if n_failed as f64 > MAX_MONOTONE_FAILURE_FRACTION * xs.len() as f64 {
        return Err(Error::TooManyDegenerate {
            skipped: n_failed,
            total: xs.len(),
            limit_pct: (MAX_MONOTONE_FAILURE_FRACTION * 100.0).round() as u32,
        });
    }
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(&ys)
        .filter_map(|(&x, y)| y.map(|y| (x, y)))
        .collect();
    let mut worst = (0.0, None);
    for w in pts.windows(2) {
        let ((xa, ya), (xb, yb)) = (w[0], w[1]);
        let step = match direction {
            Monotonicity::Nondecreasing => ya - yb,
            Monotonicity::Nonincreasing => yb - ya,
        };
        let v = step / ya.abs().max(yb.abs()).max(1.0);
        if v > worst.0 {
            worst = (v, Some((xa, xb)));
        }
    }
    Ok(MonotoneVerdict {
        holds: worst.0 <= tol,
        direction,
        max_violation: worst.0,
        witness: worst.1,
        n_points: pts.len(),
        n_failed,
        tolerance: tol,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{es_q, Baseline};

    #[test]
    fn weibull_hypotheses() {
        let grid = GridSpec::log(1e-3, 50.0, 2048).unwrap();
        let w2 = Baseline::weibull(2.0).unwrap();
        let v = check_monotone(
            |x| Ok(x * w2.hazard(x)?),
            grid,
            Monotonicity::Nondecreasing,
            1e-12,
        )
        .unwrap();
        assert!(v.holds);
        let w05 = Baseline::weibull(0.5).unwrap();
        let v = check_monotone(
            |x| Ok(x * x * w05.hazard_derivative(x)?),
            grid,
            Monotonicity::Nonincreasing,
            1e-12,
        )
        .unwrap();
        assert!(v.holds);
    }

    #[test]
    fn ge_q_decreasing_for_small_alpha() {
        let grid = GridSpec::log(1e-3, 30.0, 2048).unwrap();
        let v = check_monotone(
            |x| es_q(&Baseline::Exponential, 0.6, x),
            grid,
            Monotonicity::Nonincreasing,
            1e-12,
        )
        .unwrap();
        assert!(v.holds, "{}", v.max_violation);
    }

    #[test]
    fn detects_violation_and_failures() {
        let grid = GridSpec::linear(0.0, 1.0, 100).unwrap();
        let v = check_monotone(|x| Ok((6.0 * x).sin()), grid, Monotonicity::Nondecreasing, 1e-9).unwrap();
        assert!(!v.holds);
        let (a, b) = v.witness.unwrap();
        assert!(a < b && (6.0 * a).cos() < 0.0);
        let err = check_monotone(
            |x| {
                if x > 0.9 {
                    Err(Error::Degenerate { what: "f", x })
                } else {
                    Ok(x)
                }
            },
            grid,
            Monotonicity::Nondecreasing,
            1e-9,
        )
        .unwrap_err();
        assert!(matches!(err, Error::TooManyDegenerate { .. }));
    }
}
