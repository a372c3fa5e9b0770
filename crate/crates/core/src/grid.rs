use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

/// An evaluation grid `lo = x_0 < x_1 < ... < x_{n-1} = hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub n_points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, n_points: usize, spacing: Spacing) -> Result<Self> {
        let g = GridSpec {
            lo,
            hi,
            n_points,
            spacing,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(lo: f64, hi: f64, n_points: usize) -> Result<Self> {
        Self::new(lo, hi, n_points, Spacing::Linear)
    }

    pub fn log(lo: f64, hi: f64, n_points: usize) -> Result<Self> {
        Self::new(lo, hi, n_points, Spacing::Log)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::Grid(format!(
                "endpoints must be finite, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.lo >= self.hi {
            return Err(Error::Grid(format!(
                "lo ({}) must be below hi ({})",
                self.lo, self.hi
            )));
        }
        if self.n_points < MIN_GRID_POINTS {
            return Err(Error::Grid(format!(
                "need at least {MIN_GRID_POINTS} points, got {}",
                self.n_points
            )));
        }
        if self.spacing == Spacing::Log && self.lo <= 0.0 {
            return Err(Error::Grid(format!("log spacing needs lo > 0, got {}", self.lo)));
        }
        Ok(())
    }

    /// Same range and spacing with twice the resolution.
    pub fn refined(&self) -> Self {
        GridSpec {
            n_points: 2 * self.n_points,
            ..*self
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let last = (n - 1) as f64;
        let mut pts: Vec<f64> = match self.spacing {
            Spacing::Linear => {
                let step = (self.hi - self.lo) / last;
                (0..n).map(|i| self.lo + step * i as f64).collect()
            }
            Spacing::Log => {
                let (a, b) = (self.lo.ln(), self.hi.ln());
                let step = (b - a) / last;
                (0..n).map(|i| (a + step * i as f64).exp()).collect()
            }
        };
        // pin the endpoints exactly
        pts[0] = self.lo;
        pts[n - 1] = self.hi;
        pts
    }
}
