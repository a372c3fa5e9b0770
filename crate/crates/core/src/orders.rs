//! Grid checks of the usual stochastic, hazard rate, reversed hazard rate and
//! dispersive orders between two lifetime distributions.
//!
//! A verdict is a certificate for the grid it was computed on: `holds` means no
//! violation above the tolerance was found there, nothing more.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults::{
    CROSSING_XTOL, DISP_EDGE, DISP_GRID_POINTS, MAX_DEGENERATE_FRACTION, ORDER_GRID_POINTS, ORDER_TAIL_PROB,
    TOL_CLOSED_FORM, TOL_NUMERIC,
};
use crate::distributions::Lifetime;
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Spacing};
use crate::numeric::{bisect_sign_change, pair_scale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StochOrder {
    /// `F̄ ≤ Ḡ`
    St,
    /// `r_F ≥ r_G`
    Hr,
    /// `r̃_F ≤ r̃_G`
    Rh,
    /// `F⁻¹(β) - F⁻¹(α) ≤ G⁻¹(β) - G⁻¹(α)` for `α ≤ β`
    Disp,
}

impl StochOrder {
    pub const ALL: [StochOrder; 4] = [StochOrder::St, StochOrder::Hr, StochOrder::Rh, StochOrder::Disp];

    pub fn name(self) -> &'static str {
        match self {
            StochOrder::St => "st",
            StochOrder::Hr => "hr",
            StochOrder::Rh => "rh",
            StochOrder::Disp => "disp",
        }
    }
}

impl fmt::Display for StochOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StochOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StochOrder::ALL
            .into_iter()
            .find(|o| o.name() == s.trim())
            .ok_or_else(|| Error::parse(s, "expected st|hr|rh|disp"))
    }
}

/// Outcome of comparing `X ~ F` against `Y ~ G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderRelation {
    /// `X ≤ Y` in the chosen order.
    Holds,
    /// `Y ≤ X`.
    HoldsReversed,
    /// Both directions violated by more than the tolerance.
    Crossing,
    /// Neither direction violated.
    Indistinguishable,
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderRelation::Holds => "holds",
            OrderRelation::HoldsReversed => "holds_reversed",
            OrderRelation::Crossing => "crossing",
            OrderRelation::Indistinguishable => "indistinguishable",
        })
    }
}

/// Where a comparison went wrong.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Worst violation of `X ≤ Y` (`forward`) or `Y ≤ X`.
    Point { x: f64, forward: bool, violation: f64 },
    /// The compared quantity changes sign by more than the tolerance inside `[lo, hi]`.
    Bracket { lo: f64, hi: f64 },
    /// Worst probability pair for the dispersive order.
    Quantiles {
        alpha: f64,
        beta: f64,
        forward: bool,
        violation: f64,
    },
}

/// Which side of a comparison a statement claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `X ≤ Y`
    Le,
    /// `X ≥ Y`
    Ge,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Le => Direction::Ge,
            Direction::Ge => Direction::Le,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub order: StochOrder,
    pub relation: OrderRelation,
    /// Largest scaled violation of `X ≤ Y`.
    pub max_violation: f64,
    /// Largest scaled violation of `Y ≤ X`.
    pub max_reverse_violation: f64,
    pub witnesses: Vec<Witness>,
    pub n_evaluated: usize,
    pub n_skipped: usize,
    pub tolerance: f64,
    pub grid: GridSpec,
}

impl OrderVerdict {
    /// No violation of `X ≤ Y` above tolerance.
    pub fn holds(&self) -> bool {
        matches!(
            self.relation,
            OrderRelation::Holds | OrderRelation::Indistinguishable
        )
    }

    pub fn holds_reversed(&self) -> bool {
        matches!(
            self.relation,
            OrderRelation::HoldsReversed | OrderRelation::Indistinguishable
        )
    }

    pub fn satisfies(&self, dir: Direction) -> bool {
        match dir {
            Direction::Le => self.holds(),
            Direction::Ge => self.holds_reversed(),
        }
    }

    /// Scaled violation of the claim `X dir Y`.
    pub fn violation(&self, dir: Direction) -> f64 {
        match dir {
            Direction::Le => self.max_violation,
            Direction::Ge => self.max_reverse_violation,
        }
    }

    /// The direction that was certified, if exactly one was.
    pub fn direction(&self) -> Option<Direction> {
        match self.relation {
            OrderRelation::Holds => Some(Direction::Le),
            OrderRelation::HoldsReversed => Some(Direction::Ge),
            _ => None,
        }
    }
}

/// Default tolerance for comparing `f` and `g` in `order`.
pub fn default_tolerance(f: &dyn Lifetime, g: &dyn Lifetime, order: StochOrder) -> f64 {
    let exact = match order {
        StochOrder::Disp => f.closed_form_quantile() && g.closed_form_quantile(),
        _ => f.closed_form() && g.closed_form(),
    };
    if exact {
        TOL_CLOSED_FORM
    } else {
        TOL_NUMERIC
    }
}

/// Probability grid used by the dispersive check.
pub fn disp_grid() -> GridSpec {
    GridSpec {
        lo: DISP_EDGE,
        hi: 1.0 - DISP_EDGE,
        n_points: DISP_GRID_POINTS,
        spacing: Spacing::Linear,
    }
}

/// Pooled quantile range `[q(1e-4), q(1-1e-4)]` of both distributions,
/// clipped to the common support. Log spacing when the range is positive.
pub fn default_grid(f: &dyn Lifetime, g: &dyn Lifetime) -> Result<GridSpec> {
    let lo = f.quantile(ORDER_TAIL_PROB)?.min(g.quantile(ORDER_TAIL_PROB)?);
    let hi = f
        .quantile(1.0 - ORDER_TAIL_PROB)?
        .max(g.quantile(1.0 - ORDER_TAIL_PROB)?);
    let left = f.support_left().max(g.support_left());
    if !(hi > left) {
        return Err(Error::Grid(format!(
            "no common support: upper quantile {hi} is not above {left}"
        )));
    }
    let lo = if lo > left { lo } else { left + 1e-6 * (hi - left) };
    let spacing = if lo > 0.0 { Spacing::Log } else { Spacing::Linear };
    GridSpec::new(lo, hi, ORDER_GRID_POINTS, spacing)
}

fn pointwise(order: StochOrder, d: &dyn Lifetime, x: f64) -> Result<f64> {
    match order {
        StochOrder::St => Ok(d.sf(x)),
        StochOrder::Hr => d.hazard(x),
        StochOrder::Rh => d.rev_hazard(x),
        StochOrder::Disp => unreachable!("dispersive order is checked on quantiles"),
    }
}

fn too_many_skipped(skipped: usize, total: usize) -> Result<()> {
    if skipped as f64 > MAX_DEGENERATE_FRACTION * total as f64 {
        Err(Error::TooManyDegenerate {
            skipped,
            total,
            limit_pct: (MAX_DEGENERATE_FRACTION * 100.0).round() as u32,
        })
    } else {
        Ok(())
    }
}

/// Checks `X ≤ Y` for `X ~ f`, `Y ~ g`. `grid` is an x-grid for st/hr/rh and a
/// probability grid for disp; `None` selects the defaults.
pub fn check_order(
    f: &dyn Lifetime,
    g: &dyn Lifetime,
    order: StochOrder,
    grid: Option<GridSpec>,
    tol: Option<f64>,
) -> Result<OrderVerdict> {
    let tol = tol.unwrap_or_else(|| default_tolerance(f, g, order));
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be finite and >= 0",
        });
    }
    if order == StochOrder::Disp {
        return check_disp(f, g, grid.unwrap_or_else(disp_grid), tol);
    }
    let grid = match grid {
        Some(g) => g,
        None => default_grid(f, g)?,
    };
    grid.validate()?;
    let xs = grid.points();

    // scaled forward violation d(x) > 0 means X ≤ Y fails at x
    let vals: Vec<Option<(f64, f64)>> = xs
        .par_iter()
        .map(|&x| {
            let a = pointwise(order, f, x).ok()?;
            let b = pointwise(order, g, x).ok()?;
            if !(a.is_finite() && b.is_finite()) {
                return None;
            }
            let d = match order {
                StochOrder::Hr => b - a,
                _ => a - b,
            } / pair_scale(a, b);
            Some((x, d))
        })
        .collect();
    let n_skipped = vals.iter().filter(|v| v.is_none()).count();
    too_many_skipped(n_skipped, xs.len())?;
    let pts: Vec<(f64, f64)> = vals.into_iter().flatten().collect();

    let mut fwd = (0.0f64, f64::NAN);
    let mut rev = (0.0f64, f64::NAN);
    for &(x, d) in &pts {
        if d > fwd.0 {
            fwd = (d, x);
        }
        if -d > rev.0 {
            rev = (-d, x);
        }
    }
    let relation = classify(fwd.0, rev.0, tol);
    let mut witnesses = Vec::new();
    match relation {
        OrderRelation::Crossing => {
            witnesses.extend(sign_brackets(&pts, tol));
            witnesses.push(Witness::Point {
                x: fwd.1,
                forward: true,
                violation: fwd.0,
            });
            witnesses.push(Witness::Point {
                x: rev.1,
                forward: false,
                violation: rev.0,
            });
        }
        OrderRelation::HoldsReversed => witnesses.push(Witness::Point {
            x: fwd.1,
            forward: true,
            violation: fwd.0,
        }),
        OrderRelation::Holds => witnesses.push(Witness::Point {
            x: rev.1,
            forward: false,
            violation: rev.0,
        }),
        OrderRelation::Indistinguishable => {}
    }
    Ok(OrderVerdict {
        order,
        relation,
        max_violation: fwd.0,
        max_reverse_violation: rev.0,
        witnesses,
        n_evaluated: pts.len(),
        n_skipped,
        tolerance: tol,
        grid,
    })
}

fn classify(fwd: f64, rev: f64, tol: f64) -> OrderRelation {
    match (fwd > tol, rev > tol) {
        (false, false) => OrderRelation::Indistinguishable,
        (false, true) => OrderRelation::Holds,
        (true, false) => OrderRelation::HoldsReversed,
        (true, true) => OrderRelation::Crossing,
    }
}

/// Intervals between consecutive significant points of opposite sign.
fn sign_brackets(pts: &[(f64, f64)], tol: f64) -> Vec<Witness> {
    let mut out = Vec::new();
    let mut last: Option<(f64, bool)> = None;
    for &(x, d) in pts {
        if d.abs() <= tol {
            continue;
        }
        let pos = d > 0.0;
        if let Some((lx, lpos)) = last {
            if lpos != pos {
                out.push(Witness::Bracket { lo: lx, hi: x });
            }
        }
        last = Some((x, pos));
    }
    out
}

fn check_disp(f: &dyn Lifetime, g: &dyn Lifetime, grid: GridSpec, tol: f64) -> Result<OrderVerdict> {
    grid.validate()?;
    if !(grid.lo > 0.0 && grid.hi < 1.0) {
        return Err(Error::Grid(format!(
            "dispersive probability grid must lie inside (0, 1), got [{}, {}]",
            grid.lo, grid.hi
        )));
    }
    let ps = grid.points();
    let qs: Vec<Option<(f64, f64, f64)>> = ps
        .par_iter()
        .map(|&p| {
            let a = f.quantile(p).ok()?;
            let b = g.quantile(p).ok()?;
            (a.is_finite() && b.is_finite()).then_some((p, a, b))
        })
        .collect();
    let n_skipped = qs.iter().filter(|v| v.is_none()).count();
    too_many_skipped(n_skipped, ps.len())?;
    let qs: Vec<(f64, f64, f64)> = qs.into_iter().flatten().collect();

    // (violation, alpha, beta) for each direction, worst over all pairs i < j
    let worst = |a: (f64, f64, f64), b: (f64, f64, f64)| if b.0 > a.0 { b } else { a };
    let (fwd, rev) = (0..qs.len())
        .into_par_iter()
        .map(|i| {
            let (pa, fa, ga) = qs[i];
            let mut fwd = (0.0, f64::NAN, f64::NAN);
            let mut rev = (0.0, f64::NAN, f64::NAN);
            for &(pb, fb, gb) in &qs[i + 1..] {
                let sf = fb - fa;
                let sg = gb - ga;
                let d = (sf - sg) / pair_scale(sf, sg);
                if d > fwd.0 {
                    fwd = (d, pa, pb);
                }
                if -d > rev.0 {
                    rev = (-d, pa, pb);
                }
            }
            (fwd, rev)
        })
        .reduce(
            || ((0.0, f64::NAN, f64::NAN), (0.0, f64::NAN, f64::NAN)),
            |x, y| (worst(x.0, y.0), worst(x.1, y.1)),
        );
    let relation = classify(fwd.0, rev.0, tol);
    let mut witnesses = Vec::new();
    if fwd.0 > tol {
        witnesses.push(Witness::Quantiles {
            alpha: fwd.1,
            beta: fwd.2,
            forward: true,
            violation: fwd.0,
        });
    }
    if rev.0 > tol {
        witnesses.push(Witness::Quantiles {
            alpha: rev.1,
            beta: rev.2,
            forward: false,
            violation: rev.0,
        });
    }
    Ok(OrderVerdict {
        order: StochOrder::Disp,
        relation,
        max_violation: fwd.0,
        max_reverse_violation: rev.0,
        witnesses,
        n_evaluated: qs.len(),
        n_skipped,
        tolerance: tol,
        grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossQuantity {
    SfDiff,
    HazardDiff,
    RevHazardDiff,
}

impl FromStr for CrossQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sf_diff" => Ok(CrossQuantity::SfDiff),
            "hazard_diff" => Ok(CrossQuantity::HazardDiff),
            "rev_hazard_diff" => Ok(CrossQuantity::RevHazardDiff),
            _ => Err(Error::parse(s, "expected sf_diff|hazard_diff|rev_hazard_diff")),
        }
    }
}

impl fmt::Display for CrossQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossQuantity::SfDiff => "sf_diff",
            CrossQuantity::HazardDiff => "hazard_diff",
            CrossQuantity::RevHazardDiff => "rev_hazard_diff",
        })
    }
}

fn difference(q: CrossQuantity, f: &dyn Lifetime, g: &dyn Lifetime, x: f64) -> Option<(f64, f64)> {
    let (a, b) = match q {
        CrossQuantity::SfDiff => (f.sf(x), g.sf(x)),
        CrossQuantity::HazardDiff => (f.hazard(x).ok()?, g.hazard(x).ok()?),
        CrossQuantity::RevHazardDiff => (f.rev_hazard(x).ok()?, g.rev_hazard(x).ok()?),
    };
    (a.is_finite() && b.is_finite()).then_some((a - b, a.abs().max(b.abs())))
}

/// Sign changes of `f - g` in the chosen quantity, each refined by bisection
/// to an interval of width [`CROSSING_XTOL`].
pub fn find_crossings(
    f: &dyn Lifetime,
    g: &dyn Lifetime,
    quantity: CrossQuantity,
    grid: GridSpec,
) -> Result<Vec<(f64, f64)>> {
    grid.validate()?;
    let xs = grid.points();
    let vals: Vec<Option<f64>> = xs
        .par_iter()
        .map(|&x| {
            let (d, s) = difference(quantity, f, g, x)?;
            // rounding-level differences carry no sign
            Some(if d.abs() <= 4.0 * f64::EPSILON * s { 0.0 } else { d })
        })
        .collect();
    let n_skipped = vals.iter().filter(|v| v.is_none()).count();
    too_many_skipped(n_skipped, xs.len())?;

    let eval = |x: f64| difference(quantity, f, g, x).map_or(f64::NAN, |(d, _)| d);
    let mut out = Vec::new();
    let mut last: Option<(f64, bool)> = None;
    for (&x, v) in xs.iter().zip(&vals) {
        let Some(d) = *v else { continue };
        if d == 0.0 {
            continue;
        }
        let pos = d > 0.0;
        if let Some((lx, lpos)) = last {
            if lpos != pos {
                out.push(bisect_sign_change(eval, lx, x, CROSSING_XTOL));
            }
        }
        last = Some((x, pos));
    }
    Ok(out)
}
