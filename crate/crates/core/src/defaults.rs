//! Every numerical default used by the library, in one place.
//!
//! | name | value | used by |
//! |---|---|---|
//! | `ORDER_GRID_POINTS` | 2048 | default x-grid for stochastic-order checks |
//! | `ORDER_TAIL_PROB` | 1e-4 | pooled quantile range `[q(p), q(1-p)]` of the default grid |
//! | `TOL_CLOSED_FORM` | 1e-9 | order checks on closed-form quantities |
//! | `TOL_NUMERIC` | 1e-6 | order checks involving bisection or finite differences |
//! | `DISP_GRID_POINTS` | 256 | probability grid for the dispersive order |
//! | `DISP_EDGE` | 1e-3 | probability grid spans `(DISP_EDGE, 1 - DISP_EDGE)` |
//! | `SHAPE_T_MAX` | 50 | right end of generator shape grids |
//! | `SHAPE_T_MIN` | 1e-6 | left end of generator shape grids (log spacing) |
//! | `SHAPE_GRID_POINTS` | 4096 | generator shape grid size |
//! | `SUPERADD_GRID_POINTS` | 128 | per-axis size of the super-additivity `(u, v)` grid |
//! | `PSI_CAP` | 1e12 | saturation cap for generator pseudo-inverses |
//! | `REFUTE_FACTOR` | 10 | a conclusion is refuted only beyond `REFUTE_FACTOR * tol` |
//! | `MAX_DEGENERATE_FRACTION` | 0.20 | order checks fail when more points are degenerate |
//! | `MAX_MONOTONE_FAILURE_FRACTION` | 0.05 | monotonicity checks fail beyond this many bad evaluations |
//! | `QUANTILE_XTOL` | 1e-12 | bisection stopping width (relative to `max(1, |x|)`) |
//! | `CROSSING_XTOL` | 1e-8 | crossing brackets are refined to this width |
//! | `HYPOTHESIS_GRID_POINTS` | 2048 | grids for monotonicity hypotheses |

use serde::{Deserialize, Serialize};

pub const ORDER_GRID_POINTS: usize = 2048;
pub const ORDER_TAIL_PROB: f64 = 1e-4;
pub const TOL_CLOSED_FORM: f64 = 1e-9;
pub const TOL_NUMERIC: f64 = 1e-6;
pub const DISP_GRID_POINTS: usize = 256;
pub const DISP_EDGE: f64 = 1e-3;
pub const SHAPE_T_MAX: f64 = 50.0;
pub const SHAPE_T_MIN: f64 = 1e-6;
pub const SHAPE_GRID_POINTS: usize = 4096;
pub const SUPERADD_GRID_POINTS: usize = 128;
pub const PSI_CAP: f64 = 1e12;
pub const REFUTE_FACTOR: f64 = 10.0;
pub const MAX_DEGENERATE_FRACTION: f64 = 0.20;
pub const MAX_MONOTONE_FAILURE_FRACTION: f64 = 0.05;
pub const QUANTILE_XTOL: f64 = 1e-12;
pub const CROSSING_XTOL: f64 = 1e-8;
pub const HYPOTHESIS_GRID_POINTS: usize = 2048;

/// Snapshot of the defaults table, echoed into reports so they can be replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefaultsTable {
    pub order_grid_points: usize,
    pub order_tail_prob: f64,
    pub tol_closed_form: f64,
    pub tol_numeric: f64,
    pub disp_grid_points: usize,
    pub disp_edge: f64,
    pub shape_t_min: f64,
    pub shape_t_max: f64,
    pub shape_grid_points: usize,
    pub superadd_grid_points: usize,
    pub psi_cap: f64,
    pub refute_factor: f64,
    pub max_degenerate_fraction: f64,
    pub max_monotone_failure_fraction: f64,
    pub quantile_xtol: f64,
    pub crossing_xtol: f64,
    pub hypothesis_grid_points: usize,
}

impl Default for DefaultsTable {
    fn default() -> Self {
        DefaultsTable {
            order_grid_points: ORDER_GRID_POINTS,
            order_tail_prob: ORDER_TAIL_PROB,
            tol_closed_form: TOL_CLOSED_FORM,
            tol_numeric: TOL_NUMERIC,
            disp_grid_points: DISP_GRID_POINTS,
            disp_edge: DISP_EDGE,
            shape_t_min: SHAPE_T_MIN,
            shape_t_max: SHAPE_T_MAX,
            shape_grid_points: SHAPE_GRID_POINTS,
            superadd_grid_points: SUPERADD_GRID_POINTS,
            psi_cap: PSI_CAP,
            refute_factor: REFUTE_FACTOR,
            max_degenerate_fraction: MAX_DEGENERATE_FRACTION,
            max_monotone_failure_fraction: MAX_MONOTONE_FAILURE_FRACTION,
            quantile_xtol: QUANTILE_XTOL,
            crossing_xtol: CROSSING_XTOL,
            hypothesis_grid_points: HYPOTHESIS_GRID_POINTS,
        }
    }
}
