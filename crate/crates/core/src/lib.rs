//! Majorization preorders unified by f-majorization, parametric lifetime
//! families, extreme order statistics (independent and Archimedean-coupled),
//! and a numerical harness that checks stochastic-order theorems on grids.

// `!(x > 0.0)` is the NaN-rejecting form used for parameter checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod copulas;
pub mod defaults;
pub mod distributions;
pub mod error;
pub mod extremes;
pub mod grid;
pub mod majorization;
pub mod numeric;
pub mod orders;
mod text;
pub mod verification;

pub use copulas::{check_generator_shape, check_superadditive, Generator, ShapeProperty};
pub use distributions::{es_q, ge_h, Baseline, DistributionSpec, EvalFn, Lifetime};
pub use error::{Error, Result};
pub use extremes::{
    archimedean_max_cdf, extreme_distribution, frechet_max_rev_hazard, ExtremeDistribution, ExtremeKind,
    Model, SampleModel,
};
pub use grid::{GridSpec, Spacing};
pub use majorization::{
    check_f_majorization, check_majorization, implication_chain, ChainReport, Flavor, MajorizationVerdict,
    MonotoneMap, OrderKind, ParamVector,
};
pub use orders::{
    check_order, find_crossings, CrossQuantity, Direction, OrderRelation, OrderVerdict, StochOrder,
};
pub use text::parse_list;
