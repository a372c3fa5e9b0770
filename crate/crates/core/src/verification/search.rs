//! Seeded counterexample search: sample parameter pairs that satisfy a
//! majorization-type hypothesis and look for order verdicts that break an
//! expected conclusion.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::{trial_rng, PairSampler};
use super::suite::random_instance;
use super::theorems::{verify_theorem, Status, TheoremId, TheoremReport, VerifyOptions};
use crate::distributions::{Baseline, DistributionSpec};
use crate::error::{Error, Result};
use crate::extremes::ExtremeDistribution;
use crate::majorization::{
    check_majorization, Flavor, MajorizationVerdict, MonotoneMap, OrderKind, ParamVector,
};
use crate::orders::{check_order, OrderRelation, OrderVerdict, StochOrder};

/// Parametric family of the extreme; the searched vector is the one that
/// varies between `X` and `X*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SearchFamily {
    /// Minimum of GE(`alpha`, `λ_i`); searches `λ`.
    GeMin { alpha: f64 },
    /// Minimum of `G(λ_i x)^alpha`; searches `λ`.
    EsMin { baseline: Baseline, alpha: f64 },
    /// Minimum of `G(λ_i x)`; searches `λ`.
    ScaleMin { baseline: Baseline },
    /// Maximum of Fréchet(`mu`, `λ_i`, `alpha`); searches `λ`.
    FrechetMax { mu: f64, alpha: f64 },
}

impl SearchFamily {
    pub fn build(&self, v: &[f64]) -> Result<ExtremeDistribution> {
        let comps = |f: &dyn Fn(f64) -> Result<DistributionSpec>| -> Result<Vec<DistributionSpec>> {
            v.iter().map(|&p| f(p)).collect()
        };
        match *self {
            SearchFamily::GeMin { alpha } => {
                ExtremeDistribution::min_of(comps(&|l| DistributionSpec::ge(alpha, l))?)
            }
            SearchFamily::EsMin { baseline, alpha } => {
                ExtremeDistribution::min_of(comps(&|l| DistributionSpec::exp_scale(baseline, alpha, l))?)
            }
            SearchFamily::ScaleMin { baseline } => {
                ExtremeDistribution::min_of(comps(&|l| DistributionSpec::scale(baseline, l))?)
            }
            SearchFamily::FrechetMax { mu, alpha } => {
                ExtremeDistribution::max_of(comps(&|l| DistributionSpec::frechet(mu, l, alpha))?)
            }
        }
    }
}

/// Conjectured direction of `X` (varied) against `X*` (star).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    /// `X ≤ X*`: hits are reversed orders and crossings.
    Le,
    /// `X ≥ X*`: hits are forward orders and crossings.
    Ge,
    /// Some order in either direction: hits are crossings, or one instance
    /// ordered each way.
    Either,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub family: SearchFamily,
    /// Required relation `check(star, varied, hypothesis)`.
    pub hypothesis: OrderKind,
    pub conclusion: StochOrder,
    pub expected: Expected,
    pub n_trials: usize,
    pub seed: u64,
    /// Largest sampled dimension (at least 2).
    pub max_dim: usize,
    /// `(varied, star)` pairs tried before the random ones, in order.
    pub fixtures: Vec<(Vec<f64>, Vec<f64>)>,
    pub tol: Option<f64>,
}

impl SearchSpec {
    pub fn new(
        family: SearchFamily,
        hypothesis: OrderKind,
        conclusion: StochOrder,
        expected: Expected,
    ) -> Self {
        SearchSpec {
            family,
            hypothesis,
            conclusion,
            expected,
            n_trials: 1000,
            seed: 0,
            max_dim: 2,
            fixtures: Vec::new(),
            tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Trial index; fixtures come first.
    pub index: usize,
    pub fixture: bool,
    pub varied: Vec<f64>,
    pub varied_star: Vec<f64>,
    pub hypothesis: MajorizationVerdict,
    pub conclusion: OrderVerdict,
    pub models: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub schema: u32,
    pub spec: SearchSpec,
    /// Smallest-index instance that breaks the expectation on its own.
    pub counterexample: Option<Counterexample>,
    /// Smallest-index instance with `X ≤ X*` / `X ≥ X*`.
    pub le_instance: Option<Counterexample>,
    pub ge_instance: Option<Counterexample>,
    /// The expectation is broken, by one instance or by a pair.
    pub found: bool,
    pub n_evaluated: usize,
    pub n_sampler_failures: usize,
    pub n_errors: usize,
}

/// `(flavor, map)` whose f-majorization is `kind`, for the pair sampler.
fn sampler_for(kind: OrderKind) -> (Flavor, MonotoneMap) {
    match kind {
        OrderKind::WeakSub => (Flavor::WeakSub, MonotoneMap::Identity),
        OrderKind::WeakSuper => (Flavor::WeakSuper, MonotoneMap::Identity),
        OrderKind::Majorize => (Flavor::Major, MonotoneMap::Identity),
        OrderKind::LogWeak => (Flavor::WeakSub, MonotoneMap::Log),
        OrderKind::Log => (Flavor::Major, MonotoneMap::Log),
        OrderKind::PLarger => (Flavor::WeakSuper, MonotoneMap::Log),
        OrderKind::Reciprocal => (Flavor::WeakSub, MonotoneMap::Reciprocal),
        OrderKind::ExpWeak => (Flavor::WeakSub, MonotoneMap::Exp),
        OrderKind::Exp => (Flavor::Major, MonotoneMap::Exp),
    }
}

enum Trial {
    SamplerFailed,
    HypothesisFailed,
    Failed,
    Done(Box<Counterexample>),
}

fn evaluate(spec: &SearchSpec, index: usize, varied: Vec<f64>, star: Vec<f64>, fixture: bool) -> Trial {
    let run = || -> Result<Option<Counterexample>> {
        let hyp = check_majorization(
            &ParamVector::new(star.clone())?,
            &ParamVector::new(varied.clone())?,
            spec.hypothesis,
            1e-12,
        )?;
        if !hyp.holds {
            return Ok(None);
        }
        let x = spec.family.build(&varied)?;
        let xs = spec.family.build(&star)?;
        let verdict = check_order(&x, &xs, spec.conclusion, None, spec.tol)?;
        Ok(Some(Counterexample {
            index,
            fixture,
            models: [x.to_string(), xs.to_string()],
            varied: varied.clone(),
            varied_star: star.clone(),
            hypothesis: hyp,
            conclusion: verdict,
        }))
    };
    match run() {
        Ok(Some(c)) => Trial::Done(Box::new(c)),
        Ok(None) => Trial::HypothesisFailed,
        Err(_) => Trial::Failed,
    }
}

/// Runs fixtures, then `n_trials` seeded random pairs, and reports the
/// smallest-index hits. Trial `i` draws from its own stream, so the outcome
/// does not depend on scheduling.
pub fn search_counterexample(spec: &SearchSpec) -> Result<SearchOutcome> {
    if spec.n_trials == 0 && spec.fixtures.is_empty() {
        return Err(Error::InvalidParameter {
            name: "n_trials",
            value: 0.0,
            reason: "must be >= 1",
        });
    }
    let max_dim = spec.max_dim.max(2);
    let (flavor, map) = sampler_for(spec.hypothesis);
    let sampler = PairSampler::new(map, flavor);
    let k = spec.fixtures.len();
    let trials: Vec<Trial> = (0..k + spec.n_trials)
        .into_par_iter()
        .map(|i| {
            if i < k {
                let (v, s) = spec.fixtures[i].clone();
                return evaluate(spec, i, v, s, true);
            }
            let mut rng = trial_rng(spec.seed, (i - k) as u64);
            let dim = rng.gen_range(2..=max_dim);
            match sampler.sample(dim, &mut rng) {
                Some((star, varied)) => evaluate(spec, i, varied, star, false),
                None => Trial::SamplerFailed,
            }
        })
        .collect();

    let mut out = SearchOutcome {
        schema: 1,
        spec: spec.clone(),
        counterexample: None,
        le_instance: None,
        ge_instance: None,
        found: false,
        n_evaluated: 0,
        n_sampler_failures: 0,
        n_errors: 0,
    };
    for t in trials {
        let c = match t {
            Trial::SamplerFailed => {
                out.n_sampler_failures += 1;
                continue;
            }
            Trial::Failed => {
                out.n_errors += 1;
                continue;
            }
            Trial::HypothesisFailed => continue,
            Trial::Done(c) => *c,
        };
        out.n_evaluated += 1;
        let rel = c.conclusion.relation;
        let hit = match spec.expected {
            Expected::Le => matches!(rel, OrderRelation::HoldsReversed | OrderRelation::Crossing),
            Expected::Ge => matches!(rel, OrderRelation::Holds | OrderRelation::Crossing),
            Expected::Either => rel == OrderRelation::Crossing,
        };
        if rel == OrderRelation::Holds && out.le_instance.is_none() {
            out.le_instance = Some(c.clone());
        }
        if rel == OrderRelation::HoldsReversed && out.ge_instance.is_none() {
            out.ge_instance = Some(c.clone());
        }
        if hit && out.counterexample.is_none() {
            out.counterexample = Some(c);
        }
    }
    out.found = out.counterexample.is_some()
        || (spec.expected == Expected::Either && out.le_instance.is_some() && out.ge_instance.is_some());
    Ok(out)
}

/// First `REFUTED` report among `n_trials` seeded random valid instances of
/// `id`, by trial index.
pub fn search_theorem_violation(
    id: TheoremId,
    n_trials: usize,
    seed: u64,
    opts: &VerifyOptions,
) -> Option<TheoremReport> {
    (0..n_trials as u64)
        .into_par_iter()
        .filter_map(|i| {
            let rep = verify_theorem(&random_instance(id, seed, i).ok()?, opts).ok()?;
            (rep.status == Status::Refuted).then_some(rep)
        })
        .find_first(|_| true)
}
