//! Seeded random instances that satisfy a theorem's hypotheses by
//! construction, and batch runners over them.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampling::{trial_rng, Box1, PairSampler};
use super::theorems::{
    verify_theorem, Case, Part, Status, TheoremId, TheoremInstance, TheoremReport, VerifyOptions,
};
use crate::copulas::Generator;
use crate::distributions::Baseline;
use crate::error::{Error, Result};
use crate::majorization::{Flavor, MonotoneMap};
use crate::orders::Direction;

fn pair(map: MonotoneMap, flavor: Flavor, dim: usize, rng: &mut impl Rng) -> Result<(Vec<f64>, Vec<f64>)> {
    PairSampler::new(map, flavor)
        .sample(dim, rng)
        .ok_or_else(|| Error::MalformedInstance(format!("pair sampler exhausted for {map} / {flavor:?}")))
}

fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

/// Baseline whose `u^2 r'(u)` has a known monotone direction.
fn scale_baseline(rng: &mut impl Rng, decreasing_hazard_only: bool) -> (Baseline, Case) {
    let pick = rng.gen_range(0..3);
    let dec = decreasing_hazard_only || rng.gen_bool(0.5);
    match pick {
        0 => (Baseline::Exponential, Case::Decreasing),
        1 => {
            let k = if dec {
                uniform(rng, 0.2, 1.0)
            } else {
                uniform(rng, 1.0, 5.0)
            };
            (
                Baseline::Weibull { k },
                if dec { Case::Decreasing } else { Case::Increasing },
            )
        }
        _ => {
            let (p, q) = if dec {
                (uniform(rng, 0.3, 0.95), uniform(rng, 0.3, 0.95))
            } else {
                (uniform(rng, 1.05, 3.0), uniform(rng, 1.05, 3.0))
            };
            (
                Baseline::GenGamma { p, q },
                if dec { Case::Decreasing } else { Case::Increasing },
            )
        }
    }
}

fn simple_baseline(rng: &mut impl Rng) -> Baseline {
    if rng.gen_bool(0.5) {
        Baseline::Exponential
    } else {
        Baseline::Weibull {
            k: uniform(rng, 0.2, 5.0),
        }
    }
}

/// Generator pair `(φ for X, φ* for X*)` for the Archimedean statements.
/// Part I pairs make `ψ* ∘ φ` super-additive with a log-convex member;
/// part II pairs make `ψ ∘ φ*` super-additive with a log-concave member.
fn arch_generators(part: Part, variant: usize, rng: &mut impl Rng) -> (Generator, Generator) {
    let clayton = |t: f64| Generator::Clayton { theta: t };
    let gumbel = |t: f64| Generator::Gumbel { theta: t };
    match part {
        Part::I => match variant % 5 {
            0 => (Generator::Independence, Generator::Independence),
            1 => {
                let (a, b) = (uniform(rng, 0.2, 5.0), uniform(rng, 0.2, 5.0));
                (clayton(a.min(b)), clayton(a.max(b)))
            }
            2 => {
                let (a, b) = (uniform(rng, 1.0, 5.0), uniform(rng, 1.0, 5.0));
                (gumbel(a.min(b)), gumbel(a.max(b)))
            }
            3 => (Generator::Independence, clayton(uniform(rng, 0.2, 5.0))),
            _ => (Generator::Independence, gumbel(uniform(rng, 1.0, 5.0))),
        },
        Part::II => match variant % 3 {
            0 => (Generator::Independence, Generator::Independence),
            1 => (clayton(uniform(rng, 0.2, 5.0)), Generator::Independence),
            _ => (gumbel(uniform(rng, 1.0, 5.0)), Generator::Independence),
        },
    }
}

fn arch_instance(
    id: TheoremId,
    part: Part,
    variant: usize,
    rng: &mut impl Rng,
    dim: usize,
) -> Result<TheoremInstance> {
    let (g, gs) = arch_generators(part, variant, rng);
    let (map, flavor) = match (id, part) {
        (TheoremId::ArchMaxStLogmajCor, _) => (MonotoneMap::Log, Flavor::WeakSub),
        (_, Part::I) => (MonotoneMap::Identity, Flavor::WeakSub),
        (_, Part::II) => (MonotoneMap::Identity, Flavor::WeakSuper),
    };
    let (star, varied) = pair(map, flavor, dim, rng)?;
    let lambda = Box1::PARAMS.sample(rng);
    let inst = TheoremInstance::new(id, varied, star)
        .with_lambda(lambda)
        .with_baseline(Baseline::Exponential)
        .with_generators(g, gs);
    Ok(if id == TheoremId::ArchMaxSt {
        inst.with_part(part)
    } else {
        inst
    })
}

/// Instance `index` of the seeded stream for `id`: dimension 2 to 4,
/// parameters in `[0.2, 5]`, hypotheses satisfied by construction.
pub fn random_instance(id: TheoremId, seed: u64, index: u64) -> Result<TheoremInstance> {
    use TheoremId::*;
    let mut rng = trial_rng(seed, index);
    let rng = &mut rng;
    let dim = rng.gen_range(2..=4);
    let bx = Box1::PARAMS;
    let inst = match id {
        FrechetScaleRh => {
            let alpha = bx.sample(rng);
            let mu = bx.sample(rng);
            let (map, part, case) = match rng.gen_range(0..5) {
                0 => (MonotoneMap::Reciprocal, Part::I, Case::Decreasing),
                1 => (
                    MonotoneMap::Identity,
                    if alpha >= 1.0 { Part::II } else { Part::I },
                    Case::Increasing,
                ),
                2 => (MonotoneMap::Log, Part::II, Case::Increasing),
                3 => {
                    let p = uniform(rng, 0.3, 3.0);
                    (
                        MonotoneMap::Power { p },
                        if alpha >= p { Part::II } else { Part::I },
                        Case::Increasing,
                    )
                }
                _ => (
                    MonotoneMap::Power {
                        p: uniform(rng, -3.0, -0.3),
                    },
                    Part::I,
                    Case::Decreasing,
                ),
            };
            let (varied, star) = match part {
                Part::I => {
                    let (s, v) = pair(map, Flavor::WeakSuper, dim, rng)?;
                    (v, s)
                }
                Part::II => pair(map, Flavor::WeakSub, dim, rng)?,
            };
            TheoremInstance::new(id, varied, star)
                .with_mu(mu)
                .with_alpha(alpha)
                .with_map(map)
                .with_case(case)
                .with_part(part)
        }
        FrechetScaleRhCorRecip => {
            let (s, v) = pair(MonotoneMap::Reciprocal, Flavor::WeakSuper, dim, rng)?;
            TheoremInstance::new(id, v, s)
                .with_mu(bx.sample(rng))
                .with_alpha(bx.sample(rng))
        }
        FrechetScaleRhCorPlain => {
            let alpha = bx.sample(rng);
            let (part, flavor) = if alpha >= 1.0 {
                (Part::I, Flavor::WeakSub)
            } else {
                (Part::II, Flavor::WeakSuper)
            };
            let (s, v) = pair(MonotoneMap::Identity, flavor, dim, rng)?;
            TheoremInstance::new(id, v, s)
                .with_mu(bx.sample(rng))
                .with_alpha(alpha)
                .with_part(part)
        }
        FrechetLocationRh => {
            let (s, v) = pair(MonotoneMap::Identity, Flavor::WeakSub, dim, rng)?;
            TheoremInstance::new(id, v, s)
                .with_lambda(bx.sample(rng))
                .with_alpha(bx.sample(rng))
        }
        ScaleMinHr | ScaleMinDisp => {
            let (b, case) = scale_baseline(rng, id == ScaleMinDisp);
            let flavor = match case {
                Case::Decreasing => Flavor::WeakSuper,
                Case::Increasing => Flavor::WeakSub,
            };
            let (s, v) = pair(MonotoneMap::Identity, flavor, dim, rng)?;
            TheoremInstance::new(id, v, s).with_baseline(b).with_case(case)
        }
        ScaleMaxSt => {
            let b = simple_baseline(rng);
            let map = if rng.gen_bool(0.5) {
                MonotoneMap::Log
            } else {
                MonotoneMap::Identity
            };
            let (s, v) = pair(map, Flavor::WeakSuper, dim, rng)?;
            TheoremInstance::new(id, v, s).with_baseline(b).with_map(map)
        }
        EsMinHrAlpha | GeMinHrAlphaCor => {
            let b = if id == EsMinHrAlpha {
                simple_baseline(rng)
            } else {
                Baseline::Exponential
            };
            let (s, v) = pair(MonotoneMap::Identity, Flavor::WeakSuper, dim, rng)?;
            let inst = TheoremInstance::new(id, v, s).with_lambda(bx.sample(rng));
            if id == EsMinHrAlpha {
                inst.with_baseline(b)
            } else {
                inst
            }
        }
        EsMinStLambda | GeMinStLambdaCor => {
            // q(α, x) = k x^{k-1} h(α, G(x)) for Weibull(k); both factors
            // move the same way when k and α sit on the same side of 1
            let b = if id == EsMinStLambda {
                simple_baseline(rng)
            } else {
                Baseline::Exponential
            };
            let case = match b {
                Baseline::Weibull { k } if k < 1.0 => Case::Decreasing,
                Baseline::Weibull { k } if k > 1.0 => Case::Increasing,
                _ => {
                    if rng.gen_bool(0.5) {
                        Case::Decreasing
                    } else {
                        Case::Increasing
                    }
                }
            };
            let (alpha, flavor) = match case {
                Case::Decreasing => (uniform(rng, 0.2, 1.0), Flavor::WeakSuper),
                Case::Increasing => (uniform(rng, 1.0, 5.0), Flavor::WeakSub),
            };
            let (s, v) = pair(MonotoneMap::Identity, flavor, dim, rng)?;
            let inst = TheoremInstance::new(id, v, s).with_alpha(alpha).with_case(case);
            if id == EsMinStLambda {
                inst.with_baseline(b)
            } else {
                inst
            }
        }
        ArchMaxSt => {
            let part = if rng.gen_bool(0.5) { Part::I } else { Part::II };
            let variant = rng.gen_range(0..5);
            arch_instance(id, part, variant, rng, dim)?
        }
        ArchMaxStLogmajCor => {
            let variant = rng.gen_range(0..5);
            arch_instance(id, Part::I, variant, rng, dim)?
        }
    };
    Ok(inst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub theorem: TheoremId,
    pub n_instances: usize,
    pub seed: u64,
    pub confirmed: usize,
    pub hypothesis_not_met: usize,
    pub refuted: usize,
    pub errors: usize,
    /// Reports of the first few refuted instances, by index.
    pub refuted_reports: Vec<TheoremReport>,
    /// First few `(index, message)` failures.
    pub error_messages: Vec<(u64, String)>,
    /// First few `(index, failed hypothesis names)`.
    pub unmet: Vec<(u64, Vec<String>)>,
}

const KEEP: usize = 5;

fn run_one(id: TheoremId, seed: u64, i: u64, opts: &VerifyOptions) -> Result<TheoremReport> {
    verify_theorem(&random_instance(id, seed, i)?, opts)
}

/// Verifies `n` seeded random instances of `id` in parallel.
pub fn run_fixture_suite(id: TheoremId, n: usize, seed: u64, opts: &VerifyOptions) -> SuiteSummary {
    let results: Vec<Result<TheoremReport>> = (0..n as u64)
        .into_par_iter()
        .map(|i| run_one(id, seed, i, opts))
        .collect();
    let mut s = SuiteSummary {
        theorem: id,
        n_instances: n,
        seed,
        confirmed: 0,
        hypothesis_not_met: 0,
        refuted: 0,
        errors: 0,
        refuted_reports: Vec::new(),
        error_messages: Vec::new(),
        unmet: Vec::new(),
    };
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(rep) => match rep.status {
                Status::Confirmed => s.confirmed += 1,
                Status::HypothesisNotMet => {
                    s.hypothesis_not_met += 1;
                    if s.unmet.len() < KEEP {
                        let names = rep
                            .hypothesis_results
                            .iter()
                            .filter(|h| !h.holds)
                            .map(|h| h.name.clone())
                            .collect();
                        s.unmet.push((i as u64, names));
                    }
                }
                Status::Refuted => {
                    s.refuted += 1;
                    if s.refuted_reports.len() < KEEP {
                        s.refuted_reports.push(rep);
                    }
                }
            },
            Err(e) => {
                s.errors += 1;
                if s.error_messages.len() < KEEP {
                    s.error_messages.push((i as u64, e.to_string()));
                }
            }
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchSetSummary {
    pub name: String,
    pub theorem: TheoremId,
    pub part: Part,
    pub claimed: Direction,
    pub n_instances: usize,
    pub confirmed: usize,
    pub hypothesis_not_met: usize,
    pub refuted: usize,
    pub errors: usize,
    pub measured_le: usize,
    pub measured_ge: usize,
    /// Instances where neither direction separated from the other.
    pub measured_none: usize,
    /// The single measured direction of the set, if all ordered verdicts agree.
    pub measured_direction: Option<Direction>,
    pub consistent: bool,
}

/// The Archimedean theorem and its log-majorization corollary claim opposite
/// directions for instances that satisfy both sets of hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionConflict {
    pub theorem: TheoremId,
    pub theorem_claim: Direction,
    pub theorem_measured: Option<Direction>,
    pub corollary: TheoremId,
    pub corollary_claim: Direction,
    pub corollary_measured: Option<Direction>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchBatchReport {
    pub schema: u32,
    pub seed: u64,
    pub n_per_set: usize,
    pub sets: Vec<ArchSetSummary>,
    pub conflicts: Vec<DirectionConflict>,
}

fn arch_set(name: &str, id: TheoremId, part: Part, n: usize, seed: u64, salt: u64) -> ArchSetSummary {
    let variants = if part == Part::I { 5 } else { 3 };
    let results: Vec<Result<TheoremReport>> = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed ^ salt, i);
            let dim = rng.gen_range(2..=4);
            let inst = arch_instance(id, part, i as usize % variants, &mut rng, dim)?;
            verify_theorem(&inst, &VerifyOptions::default())
        })
        .collect();
    let mut s = ArchSetSummary {
        name: name.to_string(),
        theorem: id,
        part,
        claimed: Direction::Ge,
        n_instances: n,
        confirmed: 0,
        hypothesis_not_met: 0,
        refuted: 0,
        errors: 0,
        measured_le: 0,
        measured_ge: 0,
        measured_none: 0,
        measured_direction: None,
        consistent: true,
    };
    for r in results {
        let Ok(rep) = r else {
            s.errors += 1;
            continue;
        };
        s.claimed = rep.claimed;
        match rep.status {
            Status::Confirmed => s.confirmed += 1,
            Status::HypothesisNotMet => {
                s.hypothesis_not_met += 1;
                continue;
            }
            Status::Refuted => s.refuted += 1,
        }
        match rep.measured_direction {
            Some(Direction::Le) => s.measured_le += 1,
            Some(Direction::Ge) => s.measured_ge += 1,
            None => s.measured_none += 1,
        }
    }
    s.consistent = s.refuted == 0 && (s.measured_le == 0 || s.measured_ge == 0);
    s.measured_direction = match (s.measured_le > 0, s.measured_ge > 0) {
        (true, false) => Some(Direction::Le),
        (false, true) => Some(Direction::Ge),
        _ => None,
    };
    s
}

/// Runs the Archimedean statements on `n_per_set` seeded instances for each
/// of part I, part II and the log-majorization corollary, and reports the
/// direction conflict between part I and the corollary once.
pub fn run_arch_batch(n_per_set: usize, seed: u64) -> ArchBatchReport {
    let part_i = arch_set("part_i", TheoremId::ArchMaxSt, Part::I, n_per_set, seed, 0x11);
    let part_ii = arch_set("part_ii", TheoremId::ArchMaxSt, Part::II, n_per_set, seed, 0x22);
    let cor = arch_set(
        "corollary",
        TheoremId::ArchMaxStLogmajCor,
        Part::I,
        n_per_set,
        seed,
        0x33,
    );
    let mut conflicts = Vec::new();
    if part_i.claimed != cor.claimed {
        conflicts.push(DirectionConflict {
            theorem: TheoremId::ArchMaxSt,
            theorem_claim: part_i.claimed,
            theorem_measured: part_i.measured_direction,
            corollary: TheoremId::ArchMaxStLogmajCor,
            corollary_claim: cor.claimed,
            corollary_measured: cor.measured_direction,
            note: "weak log-majorization implies weak submajorization, so every corollary \
                   instance is a part I instance; the two claims cannot both hold"
                .to_string(),
        });
    }
    ArchBatchReport {
        schema: 1,
        seed,
        n_per_set,
        sets: vec![part_i, part_ii, cor],
        conflicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible_and_valid() {
        for id in TheoremId::ALL {
            for i in 0..5 {
                let a = random_instance(id, 17, i).unwrap();
                let b = random_instance(id, 17, i).unwrap();
                assert_eq!(a, b);
                a.validate().unwrap();
                assert!((2..=4).contains(&a.varied.len()));
            }
        }
    }

    #[test]
    fn small_suites_have_no_refutations() {
        for id in TheoremId::ALL {
            let s = run_fixture_suite(id, 12, 5, &VerifyOptions::default());
            assert_eq!(s.refuted, 0, "{id}: {:#?}", s.refuted_reports);
            assert_eq!(s.errors, 0, "{id}: {:?}", s.error_messages);
            assert_eq!(s.hypothesis_not_met, 0, "{id}: {:?}", s.unmet);
        }
    }
}
