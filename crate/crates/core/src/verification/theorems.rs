//! One driver per theorem: evaluate every hypothesis, then the conclusion's
//! order check on the matching extremes, and classify the outcome.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monotone::{check_monotone, MonotoneVerdict, Monotonicity};
use crate::copulas::{
    check_generator_shape, check_superadditive, Generator, ShapeProperty, ShapeVerdict,
    SuperadditivityVerdict,
};
use crate::defaults::{DefaultsTable, HYPOTHESIS_GRID_POINTS, REFUTE_FACTOR, TOL_CLOSED_FORM, TOL_NUMERIC};
use crate::distributions::{es_q, Baseline, DistributionSpec, Lifetime};
use crate::error::{Error, Result};
use crate::extremes::ExtremeDistribution;
use crate::grid::{GridSpec, Spacing};
use crate::majorization::{
    check_f_majorization, check_majorization, Flavor, MajorizationVerdict, MonotoneMap, OrderKind,
    ParamVector,
};
use crate::orders::{
    check_order, default_grid, default_tolerance, disp_grid, Direction, OrderRelation, OrderVerdict,
    StochOrder,
};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    FrechetScaleRh,
    FrechetScaleRhCorRecip,
    FrechetScaleRhCorPlain,
    FrechetLocationRh,
    ScaleMinHr,
    ScaleMinDisp,
    ScaleMaxSt,
    EsMinHrAlpha,
    GeMinHrAlphaCor,
    EsMinStLambda,
    GeMinStLambdaCor,
    ArchMaxSt,
    ArchMaxStLogmajCor,
}

impl TheoremId {
    pub const ALL: [TheoremId; 13] = [
        TheoremId::FrechetScaleRh,
        TheoremId::FrechetScaleRhCorRecip,
        TheoremId::FrechetScaleRhCorPlain,
        TheoremId::FrechetLocationRh,
        TheoremId::ScaleMinHr,
        TheoremId::ScaleMinDisp,
        TheoremId::ScaleMaxSt,
        TheoremId::EsMinHrAlpha,
        TheoremId::GeMinHrAlphaCor,
        TheoremId::EsMinStLambda,
        TheoremId::GeMinStLambdaCor,
        TheoremId::ArchMaxSt,
        TheoremId::ArchMaxStLogmajCor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::FrechetScaleRh => "FRECHET_SCALE_RH",
            TheoremId::FrechetScaleRhCorRecip => "FRECHET_SCALE_RH_COR_RECIP",
            TheoremId::FrechetScaleRhCorPlain => "FRECHET_SCALE_RH_COR_PLAIN",
            TheoremId::FrechetLocationRh => "FRECHET_LOCATION_RH",
            TheoremId::ScaleMinHr => "SCALE_MIN_HR",
            TheoremId::ScaleMinDisp => "SCALE_MIN_DISP",
            TheoremId::ScaleMaxSt => "SCALE_MAX_ST",
            TheoremId::EsMinHrAlpha => "ES_MIN_HR_ALPHA",
            TheoremId::GeMinHrAlphaCor => "GE_MIN_HR_ALPHA_COR",
            TheoremId::EsMinStLambda => "ES_MIN_ST_LAMBDA",
            TheoremId::GeMinStLambdaCor => "GE_MIN_ST_LAMBDA_COR",
            TheoremId::ArchMaxSt => "ARCH_MAX_ST",
            TheoremId::ArchMaxStLogmajCor => "ARCH_MAX_ST_LOGMAJ_COR",
        }
    }

    /// Name of the parameter vector that differs between `X` and `X*`.
    pub fn varied_parameter(self) -> &'static str {
        match self {
            TheoremId::FrechetLocationRh => "mu",
            TheoremId::EsMinHrAlpha
            | TheoremId::GeMinHrAlphaCor
            | TheoremId::ArchMaxSt
            | TheoremId::ArchMaxStLogmajCor => "alpha",
            _ => "lambda",
        }
    }

    pub fn is_archimedean(self) -> bool {
        matches!(self, TheoremId::ArchMaxSt | TheoremId::ArchMaxStLogmajCor)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == t)
            .ok_or_else(|| Error::parse(s, "unknown theorem id"))
    }
}

/// Monotonicity case of a two-sided statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "dec")]
    Decreasing,
    #[serde(rename = "inc")]
    Increasing,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Decreasing => "dec",
            Case::Increasing => "inc",
        })
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dec" | "decreasing" => Ok(Case::Decreasing),
            "inc" | "increasing" => Ok(Case::Increasing),
            _ => Err(Error::parse(s, "expected dec|inc")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::I => "i",
            Part::II => "ii",
        })
    }
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Part::I),
            "ii" | "2" => Ok(Part::II),
            _ => Err(Error::parse(s, "expected i|ii")),
        }
    }
}

/// Everything a statement quantifies over. `varied` parametrizes `X`,
/// `varied_star` parametrizes `X*`; the remaining fields are shared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremInstance {
    pub theorem: TheoremId,
    pub varied: Vec<f64>,
    pub varied_star: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MonotoneMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<Baseline>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_star: Option<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<Case>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<Part>,
}

impl TheoremInstance {
    pub fn new(theorem: TheoremId, varied: Vec<f64>, varied_star: Vec<f64>) -> Self {
        TheoremInstance {
            theorem,
            varied,
            varied_star,
            mu: None,
            lambda: None,
            alpha: None,
            map: None,
            baseline: None,
            generator: None,
            generator_star: None,
            case: None,
            part: None,
        }
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = Some(mu);
        self
    }
    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }
    pub fn with_map(mut self, map: MonotoneMap) -> Self {
        self.map = Some(map);
        self
    }
    pub fn with_baseline(mut self, baseline: Baseline) -> Self {
        self.baseline = Some(baseline);
        self
    }
    pub fn with_generators(mut self, generator: Generator, generator_star: Generator) -> Self {
        self.generator = Some(generator);
        self.generator_star = Some(generator_star);
        self
    }
    pub fn with_case(mut self, case: Case) -> Self {
        self.case = Some(case);
        self
    }
    pub fn with_part(mut self, part: Part) -> Self {
        self.part = Some(part);
        self
    }

    fn need<T: Copy>(&self, v: Option<T>, field: &str) -> Result<T> {
        v.ok_or_else(|| Error::MalformedInstance(format!("{} needs `{field}`", self.theorem)))
    }

    fn reject(&self, present: bool, field: &str) -> Result<()> {
        if present {
            Err(Error::MalformedInstance(format!(
                "{} does not take `{field}`",
                self.theorem
            )))
        } else {
            Ok(())
        }
    }

    /// Shape checks only; numerical parameter ranges are checked when the
    /// models are built.
    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.varied.len(), self.varied_star.len());
        if n != m {
            return Err(Error::LengthMismatch { left: n, right: m });
        }
        if n < 2 {
            return Err(Error::MalformedInstance(format!(
                "{} needs parameter vectors of length >= 2, got {n}",
                self.theorem
            )));
        }
        for (i, &v) in self.varied.iter().chain(&self.varied_star).enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    index: i % n,
                    value: v,
                });
            }
            if self.theorem != TheoremId::FrechetLocationRh && v <= 0.0 {
                return Err(Error::NonPositive {
                    index: i % n,
                    value: v,
                });
            }
        }
        use TheoremId::*;
        let t = self.theorem;
        let frechet = matches!(
            t,
            FrechetScaleRh | FrechetScaleRhCorRecip | FrechetScaleRhCorPlain | FrechetLocationRh
        );
        let takes_map = matches!(t, FrechetScaleRh | ScaleMaxSt);
        let takes_gen = t.is_archimedean();
        let takes_baseline = !frechet;
        let takes_case = matches!(
            t,
            FrechetScaleRh | ScaleMinHr | ScaleMinDisp | EsMinStLambda | GeMinStLambdaCor
        );
        let takes_part = matches!(t, FrechetScaleRh | FrechetScaleRhCorPlain | ArchMaxSt);
        let takes_mu = matches!(
            t,
            FrechetScaleRh | FrechetScaleRhCorRecip | FrechetScaleRhCorPlain
        );
        let takes_lambda = matches!(
            t,
            FrechetLocationRh | EsMinHrAlpha | GeMinHrAlphaCor | ArchMaxSt | ArchMaxStLogmajCor
        );
        let takes_alpha = frechet || matches!(t, EsMinStLambda | GeMinStLambdaCor);
        self.reject(!takes_map && self.map.is_some(), "map")?;
        self.reject(
            !takes_gen && (self.generator.is_some() || self.generator_star.is_some()),
            "generator",
        )?;
        self.reject(!takes_baseline && self.baseline.is_some(), "baseline")?;
        self.reject(!takes_case && self.case.is_some(), "case")?;
        self.reject(!takes_part && self.part.is_some(), "part")?;
        self.reject(!takes_mu && self.mu.is_some(), "mu")?;
        self.reject(!takes_lambda && self.lambda.is_some(), "lambda")?;
        self.reject(!takes_alpha && self.alpha.is_some(), "alpha")?;
        if takes_map {
            self.need(self.map, "map")?;
        }
        if t == FrechetScaleRh {
            self.need(self.case, "case")?;
        }
        if takes_gen {
            self.need(self.generator, "generator")?;
            self.need(self.generator_star, "generator_star")?;
        }
        if t == ArchMaxSt {
            self.need(self.part, "part")?;
        }
        if takes_lambda {
            self.need(self.lambda, "lambda")?;
        }
        if takes_alpha {
            self.need(self.alpha, "alpha")?;
        }
        if matches!(
            t,
            ScaleMinHr | ScaleMinDisp | ScaleMaxSt | EsMinHrAlpha | EsMinStLambda
        ) {
            self.need(self.baseline, "baseline")?;
        }
        if matches!(t, GeMinHrAlphaCor | GeMinStLambdaCor)
            && !matches!(self.baseline, None | Some(Baseline::Exponential))
        {
            return Err(Error::MalformedInstance(format!(
                "{t} is stated for the exponential baseline"
            )));
        }
        Ok(())
    }

    fn baseline_or_exp(&self) -> Baseline {
        self.baseline.unwrap_or(Baseline::Exponential)
    }
}

/// Raw material behind a hypothesis verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Majorization {
        x: Vec<f64>,
        y: Vec<f64>,
        order: OrderKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        map: Option<MonotoneMap>,
        verdict: MajorizationVerdict,
    },
    Monotone {
        function: String,
        verdict: MonotoneVerdict,
    },
    Shape {
        generator: Generator,
        property: ShapeProperty,
        verdict: ShapeVerdict,
    },
    Superadditive {
        outer: Generator,
        inner: Generator,
        verdict: SuperadditivityVerdict,
    },
    Scalar {
        statement: String,
        value: f64,
        holds: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisResult {
    pub name: String,
    pub holds: bool,
    pub evidence: Vec<Evidence>,
}

impl HypothesisResult {
    fn single(name: impl Into<String>, holds: bool, e: Evidence) -> Self {
        HypothesisResult {
            name: name.into(),
            holds,
            evidence: vec![e],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "hypothesis_not_met")]
    HypothesisNotMet,
    #[serde(rename = "REFUTED")]
    Refuted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::HypothesisNotMet => "hypothesis_not_met",
            Status::Refuted => "REFUTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub theorem: TheoremId,
    /// The instance as evaluated, with inferred case/part filled in.
    pub instance: TheoremInstance,
    pub varied_parameter: String,
    pub hypothesis_results: Vec<HypothesisResult>,
    pub conclusion_result: OrderVerdict,
    pub order: StochOrder,
    /// Claimed relation of `X` against `X*`.
    pub claimed: Direction,
    pub status: Status,
    pub measured_direction: Option<Direction>,
    /// `None` when neither direction could be separated from the other.
    pub matches_claim: Option<bool>,
    pub tolerance: f64,
    pub refute_threshold: f64,
    pub hypothesis_tolerance: f64,
    /// Text forms of `X` and `X*` (extremes), re-parseable.
    pub models: [String; 2],
    pub defaults: DefaultsTable,
}

impl TheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_results.iter().all(|h| h.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Conclusion grid (x-grid, or probability grid for disp).
    pub grid: Option<GridSpec>,
    /// Points per hypothesis monotonicity grid; defaults to `HYPOTHESIS_GRID_POINTS`.
    pub hypothesis_points: Option<usize>,
    pub tol: Option<f64>,
    pub hypothesis_tol: Option<f64>,
}

struct Ctx {
    htol: f64,
    hpoints: usize,
    /// x-range covered by the conclusion check.
    x_lo: f64,
    x_hi: f64,
}

fn pv(v: &[f64]) -> Result<ParamVector> {
    ParamVector::new(v.to_vec())
}

fn maj(name: &str, x: &[f64], y: &[f64], kind: OrderKind, tol: f64) -> Result<HypothesisResult> {
    let verdict = check_majorization(&pv(x)?, &pv(y)?, kind, tol)?;
    Ok(HypothesisResult::single(
        name,
        verdict.holds,
        Evidence::Majorization {
            x: x.to_vec(),
            y: y.to_vec(),
            order: kind,
            map: None,
            verdict,
        },
    ))
}

fn maj_f(
    name: &str,
    x: &[f64],
    y: &[f64],
    map: MonotoneMap,
    flavor: Flavor,
    tol: f64,
) -> Result<HypothesisResult> {
    let verdict = check_f_majorization(&pv(x)?, &pv(y)?, &map, flavor, tol)?;
    let order = match flavor {
        Flavor::WeakSub => OrderKind::WeakSub,
        Flavor::WeakSuper => OrderKind::WeakSuper,
        Flavor::Major => OrderKind::Majorize,
    };
    Ok(HypothesisResult::single(
        name,
        verdict.holds,
        Evidence::Majorization {
            x: x.to_vec(),
            y: y.to_vec(),
            order,
            map: Some(map),
            verdict,
        },
    ))
}

fn scalar(name: &str, statement: String, value: f64, holds: bool) -> HypothesisResult {
    HypothesisResult::single(
        name,
        holds,
        Evidence::Scalar {
            statement,
            value,
            holds,
        },
    )
}

/// Monotonicity of `f` on `[lo, hi]`. A degenerate range is trivially monotone.
fn mono<F>(
    name: &str,
    function: &str,
    f: F,
    lo: f64,
    hi: f64,
    dir: Monotonicity,
    ctx: &Ctx,
) -> Result<HypothesisResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(hi > lo) || (hi - lo) <= 1e-12 * lo.abs().max(hi.abs()).max(1.0) {
        return Ok(scalar(name, format!("{function} on a single point"), lo, true));
    }
    let spacing = if lo > 0.0 { Spacing::Log } else { Spacing::Linear };
    let grid = GridSpec::new(lo, hi, ctx.hpoints, spacing)?;
    let verdict = check_monotone(f, grid, dir, ctx.htol)?;
    Ok(HypothesisResult::single(
        name,
        verdict.holds,
        Evidence::Monotone {
            function: format!("{function} {dir}"),
            verdict,
        },
    ))
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &t| {
        (a.min(t), b.max(t))
    })
}

fn hull(a: &[f64], b: &[f64]) -> (f64, f64) {
    let (a0, a1) = min_max(a);
    let (b0, b1) = min_max(b);
    (a0.min(b0), a1.max(b1))
}

fn mapped(map: &MonotoneMap, v: &[f64]) -> Result<Vec<f64>> {
    v.iter().map(|&t| map.apply(t)).collect()
}

/// Scaled-argument range `[min λ · x_lo, max λ · x_hi]` over both vectors.
fn scaled_range(inst: &TheoremInstance, ctx: &Ctx) -> (f64, f64) {
    let (lo, hi) = hull(&inst.varied, &inst.varied_star);
    (lo * ctx.x_lo, hi * ctx.x_hi)
}

fn models(inst: &TheoremInstance) -> Result<(ExtremeDistribution, ExtremeDistribution, StochOrder)> {
    use TheoremId::*;
    let build = |v: &[f64]| -> Result<ExtremeDistribution> {
        let comps = |f: &dyn Fn(f64) -> Result<DistributionSpec>| -> Result<Vec<DistributionSpec>> {
            v.iter().map(|&p| f(p)).collect()
        };
        match inst.theorem {
            FrechetScaleRh | FrechetScaleRhCorRecip | FrechetScaleRhCorPlain => {
                let (mu, alpha) = (inst.mu.unwrap_or(0.0), inst.need(inst.alpha, "alpha")?);
                ExtremeDistribution::max_of(comps(&|l| DistributionSpec::frechet(mu, l, alpha))?)
            }
            FrechetLocationRh => {
                let (lambda, alpha) = (inst.need(inst.lambda, "lambda")?, inst.need(inst.alpha, "alpha")?);
                ExtremeDistribution::max_of(comps(&|m| DistributionSpec::frechet(m, lambda, alpha))?)
            }
            ScaleMinHr | ScaleMinDisp => {
                let b = inst.need(inst.baseline, "baseline")?;
                ExtremeDistribution::min_of(comps(&|l| DistributionSpec::scale(b, l))?)
            }
            ScaleMaxSt => {
                let b = inst.need(inst.baseline, "baseline")?;
                ExtremeDistribution::max_of(comps(&|l| DistributionSpec::scale(b, l))?)
            }
            EsMinHrAlpha => {
                let (b, lambda) = (
                    inst.need(inst.baseline, "baseline")?,
                    inst.need(inst.lambda, "lambda")?,
                );
                ExtremeDistribution::min_of(comps(&|a| DistributionSpec::exp_scale(b, a, lambda))?)
            }
            GeMinHrAlphaCor => {
                let lambda = inst.need(inst.lambda, "lambda")?;
                ExtremeDistribution::min_of(comps(&|a| DistributionSpec::ge(a, lambda))?)
            }
            EsMinStLambda => {
                let (b, alpha) = (
                    inst.need(inst.baseline, "baseline")?,
                    inst.need(inst.alpha, "alpha")?,
                );
                ExtremeDistribution::min_of(comps(&|l| DistributionSpec::exp_scale(b, alpha, l))?)
            }
            GeMinStLambdaCor => {
                let alpha = inst.need(inst.alpha, "alpha")?;
                ExtremeDistribution::min_of(comps(&|l| DistributionSpec::ge(alpha, l))?)
            }
            ArchMaxSt | ArchMaxStLogmajCor => unreachable!("built separately"),
        }
    };
    let order = match inst.theorem {
        FrechetScaleRh | FrechetScaleRhCorRecip | FrechetScaleRhCorPlain | FrechetLocationRh => {
            StochOrder::Rh
        }
        ScaleMinHr | EsMinHrAlpha | GeMinHrAlphaCor => StochOrder::Hr,
        ScaleMinDisp => StochOrder::Disp,
        ScaleMaxSt | EsMinStLambda | GeMinStLambdaCor | ArchMaxSt | ArchMaxStLogmajCor => StochOrder::St,
    };
    if inst.theorem.is_archimedean() {
        let lambda = inst.need(inst.lambda, "lambda")?;
        let b = inst.baseline_or_exp();
        let x = ExtremeDistribution::arch_max(
            inst.need(inst.generator, "generator")?,
            inst.varied.clone(),
            lambda,
            b,
        )?;
        let xs = ExtremeDistribution::arch_max(
            inst.need(inst.generator_star, "generator_star")?,
            inst.varied_star.clone(),
            lambda,
            b,
        )?;
        return Ok((x, xs, order));
    }
    Ok((build(&inst.varied)?, build(&inst.varied_star)?, order))
}

fn case_dir(case: Case) -> Monotonicity {
    match case {
        Case::Decreasing => Monotonicity::Nonincreasing,
        Case::Increasing => Monotonicity::Nondecreasing,
    }
}

/// Picks the case whose monotonicity hypothesis holds (decreasing first),
/// unless one was given.
fn resolve_case<F>(
    given: Option<Case>,
    name: &str,
    function: &str,
    f: F,
    lo: f64,
    hi: f64,
    ctx: &Ctx,
) -> Result<(Case, HypothesisResult)>
where
    F: Fn(f64) -> Result<f64> + Sync + Copy,
{
    if let Some(c) = given {
        return Ok((c, mono(name, function, f, lo, hi, case_dir(c), ctx)?));
    }
    let dec = mono(name, function, f, lo, hi, Monotonicity::Nonincreasing, ctx)?;
    if dec.holds {
        return Ok((Case::Decreasing, dec));
    }
    let inc = mono(name, function, f, lo, hi, Monotonicity::Nondecreasing, ctx)?;
    if inc.holds {
        return Ok((Case::Increasing, inc));
    }
    Ok((Case::Decreasing, dec))
}

fn hypotheses(inst: &mut TheoremInstance, ctx: &Ctx) -> Result<(Vec<HypothesisResult>, Direction)> {
    use TheoremId::*;
    let tol = ctx.htol;
    let (x, xs) = (inst.varied.clone(), inst.varied_star.clone());
    let mut hyps = Vec::new();
    let claim = match inst.theorem {
        FrechetScaleRh => {
            let map = inst.need(inst.map, "map")?;
            let case = inst.need(inst.case, "case")?;
            let alpha = inst.need(inst.alpha, "alpha")?;
            let part = match inst.part {
                Some(p) => p,
                None => {
                    return Err(Error::MalformedInstance(format!("{} needs `part`", inst.theorem)));
                }
            };
            let want_inc = case == Case::Increasing;
            hyps.push(scalar(
                "f strictly monotone as the case requires",
                format!(
                    "f = {map} is strictly {}",
                    if want_inc { "increasing" } else { "decreasing" }
                ),
                if map.is_increasing() { 1.0 } else { -1.0 },
                map.is_increasing() == want_inc,
            ));
            let (lo, hi) = hull(&mapped(&map, &x)?, &mapped(&map, &xs)?);
            let g = move |a: f64| -> Result<f64> {
                Ok(map.inverse_derivative(a)? * map.inverse(a)?.powf(alpha - 1.0))
            };
            let dir = match (part, case) {
                (Part::I, Case::Decreasing) | (Part::II, Case::Increasing) => Monotonicity::Nondecreasing,
                (Part::I, Case::Increasing) | (Part::II, Case::Decreasing) => Monotonicity::Nonincreasing,
            };
            hyps.push(mono(
                "(f^-1)'(a) (f^-1(a))^(alpha-1) monotone",
                "(f^-1)'(a) (f^-1(a))^(alpha-1)",
                g,
                lo,
                hi,
                dir,
                ctx,
            )?);
            hyps.push(match part {
                Part::I => maj_f(
                    "f(lambda*) weakly supermajorized by f(lambda)",
                    &xs,
                    &x,
                    map,
                    Flavor::WeakSuper,
                    tol,
                )?,
                Part::II => maj_f(
                    "f(lambda) weakly submajorized by f(lambda*)",
                    &x,
                    &xs,
                    map,
                    Flavor::WeakSub,
                    tol,
                )?,
            });
            match case {
                Case::Decreasing => Direction::Ge,
                Case::Increasing => Direction::Le,
            }
        }
        FrechetScaleRhCorRecip => {
            let rx: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
            let rxs: Vec<f64> = xs.iter().map(|v| 1.0 / v).collect();
            hyps.push(maj(
                "1/lambda* weakly supermajorized by 1/lambda",
                &rxs,
                &rx,
                OrderKind::WeakSuper,
                tol,
            )?);
            Direction::Ge
        }
        FrechetScaleRhCorPlain => {
            let alpha = inst.need(inst.alpha, "alpha")?;
            let part = *inst
                .part
                .get_or_insert(if alpha >= 1.0 { Part::I } else { Part::II });
            match part {
                Part::I => {
                    hyps.push(scalar("alpha >= 1", "alpha >= 1".into(), alpha, alpha >= 1.0));
                    hyps.push(maj(
                        "lambda* weakly submajorized by lambda",
                        &xs,
                        &x,
                        OrderKind::WeakSub,
                        tol,
                    )?);
                    Direction::Ge
                }
                Part::II => {
                    hyps.push(scalar("alpha <= 1", "alpha <= 1".into(), alpha, alpha <= 1.0));
                    hyps.push(maj(
                        "lambda* weakly supermajorized by lambda",
                        &xs,
                        &x,
                        OrderKind::WeakSuper,
                        tol,
                    )?);
                    Direction::Le
                }
            }
        }
        FrechetLocationRh => {
            hyps.push(maj(
                "mu* weakly submajorized by mu",
                &xs,
                &x,
                OrderKind::WeakSub,
                tol,
            )?);
            Direction::Ge
        }
        ScaleMinHr | ScaleMinDisp => {
            let b = inst.need(inst.baseline, "baseline")?;
            let (lo, hi) = scaled_range(inst, ctx);
            hyps.push(mono(
                "u r(u) nondecreasing",
                "u r(u)",
                |u| Ok(u * b.hazard(u)?),
                lo,
                hi,
                Monotonicity::Nondecreasing,
                ctx,
            )?);
            let (case, h) = resolve_case(
                inst.case,
                "u^2 r'(u) monotone as the case requires",
                "u^2 r'(u)",
                |u| Ok(u * u * b.hazard_derivative(u)?),
                lo,
                hi,
                ctx,
            )?;
            inst.case = Some(case);
            hyps.push(h);
            if inst.theorem == ScaleMinDisp {
                hyps.push(mono(
                    "r(u) nonincreasing",
                    "r(u)",
                    |u| b.hazard(u),
                    lo,
                    hi,
                    Monotonicity::Nonincreasing,
                    ctx,
                )?);
            }
            match case {
                Case::Decreasing => {
                    hyps.push(maj(
                        "lambda* weakly supermajorized by lambda",
                        &xs,
                        &x,
                        OrderKind::WeakSuper,
                        tol,
                    )?);
                    Direction::Ge
                }
                Case::Increasing => {
                    hyps.push(maj(
                        "lambda* weakly submajorized by lambda",
                        &xs,
                        &x,
                        OrderKind::WeakSub,
                        tol,
                    )?);
                    Direction::Le
                }
            }
        }
        ScaleMaxSt => {
            let b = inst.need(inst.baseline, "baseline")?;
            let map = inst.need(inst.map, "map")?;
            hyps.push(scalar(
                "f strictly increasing",
                format!("f = {map} is strictly increasing"),
                if map.is_increasing() { 1.0 } else { -1.0 },
                map.is_increasing(),
            ));
            if map.is_increasing() {
                let (lo, hi) = scaled_range(inst, ctx);
                let (a0, a1) = hull(&mapped(&map, &x)?, &mapped(&map, &xs)?);
                let (lo, hi) = (map.apply(lo)?.min(a0), map.apply(hi)?.max(a1));
                let g = move |y: f64| -> Result<f64> {
                    Ok(map.inverse_derivative(y)? * b.rev_hazard(map.inverse(y)?)?)
                };
                hyps.push(mono(
                    "(f^-1)'(y) r~(f^-1(y)) nonincreasing",
                    "(f^-1)'(y) r~(f^-1(y))",
                    g,
                    lo,
                    hi,
                    Monotonicity::Nonincreasing,
                    ctx,
                )?);
            }
            hyps.push(maj_f(
                "f(lambda*) weakly supermajorized by f(lambda)",
                &xs,
                &x,
                map,
                Flavor::WeakSuper,
                tol,
            )?);
            Direction::Ge
        }
        EsMinHrAlpha | GeMinHrAlphaCor => {
            hyps.push(maj(
                "alpha* weakly supermajorized by alpha",
                &xs,
                &x,
                OrderKind::WeakSuper,
                tol,
            )?);
            Direction::Le
        }
        EsMinStLambda | GeMinStLambdaCor => {
            let b = inst.baseline_or_exp();
            let alpha = inst.need(inst.alpha, "alpha")?;
            let case = if inst.theorem == GeMinStLambdaCor {
                let case = *inst.case.get_or_insert(if alpha <= 1.0 {
                    Case::Decreasing
                } else {
                    Case::Increasing
                });
                hyps.push(match case {
                    Case::Decreasing => scalar("alpha <= 1", "alpha <= 1".into(), alpha, alpha <= 1.0),
                    Case::Increasing => scalar("alpha >= 1", "alpha >= 1".into(), alpha, alpha >= 1.0),
                });
                case
            } else {
                let (lo, hi) = scaled_range(inst, ctx);
                let (case, h) = resolve_case(
                    inst.case,
                    "q(alpha, u) monotone as the case requires",
                    "q(alpha, u)",
                    |u| es_q(&b, alpha, u),
                    lo,
                    hi,
                    ctx,
                )?;
                inst.case = Some(case);
                hyps.push(h);
                case
            };
            match case {
                Case::Decreasing => {
                    hyps.push(maj(
                        "lambda* weakly supermajorized by lambda",
                        &xs,
                        &x,
                        OrderKind::WeakSuper,
                        tol,
                    )?);
                    Direction::Ge
                }
                Case::Increasing => {
                    hyps.push(maj(
                        "lambda* weakly submajorized by lambda",
                        &xs,
                        &x,
                        OrderKind::WeakSub,
                        tol,
                    )?);
                    Direction::Le
                }
            }
        }
        ArchMaxSt | ArchMaxStLogmajCor => {
            let g1 = inst.need(inst.generator, "generator")?;
            let g2 = inst.need(inst.generator_star, "generator_star")?;
            let part = if inst.theorem == ArchMaxSt {
                inst.need(inst.part, "part")?
            } else {
                Part::I
            };
            let (shape, outer, inner) = match part {
                Part::I => (ShapeProperty::LogConvex, g2, g1),
                Part::II => (ShapeProperty::LogConcave, g1, g2),
            };
            let s1 = check_generator_shape(&g1, shape, None, None)?;
            let s2 = check_generator_shape(&g2, shape, None, None)?;
            hyps.push(HypothesisResult {
                name: format!("phi or phi* {shape}"),
                holds: s1.holds || s2.holds,
                evidence: vec![
                    Evidence::Shape {
                        generator: g1,
                        property: shape,
                        verdict: s1,
                    },
                    Evidence::Shape {
                        generator: g2,
                        property: shape,
                        verdict: s2,
                    },
                ],
            });
            let sa = check_superadditive(&outer, &inner, None, None)?;
            hyps.push(HypothesisResult::single(
                format!("psi({outer}) o phi({inner}) superadditive"),
                sa.holds,
                Evidence::Superadditive {
                    outer,
                    inner,
                    verdict: sa,
                },
            ));
            match (inst.theorem, part) {
                (ArchMaxStLogmajCor, _) => {
                    hyps.push(maj(
                        "alpha* weakly log-majorized by alpha",
                        &xs,
                        &x,
                        OrderKind::LogWeak,
                        tol,
                    )?);
                    Direction::Le
                }
                (_, Part::I) => {
                    hyps.push(maj(
                        "alpha* weakly submajorized by alpha",
                        &xs,
                        &x,
                        OrderKind::WeakSub,
                        tol,
                    )?);
                    Direction::Ge
                }
                (_, Part::II) => {
                    hyps.push(maj(
                        "alpha* weakly supermajorized by alpha",
                        &xs,
                        &x,
                        OrderKind::WeakSuper,
                        tol,
                    )?);
                    Direction::Le
                }
            }
        }
    };
    Ok((hyps, claim))
}

/// Runs every hypothesis and the conclusion check of `instance`.
///
/// Status is `REFUTED` only when all hypotheses hold and the claimed
/// direction is violated by more than `REFUTE_FACTOR * tol`. For the
/// Archimedean statements the direction is measured rather than trusted:
/// any ordered verdict is consistent, and only a crossing refutes.
pub fn verify_theorem(instance: &TheoremInstance, opts: &VerifyOptions) -> Result<TheoremReport> {
    instance.validate()?;
    let mut inst = instance.clone();
    let (xm, xsm, order) = models(&inst)?;
    let grid = match (opts.grid, order) {
        (Some(g), _) => g,
        (None, StochOrder::Disp) => disp_grid(),
        (None, _) => default_grid(&xm, &xsm)?,
    };
    let (x_lo, x_hi) = if order == StochOrder::Disp {
        (
            xm.quantile(grid.lo)?.min(xsm.quantile(grid.lo)?),
            xm.quantile(grid.hi)?.max(xsm.quantile(grid.hi)?),
        )
    } else {
        (grid.lo, grid.hi)
    };
    let gengamma = matches!(inst.baseline, Some(Baseline::GenGamma { .. }));
    let htol = opts
        .hypothesis_tol
        .unwrap_or(if gengamma { TOL_NUMERIC } else { TOL_CLOSED_FORM });
    let ctx = Ctx {
        htol,
        hpoints: opts.hypothesis_points.unwrap_or(HYPOTHESIS_GRID_POINTS),
        x_lo: x_lo.max(f64::MIN_POSITIVE),
        x_hi,
    };
    let (hyps, claimed) = hypotheses(&mut inst, &ctx)?;
    let tol = opts.tol.unwrap_or_else(|| default_tolerance(&xm, &xsm, order));
    let verdict = check_order(&xm, &xsm, order, Some(grid), Some(tol))?;
    let threshold = REFUTE_FACTOR * tol;
    let hyps_hold = hyps.iter().all(|h| h.holds);
    let measured = verdict.direction();
    let status = if !hyps_hold {
        Status::HypothesisNotMet
    } else if inst.theorem.is_archimedean() {
        let crossing = verdict.relation == OrderRelation::Crossing
            && verdict.max_violation > threshold
            && verdict.max_reverse_violation > threshold;
        if crossing {
            Status::Refuted
        } else {
            Status::Confirmed
        }
    } else if verdict.violation(claimed) > threshold {
        Status::Refuted
    } else {
        Status::Confirmed
    };
    Ok(TheoremReport {
        schema: REPORT_SCHEMA,
        theorem: inst.theorem,
        varied_parameter: inst.theorem.varied_parameter().to_string(),
        hypothesis_results: hyps,
        order,
        claimed,
        status,
        matches_claim: measured.map(|d| d == claimed),
        measured_direction: measured,
        tolerance: tol,
        refute_threshold: threshold,
        hypothesis_tolerance: htol,
        models: [xm.to_string(), xsm.to_string()],
        defaults: DefaultsTable::default(),
        conclusion_result: verdict,
        instance: inst,
    })
}
