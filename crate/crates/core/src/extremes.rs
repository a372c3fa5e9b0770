//! Smallest and largest order statistics of independent heterogeneous samples,
//! and the largest order statistic of an Archimedean-coupled exponentiated
//! scale sample.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::copulas::Generator;
use crate::distributions::{ratio, Baseline, DistributionSpec, Lifetime};
use crate::error::{Error, Result};
use crate::numeric::invert_cdf;
use crate::text::{join_list, parse_list, split_head, split_top_level};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremeKind {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum SampleModel {
    Independent {
        components: Vec<DistributionSpec>,
    },
    /// `X_i ~ G(λx)^{α_i}` joined by the Archimedean copula with generator `φ`.
    Archimedean {
        generator: Generator,
        alphas: Vec<f64>,
        lambda: f64,
        baseline: Baseline,
    },
}

impl SampleModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            SampleModel::Independent { components } => {
                if components.len() < 2 {
                    return Err(Error::MalformedInstance(format!(
                        "an independent sample needs at least 2 components, got {}",
                        components.len()
                    )));
                }
                for c in components {
                    c.validated()?;
                }
            }
            SampleModel::Archimedean {
                generator,
                alphas,
                lambda,
                baseline,
            } => {
                generator.validated()?;
                baseline.validate()?;
                if alphas.is_empty() {
                    return Err(Error::EmptyVector);
                }
                for (i, &a) in alphas.iter().enumerate() {
                    if !a.is_finite() {
                        return Err(Error::NonFinite { index: i, value: a });
                    }
                    if a <= 0.0 {
                        return Err(Error::NonPositive { index: i, value: a });
                    }
                }
                if !(lambda.is_finite() && *lambda > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "lambda",
                        value: *lambda,
                        reason: "must be finite and > 0",
                    });
                }
            }
        }
        Ok(())
    }
}

/// Distribution of `X_{1:n}` or `X_{n:n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeDistribution {
    pub model: SampleModel,
    pub kind: ExtremeKind,
}

pub fn extreme_distribution(model: SampleModel, kind: ExtremeKind) -> Result<ExtremeDistribution> {
    ExtremeDistribution::new(model, kind)
}

/// Archimedean max cdf with a saturation flag (`ψ` hit the cap somewhere).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArchCdf {
    pub value: f64,
    pub saturated: bool,
}

/// `φ(Σ ψ(G(λx)^{α_i}))`.
pub fn archimedean_max_cdf(
    generator: &Generator,
    alphas: &[f64],
    lambda: f64,
    baseline: &Baseline,
    x: f64,
) -> Result<ArchCdf> {
    if x <= 0.0 {
        return Ok(ArchCdf {
            value: 0.0,
            saturated: false,
        });
    }
    let (ln_c, saturated) = arch_ln_cdf(generator, alphas, lambda, baseline, x)?;
    Ok(ArchCdf {
        value: ln_c.exp(),
        saturated,
    })
}

fn arch_ln_cdf(
    generator: &Generator,
    alphas: &[f64],
    lambda: f64,
    baseline: &Baseline,
    x: f64,
) -> Result<(f64, bool)> {
    let ln_g = baseline.ln_cdf(lambda * x);
    if ln_g == f64::NEG_INFINITY {
        return Ok((f64::NEG_INFINITY, true));
    }
    // the flag reports ψ beyond the cap; the uncapped sum is still used while
    // it is finite, so saturated values keep decaying toward 0
    let mut s = 0.0;
    let mut saturated = false;
    for &a in alphas {
        let p = generator.psi_from_log(a * ln_g)?;
        saturated |= generator.psi_capped(a * ln_g)?.1;
        s += p;
    }
    let ln_c = if s.is_finite() {
        generator.log_phi(s)?
    } else {
        f64::NEG_INFINITY
    };
    Ok((ln_c, saturated))
}

/// `Σ_i α λ_i^α (x - μ)^{-α-1}`: reversed hazard of the largest of
/// independent Fréchet(`μ`, `λ_i`, `α`) variables.
pub fn frechet_max_rev_hazard(mu: f64, lambdas: &[f64], alpha: f64, x: f64) -> Result<f64> {
    if lambdas.is_empty() {
        return Err(Error::EmptyVector);
    }
    if !(x > mu) {
        return Err(Error::Domain {
            what: "frechet_max_rev_hazard",
            value: x,
            domain: format!("({mu}, inf)"),
        });
    }
    for &l in lambdas {
        DistributionSpec::frechet(mu, l, alpha)?;
    }
    let z = x - mu;
    Ok(lambdas
        .iter()
        .map(|&l| alpha * l.powf(alpha) * z.powf(-alpha - 1.0))
        .sum())
}

impl ExtremeDistribution {
    pub fn new(model: SampleModel, kind: ExtremeKind) -> Result<Self> {
        model.validate()?;
        if matches!(model, SampleModel::Archimedean { .. }) && kind == ExtremeKind::Min {
            return Err(Error::Unsupported(
                "the Archimedean model only provides the distribution of the maximum".into(),
            ));
        }
        Ok(ExtremeDistribution { model, kind })
    }

    pub fn min_of(components: Vec<DistributionSpec>) -> Result<Self> {
        Self::new(SampleModel::Independent { components }, ExtremeKind::Min)
    }

    pub fn max_of(components: Vec<DistributionSpec>) -> Result<Self> {
        Self::new(SampleModel::Independent { components }, ExtremeKind::Max)
    }

    pub fn arch_max(generator: Generator, alphas: Vec<f64>, lambda: f64, baseline: Baseline) -> Result<Self> {
        Self::new(
            SampleModel::Archimedean {
                generator,
                alphas,
                lambda,
                baseline,
            },
            ExtremeKind::Max,
        )
    }

    fn components(&self) -> &[DistributionSpec] {
        match &self.model {
            SampleModel::Independent { components } => components,
            SampleModel::Archimedean { .. } => &[],
        }
    }

    /// `Σ ln sf_i` for the minimum, `Σ ln cdf_i` for the maximum.
    fn ln_product(&self, x: f64) -> f64 {
        match self.kind {
            ExtremeKind::Min => self.components().iter().map(|c| c.ln_sf(x)).sum(),
            ExtremeKind::Max => self.components().iter().map(|c| c.ln_cdf(x)).sum(),
        }
    }

    /// Analytic density: leave-one-out products for independent samples,
    /// chain rule through `φ` and `ψ` for the Archimedean one.
    fn density(&self, x: f64) -> Result<f64> {
        match &self.model {
            SampleModel::Independent { components } => {
                let logs: Vec<f64> = components
                    .iter()
                    .map(|c| match self.kind {
                        ExtremeKind::Min => c.ln_sf(x),
                        ExtremeKind::Max => c.ln_cdf(x),
                    })
                    .collect();
                let mut total = 0.0;
                for (i, c) in components.iter().enumerate() {
                    let p = c.pdf(x);
                    if p == 0.0 {
                        continue;
                    }
                    let rest: f64 = logs
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, l)| l)
                        .sum();
                    total += p * rest.exp();
                }
                Ok(total)
            }
            SampleModel::Archimedean { .. } => {
                if x <= 0.0 {
                    return Ok(0.0);
                }
                Ok(self.arch_rev_hazard(x)? * self.cdf(x))
            }
        }
    }

    fn arch_rev_hazard(&self, x: f64) -> Result<f64> {
        let SampleModel::Archimedean {
            generator,
            alphas,
            lambda,
            baseline,
        } = &self.model
        else {
            unreachable!()
        };
        let degenerate = || Error::Degenerate {
            what: "rev_hazard",
            x,
        };
        if x <= 0.0 {
            return Err(degenerate());
        }
        let u = lambda * x;
        let ln_g = baseline.ln_cdf(u);
        let rt = baseline.rev_hazard(u)?;
        let mut s = 0.0;
        let mut inner = 0.0;
        for &a in alphas {
            s += generator.psi_from_log(a * ln_g)?;
            inner += a * generator.dpsi_dlnu(a * ln_g)?;
        }
        // d/dx log φ(s(x)) with ds/dx = λ r̃(λx) Σ α_i (dψ/d ln u)(u_i)
        let r = generator.log_phi_prime(s)? * lambda * rt * inner;
        if r.is_finite() && r > 0.0 {
            Ok(r)
        } else {
            Err(degenerate())
        }
    }

    fn quantile_hints(&self, p: f64) -> (f64, f64) {
        match &self.model {
            SampleModel::Independent { components } => {
                let n = components.len() as f64;
                let qs =
                    |p: f64| -> Vec<f64> { components.iter().filter_map(|c| c.quantile(p).ok()).collect() };
                let (lo, hi) = match self.kind {
                    // F_1:n ≥ each F_i and F_1:n ≤ n max F_i
                    ExtremeKind::Min => (
                        qs(p / n).into_iter().fold(f64::INFINITY, f64::min),
                        qs(p).into_iter().fold(f64::INFINITY, f64::min),
                    ),
                    // F_n:n ≤ each F_i and F_n:n ≥ Π F_i ≥ (min F_i)^n
                    ExtremeKind::Max => (
                        qs(p).into_iter().fold(f64::NEG_INFINITY, f64::max),
                        qs(p.powf(1.0 / n)).into_iter().fold(f64::NEG_INFINITY, f64::max),
                    ),
                };
                (lo, hi)
            }
            SampleModel::Archimedean {
                alphas,
                lambda,
                baseline,
                ..
            } => {
                let a: f64 = alphas.iter().sum();
                let guess = baseline.quantile(p.powf(1.0 / a)).unwrap_or(1.0) / lambda;
                (0.5 * guess, 2.0 * guess)
            }
        }
    }
}

impl Lifetime for ExtremeDistribution {
    fn support_left(&self) -> f64 {
        let lefts = self.components().iter().map(|c| c.support_left());
        match (&self.model, self.kind) {
            (SampleModel::Archimedean { .. }, _) => 0.0,
            (_, ExtremeKind::Min) => lefts.fold(f64::INFINITY, f64::min),
            (_, ExtremeKind::Max) => lefts.fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 0.0;
        }
        match self.kind {
            ExtremeKind::Min => -self.ln_product(x).exp_m1(),
            ExtremeKind::Max => self.ln_cdf(x).exp(),
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 1.0;
        }
        match self.kind {
            ExtremeKind::Min => self.ln_product(x).exp(),
            ExtremeKind::Max => -self.ln_cdf(x).exp_m1(),
        }
    }

    fn ln_cdf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return f64::NEG_INFINITY;
        }
        match (&self.model, self.kind) {
            (
                SampleModel::Archimedean {
                    generator,
                    alphas,
                    lambda,
                    baseline,
                },
                _,
            ) => arch_ln_cdf(generator, alphas, *lambda, baseline, x)
                .map(|v| v.0)
                .unwrap_or(f64::NAN),
            (_, ExtremeKind::Max) => self.ln_product(x),
            (_, ExtremeKind::Min) => self.cdf(x).ln(),
        }
    }

    fn ln_sf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 0.0;
        }
        match self.kind {
            ExtremeKind::Min => self.ln_product(x),
            ExtremeKind::Max => self.sf(x).ln(),
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 0.0;
        }
        self.density(x).unwrap_or(f64::NAN)
    }

    fn hazard(&self, x: f64) -> Result<f64> {
        if x <= self.support_left() {
            return Err(Error::Degenerate { what: "hazard", x });
        }
        match (&self.model, self.kind) {
            (SampleModel::Independent { components }, ExtremeKind::Min) => {
                let mut r = 0.0;
                for c in components {
                    // components whose support starts later contribute nothing yet
                    if x > c.support_left() {
                        r += c.hazard(x)?;
                    }
                }
                Ok(r)
            }
            _ => ratio(self.density(x)?, self.sf(x), "hazard", x),
        }
    }

    fn rev_hazard(&self, x: f64) -> Result<f64> {
        if x <= self.support_left() {
            return Err(Error::Degenerate {
                what: "rev_hazard",
                x,
            });
        }
        match (&self.model, self.kind) {
            (SampleModel::Archimedean { .. }, _) => self.arch_rev_hazard(x),
            (SampleModel::Independent { components }, ExtremeKind::Max) => {
                components.iter().map(|c| c.rev_hazard(x)).sum()
            }
            _ => ratio(self.density(x)?, self.cdf(x), "rev_hazard", x),
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.quantile_hints(p);
        invert_cdf(|x| self.cdf(x), p, self.support_left(), lo, hi)
    }

    fn closed_form(&self) -> bool {
        match &self.model {
            SampleModel::Independent { components } => components.iter().all(|c| c.closed_form()),
            SampleModel::Archimedean { baseline, .. } => baseline.closed_form(),
        }
    }

    fn closed_form_quantile(&self) -> bool {
        false
    }
}

impl fmt::Display for ExtremeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.model {
            SampleModel::Independent { components } => {
                let head = match self.kind {
                    ExtremeKind::Min => "min",
                    ExtremeKind::Max => "max",
                };
                let body: Vec<String> = components.iter().map(|c| c.to_string()).collect();
                write!(f, "{head}[{}]", body.join(", "))
            }
            SampleModel::Archimedean {
                generator,
                alphas,
                lambda,
                baseline,
            } => write!(
                f,
                "max-arch[gen={generator}; alphas={}; lambda={lambda}; base={baseline}]",
                join_list(alphas)
            ),
        }
    }
}

/// Regroups top-level comma pieces into components: a piece whose head
/// (before any `=`) contains `:` starts a new component.
fn split_components(body: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for piece in split_top_level(body, ',')? {
        let piece = piece.trim();
        let head = piece.split('=').next().unwrap_or("");
        if head.contains(':') || out.is_empty() {
            out.push(piece.to_string());
        } else {
            let last = out.last_mut().expect("non-empty");
            last.push(',');
            last.push_str(piece);
        }
    }
    Ok(out)
}

fn parse_arch(input: &str, body: &str) -> Result<ExtremeDistribution> {
    let mut generator = None;
    let mut alphas = None;
    let mut lambda = None;
    let mut baseline = None;
    for item in split_top_level(body, ';')? {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::parse(input, format!("expected key=value, got `{item}`")))?;
        let v = v.trim();
        let dup = match k.trim() {
            "gen" => generator.replace(v.parse::<Generator>()?).is_some(),
            "alphas" => alphas.replace(parse_list(v)?).is_some(),
            "lambda" => lambda
                .replace(
                    v.parse::<f64>()
                        .map_err(|_| Error::parse(input, format!("`{v}` is not a number")))?,
                )
                .is_some(),
            "base" => baseline.replace(v.parse::<Baseline>()?).is_some(),
            other => return Err(Error::parse(input, format!("unknown key `{other}`"))),
        };
        if dup {
            return Err(Error::parse(input, format!("duplicate key `{}`", k.trim())));
        }
    }
    let missing = |k: &str| Error::parse(input, format!("missing key `{k}`"));
    ExtremeDistribution::arch_max(
        generator.ok_or_else(|| missing("gen"))?,
        alphas.ok_or_else(|| missing("alphas"))?,
        lambda.ok_or_else(|| missing("lambda"))?,
        baseline.ok_or_else(|| missing("base"))?,
    )
}

impl FromStr for ExtremeDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s
            .split_once('[')
            .ok_or_else(|| Error::parse(s, "expected min[...], max[...] or max-arch[...]"))?;
        let body = rest
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(s, "missing closing `]`"))?;
        match head.trim() {
            "max-arch" => parse_arch(s, body),
            h @ ("min" | "max") => {
                let components = split_components(body)?
                    .iter()
                    .map(|c| c.parse::<DistributionSpec>())
                    .collect::<Result<Vec<_>>>()?;
                let kind = if h == "min" {
                    ExtremeKind::Min
                } else {
                    ExtremeKind::Max
                };
                Self::new(SampleModel::Independent { components }, kind)
            }
            _ => Err(Error::parse(s, "expected min[...], max[...] or max-arch[...]")),
        }
    }
}

/// Either a single distribution or an extreme order statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Model {
    Single(DistributionSpec),
    Extreme(ExtremeDistribution),
}

impl Model {
    fn inner(&self) -> &dyn Lifetime {
        match self {
            Model::Single(d) => d,
            Model::Extreme(e) => e,
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (head, _) = split_head(t);
        if head.contains('[') || t.ends_with(']') {
            Ok(Model::Extreme(t.parse()?))
        } else {
            Ok(Model::Single(t.parse()?))
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Single(d) => d.fmt(f),
            Model::Extreme(e) => e.fmt(f),
        }
    }
}

impl Lifetime for Model {
    fn support_left(&self) -> f64 {
        self.inner().support_left()
    }
    fn cdf(&self, x: f64) -> f64 {
        self.inner().cdf(x)
    }
    fn sf(&self, x: f64) -> f64 {
        self.inner().sf(x)
    }
    fn pdf(&self, x: f64) -> f64 {
        self.inner().pdf(x)
    }
    fn ln_cdf(&self, x: f64) -> f64 {
        self.inner().ln_cdf(x)
    }
    fn ln_sf(&self, x: f64) -> f64 {
        self.inner().ln_sf(x)
    }
    fn hazard(&self, x: f64) -> Result<f64> {
        self.inner().hazard(x)
    }
    fn rev_hazard(&self, x: f64) -> Result<f64> {
        self.inner().rev_hazard(x)
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        self.inner().quantile(p)
    }
    fn closed_form(&self) -> bool {
        self.inner().closed_form()
    }
    fn closed_form_quantile(&self) -> bool {
        self.inner().closed_form_quantile()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ge(alpha: f64, lambda: f64) -> DistributionSpec {
        DistributionSpec::ge(alpha, lambda).unwrap()
    }

    fn frechet(mu: f64, lambda: f64, alpha: f64) -> DistributionSpec {
        DistributionSpec::frechet(mu, lambda, alpha).unwrap()
    }

    #[test]
    fn exponential_minimum() {
        let m = ExtremeDistribution::min_of(vec![ge(1.0, 1.0), ge(1.0, 2.0)]).unwrap();
        for x in [0.01, 0.5, 1.0, 4.0, 30.0] {
            assert!((m.sf(x) / (-3.0 * x).exp() - 1.0).abs() < 1e-14);
            assert!((m.hazard(x).unwrap() - 3.0).abs() < 1e-14);
            assert!((m.pdf(x) / (3.0 * (-3.0 * x).exp()) - 1.0).abs() < 1e-13);
        }
        let q = m.quantile(0.5).unwrap();
        assert!((q - std::f64::consts::LN_2 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn frechet_max_rev_hazard_value() {
        let v = frechet_max_rev_hazard(0.0, &[1.0, 2.0], 2.0, 3.0).unwrap();
        assert!((v - 10.0 / 27.0).abs() < 1e-15);
        let m = ExtremeDistribution::max_of(vec![frechet(0.0, 1.0, 2.0), frechet(0.0, 2.0, 2.0)]).unwrap();
        assert!((m.rev_hazard(3.0).unwrap() - v).abs() < 1e-15);
        // finite difference of ln cdf
        let h = 1e-5;
        let fd = (m.ln_cdf(3.0 + h) - m.ln_cdf(3.0 - h)) / (2.0 * h);
        assert!((fd - v).abs() < 1e-9);
        assert!(frechet_max_rev_hazard(0.0, &[1.0], 2.0, 0.0).is_err());
    }

    #[test]
    fn frechet_max_rev_hazard_properties() {
        let single = frechet_max_rev_hazard(0.5, &[1.7], 1.3, 2.0).unwrap();
        assert!((single - frechet(0.5, 1.7, 1.3).rev_hazard(2.0).unwrap()).abs() < 1e-14);
        let a = frechet_max_rev_hazard(0.0, &[0.4, 1.1, 2.5], 1.5, 3.0).unwrap();
        let b = frechet_max_rev_hazard(0.0, &[0.8, 2.2, 5.0], 1.5, 3.0).unwrap();
        assert!((b / a - 2f64.powf(1.5)).abs() < 1e-12);
    }

    #[test]
    fn iid_powers() {
        let d = frechet(0.0, 1.3, 0.8);
        let mn = ExtremeDistribution::min_of(vec![d; 3]).unwrap();
        let mx = ExtremeDistribution::max_of(vec![d; 3]).unwrap();
        for x in [0.2, 1.0, 5.0] {
            assert!((mn.sf(x) / d.sf(x).powi(3) - 1.0).abs() < 1e-13);
            assert!((mx.cdf(x) / d.cdf(x).powi(3) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn independence_generator_is_product() {
        let m = ExtremeDistribution::arch_max(
            Generator::Independence,
            vec![1.0, 1.0],
            1.0,
            Baseline::Exponential,
        )
        .unwrap();
        let g = 1.0 - (-1.0f64).exp();
        assert!((m.cdf(1.0) - g * g).abs() < 1e-15);
        let m = ExtremeDistribution::arch_max(
            Generator::Independence,
            vec![0.7, 2.3],
            1.9,
            Baseline::weibull(1.5).unwrap(),
        )
        .unwrap();
        let b = Baseline::weibull(1.5).unwrap();
        for x in [0.05, 0.6, 2.0] {
            let expect = b.cdf(1.9 * x).powf(3.0);
            assert!((m.cdf(x) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn clayton_value() {
        let g = Generator::clayton(1.0).unwrap();
        let v = archimedean_max_cdf(&g, &[1.0, 1.0], 1.0, &Baseline::Exponential, 1.0).unwrap();
        let u = 1.0 - (-1.0f64).exp();
        assert!((v.value - 1.0 / (2.0 / u - 1.0)).abs() < 1e-15);
        assert!((v.value - 0.46211715726000974).abs() < 1e-15);
        assert!(!v.saturated);
    }

    #[test]
    fn arch_density_matches_difference() {
        let base = Baseline::Exponential;
        for g in [
            Generator::Independence,
            Generator::clayton(2.0).unwrap(),
            Generator::gumbel(1.7).unwrap(),
        ] {
            let m = ExtremeDistribution::arch_max(g, vec![0.5, 2.0, 1.2], 1.3, base).unwrap();
            for x in [0.1, 0.8, 2.5] {
                let h = 1e-6 * x;
                let fd = (m.cdf(x + h) - m.cdf(x - h)) / (2.0 * h);
                let p = m.pdf(x);
                assert!((fd - p).abs() <= 1e-6 * p, "{g} x={x}: {fd} vs {p}");
            }
        }
    }

    #[test]
    fn arch_min_unsupported() {
        let m = SampleModel::Archimedean {
            generator: Generator::Independence,
            alphas: vec![1.0, 2.0],
            lambda: 1.0,
            baseline: Baseline::Exponential,
        };
        assert!(matches!(
            extreme_distribution(m, ExtremeKind::Min),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn saturation_near_zero() {
        let g = Generator::clayton(3.0).unwrap();
        let v = archimedean_max_cdf(&g, &[2.0, 3.0], 1.0, &Baseline::Exponential, 1e-4).unwrap();
        assert!(v.saturated);
        assert!(v.value < 1e-12);
        assert_eq!(
            archimedean_max_cdf(&g, &[2.0], 1.0, &Baseline::Exponential, 0.0)
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn text_forms() {
        for s in [
            "min[ge:alpha=2,lambda=4, ge:alpha=2,lambda=0.5]",
            "max[frechet:mu=0,lambda=1,alpha=2, frechet:mu=0,lambda=2,alpha=2]",
            "min[es:base=gengamma(p=0.5,q=0.5),alpha=1,lambda=3, scale:base=exp,lambda=1]",
            "max-arch[gen=clayton:theta=1; alphas=2,3; lambda=1; base=exp]",
        ] {
            let m: ExtremeDistribution = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
            assert_eq!(m.to_string().parse::<ExtremeDistribution>().unwrap(), m);
        }
        assert!("min[ge:alpha=2,lambda=4]".parse::<ExtremeDistribution>().is_err());
        assert!("max-arch[gen=clayton:theta=1; alphas=2,3; lambda=1]"
            .parse::<ExtremeDistribution>()
            .is_err());
        assert!("median[ge:alpha=2,lambda=4, ge:alpha=1,lambda=1]"
            .parse::<ExtremeDistribution>()
            .is_err());
        assert!(matches!(
            "ge:alpha=1,lambda=1".parse::<Model>().unwrap(),
            Model::Single(_)
        ));
        assert!(matches!(
            "max-arch[gen=independence; alphas=1,1; lambda=1; base=exp]"
                .parse::<Model>()
                .unwrap(),
            Model::Extreme(_)
        ));
    }
}
