//! Parametric lifetime families: Fréchet, scale and exponentiated-scale models
//! over a baseline, generalized exponential, and two-parameter Weibull.
//!
//! Tails are evaluated in log space where a closed form allows it, so survival
//! and distribution functions keep relative precision far into both tails.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};

use crate::error::{Error, Result};
use crate::numeric::{invert_cdf, richardson_derivative};
use crate::text::{get_f64, parse_kv, split_head, split_top_level};

/// Denominators at or below this are treated as degenerate.
pub const DENOM_FLOOR: f64 = 1e-300;

/// Relative step for the Richardson derivative of a numeric hazard.
const HAZARD_DERIVATIVE_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalFn {
    Cdf,
    Sf,
    Pdf,
    Hazard,
    RevHazard,
}

impl FromStr for EvalFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "cdf" => Ok(EvalFn::Cdf),
            "sf" => Ok(EvalFn::Sf),
            "pdf" => Ok(EvalFn::Pdf),
            "hazard" => Ok(EvalFn::Hazard),
            "rev_hazard" => Ok(EvalFn::RevHazard),
            _ => Err(Error::parse(s, "expected cdf|sf|pdf|hazard|rev_hazard")),
        }
    }
}

impl fmt::Display for EvalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalFn::Cdf => "cdf",
            EvalFn::Sf => "sf",
            EvalFn::Pdf => "pdf",
            EvalFn::Hazard => "hazard",
            EvalFn::RevHazard => "rev_hazard",
        })
    }
}

/// Anything with a lifetime distribution on `(support_left, ∞)`.
pub trait Lifetime: Send + Sync {
    fn support_left(&self) -> f64;
    fn cdf(&self, x: f64) -> f64;
    fn sf(&self, x: f64) -> f64;
    fn pdf(&self, x: f64) -> f64;

    fn ln_cdf(&self, x: f64) -> f64 {
        self.cdf(x).ln()
    }

    fn ln_sf(&self, x: f64) -> f64 {
        self.sf(x).ln()
    }

    fn hazard(&self, x: f64) -> Result<f64> {
        if x <= self.support_left() {
            return Err(Error::Degenerate { what: "hazard", x });
        }
        ratio(self.pdf(x), self.sf(x), "hazard", x)
    }

    fn rev_hazard(&self, x: f64) -> Result<f64> {
        if x <= self.support_left() {
            return Err(Error::Degenerate {
                what: "rev_hazard",
                x,
            });
        }
        ratio(self.pdf(x), self.cdf(x), "rev_hazard", x)
    }

    fn quantile(&self, p: f64) -> Result<f64>;

    /// cdf/sf/pdf/hazards come from closed forms (no special-function series,
    /// no bisection, no finite differences).
    fn closed_form(&self) -> bool;

    fn closed_form_quantile(&self) -> bool;

    fn eval(&self, which: EvalFn, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain {
                what: "eval",
                value: x,
                domain: "finite reals".into(),
            });
        }
        match which {
            EvalFn::Cdf => Ok(self.cdf(x)),
            EvalFn::Sf => Ok(self.sf(x)),
            EvalFn::Pdf => Ok(self.pdf(x)),
            EvalFn::Hazard => self.hazard(x),
            EvalFn::RevHazard => self.rev_hazard(x),
        }
    }
}

pub(crate) fn ratio(num: f64, den: f64, what: &'static str, x: f64) -> Result<f64> {
    if !(den > DENOM_FLOOR) || !num.is_finite() {
        return Err(Error::Degenerate { what, x });
    }
    let r = num / den;
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::Degenerate { what, x })
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "quantile",
            value: p,
            domain: "(0, 1)".into(),
        })
    }
}

/// `ln(1 - e^{-s})` for `s > 0`.
fn ln_one_minus_exp_neg(s: f64) -> f64 {
    if s > std::f64::consts::LN_2 {
        (-(-s).exp()).ln_1p()
    } else {
        (-(-s).exp_m1()).ln()
    }
}

/// Baseline distribution `G` on `(0, ∞)` for the scale and exponentiated-scale models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Baseline {
    /// `G(x) = 1 - e^{-x}`.
    Exponential,
    /// `G(x) = 1 - e^{-x^k}`.
    Weibull { k: f64 },
    /// Density `p / Γ(q/p) · x^{q-1} e^{-x^p}`.
    GenGamma { p: f64, q: f64 },
}

impl Baseline {
    pub fn weibull(k: f64) -> Result<Self> {
        positive("k", k)?;
        Ok(Baseline::Weibull { k })
    }

    pub fn gengamma(p: f64, q: f64) -> Result<Self> {
        positive("p", p)?;
        positive("q", q)?;
        Ok(Baseline::GenGamma { p, q })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Baseline::Exponential => Ok(()),
            Baseline::Weibull { k } => positive("k", k),
            Baseline::GenGamma { p, q } => {
                positive("p", p)?;
                positive("q", q)
            }
        }
    }

    pub fn cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        match *self {
            Baseline::Exponential => -(-u).exp_m1(),
            Baseline::Weibull { k } => -(-u.powf(k)).exp_m1(),
            Baseline::GenGamma { p, q } => gamma_lr(q / p, u.powf(p)),
        }
    }

    pub fn sf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 1.0;
        }
        match *self {
            Baseline::Exponential => (-u).exp(),
            Baseline::Weibull { k } => (-u.powf(k)).exp(),
            Baseline::GenGamma { p, q } => gamma_ur(q / p, u.powf(p)),
        }
    }

    pub fn ln_cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match *self {
            Baseline::Exponential => ln_one_minus_exp_neg(u),
            Baseline::Weibull { k } => ln_one_minus_exp_neg(u.powf(k)),
            Baseline::GenGamma { .. } => {
                let c = self.cdf(u);
                if c > 0.5 {
                    (-self.sf(u)).ln_1p()
                } else {
                    c.ln()
                }
            }
        }
    }

    pub fn ln_sf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        match *self {
            Baseline::Exponential => -u,
            Baseline::Weibull { k } => -u.powf(k),
            Baseline::GenGamma { .. } => {
                let s = self.sf(u);
                if s > 0.5 {
                    (-self.cdf(u)).ln_1p()
                } else {
                    s.ln()
                }
            }
        }
    }

    pub fn ln_pdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match *self {
            Baseline::Exponential => -u,
            Baseline::Weibull { k } => k.ln() + (k - 1.0) * u.ln() - u.powf(k),
            Baseline::GenGamma { p, q } => p.ln() - ln_gamma(q / p) + (q - 1.0) * u.ln() - u.powf(p),
        }
    }

    pub fn pdf(&self, u: f64) -> f64 {
        self.ln_pdf(u).exp()
    }

    /// Hazard rate `r(u) = g(u) / (1 - G(u))`.
    pub fn hazard(&self, u: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(Error::Degenerate { what: "hazard", x: u });
        }
        let r = match *self {
            Baseline::Exponential => 1.0,
            Baseline::Weibull { k } => k * u.powf(k - 1.0),
            Baseline::GenGamma { .. } => {
                let ls = self.ln_sf(u);
                if !(ls > DENOM_FLOOR.ln()) {
                    return Err(Error::Degenerate { what: "hazard", x: u });
                }
                (self.ln_pdf(u) - ls).exp()
            }
        };
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::Degenerate { what: "hazard", x: u })
        }
    }

    /// Reversed hazard rate `r̃(u) = g(u) / G(u)`.
    pub fn rev_hazard(&self, u: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(Error::Degenerate {
                what: "rev_hazard",
                x: u,
            });
        }
        let r = match *self {
            Baseline::Exponential => 1.0 / u.exp_m1(),
            Baseline::Weibull { k } => k * u.powf(k - 1.0) / u.powf(k).exp_m1(),
            Baseline::GenGamma { .. } => {
                let lc = self.ln_cdf(u);
                if !(lc > DENOM_FLOOR.ln()) {
                    return Err(Error::Degenerate {
                        what: "rev_hazard",
                        x: u,
                    });
                }
                (self.ln_pdf(u) - lc).exp()
            }
        };
        // closed forms may underflow to 0 deep in the right tail
        if r.is_finite() && r >= 0.0 {
            Ok(r)
        } else {
            Err(Error::Degenerate {
                what: "rev_hazard",
                x: u,
            })
        }
    }

    /// `r'(u)`: analytic for exponential and Weibull, Richardson-extrapolated
    /// central difference for the generalized gamma.
    pub fn hazard_derivative(&self, u: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(Error::Degenerate {
                what: "hazard_derivative",
                x: u,
            });
        }
        match *self {
            Baseline::Exponential => Ok(0.0),
            Baseline::Weibull { k } => Ok(k * (k - 1.0) * u.powf(k - 2.0)),
            Baseline::GenGamma { .. } => {
                let h = HAZARD_DERIVATIVE_STEP * u;
                // probe the outermost points first so failures surface as errors
                self.hazard(u - h)?;
                self.hazard(u + h)?;
                let d = richardson_derivative(|t| self.hazard(t).unwrap_or(f64::NAN), u, h);
                if d.is_finite() {
                    Ok(d)
                } else {
                    Err(Error::Degenerate {
                        what: "hazard_derivative",
                        x: u,
                    })
                }
            }
        }
    }

    pub fn closed_form(&self) -> bool {
        !matches!(self, Baseline::GenGamma { .. })
    }

    /// Quantile at `v = exp(ln_v)`; taking the log keeps precision for `v` near 1.
    pub fn quantile_from_ln(&self, ln_v: f64) -> Result<f64> {
        if !(ln_v < 0.0) || ln_v.is_nan() {
            return Err(Error::Domain {
                what: "quantile",
                value: ln_v.exp(),
                domain: "(0, 1)".into(),
            });
        }
        // -ln(1 - v)
        let e = -(-ln_v.exp_m1()).ln();
        match *self {
            Baseline::Exponential => Ok(e),
            Baseline::Weibull { k } => Ok(e.powf(1.0 / k)),
            Baseline::GenGamma { p, q } => {
                let v = ln_v.exp();
                check_probability(v)?;
                // the mean of x^p is q/p, so (q/p)^{1/p} is a sensible scale
                let guess = (q / p).powf(1.0 / p).max(1e-300);
                invert_cdf(|t| self.cdf(t), v, 0.0, 0.5 * guess, 2.0 * guess)
            }
        }
    }

    pub fn quantile(&self, v: f64) -> Result<f64> {
        check_probability(v)?;
        self.quantile_from_ln(v.ln())
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Baseline::Exponential => write!(f, "exp"),
            Baseline::Weibull { k } => write!(f, "weibull(k={k})"),
            Baseline::GenGamma { p, q } => write!(f, "gengamma(p={p},q={q})"),
        }
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = match s.split_once('(') {
            Some((h, rest)) => {
                let body = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::parse(s, "missing `)`"))?;
                (h.trim(), Some(body))
            }
            None => (s, None),
        };
        match (head, body) {
            ("exp", None) => Ok(Baseline::Exponential),
            ("weibull", Some(b)) => {
                let kv = parse_kv(s, b, &["k"])?;
                Baseline::weibull(get_f64(s, &kv, "k")?)
            }
            ("gengamma", Some(b)) => {
                let kv = parse_kv(s, b, &["p", "q"])?;
                Baseline::gengamma(get_f64(s, &kv, "p")?, get_f64(s, &kv, "q")?)
            }
            _ => Err(Error::parse(
                s,
                "expected exp | weibull(k=..) | gengamma(p=..,q=..)",
            )),
        }
    }
}

/// `h(α, t) = α (1 - t) t^{α-1} / (1 - t^α)` on `α > 0`, `0 < t < 1`.
pub fn ge_h(alpha: f64, t: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain {
            what: "ge_h",
            value: t,
            domain: "(0, 1)".into(),
        });
    }
    let ln_t = t.ln();
    // 1 - t^α = -expm1(α ln t)
    let denom = -(alpha * ln_t).exp_m1();
    Ok(alpha * (1.0 - t) * ((alpha - 1.0) * ln_t).exp() / denom)
}

/// `q(α, x) = α r̃(x) G^α(x) / (1 - G^α(x))` for a baseline `G`.
pub fn es_q(baseline: &Baseline, alpha: f64, x: f64) -> Result<f64> {
    positive("alpha", alpha)?;
    if !(x > 0.0) {
        return Err(Error::Degenerate { what: "es_q", x });
    }
    let ln_g = baseline.ln_cdf(x);
    let a_ln_g = alpha * ln_g;
    if !a_ln_g.is_finite() || a_ln_g >= 0.0 || -a_ln_g < f64::MIN_POSITIVE {
        return Err(Error::Degenerate { what: "es_q", x });
    }
    let rt = baseline.rev_hazard(x)?;
    let q = alpha * rt * a_ln_g.exp() / (-a_ln_g.exp_m1());
    if q.is_finite() && q > 0.0 {
        Ok(q)
    } else {
        Err(Error::Degenerate { what: "es_q", x })
    }
}

/// The parametric families, each exposing the full [`Lifetime`] surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistributionSpec {
    /// `exp{-((x-μ)/λ)^{-α}}` on `x > μ`.
    Frechet { mu: f64, lambda: f64, alpha: f64 },
    /// `G(λx)`.
    Scale { baseline: Baseline, lambda: f64 },
    /// `G(λx)^α`.
    ExpScale {
        baseline: Baseline,
        alpha: f64,
        lambda: f64,
    },
    /// `(1 - e^{-λx})^α`.
    Ge { alpha: f64, lambda: f64 },
    /// `1 - exp(-(x/scale)^shape)`.
    Weibull { shape: f64, scale: f64 },
}

impl DistributionSpec {
    pub fn frechet(mu: f64, lambda: f64, alpha: f64) -> Result<Self> {
        Self::Frechet { mu, lambda, alpha }.validated()
    }

    pub fn scale(baseline: Baseline, lambda: f64) -> Result<Self> {
        Self::Scale { baseline, lambda }.validated()
    }

    pub fn exp_scale(baseline: Baseline, alpha: f64, lambda: f64) -> Result<Self> {
        Self::ExpScale {
            baseline,
            alpha,
            lambda,
        }
        .validated()
    }

    pub fn ge(alpha: f64, lambda: f64) -> Result<Self> {
        Self::Ge { alpha, lambda }.validated()
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        Self::Weibull { shape, scale }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        match self {
            Self::Frechet { mu, lambda, alpha } => {
                if !mu.is_finite() {
                    return Err(Error::InvalidParameter {
                        name: "mu",
                        value: mu,
                        reason: "must be finite",
                    });
                }
                positive("lambda", lambda)?;
                positive("alpha", alpha)?;
            }
            Self::Scale { baseline, lambda } => {
                baseline.validate()?;
                positive("lambda", lambda)?;
            }
            Self::ExpScale {
                baseline,
                alpha,
                lambda,
            } => {
                baseline.validate()?;
                positive("alpha", alpha)?;
                positive("lambda", lambda)?;
            }
            Self::Ge { alpha, lambda } => {
                positive("alpha", alpha)?;
                positive("lambda", lambda)?;
            }
            Self::Weibull { shape, scale } => {
                positive("shape", shape)?;
                positive("scale", scale)?;
            }
        }
        Ok(self)
    }

    /// Rewrites GE and two-parameter Weibull in terms of the baseline models.
    fn canonical(&self) -> Canonical {
        match *self {
            Self::Frechet { mu, lambda, alpha } => Canonical::Frechet { mu, lambda, alpha },
            Self::Scale { baseline, lambda } => Canonical::Es {
                baseline,
                alpha: 1.0,
                lambda,
            },
            Self::ExpScale {
                baseline,
                alpha,
                lambda,
            } => Canonical::Es {
                baseline,
                alpha,
                lambda,
            },
            Self::Ge { alpha, lambda } => Canonical::Es {
                baseline: Baseline::Exponential,
                alpha,
                lambda,
            },
            Self::Weibull { shape, scale } => Canonical::Es {
                baseline: Baseline::Weibull { k: shape },
                alpha: 1.0,
                lambda: 1.0 / scale,
            },
        }
    }
}

enum Canonical {
    Frechet {
        mu: f64,
        lambda: f64,
        alpha: f64,
    },
    Es {
        baseline: Baseline,
        alpha: f64,
        lambda: f64,
    },
}

impl Lifetime for DistributionSpec {
    fn support_left(&self) -> f64 {
        match *self {
            Self::Frechet { mu, .. } => mu,
            _ => 0.0,
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 0.0;
        }
        self.ln_cdf(x).exp()
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 1.0;
        }
        match self.canonical() {
            Canonical::Frechet { mu, lambda, alpha } => {
                let t = ((x - mu) / lambda).powf(-alpha);
                -(-t).exp_m1()
            }
            Canonical::Es {
                baseline,
                alpha,
                lambda,
            } => {
                if alpha == 1.0 {
                    baseline.sf(lambda * x)
                } else {
                    -(alpha * baseline.ln_cdf(lambda * x)).exp_m1()
                }
            }
        }
    }

    fn ln_cdf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return f64::NEG_INFINITY;
        }
        match self.canonical() {
            Canonical::Frechet { mu, lambda, alpha } => -((x - mu) / lambda).powf(-alpha),
            Canonical::Es {
                baseline,
                alpha,
                lambda,
            } => alpha * baseline.ln_cdf(lambda * x),
        }
    }

    fn ln_sf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 0.0;
        }
        if let Canonical::Es {
            baseline,
            alpha,
            lambda,
        } = self.canonical()
        {
            if alpha == 1.0 {
                return baseline.ln_sf(lambda * x);
            }
        }
        self.sf(x).ln()
    }

    fn pdf(&self, x: f64) -> f64 {
        if x <= self.support_left() {
            return 0.0;
        }
        match self.canonical() {
            Canonical::Frechet { mu, lambda, alpha } => {
                let z = (x - mu) / lambda;
                (alpha / lambda) * z.powf(-alpha - 1.0) * (-z.powf(-alpha)).exp()
            }
            Canonical::Es {
                baseline,
                alpha,
                lambda,
            } => {
                let u = lambda * x;
                // α λ g(u) G(u)^{α-1}
                let ln = alpha.ln() + lambda.ln() + baseline.ln_pdf(u) + (alpha - 1.0) * baseline.ln_cdf(u);
                ln.exp()
            }
        }
    }

    fn hazard(&self, x: f64) -> Result<f64> {
        if x <= self.support_left() {
            return Err(Error::Degenerate { what: "hazard", x });
        }
        match self.canonical() {
            Canonical::Frechet { .. } => ratio(self.pdf(x), self.sf(x), "hazard", x),
            Canonical::Es {
                baseline,
                alpha,
                lambda,
            } => {
                let u = lambda * x;
                if alpha == 1.0 {
                    Ok(lambda * baseline.hazard(u)?)
                } else {
                    Ok(lambda
                        * es_q(&baseline, alpha, u).map_err(|_| Error::Degenerate { what: "hazard", x })?)
                }
            }
        }
    }

    fn rev_hazard(&self, x: f64) -> Result<f64> {
        if x <= self.support_left() {
            return Err(Error::Degenerate {
                what: "rev_hazard",
                x,
            });
        }
        match self.canonical() {
            Canonical::Frechet { mu, lambda, alpha } => {
                let z = (x - mu) / lambda;
                let r = (alpha / lambda) * z.powf(-alpha - 1.0);
                if r.is_finite() {
                    Ok(r)
                } else {
                    Err(Error::Degenerate {
                        what: "rev_hazard",
                        x,
                    })
                }
            }
            Canonical::Es {
                baseline,
                alpha,
                lambda,
            } => Ok(alpha * lambda * baseline.rev_hazard(lambda * x)?),
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        match self.canonical() {
            Canonical::Frechet { mu, lambda, alpha } => Ok(mu + lambda * (-p.ln()).powf(-1.0 / alpha)),
            Canonical::Es {
                baseline,
                alpha,
                lambda,
            } => Ok(baseline.quantile_from_ln(p.ln() / alpha)? / lambda),
        }
    }

    fn closed_form(&self) -> bool {
        match self.canonical() {
            Canonical::Frechet { .. } => true,
            Canonical::Es { baseline, .. } => baseline.closed_form(),
        }
    }

    fn closed_form_quantile(&self) -> bool {
        self.closed_form()
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Frechet { mu, lambda, alpha } => {
                write!(f, "frechet:mu={mu},lambda={lambda},alpha={alpha}")
            }
            Self::Scale { baseline, lambda } => write!(f, "scale:base={baseline},lambda={lambda}"),
            Self::ExpScale {
                baseline,
                alpha,
                lambda,
            } => write!(f, "es:base={baseline},alpha={alpha},lambda={lambda}"),
            Self::Ge { alpha, lambda } => write!(f, "ge:alpha={alpha},lambda={lambda}"),
            Self::Weibull { shape, scale } => write!(f, "weibull:shape={shape},scale={scale}"),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = split_head(s);
        // make sure commas inside baseline parentheses do not leak
        split_top_level(body, ',')?;
        match head {
            "frechet" => {
                let kv = parse_kv(s, body, &["mu", "lambda", "alpha"])?;
                Self::frechet(
                    get_f64(s, &kv, "mu")?,
                    get_f64(s, &kv, "lambda")?,
                    get_f64(s, &kv, "alpha")?,
                )
            }
            "scale" => {
                let kv = parse_kv(s, body, &["base", "lambda"])?;
                Self::scale(kv["base"].parse()?, get_f64(s, &kv, "lambda")?)
            }
            "es" => {
                let kv = parse_kv(s, body, &["base", "alpha", "lambda"])?;
                Self::exp_scale(
                    kv["base"].parse()?,
                    get_f64(s, &kv, "alpha")?,
                    get_f64(s, &kv, "lambda")?,
                )
            }
            "ge" => {
                let kv = parse_kv(s, body, &["alpha", "lambda"])?;
                Self::ge(get_f64(s, &kv, "alpha")?, get_f64(s, &kv, "lambda")?)
            }
            "weibull" => {
                let kv = parse_kv(s, body, &["shape", "scale"])?;
                Self::weibull(get_f64(s, &kv, "shape")?, get_f64(s, &kv, "scale")?)
            }
            _ => Err(Error::parse(s, "unknown distribution family")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn frechet_cdf_at_one() {
        let d = DistributionSpec::frechet(0.0, 1.0, 1.0).unwrap();
        assert!(rel(d.cdf(1.0), (-1.0f64).exp()) < 1e-15);
        assert!(rel(d.quantile((-1.0f64).exp()).unwrap(), 1.0) < 1e-14);
    }

    #[test]
    fn ge_with_unit_alpha_is_exponential() {
        let d = DistributionSpec::ge(1.0, 2.0).unwrap();
        assert!(rel(d.cdf(1.0), 1.0 - (-2.0f64).exp()) < 1e-15);
        assert!(rel(d.quantile(1.0 - (-2.0f64).exp()).unwrap(), 1.0) < 1e-12);
    }

    #[test]
    fn es_exponential_squared() {
        let d = DistributionSpec::exp_scale(Baseline::Exponential, 2.0, 1.0).unwrap();
        let g = 1.0 - (-1.0f64).exp();
        assert!(rel(d.cdf(1.0), g * g) < 1e-15);
        assert!((d.cdf(1.0) - 0.399576).abs() < 1e-6);
        // bisection oracle, independent of the closed-form quantile
        let root = crate::numeric::bisect_nondecreasing(|x| d.cdf(x), 0.399576, 0.0, 10.0, 1e-14);
        assert!(rel(d.quantile(0.399576).unwrap(), root) < 1e-10);
        assert!((root - 1.0).abs() < 1e-5);
    }

    #[test]
    fn ge_h_values() {
        for t in [0.01, 0.3, 0.5, 0.99] {
            assert!((ge_h(1.0, t).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!((ge_h(2.0, 0.5).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(ge_h(2.0, 0.0).is_err());
        assert!(ge_h(2.0, 1.0).is_err());
        assert!(ge_h(0.0, 0.5).is_err());
    }

    #[test]
    fn es_q_cases() {
        let b = Baseline::Exponential;
        assert!((es_q(&b, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-14);
        let q = es_q(&b, 2.0, std::f64::consts::LN_2).unwrap();
        assert!((q - ge_h(2.0, 0.5).unwrap()).abs() < 1e-14);
        assert!(es_q(&b, 1.0, 0.0).is_err());
    }

    #[test]
    fn boundary_conventions() {
        let d = DistributionSpec::frechet(1.0, 1.0, 2.0).unwrap();
        assert_eq!(d.cdf(0.5), 0.0);
        assert_eq!(d.sf(1.0), 1.0);
        assert!(matches!(d.hazard(1.0), Err(Error::Degenerate { .. })));
        assert!(matches!(d.rev_hazard(0.0), Err(Error::Degenerate { .. })));
        assert!(d.quantile(0.0).is_err());
        assert!(d.quantile(1.0).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(DistributionSpec::frechet(0.0, 0.0, 1.0).is_err());
        assert!(DistributionSpec::ge(-1.0, 1.0).is_err());
        assert!(DistributionSpec::weibull(1.0, f64::INFINITY).is_err());
        assert!(Baseline::gengamma(0.0, 1.0).is_err());
    }

    #[test]
    fn text_forms() {
        for s in [
            "frechet:mu=0,lambda=2,alpha=1.5",
            "ge:alpha=0.6,lambda=1",
            "es:base=exp,alpha=2,lambda=3",
            "es:base=gengamma(p=0.5,q=0.5),alpha=2,lambda=3",
            "scale:base=weibull(k=2),lambda=0.25",
            "weibull:shape=2,scale=1",
        ] {
            let d: DistributionSpec = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("ge:alpha=1".parse::<DistributionSpec>().is_err());
        assert!("ge:alpha=1,lambda=1,mu=0".parse::<DistributionSpec>().is_err());
        assert!("gamma:alpha=1".parse::<DistributionSpec>().is_err());
        assert!("es:base=weibull,alpha=1,lambda=1"
            .parse::<DistributionSpec>()
            .is_err());
    }

    #[test]
    fn gengamma_equal_shapes_is_weibull() {
        // p = q reduces the generalized gamma to Weibull(p)
        let gg = Baseline::gengamma(0.5, 0.5).unwrap();
        let w = Baseline::weibull(0.5).unwrap();
        for u in [0.01, 0.3, 1.0, 4.0, 20.0] {
            assert!(rel(gg.cdf(u), w.cdf(u)) < 1e-9, "cdf at {u}");
            assert!(
                rel(gg.hazard(u).unwrap(), w.hazard(u).unwrap()) < 1e-8,
                "hazard at {u}"
            );
            assert!(
                rel(gg.hazard_derivative(u).unwrap(), w.hazard_derivative(u).unwrap()) < 1e-6,
                "r' at {u}"
            );
        }
    }

    #[test]
    fn gengamma_hazard_derivative_matches_log_density_identity() {
        // r' = r (g'/g + r), with g'/g = (q-1)/u - p u^{p-1}
        for (p, q) in [(2.0, 3.0), (0.6, 0.8), (1.5, 0.7)] {
            let b = Baseline::gengamma(p, q).unwrap();
            for u in [0.2, 0.7, 1.3, 2.5] {
                let r = b.hazard(u).unwrap();
                let exact = r * ((q - 1.0) / u - p * u.powf(p - 1.0) + r);
                let numeric = b.hazard_derivative(u).unwrap();
                assert!(
                    (numeric - exact).abs() <= 1e-7 * exact.abs().max(1.0),
                    "p={p} q={q} u={u}: {numeric} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn gengamma_quantile_bisection() {
        let b = Baseline::gengamma(2.0, 3.0).unwrap();
        for v in [1e-6, 0.1, 0.5, 0.999] {
            let x = b.quantile(v).unwrap();
            assert!((b.cdf(x) - v).abs() < 1e-10, "v={v}");
        }
    }
}
