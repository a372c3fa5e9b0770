//! Archimedean generators `φ` with pseudo-inverse `ψ`, and the grid shape
//! checks (log-convexity, log-concavity, 2-monotonicity, super-additivity of
//! `ψ_outer ∘ φ_inner`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::defaults::{
    PSI_CAP, SHAPE_GRID_POINTS, SHAPE_T_MAX, SHAPE_T_MIN, SUPERADD_GRID_POINTS, TOL_CLOSED_FORM,
};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Spacing};
use crate::text::{get_f64, parse_kv, split_head};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// `φ(t) = e^{-t}`
    Independence,
    /// `φ(t) = (1 + t)^{-1/θ}`, `θ > 0`
    Clayton { theta: f64 },
    /// `φ(t) = exp(-t^{1/θ})`, `θ ≥ 1`
    Gumbel { theta: f64 },
}

impl Generator {
    pub fn clayton(theta: f64) -> Result<Self> {
        Generator::Clayton { theta }.validated()
    }

    pub fn gumbel(theta: f64) -> Result<Self> {
        Generator::Gumbel { theta }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        match self {
            Generator::Independence => {}
            Generator::Clayton { theta } => {
                if !(theta.is_finite() && theta > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "theta",
                        value: theta,
                        reason: "clayton needs 0 < theta < inf",
                    });
                }
            }
            Generator::Gumbel { theta } => {
                if !(theta.is_finite() && theta >= 1.0) {
                    return Err(Error::InvalidParameter {
                        name: "theta",
                        value: theta,
                        reason: "gumbel needs 1 <= theta < inf",
                    });
                }
            }
        }
        Ok(self)
    }

    fn check_t(t: f64) -> Result<()> {
        if t >= 0.0 && !t.is_nan() {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "generator",
                value: t,
                domain: "[0, inf)".into(),
            })
        }
    }

    pub fn log_phi(&self, t: f64) -> Result<f64> {
        Self::check_t(t)?;
        Ok(match *self {
            Generator::Independence => -t,
            Generator::Clayton { theta } => -t.ln_1p() / theta,
            Generator::Gumbel { theta } => -t.powf(1.0 / theta),
        })
    }

    pub fn phi(&self, t: f64) -> Result<f64> {
        Ok(self.log_phi(t)?.exp())
    }

    pub fn phi_prime(&self, t: f64) -> Result<f64> {
        Ok(self.phi(t)? * self.log_phi_prime(t)?)
    }

    /// `(log φ)'(t)`.
    pub fn log_phi_prime(&self, t: f64) -> Result<f64> {
        Self::check_t(t)?;
        Ok(match *self {
            Generator::Independence => -1.0,
            Generator::Clayton { theta } => -1.0 / (theta * (1.0 + t)),
            Generator::Gumbel { theta } => {
                if t == 0.0 && theta > 1.0 {
                    f64::NEG_INFINITY
                } else {
                    -t.powf(1.0 / theta - 1.0) / theta
                }
            }
        })
    }

    /// `ψ(u)` for `u = e^{ln_u}`, uncapped. Working from `ln u` keeps
    /// precision for `u` close to both 0 and 1.
    pub fn psi_from_log(&self, ln_u: f64) -> Result<f64> {
        if !(ln_u <= 0.0) {
            return Err(Error::Domain {
                what: "pseudo_inverse",
                value: ln_u.exp(),
                domain: "(0, 1]".into(),
            });
        }
        Ok(match *self {
            Generator::Independence => -ln_u,
            Generator::Clayton { theta } => (-theta * ln_u).exp_m1(),
            Generator::Gumbel { theta } => (-ln_u).powf(theta),
        })
    }

    pub fn psi(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u <= 1.0) {
            return Err(Error::Domain {
                what: "pseudo_inverse",
                value: u,
                domain: "(0, 1]".into(),
            });
        }
        self.psi_from_log(u.ln())
    }

    /// `ψ` capped at [`PSI_CAP`]; the flag reports saturation.
    pub fn psi_capped(&self, ln_u: f64) -> Result<(f64, bool)> {
        let v = self.psi_from_log(ln_u)?;
        if v > PSI_CAP || v.is_nan() {
            Ok((PSI_CAP, true))
        } else {
            Ok((v, false))
        }
    }

    /// `dψ / d ln u = u ψ'(u)`.
    pub fn dpsi_dlnu(&self, ln_u: f64) -> Result<f64> {
        if !(ln_u <= 0.0) {
            return Err(Error::Domain {
                what: "pseudo_inverse",
                value: ln_u.exp(),
                domain: "(0, 1]".into(),
            });
        }
        Ok(match *self {
            Generator::Independence => -1.0,
            Generator::Clayton { theta } => -theta * (-theta * ln_u).exp(),
            Generator::Gumbel { theta } => -theta * (-ln_u).powf(theta - 1.0),
        })
    }

    /// `C(u_1, ..., u_n) = φ(Σ ψ(u_i))`.
    pub fn copula(&self, us: &[f64]) -> Result<f64> {
        let mut s = 0.0;
        for &u in us {
            s += self.psi(u)?;
        }
        self.phi(s)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Independence => write!(f, "independence"),
            Generator::Clayton { theta } => write!(f, "clayton:theta={theta}"),
            Generator::Gumbel { theta } => write!(f, "gumbel:theta={theta}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = split_head(s);
        match head {
            "independence" if body.is_empty() => Ok(Generator::Independence),
            "clayton" => {
                let kv = parse_kv(s, body, &["theta"])?;
                Generator::clayton(get_f64(s, &kv, "theta")?)
            }
            "gumbel" => {
                let kv = parse_kv(s, body, &["theta"])?;
                Generator::gumbel(get_f64(s, &kv, "theta")?)
            }
            _ => Err(Error::parse(
                s,
                "expected independence | clayton:theta=.. | gumbel:theta=..",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeProperty {
    LogConvex,
    LogConcave,
    TwoMonotone,
}

impl FromStr for ShapeProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "log_convex" => Ok(ShapeProperty::LogConvex),
            "log_concave" => Ok(ShapeProperty::LogConcave),
            "two_monotone" => Ok(ShapeProperty::TwoMonotone),
            _ => Err(Error::parse(s, "expected log_convex|log_concave|two_monotone")),
        }
    }
}

impl fmt::Display for ShapeProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeProperty::LogConvex => "log_convex",
            ShapeProperty::LogConcave => "log_concave",
            ShapeProperty::TwoMonotone => "two_monotone",
        })
    }
}

/// Grid certificate for a generator property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeVerdict {
    pub holds: bool,
    pub max_violation: f64,
    /// Grid point where the worst violation sits.
    pub witness: Option<f64>,
    pub n_points: usize,
    pub n_skipped: usize,
    pub tolerance: f64,
}

/// Log-spaced `[SHAPE_T_MIN, SHAPE_T_MAX]` with `SHAPE_GRID_POINTS` points.
pub fn default_shape_grid() -> GridSpec {
    GridSpec {
        lo: SHAPE_T_MIN,
        hi: SHAPE_T_MAX,
        n_points: SHAPE_GRID_POINTS,
        spacing: Spacing::Log,
    }
}

/// Per-axis grid for super-additivity checks.
pub fn default_superadd_grid() -> GridSpec {
    GridSpec {
        lo: SHAPE_T_MIN,
        hi: SHAPE_T_MAX,
        n_points: SUPERADD_GRID_POINTS,
        spacing: Spacing::Log,
    }
}

/// Worst scaled decrease (`convex = true`) or increase of consecutive
/// slopes, reported at the shared grid point.
fn curvature_violation(ts: &[f64], slopes: &[f64], convex: bool) -> (f64, Option<f64>) {
    let mut worst = (0.0, None);
    for (i, w) in slopes.windows(2).enumerate() {
        let (s1, s2) = (w[0], w[1]);
        let d = if convex { s1 - s2 } else { s2 - s1 };
        let v = d / s1.abs().max(s2.abs()).max(1.0);
        if v > worst.0 {
            worst = (v, Some(ts[i + 1]));
        }
    }
    worst
}

fn slopes(ts: &[f64], dy: impl Fn(usize) -> f64) -> Vec<f64> {
    (1..ts.len()).map(|i| dy(i) / (ts[i] - ts[i - 1])).collect()
}

pub fn check_generator_shape(
    g: &Generator,
    property: ShapeProperty,
    grid: Option<GridSpec>,
    tol: Option<f64>,
) -> Result<ShapeVerdict> {
    let grid = grid.unwrap_or_else(default_shape_grid);
    grid.validate()?;
    if grid.lo < 0.0 {
        return Err(Error::Grid(format!(
            "generator grids must lie in [0, inf), got lo = {}",
            grid.lo
        )));
    }
    let tol = tol.unwrap_or(TOL_CLOSED_FORM);
    let ts = grid.points();
    let (max_violation, witness) = match property {
        ShapeProperty::LogConvex | ShapeProperty::LogConcave => {
            let ys = ts.iter().map(|&t| g.log_phi(t)).collect::<Result<Vec<_>>>()?;
            let s = slopes(&ts, |i| ys[i] - ys[i - 1]);
            curvature_violation(&ts, &s, property == ShapeProperty::LogConvex)
        }
        ShapeProperty::TwoMonotone => {
            let ls = ts.iter().map(|&t| g.log_phi(t)).collect::<Result<Vec<_>>>()?;
            // φ(t_i) - φ(t_{i-1}) = φ(t_{i-1}) expm1(Δ log φ) avoids cancellation near t = 0
            let dphi = |i: usize| ls[i - 1].exp() * (ls[i] - ls[i - 1]).exp_m1();
            let s = slopes(&ts, dphi);
            let mut worst = curvature_violation(&ts, &s, true);
            for (i, &t) in ts.iter().enumerate().skip(1) {
                let v = dphi(i);
                if v > worst.0 {
                    worst = (v, Some(t));
                }
            }
            worst
        }
    };
    Ok(ShapeVerdict {
        holds: max_violation <= tol,
        max_violation,
        witness,
        n_points: ts.len(),
        n_skipped: 0,
        tolerance: tol,
    })
}

/// `h = ψ_outer ∘ φ_inner`, through logs.
pub fn compose(outer: &Generator, inner: &Generator, t: f64) -> Result<(f64, bool)> {
    outer.psi_capped(inner.log_phi(t)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperadditivityVerdict {
    pub holds: bool,
    pub max_violation: f64,
    pub witness: Option<(f64, f64)>,
    pub n_pairs: usize,
    /// Pairs skipped because `ψ` saturated.
    pub n_saturated: usize,
    pub tolerance: f64,
}

/// Checks `h(u + v) ≥ h(u) + h(v)` for `h = ψ_outer ∘ φ_inner` over all
/// pairs `u ≤ v` of grid points.
pub fn check_superadditive(
    outer: &Generator,
    inner: &Generator,
    grid: Option<GridSpec>,
    tol: Option<f64>,
) -> Result<SuperadditivityVerdict> {
    let grid = grid.unwrap_or_else(default_superadd_grid);
    grid.validate()?;
    if grid.lo < 0.0 {
        return Err(Error::Grid(format!(
            "super-additivity grid must be nonnegative, got lo = {}",
            grid.lo
        )));
    }
    let tol = tol.unwrap_or(TOL_CLOSED_FORM);
    let ts = grid.points();
    let hs = ts
        .iter()
        .map(|&t| compose(outer, inner, t))
        .collect::<Result<Vec<_>>>()?;
    let mut worst: (f64, Option<(f64, f64)>) = (0.0, None);
    let (mut n_pairs, mut n_saturated) = (0, 0);
    for i in 0..ts.len() {
        for j in i..ts.len() {
            let (hu, su) = hs[i];
            let (hv, sv) = hs[j];
            let (huv, suv) = compose(outer, inner, ts[i] + ts[j])?;
            if su || sv || suv {
                n_saturated += 1;
                continue;
            }
            n_pairs += 1;
            let v = (hu + hv - huv) / huv.abs().max(1.0);
            if v > worst.0 {
                worst = (v, Some((ts[i], ts[j])));
            }
        }
    }
    if n_pairs == 0 {
        return Err(Error::TooManyDegenerate {
            skipped: n_saturated,
            total: n_saturated,
            limit_pct: 100,
        });
    }
    Ok(SuperadditivityVerdict {
        holds: worst.0 <= tol,
        max_violation: worst.0,
        witness: worst.1,
        n_pairs,
        n_saturated,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Vec<Generator> {
        vec![
            Generator::Independence,
            Generator::clayton(0.3).unwrap(),
            Generator::clayton(1.0).unwrap(),
            Generator::clayton(4.0).unwrap(),
            Generator::gumbel(1.0).unwrap(),
            Generator::gumbel(2.0).unwrap(),
            Generator::gumbel(5.5).unwrap(),
        ]
    }

    #[test]
    fn examples() {
        let e = (-1.0f64).exp();
        assert!((Generator::Independence.phi(1.0).unwrap() - e).abs() < 1e-16);
        assert!((Generator::Independence.psi(e).unwrap() - 1.0).abs() < 1e-15);
        assert!((Generator::clayton(1.0).unwrap().psi(0.5).unwrap() - 1.0).abs() < 1e-15);
        let g = Generator::gumbel(2.0).unwrap();
        assert!((g.phi(4.0).unwrap() - (-2.0f64).exp()).abs() < 1e-16);
        assert!((g.psi((-2.0f64).exp()).unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn boundary_and_round_trip() {
        for g in catalog() {
            assert_eq!(g.phi(0.0).unwrap(), 1.0);
            assert!(g.phi(1e12).unwrap() < 1e-2);
            assert!(g.psi(0.0).is_err());
            assert!(g.phi(-1.0).is_err());
            let mut t = 1e-8;
            while t <= 1e4 {
                let u = g.phi(t).unwrap();
                if u > 0.0 {
                    // through u the error floor is the spacing of doubles near 1
                    let back = g.psi(u).unwrap();
                    assert!((back - t).abs() <= 1e-10 * t + 1e-15, "{g} t={t} back={back}");
                }
                let back = g.psi_from_log(g.log_phi(t).unwrap()).unwrap();
                assert!((back - t).abs() <= 1e-10 * t, "{g} t={t} back={back}");
                t *= 1.7;
            }
        }
    }

    #[test]
    fn derivatives_match_differences() {
        for g in catalog() {
            for t in [0.1, 0.8, 3.0, 11.0] {
                let h = 1e-6 * t;
                let fd = (g.phi(t + h).unwrap() - g.phi(t - h).unwrap()) / (2.0 * h);
                let d = g.phi_prime(t).unwrap();
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-12), "{g} t={t}");
            }
            for u in [0.05, 0.4, 0.9] {
                let h = 1e-6 * u;
                let fd = (g.psi(u + h).unwrap() - g.psi(u - h).unwrap()) / (2.0 * h);
                let d = g.dpsi_dlnu(u.ln()).unwrap() / u;
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-12), "{g} u={u}");
            }
        }
    }

    #[test]
    fn shape_certificates() {
        let ind = Generator::Independence;
        for p in [
            ShapeProperty::LogConvex,
            ShapeProperty::LogConcave,
            ShapeProperty::TwoMonotone,
        ] {
            assert!(check_generator_shape(&ind, p, None, None).unwrap().holds, "{p}");
        }
        let c = Generator::clayton(1.0).unwrap();
        assert!(
            check_generator_shape(&c, ShapeProperty::LogConvex, None, None)
                .unwrap()
                .holds
        );
        assert!(
            !check_generator_shape(&c, ShapeProperty::LogConcave, None, None)
                .unwrap()
                .holds
        );
        // log φ = -√t has positive curvature: Gumbel is log-convex, not log-concave
        let g = Generator::gumbel(2.0).unwrap();
        assert!(
            check_generator_shape(&g, ShapeProperty::LogConvex, None, None)
                .unwrap()
                .holds
        );
        assert!(
            !check_generator_shape(&g, ShapeProperty::LogConcave, None, None)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn two_monotone_on_wide_range() {
        let grid = GridSpec::linear(0.0, 100.0, 4096).unwrap();
        for g in catalog() {
            let v = check_generator_shape(&g, ShapeProperty::TwoMonotone, Some(grid), None).unwrap();
            assert!(v.holds, "{g}: {}", v.max_violation);
        }
    }

    #[test]
    fn superadditivity_cases() {
        let ind = Generator::Independence;
        let c1 = Generator::clayton(1.0).unwrap();
        for g in catalog() {
            let v = check_superadditive(&g, &g, None, None).unwrap();
            assert!(v.holds, "{g}");
        }
        // log(1 + t) is subadditive
        assert!(!check_superadditive(&ind, &c1, None, None).unwrap().holds);
        // e^t - 1 is superadditive; large t saturates ψ
        let v = check_superadditive(&c1, &ind, None, None).unwrap();
        assert!(v.holds);
        assert!(v.n_saturated > 0);
        let g1 = Generator::gumbel(1.5).unwrap();
        let g2 = Generator::gumbel(3.0).unwrap();
        assert!(check_superadditive(&g2, &g1, None, None).unwrap().holds);
        assert!(!check_superadditive(&g1, &g2, None, None).unwrap().holds);
    }

    #[test]
    fn copula_has_uniform_margins() {
        for g in catalog() {
            for u in [1e-6, 0.01, 0.3, 0.77, 1.0] {
                assert!((g.copula(&[u, 1.0]).unwrap() - u).abs() <= 1e-10, "{g} u={u}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for g in catalog() {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        assert!("gumbel:theta=0.5".parse::<Generator>().is_err());
        assert!("frank:theta=1".parse::<Generator>().is_err());
        assert!("clayton".parse::<Generator>().is_err());
    }
}
