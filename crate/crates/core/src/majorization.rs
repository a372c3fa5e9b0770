//! Vector preorders: weak sub/super-majorization, majorization, weak and
//! plain log-majorization, the p-larger order, reciprocal majorization,
//! weak and plain exp-majorization, and f-majorization over a closed catalog
//! of strictly monotone maps.
//!
//! Every check reads "x is below y": `check_majorization(x, y, kind, tol)`
//! answers whether `x ≼_kind y`. For the p-larger order that means *y is
//! p-larger than x* (`Π_{i≤j} x_(i) ≥ Π_{i≤j} y_(i)`), and for reciprocal
//! majorization it means `Σ_{i≤j} 1/x_(i) ≤ Σ_{i≤j} 1/y_(i)`. With this
//! orientation the classical chain reads
//!
//! ```text
//! x ≼_m y  ⟹  x ≼^w y  ⟹  x ≼_p y  ⟹  x ≼_rm y,        x ≼_m y  ⟹  x ≼_w y
//! ```
//!
//! Inequalities hold "within tol" when `lhs <= rhs + tol * max(1, |rhs|)`;
//! equalities are two-sided under the same scale.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{eq_within, le_within};
use crate::text::{get_f64, parse_kv, split_head};

/// A finite, nonempty list of reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    values: Vec<f64>,
    positivity_required: bool,
}

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
        }
        Ok(ParamVector {
            values,
            positivity_required: false,
        })
    }

    /// Like [`ParamVector::new`] but every entry must be strictly positive.
    pub fn positive(values: Vec<f64>) -> Result<Self> {
        let mut v = Self::new(values)?;
        v.require_positive()?;
        v.positivity_required = true;
        Ok(v)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn positivity_required(&self) -> bool {
        self.positivity_required
    }

    fn require_positive(&self) -> Result<()> {
        match self.values.iter().position(|&v| v <= 0.0) {
            Some(index) => Err(Error::NonPositive {
                index,
                value: self.values[index],
            }),
            None => Ok(()),
        }
    }

    /// Increasing arrangement `x_(1) <= ... <= x_(n)`; ties keep input order.
    pub fn increasing(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    /// Decreasing arrangement `x_[1] >= ... >= x_[n]`; ties keep input order.
    pub fn decreasing(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

impl TryFrom<Vec<f64>> for ParamVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ParamVector::new(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    WeakSub,
    WeakSuper,
    Majorize,
    LogWeak,
    Log,
    PLarger,
    Reciprocal,
    ExpWeak,
    Exp,
}

impl OrderKind {
    pub const ALL: [OrderKind; 9] = [
        OrderKind::WeakSub,
        OrderKind::WeakSuper,
        OrderKind::Majorize,
        OrderKind::LogWeak,
        OrderKind::Log,
        OrderKind::PLarger,
        OrderKind::Reciprocal,
        OrderKind::ExpWeak,
        OrderKind::Exp,
    ];

    pub fn requires_positive(self) -> bool {
        matches!(
            self,
            OrderKind::LogWeak | OrderKind::Log | OrderKind::PLarger | OrderKind::Reciprocal
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::WeakSub => "weak_sub",
            OrderKind::WeakSuper => "weak_super",
            OrderKind::Majorize => "majorize",
            OrderKind::LogWeak => "log_weak",
            OrderKind::Log => "log",
            OrderKind::PLarger => "p_larger",
            OrderKind::Reciprocal => "reciprocal",
            OrderKind::ExpWeak => "exp_weak",
            OrderKind::Exp => "exp",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::parse(s, "unknown order kind"))
    }
}

/// How the partial quantities of a verdict are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// 1-based number of terms in the violated partial sum (or product).
    pub failed_index: Option<usize>,
    /// x-side partial quantity at `failed_index` (or at `n` when the verdict holds).
    pub lhs_partial: f64,
    pub rhs_partial: f64,
    /// Required relation between `lhs_partial` and `rhs_partial`.
    pub relation: Relation,
    pub tolerance: f64,
}

impl MajorizationVerdict {
    fn holding(lhs: f64, rhs: f64, relation: Relation, tol: f64) -> Self {
        MajorizationVerdict {
            holds: true,
            failed_index: None,
            lhs_partial: lhs,
            rhs_partial: rhs,
            relation,
            tolerance: tol,
        }
    }

    fn failing(j: usize, lhs: f64, rhs: f64, relation: Relation, tol: f64) -> Self {
        MajorizationVerdict {
            holds: false,
            failed_index: Some(j),
            lhs_partial: lhs,
            rhs_partial: rhs,
            relation,
            tolerance: tol,
        }
    }
}

fn satisfied(lhs: f64, rhs: f64, relation: Relation, tol: f64) -> bool {
    match relation {
        Relation::Le => le_within(lhs, rhs, tol),
        Relation::Ge => le_within(rhs, lhs, tol),
        Relation::Eq => eq_within(lhs, rhs, tol),
    }
}

/// Compares running partial aggregates of two already-arranged sequences.
///
/// `combine` accumulates (sum or product). The first `n_ineq` prefixes must
/// satisfy `relation`; when `total_eq` is set the full aggregate must also be
/// equal within tolerance.
#[allow(clippy::too_many_arguments)]
fn compare_partials(
    xs: &[f64],
    ys: &[f64],
    identity: f64,
    combine: impl Fn(f64, f64) -> f64,
    relation: Relation,
    n_ineq: usize,
    total_eq: bool,
    tol: f64,
) -> MajorizationVerdict {
    let n = xs.len();
    let (mut px, mut py) = (identity, identity);
    for j in 0..n {
        px = combine(px, xs[j]);
        py = combine(py, ys[j]);
        if j < n_ineq && !satisfied(px, py, relation, tol) {
            return MajorizationVerdict::failing(j + 1, px, py, relation, tol);
        }
    }
    if total_eq {
        if !eq_within(px, py, tol) {
            return MajorizationVerdict::failing(n, px, py, Relation::Eq, tol);
        }
        return MajorizationVerdict::holding(px, py, Relation::Eq, tol);
    }
    MajorizationVerdict::holding(px, py, relation, tol)
}

fn check_pair(x: &ParamVector, y: &ParamVector, positive: bool) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if positive {
        x.require_positive()?;
        y.require_positive()?;
    }
    Ok(())
}

fn map_values(v: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
    v.iter().map(|&t| f(t)).collect()
}

/// Answers `x ≼_kind y` (see the module docs for the orientation).
pub fn check_majorization(
    x: &ParamVector,
    y: &ParamVector,
    kind: OrderKind,
    tol: f64,
) -> Result<MajorizationVerdict> {
    check_pair(x, y, kind.requires_positive())?;
    let n = x.len();
    let add = |a: f64, b: f64| a + b;
    let mul = |a: f64, b: f64| a * b;
    let v = match kind {
        OrderKind::WeakSub => compare_partials(
            &x.decreasing(),
            &y.decreasing(),
            0.0,
            add,
            Relation::Le,
            n,
            false,
            tol,
        ),
        OrderKind::WeakSuper => compare_partials(
            &x.increasing(),
            &y.increasing(),
            0.0,
            add,
            Relation::Ge,
            n,
            false,
            tol,
        ),
        OrderKind::Majorize => compare_partials(
            &x.increasing(),
            &y.increasing(),
            0.0,
            add,
            Relation::Ge,
            n - 1,
            true,
            tol,
        ),
        OrderKind::LogWeak => compare_partials(
            &x.decreasing(),
            &y.decreasing(),
            1.0,
            mul,
            Relation::Le,
            n,
            false,
            tol,
        ),
        OrderKind::Log => compare_partials(
            &x.decreasing(),
            &y.decreasing(),
            1.0,
            mul,
            Relation::Le,
            n - 1,
            true,
            tol,
        ),
        OrderKind::PLarger => compare_partials(
            &x.increasing(),
            &y.increasing(),
            1.0,
            mul,
            Relation::Ge,
            n,
            false,
            tol,
        ),
        OrderKind::Reciprocal => {
            let rx = map_values(&x.increasing(), |t| 1.0 / t);
            let ry = map_values(&y.increasing(), |t| 1.0 / t);
            compare_partials(&rx, &ry, 0.0, add, Relation::Le, n, false, tol)
        }
        OrderKind::ExpWeak => {
            let ex = map_values(&x.decreasing(), f64::exp);
            let ey = map_values(&y.decreasing(), f64::exp);
            compare_partials(&ex, &ey, 0.0, add, Relation::Le, n, false, tol)
        }
        OrderKind::Exp => {
            let ex = map_values(&x.decreasing(), f64::exp);
            let ey = map_values(&y.decreasing(), f64::exp);
            compare_partials(&ex, &ey, 0.0, add, Relation::Le, n - 1, true, tol)
        }
    };
    Ok(v)
}

/// A strictly monotone coordinate map from a closed catalog, with closed-form
/// inverse and derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneMap {
    Identity,
    Log,
    Reciprocal,
    Exp,
    Power { p: f64 },
    Affine { a: f64, b: f64 },
}

impl MonotoneMap {
    pub fn power(p: f64) -> Result<Self> {
        if !p.is_finite() || p == 0.0 {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "power exponent must be finite and nonzero",
            });
        }
        Ok(MonotoneMap::Power { p })
    }

    pub fn affine(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || a == 0.0 || !b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "affine slope must be finite and nonzero",
            });
        }
        Ok(MonotoneMap::Affine { a, b })
    }

    pub fn is_increasing(&self) -> bool {
        match *self {
            MonotoneMap::Identity | MonotoneMap::Log | MonotoneMap::Exp => true,
            MonotoneMap::Reciprocal => false,
            MonotoneMap::Power { p } => p > 0.0,
            MonotoneMap::Affine { a, .. } => a > 0.0,
        }
    }

    fn positive_domain(&self) -> bool {
        matches!(
            self,
            MonotoneMap::Log | MonotoneMap::Reciprocal | MonotoneMap::Power { .. }
        )
    }

    fn positive_range(&self) -> bool {
        matches!(
            self,
            MonotoneMap::Reciprocal | MonotoneMap::Exp | MonotoneMap::Power { .. }
        )
    }

    pub fn in_domain(&self, t: f64) -> bool {
        t.is_finite() && (!self.positive_domain() || t > 0.0)
    }

    pub fn in_range(&self, u: f64) -> bool {
        u.is_finite() && (!self.positive_range() || u > 0.0)
    }

    fn domain_text(&self) -> &'static str {
        if self.positive_domain() {
            "(0, inf)"
        } else {
            "(-inf, inf)"
        }
    }

    fn range_text(&self) -> &'static str {
        if self.positive_range() {
            "(0, inf)"
        } else {
            "(-inf, inf)"
        }
    }

    fn domain_err(&self, what: &'static str, value: f64, range: bool) -> Error {
        Error::Domain {
            what,
            value,
            domain: if range {
                self.range_text()
            } else {
                self.domain_text()
            }
            .to_string(),
        }
    }

    pub fn apply(&self, t: f64) -> Result<f64> {
        if !self.in_domain(t) {
            return Err(self.domain_err("map_apply", t, false));
        }
        Ok(match *self {
            MonotoneMap::Identity => t,
            MonotoneMap::Log => t.ln(),
            MonotoneMap::Reciprocal => 1.0 / t,
            MonotoneMap::Exp => t.exp(),
            MonotoneMap::Power { p } => t.powf(p),
            MonotoneMap::Affine { a, b } => a * t + b,
        })
    }

    pub fn inverse(&self, u: f64) -> Result<f64> {
        if !self.in_range(u) {
            return Err(self.domain_err("map_inverse", u, true));
        }
        Ok(match *self {
            MonotoneMap::Identity => u,
            MonotoneMap::Log => u.exp(),
            MonotoneMap::Reciprocal => 1.0 / u,
            MonotoneMap::Exp => u.ln(),
            MonotoneMap::Power { p } => u.powf(1.0 / p),
            MonotoneMap::Affine { a, b } => (u - b) / a,
        })
    }

    pub fn derivative(&self, t: f64) -> Result<f64> {
        if !self.in_domain(t) {
            return Err(self.domain_err("map_derivative", t, false));
        }
        Ok(match *self {
            MonotoneMap::Identity => 1.0,
            MonotoneMap::Log => 1.0 / t,
            MonotoneMap::Reciprocal => -1.0 / (t * t),
            MonotoneMap::Exp => t.exp(),
            MonotoneMap::Power { p } => p * t.powf(p - 1.0),
            MonotoneMap::Affine { a, .. } => a,
        })
    }

    /// `(f⁻¹)'(u)`.
    pub fn inverse_derivative(&self, u: f64) -> Result<f64> {
        if !self.in_range(u) {
            return Err(self.domain_err("map_inverse_derivative", u, true));
        }
        Ok(match *self {
            MonotoneMap::Identity => 1.0,
            MonotoneMap::Log => u.exp(),
            MonotoneMap::Reciprocal => -1.0 / (u * u),
            MonotoneMap::Exp => 1.0 / u,
            MonotoneMap::Power { p } => u.powf(1.0 / p - 1.0) / p,
            MonotoneMap::Affine { a, .. } => 1.0 / a,
        })
    }

    pub fn apply_vector(&self, v: &ParamVector) -> Result<ParamVector> {
        let mapped = v
            .values()
            .iter()
            .map(|&t| self.apply(t))
            .collect::<Result<Vec<_>>>()?;
        ParamVector::new(mapped)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneMap::Identity => write!(f, "identity"),
            MonotoneMap::Log => write!(f, "log"),
            MonotoneMap::Reciprocal => write!(f, "reciprocal"),
            MonotoneMap::Exp => write!(f, "exp"),
            MonotoneMap::Power { p } => write!(f, "power:p={p}"),
            MonotoneMap::Affine { a, b } => write!(f, "affine:a={a},b={b}"),
        }
    }
}

impl FromStr for MonotoneMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = split_head(s);
        let no_params = |m: MonotoneMap| {
            if body.is_empty() {
                Ok(m)
            } else {
                Err(Error::parse(s, format!("`{head}` takes no parameters")))
            }
        };
        match head {
            "identity" => no_params(MonotoneMap::Identity),
            "log" => no_params(MonotoneMap::Log),
            "reciprocal" => no_params(MonotoneMap::Reciprocal),
            "exp" => no_params(MonotoneMap::Exp),
            "power" => {
                let kv = parse_kv(s, body, &["p"])?;
                MonotoneMap::power(get_f64(s, &kv, "p")?)
            }
            "affine" => {
                let kv = parse_kv(s, body, &["a", "b"])?;
                MonotoneMap::affine(get_f64(s, &kv, "a")?, get_f64(s, &kv, "b")?)
            }
            _ => Err(Error::parse(s, "unknown map")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    WeakSub,
    WeakSuper,
    Major,
}

impl Flavor {
    fn order(self) -> OrderKind {
        match self {
            Flavor::WeakSub => OrderKind::WeakSub,
            Flavor::WeakSuper => OrderKind::WeakSuper,
            Flavor::Major => OrderKind::Majorize,
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "weak_sub" => Ok(Flavor::WeakSub),
            "weak_super" => Ok(Flavor::WeakSuper),
            "major" | "majorize" => Ok(Flavor::Major),
            _ => Err(Error::parse(s, "unknown f-majorization flavor")),
        }
    }
}

/// `f(x) ≼ f(y)` in the chosen flavor.
pub fn check_f_majorization(
    x: &ParamVector,
    y: &ParamVector,
    f: &MonotoneMap,
    flavor: Flavor,
    tol: f64,
) -> Result<MajorizationVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let fx = f.apply_vector(x)?;
    let fy = f.apply_vector(y)?;
    check_majorization(&fx, &fy, flavor.order(), tol)
}

/// One arrow of the implication chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    pub premise: OrderKind,
    pub conclusion: OrderKind,
}

pub const CHAIN: [Implication; 8] = [
    Implication {
        premise: OrderKind::Majorize,
        conclusion: OrderKind::WeakSuper,
    },
    Implication {
        premise: OrderKind::WeakSuper,
        conclusion: OrderKind::PLarger,
    },
    Implication {
        premise: OrderKind::PLarger,
        conclusion: OrderKind::Reciprocal,
    },
    Implication {
        premise: OrderKind::Majorize,
        conclusion: OrderKind::WeakSub,
    },
    Implication {
        premise: OrderKind::LogWeak,
        conclusion: OrderKind::WeakSub,
    },
    Implication {
        premise: OrderKind::WeakSub,
        conclusion: OrderKind::ExpWeak,
    },
    Implication {
        premise: OrderKind::Log,
        conclusion: OrderKind::LogWeak,
    },
    Implication {
        premise: OrderKind::Exp,
        conclusion: OrderKind::ExpWeak,
    },
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub verdicts: BTreeMap<OrderKind, MajorizationVerdict>,
    pub violations: Vec<Implication>,
}

impl ChainReport {
    pub fn holds(&self, kind: OrderKind) -> bool {
        self.verdicts.get(&kind).is_some_and(|v| v.holds)
    }
}

/// Evaluates every order kind on a positive pair and lists broken implications.
pub fn implication_chain(x: &ParamVector, y: &ParamVector, tol: f64) -> Result<ChainReport> {
    check_pair(x, y, true)?;
    let mut verdicts = BTreeMap::new();
    for kind in OrderKind::ALL {
        verdicts.insert(kind, check_majorization(x, y, kind, tol)?);
    }
    let violations = CHAIN
        .iter()
        .filter(|imp| verdicts[&imp.premise].holds && !verdicts[&imp.conclusion].holds)
        .copied()
        .collect();
    Ok(ChainReport { verdicts, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn pv(v: &[f64]) -> ParamVector {
        ParamVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn exp_weak_holds_but_weak_sub_fails_both_ways() {
        let x = pv(&[0.5, 0.9]);
        let y = pv(&[1.08, 0.3]);
        assert!(check_majorization(&x, &y, OrderKind::ExpWeak, TOL).unwrap().holds);

        let v = check_majorization(&x, &y, OrderKind::WeakSub, TOL).unwrap();
        assert!(!v.holds);
        assert_eq!(v.failed_index, Some(2));
        assert!((v.lhs_partial - 1.4).abs() < 1e-15);
        assert!((v.rhs_partial - 1.38).abs() < 1e-15);

        let r = check_majorization(&y, &x, OrderKind::WeakSub, TOL).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failed_index, Some(1));
    }

    #[test]
    fn p_larger_example_in_below_orientation() {
        // (1, 5.5) is p-larger than (2, 3): products 1 <= 2 and 5.5 <= 6.
        let larger = pv(&[1.0, 5.5]);
        let smaller = pv(&[2.0, 3.0]);
        let v = check_majorization(&smaller, &larger, OrderKind::PLarger, TOL).unwrap();
        assert!(v.holds);
        assert!((v.lhs_partial - 6.0).abs() < 1e-15 && (v.rhs_partial - 5.5).abs() < 1e-15);
        let back = check_majorization(&larger, &smaller, OrderKind::PLarger, TOL).unwrap();
        assert!(!back.holds);
        assert_eq!(back.failed_index, Some(1));
    }

    #[test]
    fn power_two_f_majorization_example() {
        let x = pv(&[2.0, 23f64.sqrt()]);
        let y = pv(&[2f64.sqrt(), 5.0]);
        let f = MonotoneMap::power(2.0).unwrap();
        assert!(
            check_f_majorization(&x, &y, &f, Flavor::Major, TOL)
                .unwrap()
                .holds
        );
        assert!(
            !check_majorization(&x, &y, OrderKind::Majorize, TOL)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn log_weak_super_coincides_with_p_larger_on_example() {
        let smaller = pv(&[2.0, 3.0]);
        let larger = pv(&[1.0, 5.5]);
        let via_f =
            check_f_majorization(&smaller, &larger, &MonotoneMap::Log, Flavor::WeakSuper, TOL).unwrap();
        let direct = check_majorization(&smaller, &larger, OrderKind::PLarger, TOL).unwrap();
        assert!(via_f.holds && direct.holds);
        let via_f_rev =
            check_f_majorization(&larger, &smaller, &MonotoneMap::Log, Flavor::WeakSuper, TOL).unwrap();
        assert!(!via_f_rev.holds);
    }

    #[test]
    fn chain_example_by_hand() {
        // sums 4 = 4; smallest partial 1 >= 0.5; products 1 >= 0.5, 3 >= 1.75;
        // reciprocals 1 <= 2, 1.333 <= 2.286; largest partial 3 <= 3.5, 4 <= 4.
        let x = pv(&[1.0, 3.0]);
        let y = pv(&[0.5, 3.5]);
        let r = implication_chain(&x, &y, TOL).unwrap();
        for k in [
            OrderKind::Majorize,
            OrderKind::WeakSuper,
            OrderKind::PLarger,
            OrderKind::Reciprocal,
            OrderKind::WeakSub,
        ] {
            assert!(r.holds(k), "{k} should hold");
        }
        assert!(r.violations.is_empty());
    }

    #[test]
    fn map_examples() {
        assert_eq!(MonotoneMap::Log.apply(1.0).unwrap(), 0.0);
        assert_eq!(MonotoneMap::Reciprocal.inverse(0.25).unwrap(), 4.0);
        assert_eq!(MonotoneMap::power(2.0).unwrap().derivative(3.0).unwrap(), 6.0);
    }

    #[test]
    fn errors() {
        let a = pv(&[1.0, 2.0]);
        let b = pv(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            check_majorization(&a, &b, OrderKind::WeakSub, TOL),
            Err(Error::LengthMismatch { .. })
        ));
        let neg = pv(&[-1.0, 2.0]);
        assert!(matches!(
            check_majorization(&neg, &a, OrderKind::PLarger, TOL),
            Err(Error::NonPositive { index: 0, .. })
        ));
        assert!(check_majorization(&neg, &a, OrderKind::WeakSub, TOL).is_ok());
        assert!(matches!(
            ParamVector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(matches!(ParamVector::new(vec![]), Err(Error::EmptyVector)));
        assert!(MonotoneMap::Log.apply(0.0).is_err());
        assert!(MonotoneMap::Exp.inverse(-1.0).is_err());
        assert!(check_f_majorization(&neg, &a, &MonotoneMap::Log, Flavor::WeakSub, TOL).is_err());
        assert!(MonotoneMap::power(0.0).is_err());
        assert!(MonotoneMap::affine(0.0, 1.0).is_err());
    }

    #[test]
    fn map_text_round_trip() {
        for m in [
            MonotoneMap::Identity,
            MonotoneMap::Log,
            MonotoneMap::Reciprocal,
            MonotoneMap::Exp,
            MonotoneMap::Power { p: -1.5 },
            MonotoneMap::Affine { a: 2.0, b: -0.25 },
        ] {
            assert_eq!(m.to_string().parse::<MonotoneMap>().unwrap(), m);
        }
        assert!("power:q=2".parse::<MonotoneMap>().is_err());
        assert!("log:p=1".parse::<MonotoneMap>().is_err());
    }

    fn catalog() -> Vec<MonotoneMap> {
        vec![
            MonotoneMap::Identity,
            MonotoneMap::Log,
            MonotoneMap::Reciprocal,
            MonotoneMap::Exp,
            MonotoneMap::Power { p: 2.0 },
            MonotoneMap::Power { p: -0.5 },
            MonotoneMap::Affine { a: -3.0, b: 1.0 },
        ]
    }

    proptest! {
        #[test]
        fn reflexive(v in proptest::collection::vec(0.1f64..10.0, 1..7)) {
            let x = pv(&v);
            for kind in OrderKind::ALL {
                prop_assert!(check_majorization(&x, &x, kind, TOL).unwrap().holds);
            }
            for f in catalog() {
                for flavor in [Flavor::WeakSub, Flavor::WeakSuper, Flavor::Major] {
                    prop_assert!(check_f_majorization(&x, &x, &f, flavor, TOL).unwrap().holds);
                }
            }
        }

        #[test]
        fn permutation_invariant(
            v in proptest::collection::vec((0.1f64..10.0, 0.1f64..10.0), 2..7),
            rot in 0usize..7,
        ) {
            let (a, b): (Vec<f64>, Vec<f64>) = v.into_iter().unzip();
            let mut a2 = a.clone();
            let k = rot % a2.len();
            a2.rotate_left(k);
            let mut b2 = b.clone();
            b2.reverse();
            for kind in OrderKind::ALL {
                let v1 = check_majorization(&pv(&a), &pv(&b), kind, TOL).unwrap();
                let v2 = check_majorization(&pv(&a2), &pv(&b2), kind, TOL).unwrap();
                prop_assert_eq!(v1, v2);
            }
        }

        #[test]
        fn identity_map_reproduces_plain_orders(
            v in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..6),
        ) {
            let (a, b): (Vec<f64>, Vec<f64>) = v.into_iter().unzip();
            let (x, y) = (pv(&a), pv(&b));
            for flavor in [Flavor::WeakSub, Flavor::WeakSuper, Flavor::Major] {
                let f = check_f_majorization(&x, &y, &MonotoneMap::Identity, flavor, TOL).unwrap();
                let p = check_majorization(&x, &y, flavor.order(), TOL).unwrap();
                prop_assert_eq!(f, p);
            }
        }

        #[test]
        fn special_maps_match_named_orders(
            v in proptest::collection::vec((0.1f64..10.0, 0.1f64..10.0), 1..6),
        ) {
            let (a, b): (Vec<f64>, Vec<f64>) = v.into_iter().unzip();
            let (x, y) = (pv(&a), pv(&b));
            let p = check_majorization(&x, &y, OrderKind::PLarger, 1e-12).unwrap().holds;
            let fp = check_f_majorization(&x, &y, &MonotoneMap::Log, Flavor::WeakSuper, 1e-12).unwrap().holds;
            prop_assert_eq!(p, fp);
            let r = check_majorization(&x, &y, OrderKind::Reciprocal, 1e-12).unwrap().holds;
            let fr = check_f_majorization(&x, &y, &MonotoneMap::Reciprocal, Flavor::WeakSub, 1e-12).unwrap().holds;
            prop_assert_eq!(r, fr);
            let l = check_majorization(&x, &y, OrderKind::LogWeak, 1e-12).unwrap().holds;
            let fl = check_f_majorization(&x, &y, &MonotoneMap::Log, Flavor::WeakSub, 1e-12).unwrap().holds;
            prop_assert_eq!(l, fl);
        }

        #[test]
        fn map_round_trip(t in 0.01f64..50.0) {
            for f in catalog() {
                let u = f.apply(t).unwrap();
                let back = f.inverse(u).unwrap();
                prop_assert!((back - t).abs() <= 1e-12 * t.abs().max(1.0), "{f}: {t} -> {back}");
            }
        }

        #[test]
        fn inverse_derivative_matches_reciprocal_of_derivative(t in 0.05f64..5.0) {
            for f in catalog() {
                let u = f.apply(t).unwrap();
                let lhs = f.inverse_derivative(u).unwrap();
                let rhs = 1.0 / f.derivative(t).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
            }
        }
    }
}
