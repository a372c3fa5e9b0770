//! Acceptance runner: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail for a documented
//! mathematical reason; they still print FAIL, but only an unexpected outcome
//! (a new failure, or a known failure that starts passing) makes the process
//! exit nonzero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stochord::copulas::Generator;
use stochord::distributions::{ge_h, Baseline, DistributionSpec, Lifetime};
use stochord::extremes::{archimedean_max_cdf, frechet_max_rev_hazard, ExtremeDistribution};
use stochord::grid::GridSpec;
use stochord::majorization::{
    check_f_majorization, check_majorization, implication_chain, Flavor, MonotoneMap, OrderKind, ParamVector,
};
use stochord::numeric::richardson_derivative;
use stochord::orders::{check_order, find_crossings, CrossQuantity, OrderRelation, StochOrder};
use stochord::verification::{
    check_monotone, run_arch_batch, run_fixture_suite, schur_test, Box1, Monotonicity, SchurMode, TheoremId,
    VerifyOptions,
};

const KNOWN_FAILURES: &[&str] = &["AC5"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn pv(v: &[f64]) -> ParamVector {
    ParamVector::new(v.to_vec()).unwrap()
}

fn within(t: Duration, limit: Duration) -> bool {
    t <= limit
}

fn ac1() -> Outcome {
    let x = pv(&[0.5, 0.9]);
    let y = pv(&[1.08, 0.3]);
    let t0 = Instant::now();
    let ew = check_majorization(&x, &y, OrderKind::ExpWeak, 1e-12).unwrap();
    let fwd = check_majorization(&x, &y, OrderKind::WeakSub, 1e-12).unwrap();
    let rev = check_majorization(&y, &x, OrderKind::WeakSub, 1e-12).unwrap();
    let dt = t0.elapsed();
    let pass = ew.holds
        && !fwd.holds
        && !rev.holds
        && fwd.failed_index == Some(2)
        && rev.failed_index == Some(1)
        && within(dt, Duration::from_millis(1));
    outcome(
        pass,
        format!(
            "exp_weak holds={}, weak_sub x<y fails at k={:?}, y<x fails at k={:?}, {:?}",
            ew.holds, fwd.failed_index, rev.failed_index, dt
        ),
    )
}

fn ac2() -> Outcome {
    let x = pv(&[2.0, 23f64.sqrt()]);
    let y = pv(&[2f64.sqrt(), 5.0]);
    let fm = check_f_majorization(&x, &y, &MonotoneMap::power(2.0).unwrap(), Flavor::Major, 1e-12).unwrap();
    let plain = check_majorization(&x, &y, OrderKind::Majorize, 1e-12).unwrap();
    outcome(
        fm.holds && !plain.holds,
        format!(
            "power(2) major holds={}, plain majorize holds={}",
            fm.holds, plain.holds
        ),
    )
}

fn ac3() -> Outcome {
    let t0 = Instant::now();
    let mut violations = 0usize;
    let mut premises = 0usize;
    for i in 0..10_000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let d = rng.gen_range(2..=6);
        let mut draw = || -> Vec<f64> { (0..d).map(|_| rng.gen_range(0.05..5.0)).collect() };
        let (x, y) = (draw(), draw());
        // every fourth pair is built to satisfy majorization so the premises fire
        let x = if i % 4 == 0 {
            transfer(&y, &mut ChaCha8Rng::seed_from_u64(i ^ 0xabc))
        } else {
            x
        };
        let rep = implication_chain(&pv(&x), &pv(&y), 1e-12).unwrap();
        violations += rep.violations.len();
        premises += usize::from(rep.holds(OrderKind::Majorize) || rep.holds(OrderKind::LogWeak));
    }
    let dt = t0.elapsed();
    outcome(
        violations == 0 && within(dt, Duration::from_secs(5)),
        format!("10000 pairs, {premises} with a chain premise, {violations} violations, {dt:?}"),
    )
}

/// A random T-transform of `y`, which `y` majorizes.
fn transfer(y: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut x = y.to_vec();
    let n = x.len();
    let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
    let w: f64 = rng.gen_range(0.0..1.0);
    let (a, b) = (x[i], x[j]);
    x[i] = w * a + (1.0 - w) * b;
    x[j] = w * b + (1.0 - w) * a;
    if i == j {
        x[i] = a;
    }
    x
}

fn ge_min(alpha: f64, ls: &[f64]) -> ExtremeDistribution {
    ExtremeDistribution::min_of(
        ls.iter()
            .map(|&l| DistributionSpec::ge(alpha, l).unwrap())
            .collect(),
    )
    .unwrap()
}

fn ac4() -> Outcome {
    let t0 = Instant::now();
    let x = ge_min(2.0, &[4.0, 0.5]);
    let xs = ge_min(2.0, &[2.0, 3.0]);
    let br = find_crossings(
        &x,
        &xs,
        CrossQuantity::SfDiff,
        GridSpec::linear(0.01, 5.0, 2048).unwrap(),
    )
    .unwrap();
    let v = check_order(&x, &xs, StochOrder::St, None, None).unwrap();
    let dt = t0.elapsed();
    outcome(
        !br.is_empty() && v.relation == OrderRelation::Crossing && within(dt, Duration::from_secs(1)),
        format!(
            "{} bracket(s) {:?}, st relation {:?}, {dt:?}",
            br.len(),
            br,
            v.relation
        ),
    )
}

fn ac5() -> Outcome {
    let t0 = Instant::now();
    let a = pv(&[1.0, 5.5]);
    let b = pv(&[2.0, 3.0]);
    let c = pv(&[1.0, 2.25]);
    let d = pv(&[1.1, 2.14]);
    let p1 = check_majorization(&b, &a, OrderKind::PLarger, 1e-12)
        .unwrap()
        .holds;
    let p2 = check_majorization(&d, &c, OrderKind::PLarger, 1e-12)
        .unwrap()
        .holds;
    // X has the p-larger vector, X* the other one
    let first = check_order(
        &ge_min(0.6, &[1.0, 5.5]),
        &ge_min(0.6, &[2.0, 3.0]),
        StochOrder::St,
        None,
        Some(1e-9),
    )
    .unwrap();
    let second = check_order(
        &ge_min(0.6, &[1.0, 2.25]),
        &ge_min(0.6, &[1.1, 2.14]),
        StochOrder::St,
        None,
        Some(1e-9),
    )
    .unwrap();
    let dt = t0.elapsed();
    let first_ok = p1 && first.relation == OrderRelation::Holds;
    let second_ok = p2 && second.relation == OrderRelation::HoldsReversed;
    outcome(
        first_ok && second_ok && within(dt, Duration::from_secs(1)),
        format!(
            "p-larger hypotheses {p1}/{p2}; (1,5.5) vs (2,3): {:?}; (1,2.25) vs (1.1,2.14): {:?} \
             (expected holds_reversed; the survival functions cross, so neither pair demonstrates \
             the opposite direction), {dt:?}",
            first.relation, second.relation
        ),
    )
}

fn ac6() -> Outcome {
    let t0 = Instant::now();
    let opts = VerifyOptions {
        tol: Some(1e-6),
        ..VerifyOptions::default()
    };
    let mut refuted = 0;
    let mut errors = 0;
    let mut confirmed = 0;
    let mut unmet = 0;
    let ids: Vec<TheoremId> = TheoremId::ALL
        .into_iter()
        .filter(|t| !t.is_archimedean())
        .collect();
    for &id in &ids {
        let s = run_fixture_suite(id, 1000, 2024, &opts);
        refuted += s.refuted;
        errors += s.errors;
        confirmed += s.confirmed;
        unmet += s.hypothesis_not_met;
    }
    let dt = t0.elapsed();
    outcome(
        refuted == 0 && errors == 0 && within(dt, Duration::from_secs(300)),
        format!(
            "{} theorems x 1000: {confirmed} confirmed, {unmet} hypothesis_not_met, {refuted} refuted, \
             {errors} errors, {dt:?}",
            ids.len()
        ),
    )
}

fn ac7() -> Outcome {
    let grid = GridSpec::linear(1e-4, 1.0 - 1e-4, 10_000).unwrap();
    let mut worst = 0.0f64;
    let mut ok = true;
    let cases = [
        (0.2, Monotonicity::Nonincreasing),
        (0.5, Monotonicity::Nonincreasing),
        (0.9, Monotonicity::Nonincreasing),
        (1.5, Monotonicity::Nondecreasing),
        (2.0, Monotonicity::Nondecreasing),
        (5.0, Monotonicity::Nondecreasing),
    ];
    for (alpha, dir) in cases {
        let v = check_monotone(|t| ge_h(alpha, t), grid, dir, 1e-10).unwrap();
        ok &= v.holds && v.n_failed == 0;
        worst = worst.max(v.max_violation);
    }
    outcome(
        ok && worst <= 1e-10,
        format!("6 scans of 10000 points, max violation {worst:e}"),
    )
}

fn ac8() -> Outcome {
    let closed = frechet_max_rev_hazard(0.0, &[1.0, 2.0], 2.0, 3.0).unwrap();
    let x = ExtremeDistribution::max_of(vec![
        DistributionSpec::frechet(0.0, 1.0, 2.0).unwrap(),
        DistributionSpec::frechet(0.0, 2.0, 2.0).unwrap(),
    ])
    .unwrap();
    let fd = richardson_derivative(|t| x.ln_cdf(t), 3.0, 1e-3);
    let rh_ok = (closed - 10.0 / 27.0).abs() <= 1e-10 && (fd - 10.0 / 27.0).abs() <= 1e-10;

    let alphas = [0.7, 1.3, 2.5];
    let lambda = 1.4;
    let base = Baseline::weibull(1.7).unwrap();
    let mut worst = 0.0f64;
    for x in GridSpec::linear(0.01, 6.0, 2048).unwrap().points() {
        let arch = archimedean_max_cdf(&Generator::Independence, &alphas, lambda, &base, x).unwrap();
        let prod: f64 = alphas.iter().map(|a| base.cdf(lambda * x).powf(*a)).product();
        worst = worst.max((arch.value - prod).abs());
    }
    outcome(
        rh_ok && worst <= 1e-10,
        format!("closed form {closed:.15}, finite difference {fd:.15}, independence vs product max diff {worst:e}"),
    )
}

fn ac9() -> Outcome {
    let rep = run_arch_batch(34, 2024);
    let total: usize = rep.sets.iter().map(|s| s.n_instances).sum();
    let consistent = rep
        .sets
        .iter()
        .all(|s| s.consistent && s.measured_direction.is_some());
    let dirs: Vec<String> = rep
        .sets
        .iter()
        .map(|s| format!("{}={:?}", s.name, s.measured_direction))
        .collect();
    outcome(
        total >= 100 && consistent && rep.conflicts.len() == 1,
        format!(
            "{total} instances, directions [{}], {} conflict(s)",
            dirs.join(", "),
            rep.conflicts.len()
        ),
    )
}

fn ac10() -> Outcome {
    let max = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum_log = |v: &[f64]| v.iter().map(|t| t.ln()).sum::<f64>();
    let mut ok = true;
    let mut viol = 0;
    for dim in 2..=4 {
        let a = schur_test(&max, dim, Box1::PARAMS, 11, 1000, SchurMode::Convex, 1e-12).unwrap();
        let b = schur_test(&sum_log, dim, Box1::PARAMS, 12, 1000, SchurMode::Concave, 1e-12).unwrap();
        ok &= a.holds && b.holds && a.n_pairs >= 1000 && b.n_pairs >= 1000;
        viol += a.n_violations + b.n_violations;
    }
    outcome(
        ok && viol == 0,
        format!("dims 2..4, 1000 transfer pairs each, {viol} violations"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
        ("AC10", ac10),
    ];
    let mut unexpected = 0;
    for (name, f) in criteria {
        let o = f();
        let known = KNOWN_FAILURES.contains(&name);
        let tag = match (o.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        if o.pass == known {
            unexpected += 1;
        }
        println!("{name} {tag}: {}", o.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
