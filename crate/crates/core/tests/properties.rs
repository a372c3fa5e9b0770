use proptest::prelude::*;
use stochord::copulas::Generator;
use stochord::distributions::DistributionSpec;
use stochord::extremes::ExtremeDistribution;
use stochord::grid::GridSpec;
use stochord::majorization::{check_majorization, MonotoneMap, OrderKind, ParamVector};
use stochord::orders::{check_order, OrderRelation, StochOrder};

fn pv(v: Vec<f64>) -> ParamVector {
    ParamVector::new(v).unwrap()
}

fn ge_min(alpha: f64, ls: &[f64]) -> ExtremeDistribution {
    ExtremeDistribution::min_of(
        ls.iter()
            .map(|&l| DistributionSpec::ge(alpha, l).unwrap())
            .collect(),
    )
    .unwrap()
}

/// `(x, y)` with `x ≼_w y`: a T-transform of `y`, shrunk.
fn weak_sub_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..=5)
        .prop_flat_map(|d| {
            (
                prop::collection::vec(0.2f64..5.0, d),
                0..d,
                0..d,
                0.0f64..=1.0,
                0.5f64..=1.0,
            )
        })
        .prop_map(|(y, i, j, w, c)| {
            let mut x = y.clone();
            if i != j {
                let (a, b) = (y[i], y[j]);
                x[i] = w * a + (1.0 - w) * b;
                x[j] = w * b + (1.0 - w) * a;
            }
            (x.into_iter().map(|t| c * t).collect(), y)
        })
}

/// `(x, y)` with `x ≺^w y`: a T-transform of `y`, stretched.
fn weak_super_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    weak_sub_pair().prop_map(|(x, y)| {
        let c = x.iter().sum::<f64>() / y.iter().sum::<f64>();
        (x.into_iter().map(|t| t / c / c).collect(), y)
    })
}

fn mapped(f: MonotoneMap, v: &[f64]) -> ParamVector {
    pv(v.iter().map(|&t| f.apply(t).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // increasing convex maps preserve weak submajorization
    #[test]
    fn convex_map_preserves_weak_sub((x, y) in weak_sub_pair()) {
        prop_assert!(check_majorization(&pv(x.clone()), &pv(y.clone()), OrderKind::WeakSub, 1e-12).unwrap().holds);
        for f in [MonotoneMap::Exp, MonotoneMap::power(2.0).unwrap()] {
            let v = check_majorization(&mapped(f, &x), &mapped(f, &y), OrderKind::WeakSub, 1e-9).unwrap();
            prop_assert!(v.holds, "{f:?}: {v:?}");
        }
    }

    // increasing concave maps preserve weak supermajorization
    #[test]
    fn concave_map_preserves_weak_super((x, y) in weak_super_pair()) {
        prop_assert!(check_majorization(&pv(x.clone()), &pv(y.clone()), OrderKind::WeakSuper, 1e-12).unwrap().holds);
        for f in [MonotoneMap::Log, MonotoneMap::power(0.5).unwrap()] {
            let v = check_majorization(&mapped(f, &x), &mapped(f, &y), OrderKind::WeakSuper, 1e-9).unwrap();
            prop_assert!(v.holds, "{f:?}: {v:?}");
        }
    }

    #[test]
    fn hr_implies_st(
        alpha in 0.2f64..5.0,
        a in prop::collection::vec(0.2f64..5.0, 2),
        b in prop::collection::vec(0.2f64..5.0, 2),
    ) {
        let (x, y) = (ge_min(alpha, &a), ge_min(alpha, &b));
        let grid = GridSpec::log(1e-3, 20.0, 512).unwrap();
        let hr = check_order(&x, &y, StochOrder::Hr, Some(grid), None).unwrap();
        if hr.relation == OrderRelation::Holds {
            let st = check_order(&x, &y, StochOrder::St, Some(grid), None).unwrap();
            prop_assert!(
                matches!(st.relation, OrderRelation::Holds | OrderRelation::Indistinguishable),
                "{st:?}"
            );
        }
    }

    #[test]
    fn swapping_models_mirrors_the_relation(
        alpha in 0.2f64..5.0,
        a in prop::collection::vec(0.2f64..5.0, 2),
        b in prop::collection::vec(0.2f64..5.0, 2),
        order in prop::sample::select(vec![StochOrder::St, StochOrder::Hr, StochOrder::Rh]),
    ) {
        let (x, y) = (ge_min(alpha, &a), ge_min(alpha, &b));
        let grid = GridSpec::log(1e-3, 20.0, 512).unwrap();
        let fwd = check_order(&x, &y, order, Some(grid), Some(1e-9)).unwrap().relation;
        let rev = check_order(&y, &x, order, Some(grid), Some(1e-9)).unwrap().relation;
        let mirrored = match fwd {
            OrderRelation::Holds => OrderRelation::HoldsReversed,
            OrderRelation::HoldsReversed => OrderRelation::Holds,
            r => r,
        };
        prop_assert_eq!(rev, mirrored);
    }

    // scaling every λ up by a clear margin gives an st-smaller minimum on
    // both the grid and its refinement
    #[test]
    fn refinement_keeps_clear_orders(
        alpha in 0.2f64..5.0,
        a in prop::collection::vec(0.2f64..5.0, 2..=4),
        c in 1.2f64..3.0,
    ) {
        let scaled: Vec<f64> = a.iter().map(|l| c * l).collect();
        let (x, y) = (ge_min(alpha, &scaled), ge_min(alpha, &a));
        let grid = GridSpec::log(1e-2, 10.0, 256).unwrap();
        for g in [grid, grid.refined()] {
            let v = check_order(&x, &y, StochOrder::St, Some(g), None).unwrap();
            prop_assert_eq!(v.relation, OrderRelation::Holds);
        }
    }

    #[test]
    fn copula_has_uniform_margins(u in 1e-6f64..1.0, theta in 0.1f64..8.0) {
        for g in [
            Generator::Independence,
            Generator::clayton(theta).unwrap(),
            Generator::gumbel(1.0 + theta).unwrap(),
        ] {
            let c = g.copula(&[u, 1.0]).unwrap();
            prop_assert!((c - u).abs() <= 1e-12 * u.max(1e-3), "{g}: C({u},1) = {c}");
        }
    }
}
