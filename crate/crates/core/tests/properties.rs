use std::sync::Arc;

use bgl_core::apps::{build_walk_ensemble, IncrementLaw, PathSampling};
use bgl_core::chaining::{generalized_pisier_bound, optimize_theta, pisier_bound, ChainingSpec};
use bgl_core::entropy::{
    covering_number, family_semimetric, CoverMode, FamilyNorm, FunctionFamily, SemiMetric,
};
use bgl_core::lp::{bgl_norm, fundamental_function, lp_norm, DiscreteMeasureSpace, SimpleFunction};
use bgl_core::psi::{product_psi, psi_doob, psi_kappa, PGrid, PsiFunction};
use proptest::prelude::*;

fn space_and_values(max_atoms: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..=max_atoms).prop_flat_map(|n| {
        (
            prop::collection::vec(0.01f64..3.0, n),
            prop::collection::vec(-5.0f64..5.0, n),
        )
    })
}

fn function((weights, values): (Vec<f64>, Vec<f64>)) -> SimpleFunction {
    let space = DiscreteMeasureSpace::from_weights(weights).unwrap().into_shared();
    SimpleFunction::new(space, values).unwrap()
}

fn family(members: usize, atoms: usize) -> impl Strategy<Value = FunctionFamily> {
    (
        prop::collection::vec(0.05f64..1.0, atoms),
        prop::collection::vec(prop::collection::vec(0.0f64..1.0, atoms), members),
    )
        .prop_map(|(w, rows)| {
            let total: f64 = w.iter().sum();
            let space = DiscreteMeasureSpace::from_weights(w.iter().map(|x| x / total).collect())
                .unwrap()
                .into_shared();
            FunctionFamily::from_rows(space, rows).unwrap()
        })
}

fn grid() -> PGrid {
    PGrid::log_spaced(1.05, 60.0, 40).unwrap()
}

fn psis() -> Vec<PsiFunction> {
    vec![
        PsiFunction::constant(),
        PsiFunction::power(0.5).unwrap(),
        PsiFunction::power(2.0).unwrap(),
        PsiFunction::doob_factor(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_commutative_and_associative(i in 0usize..4, j in 0usize..4, k in 0usize..4) {
        let ps = psis();
        let ab = product_psi(&ps[i], &ps[j]).unwrap();
        let ba = product_psi(&ps[j], &ps[i]).unwrap();
        let ab_c = product_psi(&ab, &ps[k]).unwrap();
        let a_bc = product_psi(&ps[i], &product_psi(&ps[j], &ps[k]).unwrap()).unwrap();
        for &p in grid().points() {
            prop_assert_eq!(ab.eval(p).unwrap(), ba.eval(p).unwrap());
            let (x, y) = (ab_c.eval(p).unwrap(), a_bc.eval(p).unwrap());
            prop_assert!((x - y).abs() <= 4.0 * f64::EPSILON * x.abs());
        }
    }

    #[test]
    fn kappa_transform_dominates(i in 0usize..4, kappa in 0.01f64..1.0) {
        let psi = &psis()[i];
        let k = psi_kappa(psi, kappa).unwrap();
        for &p in grid().points() {
            prop_assert!(k.eval(p).unwrap() >= psi.eval(p).unwrap());
            prop_assert!(k.eval(p).unwrap() >= 1.0);
        }
    }

    #[test]
    fn doob_transform_ratio_decreases(i in 0usize..4) {
        let psi = &psis()[i];
        let d = psi_doob(psi).unwrap();
        let r: Vec<f64> = grid().points().iter().map(|&p| d.eval(p).unwrap() / psi.eval(p).unwrap()).collect();
        prop_assert!(r.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn lyapunov_interpolation(fv in space_and_values(12), p0 in 1.0f64..6.0, p1 in 6.0f64..80.0, lambda in 0.0f64..1.0) {
        let f = function(fv);
        let p = 1.0 / ((1.0 - lambda) / p0 + lambda / p1);
        let lhs = lp_norm(&f, p).unwrap();
        let rhs = lp_norm(&f, p0).unwrap().powf(1.0 - lambda) * lp_norm(&f, p1).unwrap().powf(lambda);
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn bgl_norm_is_homogeneous(fv in space_and_values(10), c in -20.0f64..20.0, i in 0usize..4) {
        let f = function(fv);
        let psi = &psis()[i];
        let g = grid();
        let a = bgl_norm(&f.scale(c).unwrap(), psi, &g).unwrap().value;
        let b = c.abs() * bgl_norm(&f, psi, &g).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300));
    }

    #[test]
    fn bgl_triangle_inequality((w, a, b) in (1usize..10).prop_flat_map(|n| (
        prop::collection::vec(0.01f64..3.0, n),
        prop::collection::vec(-5.0f64..5.0, n),
        prop::collection::vec(-5.0f64..5.0, n),
    )), i in 0usize..4) {
        let space = DiscreteMeasureSpace::from_weights(w).unwrap().into_shared();
        let f = SimpleFunction::new(Arc::clone(&space), a).unwrap();
        let g = SimpleFunction::new(space, b).unwrap();
        let psi = &psis()[i];
        let gr = grid();
        let lhs = bgl_norm(&f.add(&g).unwrap(), psi, &gr).unwrap().value;
        let rhs = bgl_norm(&f, psi, &gr).unwrap().value + bgl_norm(&g, psi, &gr).unwrap().value;
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn fundamental_function_is_monotone(mut deltas in prop::collection::vec(1e-3f64..1e3, 2..8), i in 0usize..4) {
        deltas.sort_by(f64::total_cmp);
        let psi = &psis()[i];
        let g = grid();
        let vals: Vec<f64> = deltas.iter().map(|&d| fundamental_function(psi, d, &g).unwrap()).collect();
        prop_assert!(vals.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn covering_numbers_behave(points in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 1..12),
                               eps in prop::collection::vec(0.01f64..1.5, 1..6)) {
        let metric = SemiMetric::from_points(&points).unwrap();
        let m = metric.size();
        let mut eps = eps;
        eps.sort_by(f64::total_cmp);
        let ns: Vec<usize> = eps.iter().map(|&e| covering_number(&metric, e, CoverMode::Exact).unwrap()).collect();
        prop_assert!(ns.windows(2).all(|w| w[1] <= w[0]));
        if metric.diameter() > 0.0 {
            prop_assert_eq!(covering_number(&metric, metric.diameter(), CoverMode::Exact).unwrap(), 1);
        }
        if let Some(min) = metric.min_positive() {
            prop_assert_eq!(covering_number(&metric, min * 0.999, CoverMode::Exact).unwrap(), m);
        }
        for &e in &eps {
            let exact = covering_number(&metric, e, CoverMode::Exact).unwrap();
            prop_assert!(covering_number(&metric, e, CoverMode::Greedy).unwrap() >= exact);
            for c in [0.25, 2.0, 8.0] {
                let scaled = metric.scaled(c).unwrap();
                prop_assert_eq!(covering_number(&scaled, e * c, CoverMode::Exact).unwrap(), exact);
            }
        }
    }

    #[test]
    fn rescaled_metric_covers(fam in family(6, 5), k in 1i32..6, p in 1.5f64..20.0) {
        let psi = PsiFunction::power(0.5).unwrap();
        let g = grid();
        let dp = family_semimetric(&fam, &FamilyNorm::Lp(p)).unwrap().metric;
        let dpsi = family_semimetric(&fam, &FamilyNorm::Bgl { psi: psi.clone(), grid: g }).unwrap().metric;
        let eps = 0.5f64.powi(k);
        let lhs = covering_number(&dp, eps, CoverMode::Exact).unwrap();
        let rhs = covering_number(&dpsi, eps / psi.eval(p).unwrap(), CoverMode::Exact).unwrap();
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn pisier_dominates_and_is_homogeneous(fam in family(8, 6), p in 1.0f64..12.0, c in 0.01f64..100.0) {
        let r = pisier_bound(&fam, p).unwrap();
        prop_assert!(r.bound >= r.exact * (1.0 - 1e-12));
        let s = pisier_bound(&fam.scaled(c).unwrap(), p).unwrap();
        prop_assert!((s.slack_ratio - r.slack_ratio).abs() <= 1e-10 * r.slack_ratio);
    }

    #[test]
    fn generalized_pisier_dominates(fam in family(5, 6), i in 0usize..4, j in 0usize..4) {
        let ps = psis();
        let r = generalized_pisier_bound(&fam, &ps[i], &ps[j], &grid()).unwrap();
        prop_assert!(r.dominates, "{:?}", r);
    }

    #[test]
    fn optimized_theta_is_minimal(fam in family(6, 4), thetas in prop::collection::vec(0.05f64..0.95, 1..6)) {
        let opt = optimize_theta(&fam, &ChainingSpec::EntropySum { p: 2.0 }, &thetas, 12, CoverMode::Exact).unwrap();
        for &(_, b) in &opt.scan {
            prop_assert!(opt.best.bound_value <= b);
        }
        prop_assert!(opt.best.dominates);
        prop_assert_eq!(opt.best.resum(), opt.best.bound_value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn walks_with_random_laws_are_martingales(raw in prop::collection::vec((-3.0f64..3.0, 0.1f64..1.0), 2..4),
                                             horizon in 1usize..7) {
        // Shift values to mean zero under normalized probabilities.
        let total: f64 = raw.iter().map(|r| r.1).sum();
        let mean: f64 = raw.iter().map(|r| r.0 * r.1).sum::<f64>() / total;
        let table: Vec<(f64, f64)> = raw.iter().map(|&(v, w)| (v - mean, w / total)).collect();
        let law = IncrementLaw::Table(table.clone());
        prop_assume!(law.atoms().is_ok());
        let e = build_walk_ensemble(horizon, law, PathSampling::Enumerate).unwrap();
        prop_assert!(e.martingale_defect() <= 1e-12);
        let step_var: f64 = table.iter().map(|&(v, w)| w * v * v).sum();
        for n in 1..=horizon {
            let s2 = e.sigma(n).powi(2);
            prop_assert!((s2 - n as f64 * step_var).abs() <= 1e-10 * s2.max(1.0));
        }
    }
}
