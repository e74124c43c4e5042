use icdiag::bounds::{maxp_lower, maxp_upper, smooth_bound, PolygonalBound};
use icdiag::entropy::{
    coincidence, max_probability, renyi, shannon, tsallis, tsallis_to_renyi, Distribution,
    EntropyOrder,
};
use icdiag::harness::mixture_uk;
use icdiag::quantum::{born_probabilities, general_sic, random_state, StateKind};
use icdiag::relations::{renyi_bound, tsallis_bound, ScenarioParams};
use proptest::prelude::*;

fn dist() -> impl Strategy<Value = Distribution> {
    prop::collection::vec(prop_oneof![3 => 0.0f64..1.0, 1 => Just(0.0)], 2..10)
        .prop_filter("nonzero mass", |v| v.iter().sum::<f64>() > 1e-6)
        .prop_map(|v| {
            let s: f64 = v.iter().sum();
            Distribution::new(v.into_iter().map(|x| x / s).collect()).unwrap()
        })
}

fn order() -> impl Strategy<Value = EntropyOrder> {
    prop_oneof![
        (0.0f64..=2.0),
        Just(0.0),
        Just(1.0),
        Just(2.0),
    ]
    .prop_map(|a| EntropyOrder::new(a).unwrap())
}

proptest! {
    #[test]
    fn entropies_ignore_order(p in dist(), a in order(), seed in any::<u64>()) {
        let mut v = p.probs().to_vec();
        let len = v.len();
        for i in 0..len {
            v.swap(i, (seed as usize).wrapping_add(i * 7919) % len);
        }
        let q = Distribution::new(v).unwrap();
        prop_assert!((tsallis(&p, a) - tsallis(&q, a)).abs() < 1e-12);
        prop_assert!((renyi(&p, a) - renyi(&q, a)).abs() < 1e-12);
        prop_assert!((coincidence(&p) - coincidence(&q)).abs() < 1e-15);
    }

    #[test]
    fn renyi_is_a_function_of_tsallis(p in dist(), a in order()) {
        let r = tsallis_to_renyi(tsallis(&p, a), a).unwrap();
        prop_assert!((r - renyi(&p, a)).abs() < 1e-10, "{} vs {}", r, renyi(&p, a));
    }

    #[test]
    fn shannon_limit_is_continuous(p in dist(), s in prop_oneof![Just(-1.0), Just(1.0)]) {
        let h = shannon(&p);
        for eps in [1e-4, 1e-6] {
            let a = EntropyOrder::new(1.0 + s * eps).unwrap();
            prop_assert!((tsallis(&p, a) - h).abs() < 20.0 * eps);
            prop_assert!((renyi(&p, a) - h).abs() < 20.0 * eps);
        }
    }

    #[test]
    fn coincidence_is_one_minus_tsallis_two(p in dist()) {
        let two = EntropyOrder::new(2.0).unwrap();
        prop_assert!((coincidence(&p) - (1.0 - tsallis(&p, two))).abs() < 1e-14);
    }

    #[test]
    fn polygonal_bound_holds(p in dist(), a in order()) {
        let n = p.n();
        let ic = coincidence(&p);
        let poly = PolygonalBound::new(a, n).unwrap();
        prop_assert!(tsallis(&p, a) >= poly.tsallis(ic).unwrap().value - 1e-10);
        prop_assert!(renyi(&p, a) >= poly.renyi(ic).unwrap().value - 1e-10);
        prop_assert!(poly.tsallis(ic).unwrap().value >= smooth_bound(ic, a).unwrap() - 1e-12);
    }

    #[test]
    fn max_probability_sandwich(p in dist()) {
        let ic = coincidence(&p);
        let m = max_probability(&p);
        prop_assert!(maxp_lower(ic).unwrap() <= m + 1e-10);
        prop_assert!(m <= maxp_upper(ic, p.n()).unwrap() + 1e-10);
    }

    #[test]
    fn polygon_decreases_in_coincidence(a in order(), n in 2usize..30, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let poly = PolygonalBound::new(a, n).unwrap();
        let lo = 1.0 / n as f64;
        let (u, v) = (lo + (1.0 - lo) * x.min(y), lo + (1.0 - lo) * x.max(y));
        prop_assert!(poly.tsallis(v).unwrap().value <= poly.tsallis(u).unwrap().value + 1e-13);
    }

    #[test]
    fn mixtures_lie_on_the_polygon(k in 1usize..20, x in 0.0f64..=1.0, a in order()) {
        let p = mixture_uk(k, x).unwrap();
        let kf = k as f64;
        prop_assert!((coincidence(&p) - (kf + x * x) / (kf * (kf + 1.0))).abs() < 1e-14);
        let poly = PolygonalBound::new(a, k + 1).unwrap();
        prop_assert!(tsallis(&p, a) >= poly.tsallis(coincidence(&p)).unwrap().value - 1e-12);
    }

    #[test]
    fn relation_bounds_decrease_with_purity(a in order(), s in 0.0f64..1.0, t in 0.0f64..1.0, d in 2usize..5) {
        let df = d as f64;
        let (p, q) = (1.0 / df + (1.0 - 1.0 / df) * s.min(t), 1.0 / df + (1.0 - 1.0 / df) * s.max(t));
        let scenarios: Vec<Box<dyn Fn(f64) -> ScenarioParams>> = vec![
            Box::new(move |u| ScenarioParams::mub(d, d + 1, u).unwrap()),
            Box::new(move |u| ScenarioParams::mum(d, 2, 0.5 + 0.5 / df, u).unwrap()),
            Box::new(move |u| ScenarioParams::etf(d, d + 1, u).unwrap()),
            Box::new(move |u| ScenarioParams::sic(d, u).unwrap()),
            Box::new(move |u| ScenarioParams::gsic(d, 0.5 * (df.powi(-3) + df.powi(-2)), u).unwrap()),
        ];
        for f in &scenarios {
            let (bp, bq) = (tsallis_bound(&f(p), a).unwrap(), tsallis_bound(&f(q), a).unwrap());
            prop_assert!(bq.bound <= bp.bound + 1e-13);
            if a.value() >= 1.0 {
                let (rp, rq) = (renyi_bound(&f(p), a).unwrap(), renyi_bound(&f(q), a).unwrap());
                prop_assert!(rq.bound <= rp.bound + 1e-13);
                let want = tsallis_to_renyi(bp.bound, a).unwrap();
                prop_assert!((rp.bound - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn general_sic_relation_holds(seed in any::<u64>(), t in 0.01f64..=1.0, a in order(), pure in any::<bool>()) {
        let d = 2;
        let theta = 0.125 + t * (0.25 - 0.125);
        let g = general_sic(d, theta).unwrap();
        let kind = if pure { StateKind::Pure } else { StateKind::Mixed };
        let rho = random_state(d, kind, seed).unwrap();
        let p = born_probabilities(&g, &rho).unwrap();
        let params = ScenarioParams::gsic(d, theta, rho.purity()).unwrap();
        prop_assert!((coincidence(&p) - params.coincidence_abscissa().unwrap()).abs() < 1e-12);
        prop_assert!(tsallis(&p, a) >= tsallis_bound(&params, a).unwrap().bound - 1e-9);
        prop_assert!(renyi(&p, a) >= renyi_bound(&params, a).unwrap().bound - 1e-9);
    }
}
