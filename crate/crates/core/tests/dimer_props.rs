use num_complex::Complex64;
use proptest::prelude::*;

use maya_core::dimer::{
    enumerate_matchings, finite_kernel_exact, is_feasible, jump_density, kasteleyn_check, partition_sum,
    stone_correlation, CylinderGraph, FiniteKernel, GaugeAssignment, LimitKernel, MATCHING_VERTEX_CAP,
};
use maya_core::cyclotomic::Cyclotomic;
use maya_core::mtasep::{determinantal_state_probability, CircleState, ProjectionKernel};
use maya_core::Rational;

/// Boundary pair with `N` stones on a circle of `L` holes, plus a depth.
fn instance() -> impl Strategy<Value = (CircleState, CircleState, i64)> {
    (2usize..=5)
        .prop_flat_map(|l| (Just(l), 1..l))
        .prop_flat_map(|(l, n)| {
            let state = prop::sample::subsequence((0..l).collect::<Vec<_>>(), n)
                .prop_map(move |ks| CircleState::from_positions(l, &ks).unwrap());
            (state.clone(), state, 1i64..=3)
        })
}

fn small(g: &CylinderGraph) -> bool {
    g.graph.vertex_count() <= 30
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kasteleyn_identity_on_random_boundaries((a, b, m) in instance(), num in 1i64..4, den in 2i64..6) {
        let g = CylinderGraph::new(a, b, 0, m).unwrap();
        prop_assume!(small(&g));
        let eps = Rational::new(num.into(), den.into());
        let holds = if g.is_odd() {
            kasteleyn_check(&g, &eps, &GaugeAssignment::standard(&g), MATCHING_VERTEX_CAP).unwrap().holds()
        } else {
            let e = Cyclotomic::from_rational(eps.clone());
            kasteleyn_check(&g, &e, &GaugeAssignment::standard(&g), MATCHING_VERTEX_CAP).unwrap().holds()
        };
        prop_assert!(holds);
    }

    #[test]
    fn edge_probabilities_are_probabilities((a, b, m) in instance(), eps in 0.05f64..0.9) {
        let g = CylinderGraph::new(a, b, 0, m).unwrap();
        prop_assume!(small(&g) && is_feasible(&g));
        let k = finite_kernel_exact(&g, eps, &GaugeAssignment::standard(&g)).unwrap();
        let probs = k.edge_probabilities();
        for (e, p) in probs.iter().enumerate() {
            prop_assert!(*p >= -1e-10 && *p <= 1.0 + 1e-10, "edge {e}: {p}");
            prop_assert!(k.edge_probability(e).im.abs() <= 1e-10);
        }
        // Every white vertex is matched exactly once.
        for edges in g.graph.white_edges() {
            let s: f64 = edges.iter().map(|&e| probs[e]).sum();
            prop_assert!((s - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn matching_count_positive_iff_feasible((a, b, m) in instance()) {
        let g = CylinderGraph::new(a, b, 0, m).unwrap();
        prop_assume!(small(&g));
        let ms = enumerate_matchings(&g.graph, MATCHING_VERTEX_CAP).unwrap();
        prop_assert_eq!(!ms.is_empty(), is_feasible(&g));
        let z: Rational = partition_sum(&ms, &Rational::new(1.into(), 3.into()));
        prop_assert_eq!(z > Rational::from_integer(0.into()), !ms.is_empty());
    }

    #[test]
    fn finite_branch_difference_is_delta(l in 2usize..=9, n_frac in 0.0f64..1.0, eps in 0.01f64..0.3, d in -12i64..12) {
        let n = 1 + (n_frac * (l - 1) as f64) as usize;
        let Ok(k) = FiniteKernel::new(l, n, eps) else { return Ok(()) };
        // value(0, ·) is the 0⁻ side; the 0⁺ side is the plain window sum.
        let plus: Complex64 = k.harmonics.window.iter().map(|&r| k.harmonics.phase(d, r)).sum::<Complex64>() / l as f64;
        let delta = if d.rem_euclid(l as i64) == 0 { 1.0 } else { 0.0 };
        prop_assert!((plus - k.value(0, d) - delta).norm() <= 1e-12);
    }

    #[test]
    fn limit_branch_difference_is_delta(l in 2usize..=12, n_frac in 0.0f64..1.0, d in -15i64..15) {
        let n = 1 + (n_frac * (l - 1) as f64) as usize;
        let k = LimitKernel::new(l, n, None).unwrap();
        let delta = if d.rem_euclid(l as i64) == 0 { 1.0 } else { 0.0 };
        let diff = k.branch(true, 0.0, d) - k.branch(false, 0.0, d);
        prop_assert!((diff - delta).norm() <= 1e-12);
    }

    #[test]
    fn equal_time_correlations_are_kernel_minors(l in 2usize..=8, n_frac in 0.0f64..1.0, mask in any::<u64>(), t in -2.0f64..2.0) {
        let n = 1 + (n_frac * (l - 1) as f64) as usize;
        let occupied: Vec<usize> = (0..l).filter(|k| mask >> k & 1 == 1).collect();
        prop_assume!(!occupied.is_empty());
        let points: Vec<(f64, i64)> = occupied.iter().map(|&k| (t, k as i64)).collect();
        let lhs = stone_correlation(&points, l, n).unwrap();
        let p = ProjectionKernel::new(l, n).unwrap();
        let rhs = p.minor(&occupied).det().re;
        prop_assert!((lhs - rhs).abs() <= 1e-10, "{lhs} vs {rhs}");
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&lhs));
        if occupied.len() == n {
            let full = determinantal_state_probability(&p, &occupied).unwrap();
            prop_assert!((lhs - full).abs() <= 1e-10);
        }
    }

    #[test]
    fn jump_densities_nonnegative(l in 2usize..=8, n_frac in 0.0f64..1.0, pts in prop::collection::vec((-3.0f64..3.0, 0i64..8), 1..4)) {
        let n = 1 + (n_frac * (l - 1) as f64) as usize;
        let mut points: Vec<(f64, i64)> = pts.into_iter().map(|(t, k)| (t, k % l as i64)).collect();
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        points.dedup_by(|a, b| a.1 == b.1 && (a.0 - b.0).abs() < 1e-9);
        let rho = jump_density(&points, l, n).unwrap();
        prop_assert!(rho >= -1e-10, "{rho} at {points:?}");
    }
}
