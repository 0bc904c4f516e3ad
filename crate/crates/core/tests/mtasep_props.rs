use num_complex::Complex64;
use proptest::prelude::*;

use maya_core::mtasep::{entropy_closed, CircleState, ParryChain, ProjectionKernel, StateSpace};

fn circle() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=9).prop_flat_map(|l| (Just(l), 1..l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entropy_particle_hole_symmetry((l, n) in circle()) {
        let a = entropy_closed(l, n).unwrap();
        let b = entropy_closed(l, l - n).unwrap();
        prop_assert!((a - b).abs() <= 1e-14, "{a} vs {b}");
    }

    #[test]
    fn projection_is_orthogonal((l, n) in circle(), offset in -5i64..5) {
        let p = ProjectionKernel::with_offset(l, n, offset).unwrap().matrix();
        let pp = p.mul(&p);
        for i in 0..l {
            for j in 0..l {
                prop_assert!((pp[(i, j)] - p[(i, j)]).norm() <= 1e-12);
                prop_assert!((p[(i, j)] - p[(j, i)].conj()).norm() <= 1e-12);
            }
        }
        let trace: Complex64 = (0..l).map(|i| p[(i, i)]).sum();
        prop_assert!((trace.re - n as f64).abs() <= 1e-12);
    }

    #[test]
    fn minors_ignore_window_offset((l, n) in circle(), offset in -6i64..6, mask in any::<u64>()) {
        let points: Vec<usize> = (0..l).filter(|k| mask >> k & 1 == 1).collect();
        let base = ProjectionKernel::new(l, n).unwrap().minor(&points).det();
        let shifted = ProjectionKernel::with_offset(l, n, offset).unwrap().minor(&points).det();
        prop_assert!((base - shifted).norm() <= 1e-10);
    }

    #[test]
    fn rotation_preserves_parry_law((l, n) in (3usize..=8).prop_flat_map(|l| (Just(l), 1..l)), r in 1usize..8) {
        let chain = ParryChain::new(l, n).unwrap();
        for (s, p) in chain.stationary().iter() {
            let q = chain.stationary().get(&s.rotate(r % l)).unwrap();
            prop_assert!((p - q).abs() <= 1e-12);
        }
    }
}

/// Stationarity of the Parry chain checked by one explicit step `π ↦ πP`.
#[test]
fn parry_rows_and_stationary_vector() {
    for l in 2..=9 {
        for n in 1..l {
            let chain = ParryChain::new(l, n).unwrap();
            let pi = &chain.stationary().probs;
            let mut next = vec![0.0; pi.len()];
            for (i, &p) in pi.iter().enumerate() {
                let row = chain.row(i);
                let sum: f64 = row.iter().map(|x| x.1).sum();
                assert!((sum - 1.0).abs() <= 1e-14, "row {i} of ({l},{n}) sums to {sum}");
                assert!((chain.raw_row_sum(i) - 1.0).abs() <= 1e-10);
                for &(j, q) in row {
                    next[j] += p * q;
                }
            }
            let err = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-10, "({l},{n}): {err:e}");
        }
    }
}

#[test]
fn one_stone_hops_per_step() {
    let space = StateSpace::new(7, 3, 1 << 12).unwrap();
    for s in space.states() {
        let succ = s.successors();
        // One move per maximal block of stones.
        let blocks = (0..7).filter(|&k| s.is_stone(k) && !s.is_stone(k + 1)).count();
        assert_eq!(succ.len(), blocks);
        for t in succ {
            assert_eq!(t.stones(), 3);
            let left: Vec<usize> = (0..7).filter(|&k| s.is_stone(k) && !t.is_stone(k)).collect();
            assert_eq!(left.len(), 1);
            assert!(t.is_stone(left[0] + 1) && !s.is_stone(left[0] + 1));
        }
    }
}

#[test]
fn state_text_round_trip() {
    let s: CircleState = "1010100".parse().unwrap();
    assert_eq!(s.occupied(), vec![0, 2, 4]);
    assert_eq!(s.to_string(), "1010100");
}
