use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use maya_core::young::{
    backward_step_distribution, count_skew_determinant, count_skew_dp, dimension, forward_step_distribution,
    maya_decode, maya_encode, minimal_window, sample_uniform_skew_path, Partition, SkewShape,
};

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_parts).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_padded(v).unwrap()
    })
}

/// Sum over standard tableaux by hook lengths, kept apart from the DP.
fn hook_dimension(p: &Partition) -> BigUint {
    let mut num = BigUint::one();
    for k in 2..=p.size() {
        num *= k;
    }
    let den = p.cells().fold(BigUint::one(), |acc, (r, c)| acc * p.hook(r, c));
    num / den
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn maya_round_trip(p in partition(6, 6), extra_lo in 0i64..4, extra_hi in 0i64..4) {
        let (lo, hi) = minimal_window(&p);
        let w = maya_encode(&p, lo - extra_lo, hi + extra_hi).unwrap();
        prop_assert_eq!(maya_decode(&w).unwrap(), p);
    }

    #[test]
    fn adding_a_cell_moves_one_stone_right(p in partition(5, 5)) {
        let (lo, hi) = minimal_window(&p);
        let before = maya_encode(&p, lo - 1, hi + 1).unwrap().stones();
        for row in p.addable_rows() {
            let q = p.with_cell(row);
            let after = maya_encode(&q, lo - 1, hi + 1).unwrap().stones();
            let gone: Vec<i64> = before.iter().filter(|s| !after.contains(s)).copied().collect();
            let new: Vec<i64> = after.iter().filter(|s| !before.contains(s)).copied().collect();
            prop_assert_eq!(gone.len(), 1);
            prop_assert_eq!(new.len(), 1);
            prop_assert_eq!(new[0], gone[0] + 1);
        }
    }

    #[test]
    fn dimension_matches_hook_lengths(p in partition(6, 6)) {
        prop_assert_eq!(dimension(&p), hook_dimension(&p));
        let s = SkewShape::straight(p.clone());
        prop_assert_eq!(count_skew_dp(&s), hook_dimension(&p));
    }

    #[test]
    fn skew_routes_agree(outer in partition(5, 5), pick in prop::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        // Inner shape: drop a few removable corners of the outer one.
        let mut inner = outer.clone();
        for ix in pick {
            let rows = inner.removable_rows();
            if rows.is_empty() {
                break;
            }
            inner = inner.without_cell(rows[ix.index(rows.len())]);
        }
        let s = SkewShape::new(outer, inner).unwrap();
        prop_assert_eq!(count_skew_dp(&s), count_skew_determinant(&s));
    }

    #[test]
    fn forward_identity(p in partition(5, 5)) {
        let total: BigUint = p.addable_rows().iter().map(|&r| dimension(&p.with_cell(r))).sum();
        prop_assert_eq!(total, dimension(&p) * (p.size() + 1));
        let law = forward_step_distribution(&p);
        let sum: BigRational = law.values().cloned().sum();
        prop_assert!(sum.is_one());
    }

    #[test]
    fn backward_law_sums_to_one(p in partition(5, 5)) {
        prop_assume!(!p.is_empty());
        let law: BTreeMap<Partition, BigRational> = backward_step_distribution(&p).unwrap();
        let sum: BigRational = law.values().cloned().sum();
        prop_assert!(sum.is_one());
        prop_assert!(law.values().all(|q| *q > BigRational::zero()));
    }

    #[test]
    fn skew_samples_are_standard(outer in partition(4, 5), seed in any::<u64>()) {
        prop_assume!(outer.size() > 0);
        let s = SkewShape::straight(outer);
        let tab = sample_uniform_skew_path(&s, seed);
        prop_assert!(tab.validate().is_ok());
        prop_assert_eq!(tab.len(), s.cell_count());
    }
}
