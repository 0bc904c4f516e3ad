//! One-level maya transfer: any set `J` of stones may jump simultaneously,
//! each one hole to the right, provided every target is vacated or empty.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Successor states of `mask` in one level, with the number of jumps.
///
/// On the cylinder (`cyclic`) hole `l − 1` jumps to hole `0`; on the line
/// the stone on the last hole cannot move.
pub fn level_successors(mask: u64, l: usize, cyclic: bool) -> Vec<(u64, u32)> {
    let full = if l >= 64 { u64::MAX } else { (1u64 << l) - 1 };
    let mut out = Vec::new();
    let mut sub = mask;
    loop {
        let shifted = if cyclic {
            ((sub << 1) | (sub >> (l - 1))) & full
        } else {
            sub << 1
        };
        let stay = mask & !sub;
        if shifted & !full == 0 && stay & shifted == 0 {
            out.push((stay | shifted, sub.count_ones()));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out
}

/// `Σ ε^{#jumps}` over evolutions `from → to` in `levels` steps.
pub fn partition_function(from: u64, to: u64, l: usize, levels: usize, cyclic: bool, eps: &BigRational) -> BigRational {
    let layer = propagate(from, l, levels, cyclic, eps);
    layer.get(&to).cloned().unwrap_or_else(BigRational::zero)
}

/// Weighted reachable states after `levels` steps from `from`.
pub fn propagate(from: u64, l: usize, levels: usize, cyclic: bool, eps: &BigRational) -> HashMap<u64, BigRational> {
    let max_jumps = l;
    let powers: Vec<BigRational> = std::iter::successors(Some(BigRational::one()), |p| Some(p * eps))
        .take(max_jumps + 1)
        .collect();
    let mut layer: HashMap<u64, BigRational> = HashMap::from([(from, BigRational::one())]);
    for _ in 0..levels {
        let mut next: HashMap<u64, BigRational> = HashMap::new();
        for (s, w) in &layer {
            for (t, k) in level_successors(*s, l, cyclic) {
                *next.entry(t).or_insert_with(BigRational::zero) += w * &powers[k as usize];
            }
        }
        layer = next;
    }
    layer
}

/// Whether some evolution connects the two states.
pub fn reachable(from: u64, to: u64, l: usize, levels: usize, cyclic: bool) -> bool {
    let mut layer = std::collections::HashSet::from([from]);
    for _ in 0..levels {
        layer = layer
            .iter()
            .flat_map(|&s| level_successors(s, l, cyclic).into_iter().map(|(t, _)| t))
            .collect();
    }
    layer.contains(&to)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_successors() {
        // Stones on holes 0 and 1 of a 3-hole line: stay, front stone alone, or both.
        let mut s = level_successors(0b011, 3, false);
        s.sort();
        assert_eq!(s, vec![(0b011, 0), (0b101, 1), (0b110, 2)]);
        // The last hole is a wall on the line.
        assert_eq!(level_successors(0b100, 3, false), vec![(0b100, 0)]);
    }

    #[test]
    fn cylinder_wraps() {
        let mut s = level_successors(0b100, 3, true);
        s.sort();
        assert_eq!(s, vec![(0b001, 1), (0b100, 0)]);
        // Adjacent stones may move together.
        let mut s = level_successors(0b011, 3, true);
        s.sort();
        assert_eq!(s, vec![(0b011, 0), (0b101, 1), (0b110, 2)]);
    }

    #[test]
    fn counts_single_stone() {
        // One stone on a 3-cycle, 2 levels, end where it started: stay twice only.
        let eps = BigRational::new(1.into(), 10.into());
        let z = partition_function(0b001, 0b001, 3, 2, true, &eps);
        assert_eq!(z, BigRational::one());
        let z = partition_function(0b001, 0b010, 3, 2, true, &eps);
        assert_eq!(z, BigRational::new(2.into(), 10.into()));
        assert!(!reachable(0b001, 0b100, 3, 1, true));
    }
}
