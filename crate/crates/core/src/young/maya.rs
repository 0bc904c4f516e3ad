use std::fmt;

use crate::error::{Error, Result};
use crate::young::Partition;

/// Stone/hole word over the holes `lo..hi` of the line.
///
/// Hole `h` sits at the half-integer position `h + 1/2`. Everything left of
/// the window is implicitly a stone, everything right of it a hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MayaWord {
    lo: i64,
    occupancy: Vec<bool>,
}

/// Smallest window `[lo, hi)` that holds every boundary turn of `p`.
pub fn minimal_window(p: &Partition) -> (i64, i64) {
    (-(p.len() as i64), p.part(0) as i64)
}

/// Maya word of `p` on the window `[lo, hi)`.
pub fn maya_encode(p: &Partition, lo: i64, hi: i64) -> Result<MayaWord> {
    let (need_lo, need_hi) = minimal_window(p);
    if lo > need_lo || hi < need_hi {
        return Err(Error::WindowTooNarrow {
            lo,
            hi,
            need_lo,
            need_hi,
        });
    }
    let mut occupancy = vec![false; (hi - lo) as usize];
    // Row i (1-based) puts a stone on hole λ_i − i; rows past the last part
    // fill every hole below −len.
    for i in 1..=(-lo) as usize {
        let h = p.part(i - 1) as i64 - i as i64;
        occupancy[(h - lo) as usize] = true;
    }
    Ok(MayaWord { lo, occupancy })
}

/// Inverse of [`maya_encode`].
pub fn maya_decode(w: &MayaWord) -> Result<Partition> {
    let stones: Vec<i64> = w.stones();
    let expected = (-w.lo).max(0) as usize;
    if w.lo > 0 || w.hi() < 0 {
        return Err(Error::InvalidMaya(format!(
            "window [{}, {}) does not straddle the origin",
            w.lo,
            w.hi()
        )));
    }
    if stones.len() != expected {
        return Err(Error::InvalidMaya(format!(
            "charge {} (stones {} in a window needing {})",
            stones.len() as i64 - expected as i64,
            stones.len(),
            expected
        )));
    }
    let parts: Vec<usize> = stones
        .iter()
        .rev()
        .enumerate()
        .map(|(k, &h)| (h + k as i64 + 1) as usize)
        .collect();
    Partition::from_padded(parts)
}

impl MayaWord {
    pub fn new(lo: i64, occupancy: Vec<bool>) -> Self {
        MayaWord { lo, occupancy }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.occupancy.len() as i64
    }

    pub fn occupancy(&self) -> &[bool] {
        &self.occupancy
    }

    pub fn is_stone(&self, hole: i64) -> bool {
        if hole < self.lo {
            true
        } else if hole >= self.hi() {
            false
        } else {
            self.occupancy[(hole - self.lo) as usize]
        }
    }

    /// Hole indices carrying stones, increasing.
    pub fn stones(&self) -> Vec<i64> {
        (self.lo..self.hi()).filter(|&h| self.is_stone(h)).collect()
    }

    /// Half-integer positions of the stones.
    pub fn stone_positions(&self) -> Vec<f64> {
        self.stones().into_iter().map(|h| h as f64 + 0.5).collect()
    }

    pub fn hole_positions(&self) -> Vec<f64> {
        (self.lo..self.hi())
            .filter(|&h| !self.is_stone(h))
            .map(|h| h as f64 + 0.5)
            .collect()
    }
}

impl fmt::Display for MayaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.occupancy {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single_cell() {
        let e = maya_encode(&Partition::empty(), -3, 3).unwrap();
        assert_eq!(e.stone_positions(), vec![-2.5, -1.5, -0.5]);
        assert_eq!(e.hole_positions(), vec![0.5, 1.5, 2.5]);
        let one = maya_encode(&"1".parse().unwrap(), -3, 3).unwrap();
        assert_eq!(one.stone_positions(), vec![-2.5, -1.5, 0.5]);
    }

    #[test]
    fn narrow_window_names_minimum() {
        let p: Partition = "3,1".parse().unwrap();
        match maya_encode(&p, -1, 3) {
            Err(Error::WindowTooNarrow { need_lo, need_hi, .. }) => {
                assert_eq!((need_lo, need_hi), (-2, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn charge_checked() {
        let w = MayaWord::new(-2, vec![true, true, true, false]);
        assert!(maya_decode(&w).is_err());
    }
}
