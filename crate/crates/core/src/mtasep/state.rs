use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest circle length representable by a state bitmask.
pub const MAX_CIRCLE: usize = 63;

/// Stone configuration on the circle `Z_L`; bit `k` set means hole `k` has a stone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleState {
    l: usize,
    mask: u64,
}

impl CircleState {
    pub fn from_mask(l: usize, mask: u64) -> Result<Self> {
        if l == 0 || l > MAX_CIRCLE {
            return Err(Error::Parameter(format!("circle length {l} outside 1..={MAX_CIRCLE}")));
        }
        if mask >> l != 0 {
            return Err(Error::Parameter(format!("mask {mask:#b} has bits beyond L = {l}")));
        }
        Ok(CircleState { l, mask })
    }

    pub fn from_positions(l: usize, occupied: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &k in occupied {
            if k >= l {
                return Err(Error::Parameter(format!("position {k} outside Z_{l}")));
            }
            if mask & (1 << k) != 0 {
                return Err(Error::Parameter(format!("position {k} repeated")));
            }
            mask |= 1 << k;
        }
        Self::from_mask(l, mask)
    }

    pub fn len(&self) -> usize {
        self.l
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn stones(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_stone(&self, k: usize) -> bool {
        self.mask >> (k % self.l) & 1 == 1
    }

    pub fn occupied(&self) -> Vec<usize> {
        (0..self.l).filter(|&k| self.is_stone(k)).collect()
    }

    /// States reachable by one stone hopping `k → k+1 (mod L)` into an empty hole.
    pub fn successors(&self) -> Vec<CircleState> {
        self.occupied()
            .into_iter()
            .filter(|&k| !self.is_stone(k + 1))
            .map(|k| CircleState {
                l: self.l,
                mask: self.mask & !(1 << k) | 1 << ((k + 1) % self.l),
            })
            .collect()
    }

    /// Rotation by `r` holes in the positive direction.
    pub fn rotate(&self, r: usize) -> CircleState {
        let r = r % self.l;
        let full = if self.l == 64 { u64::MAX } else { (1u64 << self.l) - 1 };
        let mask = if r == 0 {
            self.mask
        } else {
            ((self.mask << r) | (self.mask >> (self.l - r))) & full
        };
        CircleState { l: self.l, mask }
    }
}

impl fmt::Display for CircleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.l {
            write!(f, "{}", if self.is_stone(k) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for CircleState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut mask = 0u64;
        for (k, ch) in s.chars().enumerate() {
            match ch {
                '1' => mask |= 1 << k.min(63),
                '0' => {}
                _ => return Err(Error::Parse(format!("state {s:?}: expected 0/1, got {ch:?}"))),
            }
        }
        CircleState::from_mask(s.len(), mask)
    }
}

impl Serialize for CircleState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CircleState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `C(L, N)` states in colexicographic order (increasing bitmask).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    l: usize,
    n: usize,
    masks: Vec<u64>,
    choose: Vec<Vec<u64>>,
}

impl StateSpace {
    pub fn new(l: usize, n: usize, cap: usize) -> Result<Self> {
        if n == 0 || n >= l {
            return Err(Error::Domain(format!("need 0 < N < L, got L = {l}, N = {n}")));
        }
        if l > MAX_CIRCLE {
            return Err(Error::Parameter(format!("circle length {l} exceeds {MAX_CIRCLE}")));
        }
        let size = binomial(l as u64, n as u64);
        if size > cap as u128 {
            return Err(Error::SizeLimit {
                what: "states",
                size,
                cap: cap as u128,
            });
        }
        let mut masks = Vec::with_capacity(size as usize);
        let mut m: u64 = (1 << n) - 1;
        let limit: u64 = 1 << l;
        while m < limit {
            masks.push(m);
            // Gosper's hack: next mask with the same popcount.
            let c = m & m.wrapping_neg();
            let r = m + c;
            m = (((r ^ m) >> 2) / c) | r;
        }
        let choose = (0..=l)
            .map(|a| (0..=n).map(|b| binomial(a as u64, b as u64) as u64).collect())
            .collect();
        Ok(StateSpace { l, n, masks, choose })
    }

    pub fn circle(&self) -> usize {
        self.l
    }

    pub fn stones(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn state(&self, i: usize) -> CircleState {
        CircleState {
            l: self.l,
            mask: self.masks[i],
        }
    }

    pub fn states(&self) -> impl Iterator<Item = CircleState> + '_ {
        (0..self.len()).map(|i| self.state(i))
    }

    /// Colex rank via the combinatorial number system.
    pub fn rank(&self, s: &CircleState) -> Option<usize> {
        if s.l != self.l || s.stones() != self.n {
            return None;
        }
        let mut r = 0u64;
        for (i, k) in s.occupied().into_iter().enumerate() {
            r += self.choose[k][i + 1];
        }
        Some(r as usize)
    }
}
