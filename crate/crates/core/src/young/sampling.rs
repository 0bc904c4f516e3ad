use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::young::{Partition, SkewCounts, SkewShape};

/// A (skew) standard tableau stored as the order in which cells were added.
///
/// Cells are `(row, col)`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTableau {
    pub shape: SkewShape,
    pub order: Vec<(usize, usize)>,
}

impl PathTableau {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Step index (1-based) of each cell.
    pub fn entries(&self) -> HashMap<(usize, usize), usize> {
        self.order.iter().enumerate().map(|(k, &c)| (c, k + 1)).collect()
    }

    /// Diagram after the first `k` additions.
    pub fn partition_at(&self, k: usize) -> Partition {
        let mut parts: Vec<usize> = self.shape.inner().parts().to_vec();
        for &(r, _) in &self.order[..k] {
            if r == parts.len() {
                parts.push(1);
            } else {
                parts[r] += 1;
            }
        }
        Partition::from_padded(parts).expect("path stays inside the Young graph")
    }

    /// Checks that entries form a standard filling of the skew shape.
    pub fn validate(&self) -> Result<()> {
        let entries = self.entries();
        let cells: Vec<(usize, usize)> = self.shape.cells().collect();
        if entries.len() != self.order.len() || cells.len() != self.order.len() {
            return Err(Error::Shape(format!(
                "tableau has {} entries for {} cells",
                self.order.len(),
                cells.len()
            )));
        }
        for &(i, j) in &cells {
            let Some(&v) = entries.get(&(i, j)) else {
                return Err(Error::Shape(format!("cell ({i},{j}) unfilled")));
            };
            for nb in [(i + 1, j), (i, j + 1)] {
                if let Some(&w) = entries.get(&nb) {
                    if w <= v {
                        return Err(Error::Shape(format!("entries not increasing at ({i},{j})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Incremental diagram with its conjugate, for fast hook evaluation.
struct GrowingDiagram {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl GrowingDiagram {
    fn hook(&self, i: usize, j: usize) -> f64 {
        (self.rows[i] - j + self.cols[j] - i - 1) as f64
    }

    fn addable_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.rows.len()).filter(|&i| i == 0 || self.rows.get(i).copied().unwrap_or(0) < self.rows[i - 1])
    }

    /// `dim λ′ / ((n+1) dim λ)` as the hook-product ratio `H(λ)/H(λ′)`.
    fn forward_probability(&self, r: usize) -> f64 {
        let c = self.rows.get(r).copied().unwrap_or(0);
        let mut p = 1.0;
        for j in 0..c {
            let h = self.hook(r, j);
            p *= h / (h + 1.0);
        }
        for i in 0..r {
            let h = self.hook(i, c);
            p *= h / (h + 1.0);
        }
        p
    }

    fn add(&mut self, r: usize) -> (usize, usize) {
        let c = self.rows.get(r).copied().unwrap_or(0);
        if r == self.rows.len() {
            self.rows.push(1);
        } else {
            self.rows[r] += 1;
        }
        if c == self.cols.len() {
            self.cols.push(1);
        } else {
            self.cols[c] += 1;
        }
        (r, c)
    }
}

/// Forward transition probabilities in double precision, by addable row.
pub fn forward_probabilities_f64(p: &Partition) -> Vec<(usize, f64)> {
    let g = GrowingDiagram {
        rows: p.parts().to_vec(),
        cols: p.conjugate().parts().to_vec(),
    };
    g.addable_rows().map(|r| (r, g.forward_probability(r))).collect()
}

/// Plancherel growth path of length `n`.
pub fn sample_plancherel_path(n: usize, seed: u64) -> PathTableau {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = GrowingDiagram {
        rows: Vec::new(),
        cols: Vec::new(),
    };
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let rows: Vec<usize> = g.addable_rows().collect();
        let mut acc = 0.0;
        let mut chosen = *rows.last().expect("some row is always addable");
        for &r in &rows {
            acc += g.forward_probability(r);
            if u < acc {
                chosen = r;
                break;
            }
        }
        order.push(g.add(chosen));
    }
    let outer = Partition::new(g.rows).expect("growth keeps a partition");
    PathTableau {
        shape: SkewShape::straight(outer),
        order,
    }
}

/// Uniform integer in `[0, bound)`, by rejection on random bits.
pub fn uniform_below<R: RngCore>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let excess = nbytes as u64 * 8 - bits;
    let mut buf = vec![0u8; nbytes];
    loop {
        rng.fill_bytes(&mut buf);
        if let Some(top) = buf.last_mut() {
            *top &= 0xffu8 >> excess;
        }
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return x;
        }
    }
}

/// Uniformly random standard tableau of the skew shape.
pub fn sample_uniform_skew_path(s: &SkewShape, seed: u64) -> PathTableau {
    let counts = SkewCounts::new(s.outer());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_skew_with(s, &counts, &mut rng)
}

/// Uniform skew tableau using precomputed counts for `s.outer()`.
pub fn sample_skew_with<R: RngCore>(s: &SkewShape, counts: &SkewCounts, rng: &mut R) -> PathTableau {
    let outer = s.outer();
    let mut r = uniform_below(rng, &counts.get(s.inner()));
    let mut mu = s.inner().clone();
    let mut order = Vec::with_capacity(s.cell_count());
    while &mu != outer {
        let mut next = None;
        for row in mu.addable_rows() {
            let nu = mu.with_cell(row);
            if !outer.contains(&nu) {
                continue;
            }
            let c = counts.get(&nu);
            if r < c {
                next = Some((row, nu));
                break;
            }
            r -= c;
        }
        let (row, nu) = next.expect("rank falls inside the total count");
        order.push((row, mu.part(row)));
        mu = nu;
    }
    PathTableau {
        shape: s.clone(),
        order,
    }
}
