//! Poissonized Plancherel measure from a mirrored line graph.
//!
//! Maya evolutions on a line of `2w` holes start from the empty diagram
//! (stones on the left `w` holes) and run for `M` levels with jump weight
//! `ε`. Gluing the graph to its mirror image along the top level pairs every
//! evolution ending at `λ` with one returning from `λ`, so the matchings of
//! the glued graph carry total weight `Z_λ²`. As `ε → 0` with `Mε = θ` this
//! tends to `θ^{2n} dim²λ / (n!)²`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::dimer::matchings::{enumerate_matchings, Matching};
use crate::dimer::transfer::propagate;
use crate::dimer::{BipartiteGraph, Edge, EdgeKind, Site};
use crate::error::{Error, Result};
use crate::young::{dimension, factorial, maya_decode, MayaWord, Partition};

/// The glued graph: the original occupies levels `0..=M`, the mirror
/// `M..=2M` (site `(k, j)` reflects to `(k, 2M − j)` with colours swapped).
/// Each top black is joined to its mirror copy by a vertical edge.
#[derive(Debug, Clone)]
pub struct MirroredGraph {
    pub width: usize,
    pub levels: usize,
    pub graph: BipartiteGraph,
    /// `(edge id, hole bit)` of every vertical edge.
    pub vertical: Vec<(usize, usize)>,
}

impl MirroredGraph {
    pub fn new(width: usize, levels: usize) -> Result<Self> {
        if width == 0 || levels == 0 {
            return Err(Error::Parameter("width and levels must be positive".into()));
        }
        let holes = 2 * width;
        let m = levels as i64;
        let mut whites: Vec<Site> = Vec::new();
        let mut blacks: Vec<Site> = Vec::new();
        // Original half; the bottom row keeps only the empty holes.
        for j in 0..=m {
            for k in 0..holes {
                if j > 0 || k >= width {
                    blacks.push((k, j));
                }
            }
        }
        for j in 0..m {
            for k in 0..holes {
                whites.push((k, j));
            }
        }
        let orig_whites = whites.len();
        let orig_blacks = blacks.len();
        let black_at = |blacks: &[Site], s: Site| blacks.iter().position(|&b| b == s);
        let mut edges = Vec::new();
        for (w, &(k, j)) in whites.iter().enumerate() {
            let mut candidates = vec![((k, j), EdgeKind::NoStone), ((k, j + 1), EdgeKind::StoneStays)];
            if k + 1 < holes {
                candidates.push(((k + 1, j + 1), EdgeKind::Jump));
            }
            for (site, kind) in candidates {
                if let Some(b) = black_at(&blacks, site) {
                    edges.push(Edge { white: w, black: b, kind });
                }
            }
        }
        let orig_edges = edges.len();
        // Mirror: original black ↦ white, original white ↦ black.
        let reflect = |(k, j): Site| (k, 2 * m - j);
        let mirror_whites: Vec<Site> = blacks.iter().map(|&s| reflect(s)).collect();
        let mirror_blacks: Vec<Site> = whites.iter().map(|&s| reflect(s)).collect();
        for e in edges[..orig_edges].to_vec() {
            edges.push(Edge {
                white: orig_whites + e.black,
                black: orig_blacks + e.white,
                kind: e.kind,
            });
        }
        whites.extend(mirror_whites);
        blacks.extend(mirror_blacks);
        let mut vertical = Vec::new();
        for k in 0..holes {
            let b = black_at(&blacks[..orig_blacks], (k, m)).expect("top row is full");
            vertical.push((edges.len(), k));
            edges.push(Edge {
                white: orig_whites + b,
                black: b,
                kind: EdgeKind::NoStone,
            });
        }
        Ok(MirroredGraph {
            width,
            levels,
            graph: BipartiteGraph { whites, blacks, edges },
            vertical,
        })
    }

    /// Top-level diagram: a hole holds a stone exactly when its vertical
    /// edge is unused.
    pub fn decode(&self, m: &Matching) -> Result<Partition> {
        let occupancy: Vec<bool> = self
            .vertical
            .iter()
            .map(|&(e, _)| m.edges.binary_search(&e).is_err())
            .collect();
        maya_decode(&MayaWord::new(-(self.width as i64), occupancy))
    }
}

/// Weight `Z_λ²` per diagram from explicit enumeration of the glued graph.
pub fn mirrored_weights(width: usize, levels: usize, epsilon: &BigRational, cap: usize) -> Result<BTreeMap<Partition, BigRational>> {
    let g = MirroredGraph::new(width, levels)?;
    let mut out: BTreeMap<Partition, BigRational> = BTreeMap::new();
    for m in enumerate_matchings(&g.graph, cap)? {
        let w: BigRational = m.weight(epsilon);
        *out.entry(g.decode(&m)?).or_insert_with(BigRational::zero) += w;
    }
    Ok(out)
}

/// The same weights via the one-level transfer: `Z_λ` squared.
pub fn transfer_weights(width: usize, levels: usize, epsilon: &BigRational) -> Result<BTreeMap<Partition, BigRational>> {
    if width == 0 || 2 * width > 63 {
        return Err(Error::Parameter(format!("width {width} outside 1..=31")));
    }
    let holes = 2 * width;
    let start = (1u64 << width) - 1;
    let mut out = BTreeMap::new();
    for (mask, z) in propagate(start, holes, levels, false, epsilon) {
        let occupancy: Vec<bool> = (0..holes).map(|b| mask >> b & 1 == 1).collect();
        let p = maya_decode(&MayaWord::new(-(width as i64), occupancy))?;
        out.insert(p, &z * &z);
    }
    Ok(out)
}

/// `θ^{2n} dim²λ / (n!)²` over diagrams fitting a `w × w` box.
pub fn poissonized_target(width: usize, theta: &BigRational) -> BTreeMap<Partition, BigRational> {
    let mut out = BTreeMap::new();
    for n in 0..=width * width {
        let nf = BigRational::from_integer(factorial(n).into());
        let scale = num_traits::pow(theta.clone(), 2 * n) / (&nf * &nf);
        for p in Partition::all_of_size(n) {
            if p.len() <= width && p.part(0) <= width {
                let d = BigRational::from_integer(dimension(&p).into());
                out.insert(p, &scale * &d * &d);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct PoissonEntry {
    pub partition: Partition,
    pub weight: f64,
    pub target: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoissonReport {
    pub width: usize,
    pub levels: usize,
    pub epsilon: f64,
    pub theta: f64,
    pub entries: Vec<PoissonEntry>,
    pub max_error: f64,
}

impl PoissonReport {
    pub fn get(&self, p: &Partition) -> Option<&PoissonEntry> {
        self.entries.iter().find(|e| &e.partition == p)
    }
}

fn normalize(map: &BTreeMap<Partition, BigRational>) -> BTreeMap<Partition, BigRational> {
    let total: BigRational = map.values().fold(BigRational::zero(), |a, b| a + b);
    map.iter().map(|(p, w)| (p.clone(), w / &total)).collect()
}

/// Normalised glued-graph weights against the normalised, box-restricted
/// poissonized Plancherel weights. Requires `Mε = θ` up to rounding.
pub fn poissonization_check(width: usize, levels: usize, epsilon: &BigRational, theta: &BigRational) -> Result<PoissonReport> {
    let m = BigRational::from_integer(levels.into());
    let mismatch = (&m * epsilon - theta).to_f64().unwrap_or(f64::INFINITY).abs();
    let eps = epsilon.to_f64().unwrap_or(f64::NAN);
    if mismatch > 1e-12 || !(eps > 0.0) {
        return Err(Error::Parameter(format!(
            "need M·ε = θ with ε > 0 (M = {levels}, ε = {epsilon}, θ = {theta})"
        )));
    }
    let weights = normalize(&transfer_weights(width, levels, epsilon)?);
    let target = normalize(&poissonized_target(width, theta));
    let mut entries = Vec::new();
    let mut max_error: f64 = 0.0;
    for (p, t) in &target {
        let w = weights.get(p).cloned().unwrap_or_else(BigRational::zero);
        let (w, t) = (w.to_f64().unwrap_or(f64::NAN), t.to_f64().unwrap_or(f64::NAN));
        max_error = max_error.max((w - t).abs());
        entries.push(PoissonEntry { partition: p.clone(), weight: w, target: t });
    }
    Ok(PoissonReport {
        width,
        levels,
        epsilon: eps,
        theta: theta.to_f64().unwrap_or(f64::NAN),
        entries,
        max_error,
    })
}
