use serde::Serialize;
use serde_json::{json, Value};

use num_rational::BigRational;
use num_traits::Zero;

use crate::dimer::transfer::level_successors;
use crate::dimer::{BipartiteGraph, CylinderGraph, EdgeKind, GaugeAssignment};
use crate::error::{Error, Result};
use crate::mtasep::CircleState;
use crate::scalar::{Field, KasteleynScalar};

/// Default vertex cap for brute-force enumeration.
pub const MATCHING_VERTEX_CAP: usize = 40;

/// A perfect matching as the list of its edge ids, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub edges: Vec<usize>,
    pub jumps: usize,
}

impl Matching {
    /// `ε^{#jump edges}`.
    pub fn weight<T: Field>(&self, epsilon: &T) -> T {
        (0..self.jumps).fold(T::one(), |acc, _| acc * epsilon.clone())
    }
}

/// All perfect matchings, by branching on the most constrained black vertex.
pub fn enumerate_matchings(g: &BipartiteGraph, cap: usize) -> Result<Vec<Matching>> {
    if g.vertex_count() > cap {
        return Err(Error::SizeLimit {
            what: "vertices",
            size: g.vertex_count() as u128,
            cap: cap as u128,
        });
    }
    if g.whites.len() != g.blacks.len() {
        return Ok(Vec::new());
    }
    let black_edges = g.black_edges();
    let mut used_w = vec![false; g.whites.len()];
    let mut used_b = vec![false; g.blacks.len()];
    let mut chosen = Vec::with_capacity(g.whites.len());
    let mut out = Vec::new();
    search(g, &black_edges, &mut used_w, &mut used_b, &mut chosen, &mut out);
    Ok(out)
}

fn search(
    g: &BipartiteGraph,
    black_edges: &[Vec<usize>],
    used_w: &mut [bool],
    used_b: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Matching>,
) {
    let mut best: Option<(usize, usize)> = None;
    for b in 0..used_b.len() {
        if used_b[b] {
            continue;
        }
        let options = black_edges[b].iter().filter(|&&e| !used_w[g.edges[e].white]).count();
        if options == 0 {
            return;
        }
        if best.is_none_or(|(_, n)| options < n) {
            best = Some((b, options));
        }
    }
    let Some((b, _)) = best else {
        let mut edges = chosen.clone();
        edges.sort_unstable();
        let jumps = edges.iter().filter(|&&e| g.edges[e].kind == EdgeKind::Jump).count();
        out.push(Matching { edges, jumps });
        return;
    };
    used_b[b] = true;
    for &e in &black_edges[b] {
        let w = g.edges[e].white;
        if used_w[w] {
            continue;
        }
        used_w[w] = true;
        chosen.push(e);
        search(g, black_edges, used_w, used_b, chosen, out);
        chosen.pop();
        used_w[w] = false;
    }
    used_b[b] = false;
}

/// Partition sum `Z = Σ ε^{#jumps}`.
pub fn partition_sum<T: Field>(matchings: &[Matching], epsilon: &T) -> T {
    matchings.iter().fold(T::zero(), |acc, m| acc + m.weight(epsilon))
}

/// The maya evolution encoded by a matching, one state per level `M₋..=M₊`.
pub fn decode_evolution(g: &CylinderGraph, m: &Matching) -> Result<Vec<CircleState>> {
    let levels = (g.m_plus - g.m_minus) as usize + 1;
    let mut masks = vec![0u64; levels];
    for &e in &m.edges {
        let edge = &g.graph.edges[e];
        let (k, j) = g.graph.whites[edge.white];
        let (kb, jb) = g.graph.blacks[edge.black];
        match edge.kind {
            EdgeKind::NoStone => {}
            EdgeKind::StoneStays | EdgeKind::Jump => {
                masks[(j - g.m_minus) as usize] |= 1 << k;
                // The black end records the stone at the next level.
                masks[(jb - g.m_minus) as usize] |= 1 << kb;
            }
        }
    }
    let states: Vec<CircleState> = masks
        .iter()
        .map(|&mask| CircleState::from_mask(g.l, mask))
        .collect::<Result<_>>()?;
    if states[0] != g.boundary_in || states[levels - 1] != g.boundary_out {
        return Err(Error::InvalidMaya("decoded evolution misses its boundary states".into()));
    }
    for w in states.windows(2) {
        let legal = level_successors(w[0].mask(), g.l, true)
            .iter()
            .any(|&(t, _)| t == w[1].mask());
        if !legal {
            return Err(Error::InvalidMaya(format!("illegal step {} -> {}", w[0], w[1])));
        }
    }
    Ok(states)
}

/// JSON list of matchings with typed edges and decoded evolutions.
pub fn matchings_json(g: &CylinderGraph, matchings: &[Matching]) -> Result<Value> {
    let list = matchings
        .iter()
        .map(|m| {
            let edges: Vec<Value> = m
                .edges
                .iter()
                .map(|&e| {
                    let edge = &g.graph.edges[e];
                    json!({
                        "white": g.graph.whites[edge.white],
                        "black": g.graph.blacks[edge.black],
                        "kind": edge.kind,
                    })
                })
                .collect();
            let evolution: Vec<String> = decode_evolution(g, m)?.iter().map(|s| s.to_string()).collect();
            Ok(json!({ "jumps": m.jumps, "edges": edges, "evolution": evolution }))
        })
        .collect::<Result<Vec<Value>>>()?;
    Ok(Value::Array(list))
}

/// Sign of the permutation taking white `i` to black `perm[i]`.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Result of comparing `det W` with the enumerated partition sum.
#[derive(Debug, Clone)]
pub struct KasteleynCheck<T> {
    pub det: T,
    pub z: T,
    /// The common phase `sign(σ) ∏ α_e`, if all matchings share one.
    pub phase: Option<T>,
    pub matchings: usize,
}

impl<T: Field> KasteleynCheck<T> {
    /// `det W = phase · Z`, or `det W = 0 = Z` without matchings.
    pub fn holds(&self) -> bool {
        match &self.phase {
            Some(a) => self.det == a.clone() * self.z.clone(),
            None => self.matchings == 0 && self.det.is_zero(),
        }
    }
}

pub fn kasteleyn_check<T: KasteleynScalar>(
    g: &CylinderGraph,
    epsilon: &T,
    gauge: &GaugeAssignment,
    cap: usize,
) -> Result<KasteleynCheck<T>> {
    let w = crate::dimer::build_kasteleyn_w(g, epsilon, gauge)?;
    let matchings = enumerate_matchings(&g.graph, cap)?;
    let z = partition_sum(&matchings, epsilon);
    let mut phase: Option<T> = None;
    let mut consistent = true;
    for m in &matchings {
        let mut perm = vec![0; g.graph.whites.len()];
        let mut a = T::one();
        for &e in &m.edges {
            let edge = &g.graph.edges[e];
            perm[edge.white] = edge.black;
            a = a * gauge.alpha::<T>(e)?;
        }
        if permutation_sign(&perm) < 0 {
            a = -a;
        }
        match &phase {
            None => phase = Some(a),
            Some(p) => consistent &= *p == a,
        }
    }
    Ok(KasteleynCheck {
        det: w.det(),
        z,
        phase: if consistent { phase } else { None },
        matchings: matchings.len(),
    })
}

/// Per-edge `Σ_{m ∋ e} ε^{#jumps} / Z` from an enumeration.
pub fn enumeration_edge_frequencies(g: &BipartiteGraph, matchings: &[Matching], epsilon: &BigRational) -> Vec<BigRational> {
    let z: BigRational = partition_sum(matchings, epsilon);
    let mut freq = vec![BigRational::zero(); g.edges.len()];
    for m in matchings {
        let w: BigRational = m.weight(epsilon);
        for &e in &m.edges {
            freq[e] += &w;
        }
    }
    if !z.is_zero() {
        for f in &mut freq {
            *f = &*f / &z;
        }
    }
    freq
}
