use num_complex::Complex64;

use crate::dimer::{BipartiteGraph, CylinderGraph, EdgeKind, Vertex};
use crate::error::{Error, Result};
use crate::scalar::KasteleynScalar;

/// Edge weights `α_e = ω^{exponent}` with `ω = exp(πi/L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeAssignment {
    l: usize,
    exponents: Vec<i64>,
}

impl GaugeAssignment {
    /// `−1` on no-stone edges, `1` on stay edges, and `1` (odd N) or `ω`
    /// (even N) on jump edges.
    pub fn standard(g: &CylinderGraph) -> Self {
        let l = g.l as i64;
        let jump = if g.is_odd() { 0 } else { 1 };
        let exponents = g
            .graph
            .edges
            .iter()
            .map(|e| match e.kind {
                EdgeKind::NoStone => l,
                EdgeKind::StoneStays => 0,
                EdgeKind::Jump => jump,
            })
            .collect();
        GaugeAssignment { l: g.l, exponents }
    }

    pub fn from_exponents(l: usize, exponents: Vec<i64>) -> Self {
        let m = 2 * l as i64;
        GaugeAssignment {
            l,
            exponents: exponents.into_iter().map(|e| e.rem_euclid(m)).collect(),
        }
    }

    pub fn exponent(&self, e: usize) -> i64 {
        self.exponents[e]
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn alpha<T: KasteleynScalar>(&self, e: usize) -> Result<T> {
        T::root_of_unity(self.exponents[e], self.l).ok_or_else(|| {
            Error::Parameter(format!(
                "scalar field cannot represent ω^{} for L = {}",
                self.exponents[e], self.l
            ))
        })
    }

    pub fn alpha_complex(&self, e: usize) -> Complex64 {
        let angle = std::f64::consts::PI * self.exponents[e] as f64 / self.l as f64;
        Complex64::from_polar(1.0, angle)
    }

    /// Verifies the alternating face product on every face.
    pub fn check(&self, g: &CylinderGraph) -> Result<()> {
        if self.exponents.len() != g.graph.edges.len() {
            return Err(Error::Parameter(format!(
                "gauge has {} weights for {} edges",
                self.exponents.len(),
                g.graph.edges.len()
            )));
        }
        for face in faces(g) {
            if !self.face_holds(&face) {
                return Err(Error::Gauge {
                    face: face.describe(&g.graph),
                });
            }
        }
        Ok(())
    }

    /// `∏ α(b_i w_i) / ∏ α(w_i b_{i+1}) = (−1)^{k−1}` for a `2k`-gon.
    pub fn face_holds(&self, face: &Face) -> bool {
        let m = 2 * self.l as i64;
        let mut total = 0i64;
        for &(from, e) in &face.darts {
            let x = self.exponents[e];
            total += match from {
                Vertex::Black(_) => x,
                Vertex::White(_) => -x,
            };
        }
        let k = face.darts.len() as i64 / 2;
        (total - (k - 1) * self.l as i64).rem_euclid(m) == 0
    }
}

/// Closed boundary walk of a face: each dart is `(tail vertex, edge id)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<(Vertex, usize)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn describe(&self, g: &BipartiteGraph) -> String {
        let names: Vec<String> = self
            .darts
            .iter()
            .map(|&(v, _)| match v {
                Vertex::White(i) => format!("w{:?}", g.whites[i]),
                Vertex::Black(i) => format!("b{:?}", g.blacks[i]),
            })
            .collect();
        format!("{}-gon {}", self.darts.len(), names.join(" "))
    }
}

/// One perfect matching as `white -> black`, by augmenting paths.
fn perfect_matching(g: &BipartiteGraph, adj: &[Vec<(usize, usize)>]) -> Option<Vec<usize>> {
    let (nw, nb) = (g.whites.len(), g.blacks.len());
    if nw != nb {
        return None;
    }
    let mut black_mate: Vec<Option<usize>> = vec![None; nb];
    for root in 0..nw {
        // Iterative DFS over alternating paths from `root`.
        let mut visited = vec![false; nb];
        let mut parent: Vec<Option<usize>> = vec![None; nb];
        let mut stack = vec![(root, 0usize)];
        let mut found = None;
        while let Some((w, i)) = stack.pop() {
            if i >= adj[w].len() {
                continue;
            }
            stack.push((w, i + 1));
            let b = adj[w][i].0;
            if visited[b] {
                continue;
            }
            visited[b] = true;
            parent[b] = Some(w);
            match black_mate[b] {
                None => {
                    found = Some(b);
                    break;
                }
                Some(w2) => stack.push((w2, 0)),
            }
        }
        let mut b = found?;
        loop {
            let w = parent[b].expect("path recorded");
            let prev = (0..nb).find(|&x| black_mate[x] == Some(w));
            black_mate[b] = Some(w);
            match prev {
                Some(p) if w != root => b = p,
                _ => break,
            }
        }
    }
    let mut white_mate = vec![0; nw];
    for (b, w) in black_mate.iter().enumerate() {
        white_mate[w.expect("perfect")] = b;
    }
    Some(white_mate)
}

/// Strongly connected component of each node, by Kosaraju with explicit stacks.
fn components(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            pred[v].push(u);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < succ[u].len() {
                let v = succ[u][*i];
                *i += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &pred[u] {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    comp
}

/// Edges that lie in some perfect matching but not in all of them; all
/// false if the graph has no perfect matching.
///
/// Other edges do not change `det W` up to a common factor, and dropping
/// them leaves every face bounded by a simple alternating cycle.
pub fn reduced_edges(g: &BipartiteGraph) -> Vec<bool> {
    let nw = g.whites.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nw];
    for (e, edge) in g.edges.iter().enumerate() {
        adj[edge.white].push((edge.black, e));
    }
    let Some(mate) = perfect_matching(g, &adj) else {
        return vec![false; g.edges.len()];
    };
    // Unmatched edges white → black, matched edges black → white: an edge
    // is in an alternating cycle iff its ends share a strong component.
    let mut succ = vec![Vec::new(); nw + g.blacks.len()];
    for (w, list) in adj.iter().enumerate() {
        for &(b, _) in list {
            if mate[w] == b {
                succ[nw + b].push(w);
            } else {
                succ[w].push(nw + b);
            }
        }
    }
    let comp = components(&succ);
    g.edges.iter().map(|e| comp[e.white] == comp[nw + e.black]).collect()
}

/// Faces of the reduced cylinder graph, traced from its straight-line
/// embedding (blacks at `(k, j)`, whites at `(k + 0.6, j + 0.4)`).
pub fn faces(g: &CylinderGraph) -> Vec<Face> {
    let graph = &g.graph;
    let alive = reduced_edges(graph);
    let l = g.l as f64;
    let pos = |v: Vertex| -> (f64, f64) {
        match v {
            Vertex::White(i) => {
                let (k, j) = graph.whites[i];
                (k as f64 + 0.6, j as f64 + 0.4)
            }
            Vertex::Black(i) => {
                let (k, j) = graph.blacks[i];
                (k as f64, j as f64)
            }
        }
    };
    let angle = |from: Vertex, to: Vertex| {
        let (x0, y0) = pos(from);
        let (x1, y1) = pos(to);
        let mut dx = (x1 - x0).rem_euclid(l);
        if dx > l / 2.0 {
            dx -= l;
        }
        (y1 - y0).atan2(dx)
    };
    let nw = graph.whites.len();
    let key = |v: Vertex| match v {
        Vertex::White(i) => i,
        Vertex::Black(i) => nw + i,
    };
    // Rotation system: neighbours of each vertex sorted counterclockwise.
    let mut rot: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); graph.vertex_count()];
    for (e, edge) in graph.edges.iter().enumerate() {
        if !alive[e] {
            continue;
        }
        let w = Vertex::White(edge.white);
        let b = Vertex::Black(edge.black);
        rot[key(w)].push((b, e));
        rot[key(b)].push((w, e));
    }
    for (i, list) in rot.iter_mut().enumerate() {
        let v = if i < nw { Vertex::White(i) } else { Vertex::Black(i - nw) };
        list.sort_by(|a, b| angle(v, a.0).total_cmp(&angle(v, b.0)));
    }
    let endpoint = |v: Vertex, e: usize| {
        let edge = &graph.edges[e];
        match v {
            Vertex::White(_) => Vertex::Black(edge.black),
            Vertex::Black(_) => Vertex::White(edge.white),
        }
    };
    // A dart is (edge, tail is white).
    let mut seen = vec![[false; 2]; graph.edges.len()];
    let mut out = Vec::new();
    for e0 in 0..graph.edges.len() {
        if !alive[e0] {
            continue;
        }
        for dir in 0..2 {
            if seen[e0][dir] {
                continue;
            }
            let edge = &graph.edges[e0];
            let mut tail = if dir == 0 {
                Vertex::White(edge.white)
            } else {
                Vertex::Black(edge.black)
            };
            let mut e = e0;
            let mut darts = Vec::new();
            loop {
                let d = usize::from(matches!(tail, Vertex::Black(_)));
                if seen[e][d] {
                    break;
                }
                seen[e][d] = true;
                darts.push((tail, e));
                let head = endpoint(tail, e);
                let around = &rot[key(head)];
                let pos_in = around.iter().position(|&(_, f)| f == e).expect("edge in rotation");
                let (_, next_e) = around[(pos_in + around.len() - 1) % around.len()];
                tail = head;
                e = next_e;
            }
            out.push(Face { darts });
        }
    }
    out
}
