use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mtasep::CircleState;

/// Lattice site `(k, j)`: hole `k`, time level `j`.
pub type Site = (usize, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// White `(k,j)` to black `(k,j)`: hole `k` is empty at time `j`.
    NoStone,
    /// White `(k,j)` to black `(k,j+1)`: the stone on `k` stays.
    StoneStays,
    /// White `(k,j)` to black `(k+1,j+1)`: the stone on `k` jumps.
    Jump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub white: usize,
    pub black: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    White(usize),
    Black(usize),
}

/// Bipartite graph with sites attached to each vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub whites: Vec<Site>,
    pub blacks: Vec<Site>,
    pub edges: Vec<Edge>,
}

impl BipartiteGraph {
    pub fn vertex_count(&self) -> usize {
        self.whites.len() + self.blacks.len()
    }

    /// Edge ids incident to each white vertex.
    pub fn white_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.whites.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            out[edge.white].push(e);
        }
        out
    }

    /// Edge ids incident to each black vertex.
    pub fn black_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blacks.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            out[edge.black].push(e);
        }
        out
    }
}

/// The hexagonal cylinder graph encoding maya evolutions between two states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderGraph {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub m_minus: i64,
    pub m_plus: i64,
    pub boundary_in: CircleState,
    pub boundary_out: CircleState,
    #[serde(flatten)]
    pub graph: BipartiteGraph,
    #[serde(skip)]
    black_index: HashMap<Site, usize>,
    #[serde(skip)]
    white_index: HashMap<Site, usize>,
}

impl CylinderGraph {
    /// Blacks: level `M₋` at the empty holes of `boundary_in`, then full
    /// levels up to `M₊`. Whites: full levels `M₋..M₊`, plus level `M₊` at
    /// the empty holes of `boundary_out`.
    pub fn new(boundary_in: CircleState, boundary_out: CircleState, m_minus: i64, m_plus: i64) -> Result<Self> {
        let l = boundary_in.len();
        let n = boundary_in.stones();
        if boundary_out.len() != l || boundary_out.stones() != n {
            return Err(Error::Parameter(format!(
                "boundaries {boundary_in} and {boundary_out} differ in length or stone count"
            )));
        }
        if n == 0 || n >= l {
            return Err(Error::Domain(format!("need 0 < N < L, got L = {l}, N = {n}")));
        }
        if m_plus <= m_minus {
            return Err(Error::Parameter(format!("need M₋ < M₊, got {m_minus} and {m_plus}")));
        }
        let mut blacks = Vec::new();
        for k in 0..l {
            if !boundary_in.is_stone(k) {
                blacks.push((k, m_minus));
            }
        }
        for j in m_minus + 1..=m_plus {
            for k in 0..l {
                blacks.push((k, j));
            }
        }
        let mut whites = Vec::new();
        for j in m_minus..m_plus {
            for k in 0..l {
                whites.push((k, j));
            }
        }
        for k in 0..l {
            if !boundary_out.is_stone(k) {
                whites.push((k, m_plus));
            }
        }
        let black_index: HashMap<Site, usize> = blacks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let white_index: HashMap<Site, usize> = whites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut edges = Vec::new();
        for (w, &(k, j)) in whites.iter().enumerate() {
            let targets = [
                ((k, j), EdgeKind::NoStone),
                ((k, j + 1), EdgeKind::StoneStays),
                (((k + 1) % l, j + 1), EdgeKind::Jump),
            ];
            for (site, kind) in targets {
                if let Some(&b) = black_index.get(&site) {
                    edges.push(Edge { white: w, black: b, kind });
                }
            }
        }
        Ok(CylinderGraph {
            l,
            n,
            m_minus,
            m_plus,
            boundary_in,
            boundary_out,
            graph: BipartiteGraph { whites, blacks, edges },
            black_index,
            white_index,
        })
    }

    pub fn black(&self, site: Site) -> Option<usize> {
        self.black_index.get(&site).copied()
    }

    pub fn white(&self, site: Site) -> Option<usize> {
        self.white_index.get(&site).copied()
    }

    pub fn is_odd(&self) -> bool {
        self.n % 2 == 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    /// Rebuilds a graph from [`CylinderGraph::to_json`] output.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Header {
            boundary_in: CircleState,
            boundary_out: CircleState,
            m_minus: i64,
            m_plus: i64,
        }
        let h: Header = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(h.boundary_in, h.boundary_out, h.m_minus, h.m_plus)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::White(i) => write!(f, "w#{i}"),
            Vertex::Black(i) => write!(f, "b#{i}"),
        }
    }
}
