use num_complex::Complex64;
use num_rational::BigRational;

use crate::dimer::transfer::reachable;
use crate::dimer::{CylinderGraph, EdgeKind, GaugeAssignment, Site};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::KasteleynScalar;

/// Kasteleyn matrix with rows indexed by whites and columns by blacks;
/// entry `α_e · w_e` with `w_e = ε` on jump edges and 1 otherwise.
pub fn build_kasteleyn_w<T: KasteleynScalar>(
    g: &CylinderGraph,
    epsilon: &T,
    gauge: &GaugeAssignment,
) -> Result<Matrix<T>> {
    gauge.check(g)?;
    let nw = g.graph.whites.len();
    let nb = g.graph.blacks.len();
    let mut w = Matrix::zeros(nw, nb);
    for (e, edge) in g.graph.edges.iter().enumerate() {
        let alpha: T = gauge.alpha(e)?;
        w[(edge.white, edge.black)] = match edge.kind {
            EdgeKind::Jump => alpha * epsilon.clone(),
            _ => alpha,
        };
    }
    Ok(w)
}

/// Whether an evolution from `boundary_in` to `boundary_out` exists.
pub fn is_feasible(g: &CylinderGraph) -> bool {
    reachable(
        g.boundary_in.mask(),
        g.boundary_out.mask(),
        g.l,
        (g.m_plus - g.m_minus) as usize,
        true,
    )
}

/// `P(e₁, …, e_k) = ∏ W[w_a, b_a] · det[W⁻¹[b_a, w_b]]`.
pub fn edge_correlation<T: KasteleynScalar>(
    g: &CylinderGraph,
    w: &Matrix<T>,
    inverse: &Matrix<T>,
    edges: &[usize],
) -> T {
    let ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| (g.graph.edges[e].white, g.graph.edges[e].black))
        .collect();
    let prefactor = ends.iter().fold(T::one(), |acc, &(wi, bi)| acc * w[(wi, bi)].clone());
    let minor = Matrix::from_fn(ends.len(), ends.len(), |a, b| inverse[(ends[a].1, ends[b].0)].clone());
    prefactor * minor.det()
}

/// Single-edge probabilities `W[w,b] · W⁻¹[b,w]` in an arbitrary field.
pub fn edge_probabilities<T: KasteleynScalar>(g: &CylinderGraph, epsilon: &T, gauge: &GaugeAssignment) -> Result<Vec<T>> {
    let w = build_kasteleyn_w(g, epsilon, gauge)?;
    let inv = w.inverse().ok_or(Error::Singular)?;
    Ok(g.graph
        .edges
        .iter()
        .map(|e| w[(e.white, e.black)].clone() * inv[(e.black, e.white)].clone())
        .collect())
}

/// Dense double-precision inverse of `W`, the oracle for the closed-form kernels.
#[derive(Debug, Clone)]
pub struct ExactKernel {
    pub graph: CylinderGraph,
    pub epsilon: f64,
    pub w: Matrix<Complex64>,
    pub inverse: Matrix<Complex64>,
}

pub fn finite_kernel_exact(g: &CylinderGraph, epsilon: f64, gauge: &GaugeAssignment) -> Result<ExactKernel> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Parameter(format!("ε must be positive, got {epsilon}")));
    }
    if !is_feasible(g) {
        return Err(Error::Singular);
    }
    let w = build_kasteleyn_w(g, &Complex64::new(epsilon, 0.0), gauge)?;
    let inverse = w.inverse().ok_or(Error::Singular)?;
    Ok(ExactKernel {
        graph: g.clone(),
        epsilon,
        w,
        inverse,
    })
}

impl ExactKernel {
    /// `W⁻¹[b, w]` for the black and white at the given sites.
    pub fn entry(&self, black: Site, white: Site) -> Option<Complex64> {
        let b = self.graph.black(black)?;
        let w = self.graph.white(white)?;
        Some(self.inverse[(b, w)])
    }

    /// `W⁻¹[b(0, j₀ + j), w(d, j₀)]` around the middle level `j₀`; in the
    /// bulk this approximates the translation-invariant kernel `K(j, d)`.
    pub fn kernel(&self, j: i64, d: i64) -> Option<Complex64> {
        let mid = (self.graph.m_minus + self.graph.m_plus) / 2;
        let l = self.graph.l as i64;
        self.entry((0, mid + j), (d.rem_euclid(l) as usize, mid))
    }

    pub fn edge_probability(&self, e: usize) -> Complex64 {
        let edge = &self.graph.graph.edges[e];
        self.w[(edge.white, edge.black)] * self.inverse[(edge.black, edge.white)]
    }

    pub fn edge_probabilities(&self) -> Vec<f64> {
        (0..self.graph.graph.edges.len()).map(|e| self.edge_probability(e).re).collect()
    }

    pub fn correlation(&self, edges: &[usize]) -> Complex64 {
        edge_correlation(&self.graph, &self.w, &self.inverse, edges)
    }
}

/// `ε` as an exact rational from a decimal string or fraction like `"1/20"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once('/') {
        let a: num_bigint::BigInt = a.trim().parse().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
        let b: num_bigint::BigInt = b.trim().parse().map_err(|_| Error::Parse(format!("bad rational {text:?}")))?;
        if b == 0.into() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(a, b));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits = format!("{int}{frac}");
    let num: num_bigint::BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal {text:?}")))?;
    let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mtasep::CircleState;
    use crate::scalar::ratio;

    fn graph(a: &str, b: &str, m0: i64, m1: i64) -> CylinderGraph {
        let a: CircleState = a.parse().unwrap();
        let b: CircleState = b.parse().unwrap();
        CylinderGraph::new(a, b, m0, m1).unwrap()
    }

    #[test]
    fn white_rows_sum_to_one() {
        for (a, b) in [("1100", "0110"), ("1000", "0100"), ("11100", "11010")] {
            let g = graph(a, b, 0, 6);
            let gauge = GaugeAssignment::standard(&g);
            let k = finite_kernel_exact(&g, 0.3, &gauge).unwrap();
            let probs = k.edge_probabilities();
            for edges in g.graph.white_edges() {
                let s: f64 = edges.iter().map(|&e| probs[e]).sum();
                assert!((s - 1.0).abs() < 1e-10);
            }
            assert!(probs.iter().all(|&p| (-1e-12..=1.0 + 1e-12).contains(&p)));
        }
    }

    #[test]
    fn infeasible_boundary_is_singular() {
        // One level cannot move a stone two holes.
        let g = graph("1000", "0010", 0, 1);
        let gauge = GaugeAssignment::standard(&g);
        assert!(matches!(finite_kernel_exact(&g, 0.5, &gauge), Err(Error::Singular)));
        let w = build_kasteleyn_w(&g, &ratio(1, 2), &gauge).unwrap();
        assert_eq!(w.det(), ratio(0, 1));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.05").unwrap(), ratio(1, 20));
        assert_eq!(parse_rational("3/12").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("2").unwrap(), ratio(2, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
