//! Dimer encoding of maya evolutions on the cylinder and its kernels.

pub mod beads;
mod gauge;
mod graph;
mod kasteleyn;
pub mod kernels;
pub mod matchings;
pub mod poisson;
pub mod transfer;

pub use beads::{beads_kernel_infinite, cylinder_beads_kernel, BeadsKernel, BeadsValue};
pub use gauge::{faces, reduced_edges, Face, GaugeAssignment};
pub use graph::{BipartiteGraph, CylinderGraph, Edge, EdgeKind, Site, Vertex};
pub use kasteleyn::{
    build_kasteleyn_w, edge_correlation, edge_probabilities, finite_kernel_exact, is_feasible, parse_rational,
    ExactKernel,
};
pub use kernels::{
    finite_kernel_closed, jump_density, limit_kernel, stone_correlation, write_kernel_csv, FiniteKernel, Harmonics,
    LimitKernel,
};
pub use matchings::{
    decode_evolution, enumerate_matchings, kasteleyn_check, matchings_json, partition_sum, KasteleynCheck, Matching,
    MATCHING_VERTEX_CAP,
};
pub use poisson::{poissonization_check, MirroredGraph, PoissonReport};
