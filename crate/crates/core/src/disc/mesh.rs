//! Uniform per-edge meshes.

use crate::graph::{EdgeLength, MetricGraph};

/// Uniform mesh on one edge. Infinite edges are truncated to `t_trunc` and
/// flagged; the artificial endpoint receives a Dirichlet cap at assembly.
#[derive(Debug, Clone)]
pub struct EdgeMesh {
    pub edge: usize,
    /// True length for finite edges, truncation length for rays.
    pub length: f64,
    pub n_nodes: usize,
    pub truncated: bool,
}

impl EdgeMesh {
    pub fn h(&self) -> f64 {
        self.length / (self.n_nodes - 1) as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        self.h() * j as f64
    }
}

/// Mesh every edge with width at most `h_max`: `max(2, ceil(l/h_max)+1)`
/// nodes per edge, with a small guard so exact multiples don't gain a node
/// to roundoff.
pub fn build_meshes(graph: &MetricGraph, h_max: f64, t_trunc: f64) -> Vec<EdgeMesh> {
    assert!(h_max > 0.0, "mesh width must be positive");
    assert!(t_trunc > 0.0, "truncation length must be positive");
    graph
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let (length, truncated) = match e.length {
                EdgeLength::Finite(l) => (l, false),
                EdgeLength::Infinite => (t_trunc, true),
            };
            let n_nodes = ((length / h_max - 1e-9).ceil() as usize + 1).max(2);
            EdgeMesh {
                edge: k,
                length,
                n_nodes,
                truncated,
            }
        })
        .collect()
}
