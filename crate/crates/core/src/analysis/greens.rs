//! Green's identity verification suite.
//!
//! For twice weakly differentiable functions the pairing defect
//! `⟨f, -g''⟩ - ⟨-f'', g⟩` equals the boundary sum
//! `Σ_v ⟨tr_v f, str_v g'⟩ - Σ_v ⟨str_v f', tr_v g⟩`. The suite samples
//! random piecewise cubics and evaluates both sides with exact quadrature;
//! the only slack is floating-point roundoff.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::piecewise::GraphPoly;
use crate::disc::EdgeMesh;
use crate::graph::MetricGraph;

#[derive(Debug, Clone)]
pub struct GreensReport {
    pub pairs: usize,
    pub max_defect: f64,
    pub tol: f64,
    pub passed: bool,
}

pub const GREENS_TOL: f64 = 1e-8;

/// Defect of one function pair.
pub fn greens_defect(
    graph: &MetricGraph,
    meshes: &[EdgeMesh],
    f: &GraphPoly,
    g: &GraphPoly,
) -> f64 {
    let lhs = f.laplace_pairing(g, meshes) - g.laplace_pairing(f, meshes).conj();
    let mut boundary = crate::C64::new(0.0, 0.0);
    for v in 0..graph.vertex_count() {
        let tr_f = f.trace_at(graph, meshes, v);
        let tr_g = g.trace_at(graph, meshes, v);
        let str_f = f.signed_derivative_at(graph, meshes, v);
        let str_g = g.signed_derivative_at(graph, meshes, v);
        boundary += tr_f.dotc(&str_g) - str_f.dotc(&tr_g);
    }
    (lhs - boundary).norm()
}

/// Run the suite on `pairs` random piecewise-cubic pairs.
pub fn greens_identity_suite(
    graph: &MetricGraph,
    meshes: &[EdgeMesh],
    pairs: usize,
    seed: u64,
) -> GreensReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_defect: f64 = 0.0;
    for _ in 0..pairs {
        let f = GraphPoly::random_cubic(meshes, &mut rng, true);
        let g = GraphPoly::random_cubic(meshes, &mut rng, true);
        max_defect = max_defect.max(greens_defect(graph, meshes, &f, &g));
    }
    GreensReport {
        pairs,
        max_defect,
        tol: GREENS_TOL,
        passed: max_defect <= GREENS_TOL,
    }
}
