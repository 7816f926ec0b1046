//! Boundary trace inequality suite.
//!
//! On a single edge, `|f(0)|² ≤ (2/a)‖f‖² + a‖f'‖²` for every `0 < a ≤ l`;
//! summing over the ends meeting a vertex (twice per incident edge, as a
//! loop contributes both) and over all vertices gives the vertex and graph
//! forms with their factor 2. All norms here are exact cubic integrals, so
//! violations would indicate a real defect, not quadrature noise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::piecewise::GraphPoly;
use crate::disc::EdgeMesh;
use crate::graph::MetricGraph;
use crate::poly::norm_sq;

#[derive(Debug, Clone)]
pub struct TraceInequalityReport {
    pub samples: usize,
    pub checks: usize,
    pub violations: usize,
    pub passed: bool,
}

/// Relative slack that absorbs floating-point roundoff in the exact sums.
const SLACK: f64 = 1e-12;

fn edge_checks(f: &GraphPoly, meshes: &[EdgeMesh], checks: &mut usize, violations: &mut usize) {
    for (p, mesh) in f.polys.iter().zip(meshes) {
        let l = mesh.length;
        let nf = norm_sq(p, l);
        let ndf = norm_sq(&p.derivative(), l);
        for a in [0.1f64.min(l), 0.5f64.min(l), l] {
            let rhs = 2.0 / a * nf + a * ndf;
            let budget = rhs * (1.0 + SLACK) + SLACK;
            for lhs in [p.eval(0.0).norm_sqr(), p.eval(l).norm_sqr()] {
                *checks += 1;
                if lhs > budget {
                    *violations += 1;
                }
            }
        }
    }
}

fn summed_checks(
    graph: &MetricGraph,
    f: &GraphPoly,
    meshes: &[EdgeMesh],
    checks: &mut usize,
    violations: &mut usize,
) {
    let u_eff = meshes
        .iter()
        .map(|m| m.length)
        .fold(f64::INFINITY, f64::min);
    let edge_budget: Vec<(f64, f64)> = f
        .polys
        .iter()
        .zip(meshes)
        .map(|(p, mesh)| {
            (
                norm_sq(p, mesh.length),
                norm_sq(&p.derivative(), mesh.length),
            )
        })
        .collect();
    for eps in [0.1 * u_eff, 0.5 * u_eff, u_eff] {
        // vertex form
        let mut graph_lhs = 0.0;
        for v in 0..graph.vertex_count() {
            let lhs = f.trace_at(graph, meshes, v).norm_squared();
            graph_lhs += lhs;
            let mut incident: Vec<usize> =
                graph.vertex_star(v).ends.iter().map(|e| e.edge).collect();
            incident.dedup();
            let rhs: f64 = incident
                .iter()
                .map(|&e| 2.0 / eps * edge_budget[e].0 + eps * edge_budget[e].1)
                .sum::<f64>()
                * 2.0;
            *checks += 1;
            if lhs > rhs * (1.0 + SLACK) + SLACK {
                *violations += 1;
            }
        }
        // graph form
        let rhs: f64 = edge_budget
            .iter()
            .map(|&(nf, ndf)| 2.0 / eps * nf + eps * ndf)
            .sum::<f64>()
            * 2.0;
        *checks += 1;
        if graph_lhs > rhs * (1.0 + SLACK) + SLACK {
            *violations += 1;
        }
    }
}

/// Check the single-edge, per-vertex, and whole-graph trace inequalities on
/// random piecewise cubics.
pub fn trace_inequality_suite(
    graph: &MetricGraph,
    meshes: &[EdgeMesh],
    samples: usize,
    seed: u64,
) -> TraceInequalityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0usize;
    let mut violations = 0usize;
    for _ in 0..samples {
        let f = GraphPoly::random_cubic(meshes, &mut rng, false);
        edge_checks(&f, meshes, &mut checks, &mut violations);
        summed_checks(graph, &f, meshes, &mut checks, &mut violations);
    }
    TraceInequalityReport {
        samples,
        checks,
        violations,
        passed: violations == 0,
    }
}
