//! Piecewise-polynomial functions on a metric graph, with exact edge-wise
//! integrals. Shared by the Green's-identity and trace-inequality suites.

use nalgebra::DVector;
use rand::Rng;

use crate::disc::EdgeMesh;
use crate::graph::{EndTag, MetricGraph};
use crate::poly::{inner_product, Poly};
use crate::C64;

/// One polynomial per edge, on `[0, effective length]`.
#[derive(Debug, Clone)]
pub struct GraphPoly {
    pub polys: Vec<Poly>,
}

fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

impl GraphPoly {
    /// Random piecewise cubic. With `pin_caps`, truncated edges receive a
    /// cubic that vanishes to second order at the artificial endpoint, the
    /// discrete stand-in for decay on the ray.
    pub fn random_cubic(meshes: &[EdgeMesh], rng: &mut impl Rng, pin_caps: bool) -> Self {
        let polys = meshes
            .iter()
            .map(|mesh| {
                if mesh.truncated && pin_caps {
                    Poly::hermite_cubic(
                        random_c64(rng),
                        random_c64(rng),
                        C64::new(0.0, 0.0),
                        C64::new(0.0, 0.0),
                        mesh.length,
                    )
                } else {
                    Poly::new((0..4).map(|_| random_c64(rng)).collect())
                }
            })
            .collect();
        GraphPoly { polys }
    }

    /// Boundary values at every edge end of vertex `v`, canonical order.
    pub fn trace_at(&self, graph: &MetricGraph, meshes: &[EdgeMesh], v: usize) -> DVector<C64> {
        let star = graph.vertex_star(v);
        DVector::from_fn(star.degree(), |i, _| {
            let end = star.ends[i];
            match end.tag {
                EndTag::Start => self.polys[end.edge].eval(0.0),
                EndTag::End => self.polys[end.edge].eval(meshes[end.edge].length),
            }
        })
    }

    /// Signed (ingoing) derivatives at every edge end of vertex `v`.
    pub fn signed_derivative_at(
        &self,
        graph: &MetricGraph,
        meshes: &[EdgeMesh],
        v: usize,
    ) -> DVector<C64> {
        let star = graph.vertex_star(v);
        DVector::from_fn(star.degree(), |i, _| {
            let end = star.ends[i];
            let dp = self.polys[end.edge].derivative();
            match end.tag {
                EndTag::Start => dp.eval(0.0),
                EndTag::End => -dp.eval(meshes[end.edge].length),
            }
        })
    }

    /// `Σ_e ∫ conj(f_e) g_e`, exact.
    pub fn l2_pairing(&self, other: &GraphPoly, meshes: &[EdgeMesh]) -> C64 {
        self.polys
            .iter()
            .zip(&other.polys)
            .zip(meshes)
            .map(|((p, q), mesh)| inner_product(p, q, mesh.length))
            .sum()
    }

    /// `Σ_e ∫ conj(f_e') g_e'`, exact.
    pub fn derivative_pairing(&self, other: &GraphPoly, meshes: &[EdgeMesh]) -> C64 {
        self.polys
            .iter()
            .zip(&other.polys)
            .zip(meshes)
            .map(|((p, q), mesh)| inner_product(&p.derivative(), &q.derivative(), mesh.length))
            .sum()
    }

    /// `Σ_e ∫ conj(f_e) (-g_e'')`, exact.
    pub fn laplace_pairing(&self, other: &GraphPoly, meshes: &[EdgeMesh]) -> C64 {
        self.polys
            .iter()
            .zip(&other.polys)
            .zip(meshes)
            .map(|((p, q), mesh)| -inner_product(p, &q.derivative().derivative(), mesh.length))
            .sum()
    }
}
