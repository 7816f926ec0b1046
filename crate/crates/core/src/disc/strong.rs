//! Strong-form second-difference operator with eliminated boundary rows.
//!
//! The weak assembly never differentiates twice; this operator exists to
//! check the form/operator consistency identity
//! `⟨H f, g⟩_M ≈ ⟨f', g'⟩ + Σ_v ⟨coupling·tr_v f, tr_v g⟩` and the classical
//! second-difference spectra. Endpoint DOFs are not free: given the interior
//! values, the discrete boundary conditions (projection constraint plus
//! coupling equation, with derivatives taken by the same one-sided stencils
//! as trace extraction) determine them through a small per-vertex solve.

use nalgebra::{DMatrix, DVector};

use super::{DiscError, DiscreteProblem, DofClass};
use crate::C64;

pub struct StrongOperator {
    n_dof: usize,
    /// `-f''` stencil rows (interior three-point, one-sided at endpoints).
    rows: Vec<Vec<(usize, f64)>>,
    /// Per vertex: dense map from the neighbor-data vector to endpoint values.
    vertex_maps: Vec<DMatrix<C64>>,
    /// Per vertex and star position: (endpoint dof, nb1, nb2, h).
    vertex_neighbors: Vec<Vec<(usize, usize, usize, f64)>>,
    /// Truncation-cap DOFs pinned to zero.
    caps: Vec<usize>,
}

/// Build the strong operator for an assembled problem.
pub fn assemble_strong(problem: &DiscreteProblem) -> Result<StrongOperator, DiscError> {
    let graph = problem.graph();
    let n_dof = problem.n_dof();

    let mut rows = vec![Vec::new(); n_dof];
    let mut caps = Vec::new();
    for (k, mesh) in problem.meshes().iter().enumerate() {
        if mesh.n_nodes < 3 {
            return Err(DiscError::MeshTooCoarse {
                edge: graph.edge(k).id.clone(),
            });
        }
        let h2 = mesh.h() * mesh.h();
        let n = mesh.n_nodes;
        for j in 0..n {
            let dof = problem.dof(k, j);
            // one-sided second difference at the boundary rows keeps the
            // M-weighted defect at O(h²) overall
            let center = j.clamp(1, n - 2);
            let base = problem.dof(k, center - 1);
            rows[dof] = vec![
                (base, -1.0 / h2),
                (base + 1, 2.0 / h2),
                (base + 2, -1.0 / h2),
            ];
            if matches!(problem.dof_class(dof), DofClass::Eliminated) {
                caps.push(dof);
            }
        }
    }

    // per-vertex elimination: endpoint values from neighbor data
    let mut vertex_maps = Vec::with_capacity(graph.vertex_count());
    let mut vertex_neighbors = Vec::with_capacity(graph.vertex_count());
    for (v, vc) in problem.conditions().iter().enumerate() {
        let star = graph.vertex_star(v);
        let d = star.degree();
        let mut theta = DMatrix::<C64>::zeros(d, d);
        let mut neighbors = Vec::with_capacity(d);
        for (pos, end) in star.ends.iter().enumerate() {
            let mesh = &problem.meshes()[end.edge];
            let h = mesh.h();
            let n = mesh.n_nodes;
            let (e_dof, nb1, nb2) = match end.tag {
                crate::graph::EndTag::Start => (
                    problem.dof(end.edge, 0),
                    problem.dof(end.edge, 1),
                    problem.dof(end.edge, 2),
                ),
                crate::graph::EndTag::End => (
                    problem.dof(end.edge, n - 1),
                    problem.dof(end.edge, n - 2),
                    problem.dof(end.edge, n - 3),
                ),
            };
            theta[(pos, pos)] = C64::new(3.0 / (2.0 * h), 0.0);
            neighbors.push((e_dof, nb1, nb2, h));
        }
        // solve (N* (coupling + Θ) N) ξ = N* r, endpoint = N ξ
        let nb = problem.kernel_basis(v);
        let map = if nb.ncols() == 0 {
            DMatrix::zeros(d, d)
        } else {
            let small = nb.adjoint() * (vc.coupling() + &theta) * nb;
            let inv = small.clone().try_inverse().ok_or_else(|| {
                DiscError::SingularVertexElimination {
                    vertex: graph.vertex_id(v).to_string(),
                }
            })?;
            nb * inv * nb.adjoint()
        };
        vertex_maps.push(map);
        vertex_neighbors.push(neighbors);
    }

    Ok(StrongOperator {
        n_dof,
        rows,
        vertex_maps,
        vertex_neighbors,
        caps,
    })
}

impl StrongOperator {
    /// Overwrite endpoint and cap DOFs so the vector satisfies the discrete
    /// boundary conditions; interior values are taken as given.
    pub fn embed(&self, x: &DVector<C64>) -> DVector<C64> {
        assert_eq!(x.len(), self.n_dof);
        let mut out = x.clone();
        for &c in &self.caps {
            out[c] = C64::new(0.0, 0.0);
        }
        for (map, neighbors) in self.vertex_maps.iter().zip(&self.vertex_neighbors) {
            let d = neighbors.len();
            let r = DVector::from_fn(d, |i, _| {
                let (_, nb1, nb2, h) = neighbors[i];
                (out[nb1] * 4.0 - out[nb2]) / (2.0 * h)
            });
            let ends = map * r;
            for (i, &(e_dof, _, _, _)) in neighbors.iter().enumerate() {
                out[e_dof] = ends[i];
            }
        }
        out
    }

    /// Apply the second-difference operator `-f''`.
    pub fn apply(&self, x: &DVector<C64>) -> DVector<C64> {
        assert_eq!(x.len(), self.n_dof);
        let mut y = DVector::zeros(self.n_dof);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &(j, v) in row {
                acc += x[j] * v;
            }
            y[i] = acc;
        }
        y
    }
}
