//! Boundary value and signed boundary derivative extraction.

use nalgebra::DVector;

use super::{DiscError, DiscreteProblem};
use crate::C64;

/// Boundary data indexed by vertex and canonical star position.
#[derive(Debug, Clone)]
pub struct TraceVector {
    blocks: Vec<DVector<C64>>,
}

impl TraceVector {
    pub fn new(blocks: Vec<DVector<C64>>) -> Self {
        TraceVector { blocks }
    }

    pub fn vertex(&self, v: usize) -> &DVector<C64> {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[DVector<C64>] {
        &self.blocks
    }

    /// Concatenation over vertices, the global trace layout.
    pub fn flat(&self) -> DVector<C64> {
        let total: usize = self.blocks.iter().map(|b| b.len()).sum();
        let mut out = DVector::zeros(total);
        let mut at = 0;
        for b in &self.blocks {
            for i in 0..b.len() {
                out[at + i] = b[i];
            }
            at += b.len();
        }
        out
    }

    pub fn norm_sq(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_squared()).sum()
    }
}

impl DiscreteProblem {
    /// Boundary values at every edge end, grouped by vertex.
    pub fn trace_of(&self, full: &DVector<C64>) -> TraceVector {
        let blocks = (0..self.graph().vertex_count())
            .map(|v| {
                let dofs = self.trace_dofs(v);
                DVector::from_fn(dofs.len(), |i, _| full[dofs[i]])
            })
            .collect();
        TraceVector::new(blocks)
    }

    /// Signed (ingoing) boundary derivatives by one-sided second-order
    /// differences: `(-3x₀ + 4x₁ - x₂)/(2h)` at starts and the mirrored
    /// stencil with sign `-1` at ends. Exact on quadratics.
    pub fn signed_derivative_trace_of(
        &self,
        full: &DVector<C64>,
    ) -> Result<TraceVector, DiscError> {
        let graph = self.graph().clone();
        let mut blocks = Vec::with_capacity(graph.vertex_count());
        for star in graph.stars() {
            let mut block = DVector::zeros(star.degree());
            for (pos, end) in star.ends.iter().enumerate() {
                let mesh = &self.meshes()[end.edge];
                if mesh.n_nodes < 3 {
                    return Err(DiscError::MeshTooCoarse {
                        edge: graph.edge(end.edge).id.clone(),
                    });
                }
                let h = mesh.h();
                let base = self.dof(end.edge, 0);
                let n = mesh.n_nodes;
                block[pos] = match end.tag {
                    crate::graph::EndTag::Start => {
                        (full[base] * -3.0 + full[base + 1] * 4.0 - full[base + 2]) / (2.0 * h)
                    }
                    crate::graph::EndTag::End => {
                        -(full[base + n - 1] * 3.0 - full[base + n - 2] * 4.0 + full[base + n - 3])
                            / (2.0 * h)
                    }
                };
            }
            blocks.push(block);
        }
        Ok(TraceVector::new(blocks))
    }
}
