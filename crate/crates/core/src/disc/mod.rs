//! Discretization of the quadratic form on a metric graph.
//!
//! Each edge carries linear finite elements on its own uniform mesh; the
//! per-edge spaces are decoupled, and vertex conditions enter in two ways:
//! the coupling matrices add boundary terms to the form, and the projection
//! constraints are eliminated exactly through per-vertex kernel bases. The
//! result is the Hermitian pencil `(C*AC, C*MC)` held in
//! [`reduced::ReducedPencil`] coordinates, where `A = K + T*·L·T` collects
//! stiffness plus boundary coupling and `M` is the mass matrix.

pub mod cubic;
pub mod mesh;
pub mod reduced;
pub mod strong;
pub mod trace;

pub use mesh::{build_meshes, EdgeMesh};
pub use strong::StrongOperator;
pub use trace::TraceVector;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::conditions::VertexCondition;
use crate::graph::MetricGraph;
use crate::C64;
use reduced::{ReducedMatrix, ReducedPencil};

#[derive(Debug, Error)]
pub enum DiscError {
    #[error("no boundary condition for vertex {vertex}")]
    MissingCondition { vertex: String },
    #[error("condition at vertex {vertex} has degree {got}, expected {expected}")]
    DimensionMismatch {
        vertex: String,
        expected: usize,
        got: usize,
    },
    #[error("mesh on edge {edge} is too coarse for derivative extraction")]
    MeshTooCoarse { edge: String },
    #[error("strong boundary elimination is singular at vertex {vertex}")]
    SingularVertexElimination { vertex: String },
}

/// Where a mesh node lands in the reduced coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DofClass {
    /// Free interior node, with its reduced interior index.
    Interior(usize),
    /// Endpoint node owned by a vertex, at a position in its canonical star.
    VertexEnd { vertex: usize, pos: usize },
    /// Artificial truncation endpoint, pinned to zero.
    Eliminated,
}

/// Assembled discrete problem: full-space matrices for inspection and trace
/// extraction, plus the constraint-reduced pencil for eigensolves.
pub struct DiscreteProblem {
    graph: MetricGraph,
    meshes: Vec<EdgeMesh>,
    conditions: Vec<VertexCondition>,
    dof_offsets: Vec<usize>,
    n_dof: usize,
    class: Vec<DofClass>,
    /// Reduced interior index -> global DOF.
    interior_globals: Vec<usize>,
    /// Per vertex: global DOF of each star end, canonical order.
    trace_dofs: Vec<Vec<usize>>,
    /// Per vertex: orthonormal basis of the admissible boundary values.
    kernel_bases: Vec<DMatrix<C64>>,
    border_offsets: Vec<usize>,
    k_triplets: Vec<(usize, usize, f64)>,
    m_triplets: Vec<(usize, usize, f64)>,
    pencil: ReducedPencil,
}

/// Assemble the discrete quadratic form.
///
/// `conditions` must supply one entry per vertex, in vertex order, with the
/// degree of the vertex star.
pub fn assemble_form(
    graph: &MetricGraph,
    meshes: &[EdgeMesh],
    conditions: &[VertexCondition],
) -> Result<DiscreteProblem, DiscError> {
    assert_eq!(meshes.len(), graph.edge_count());
    if conditions.len() != graph.vertex_count() {
        let missing = conditions.len().min(graph.vertex_count());
        return Err(DiscError::MissingCondition {
            vertex: graph
                .vertex_ids()
                .get(missing)
                .cloned()
                .unwrap_or_else(|| "<extra conditions>".into()),
        });
    }
    for (v, vc) in conditions.iter().enumerate() {
        if vc.degree() != graph.degree(v) {
            return Err(DiscError::DimensionMismatch {
                vertex: graph.vertex_id(v).to_string(),
                expected: graph.degree(v),
                got: vc.degree(),
            });
        }
    }

    let n_edges = graph.edge_count();
    let mut dof_offsets = Vec::with_capacity(n_edges);
    let mut n_dof = 0usize;
    for mesh in meshes {
        dof_offsets.push(n_dof);
        n_dof += mesh.n_nodes;
    }

    // canonical star position of every edge end
    let mut end_position = vec![(usize::MAX, usize::MAX); 2 * n_edges];
    for star in graph.stars() {
        for (pos, end) in star.ends.iter().enumerate() {
            let slot = 2 * end.edge
                + if end.tag == crate::graph::EndTag::Start {
                    0
                } else {
                    1
                };
            end_position[slot] = (star.vertex, pos);
        }
    }

    let mut class = vec![DofClass::Eliminated; n_dof];
    let mut interior_globals = Vec::new();
    for (k, mesh) in meshes.iter().enumerate() {
        let base = dof_offsets[k];
        let n = mesh.n_nodes;
        let (sv, sp) = end_position[2 * k];
        class[base] = DofClass::VertexEnd {
            vertex: sv,
            pos: sp,
        };
        if mesh.truncated {
            class[base + n - 1] = DofClass::Eliminated;
        } else {
            let (ev, ep) = end_position[2 * k + 1];
            class[base + n - 1] = DofClass::VertexEnd {
                vertex: ev,
                pos: ep,
            };
        }
        for j in 1..n - 1 {
            class[base + j] = DofClass::Interior(interior_globals.len());
            interior_globals.push(base + j);
        }
    }

    let trace_dofs: Vec<Vec<usize>> = graph
        .stars()
        .iter()
        .map(|star| {
            star.ends
                .iter()
                .map(|end| {
                    let base = dof_offsets[end.edge];
                    match end.tag {
                        crate::graph::EndTag::Start => base,
                        crate::graph::EndTag::End => base + meshes[end.edge].n_nodes - 1,
                    }
                })
                .collect()
        })
        .collect();

    let kernel_bases: Vec<DMatrix<C64>> = conditions.iter().map(|vc| vc.kernel_basis()).collect();
    let mut border_offsets = Vec::with_capacity(kernel_bases.len());
    let mut n_border = 0usize;
    for nb in &kernel_bases {
        border_offsets.push(n_border);
        n_border += nb.ncols();
    }

    let n_interior = interior_globals.len();
    let mut red_k = ReducedMatrix::zeros(n_interior, n_border);
    let mut red_m = ReducedMatrix::zeros(n_interior, n_border);
    let mut k_triplets = Vec::new();
    let mut m_triplets = Vec::new();

    let route_diag = |red: &mut ReducedMatrix, node: usize, val: f64| match class[node] {
        DofClass::Interior(i) => red.diag[i] += val,
        DofClass::VertexEnd { vertex, pos } => {
            let nb = &kernel_bases[vertex];
            let off = border_offsets[vertex];
            for m in 0..nb.ncols() {
                for n2 in 0..nb.ncols() {
                    red.border[(off + m, off + n2)] += nb[(pos, m)].conj() * nb[(pos, n2)] * val;
                }
            }
        }
        DofClass::Eliminated => {}
    };
    let route_off = |red: &mut ReducedMatrix,
                     class: &[DofClass],
                     kernel_bases: &[DMatrix<C64>],
                     border_offsets: &[usize],
                     p: usize,
                     q: usize,
                     val: f64| {
        match (class[p], class[q]) {
            (DofClass::Interior(i), DofClass::Interior(j)) => {
                red.off[i.min(j)] += val;
            }
            (DofClass::Interior(i), DofClass::VertexEnd { vertex, pos })
            | (DofClass::VertexEnd { vertex, pos }, DofClass::Interior(i)) => {
                let nb = &kernel_bases[vertex];
                let off = border_offsets[vertex];
                for m in 0..nb.ncols() {
                    red.coupling[off + m].push((i, nb[(pos, m)] * val));
                }
            }
            (
                DofClass::VertexEnd {
                    vertex: v1,
                    pos: p1,
                },
                DofClass::VertexEnd {
                    vertex: v2,
                    pos: p2,
                },
            ) => {
                let nb1 = &kernel_bases[v1];
                let nb2 = &kernel_bases[v2];
                let o1 = border_offsets[v1];
                let o2 = border_offsets[v2];
                for m in 0..nb1.ncols() {
                    for n2 in 0..nb2.ncols() {
                        let entry = nb1[(p1, m)].conj() * nb2[(p2, n2)] * val;
                        red.border[(o1 + m, o2 + n2)] += entry;
                        red.border[(o2 + n2, o1 + m)] += entry.conj();
                    }
                }
            }
            _ => {}
        }
    };

    for (k, mesh) in meshes.iter().enumerate() {
        let base = dof_offsets[k];
        let h = mesh.h();
        let k_diag = 1.0 / h;
        let k_off = -1.0 / h;
        let m_diag = 2.0 * h / 6.0;
        let m_off = h / 6.0;
        for j in 0..mesh.n_nodes - 1 {
            let p = base + j;
            let q = base + j + 1;
            k_triplets.push((p, p, k_diag));
            k_triplets.push((q, q, k_diag));
            k_triplets.push((p, q, k_off));
            k_triplets.push((q, p, k_off));
            m_triplets.push((p, p, m_diag));
            m_triplets.push((q, q, m_diag));
            m_triplets.push((p, q, m_off));
            m_triplets.push((q, p, m_off));

            route_diag(&mut red_k, p, k_diag);
            route_diag(&mut red_k, q, k_diag);
            route_off(
                &mut red_k,
                &class,
                &kernel_bases,
                &border_offsets,
                p,
                q,
                k_off,
            );
            route_diag(&mut red_m, p, m_diag);
            route_diag(&mut red_m, q, m_diag);
            route_off(
                &mut red_m,
                &class,
                &kernel_bases,
                &border_offsets,
                p,
                q,
                m_off,
            );
        }
    }

    // boundary coupling: border block gains N* L N per vertex
    for (v, vc) in conditions.iter().enumerate() {
        let nb = &kernel_bases[v];
        if nb.ncols() == 0 {
            continue;
        }
        let small = nb.adjoint() * vc.coupling() * nb;
        let off = border_offsets[v];
        for m in 0..nb.ncols() {
            for n2 in 0..nb.ncols() {
                red_k.border[(off + m, off + n2)] += small[(m, n2)];
            }
        }
    }

    // merge duplicate coupling entries for cheaper matvecs
    for col in red_k.coupling.iter_mut().chain(red_m.coupling.iter_mut()) {
        let mut map: std::collections::BTreeMap<usize, C64> = std::collections::BTreeMap::new();
        for &(i, v) in col.iter() {
            *map.entry(i).or_insert(C64::new(0.0, 0.0)) += v;
        }
        *col = map.into_iter().collect();
    }

    Ok(DiscreteProblem {
        graph: graph.clone(),
        meshes: meshes.to_vec(),
        conditions: conditions.to_vec(),
        dof_offsets,
        n_dof,
        class,
        interior_globals,
        trace_dofs,
        kernel_bases,
        border_offsets,
        k_triplets,
        m_triplets,
        pencil: ReducedPencil { a: red_k, m: red_m },
    })
}

impl DiscreteProblem {
    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn meshes(&self) -> &[EdgeMesh] {
        &self.meshes
    }

    pub fn conditions(&self) -> &[VertexCondition] {
        &self.conditions
    }

    pub fn n_dof(&self) -> usize {
        self.n_dof
    }

    pub fn dof(&self, edge: usize, node: usize) -> usize {
        self.dof_offsets[edge] + node
    }

    pub fn dof_class(&self, dof: usize) -> DofClass {
        self.class[dof]
    }

    pub fn reduced_dim(&self) -> usize {
        self.pencil.dim()
    }

    pub fn pencil(&self) -> &ReducedPencil {
        &self.pencil
    }

    pub fn has_truncated_edges(&self) -> bool {
        self.meshes.iter().any(|m| m.truncated)
    }

    pub fn largest_mesh_width(&self) -> f64 {
        self.meshes.iter().map(|m| m.h()).fold(0.0, f64::max)
    }

    pub fn trace_dofs(&self, v: usize) -> &[usize] {
        &self.trace_dofs[v]
    }

    pub fn kernel_basis(&self, v: usize) -> &DMatrix<C64> {
        &self.kernel_bases[v]
    }

    /// Map reduced coordinates to a full DOF vector (apply the constraint
    /// basis `C`).
    pub fn expand(&self, reduced: &DVector<C64>) -> DVector<C64> {
        assert_eq!(reduced.len(), self.reduced_dim());
        let mut full = DVector::zeros(self.n_dof);
        for (i, &g) in self.interior_globals.iter().enumerate() {
            full[g] = reduced[i];
        }
        let n_int = self.interior_globals.len();
        for (v, nb) in self.kernel_bases.iter().enumerate() {
            if nb.ncols() == 0 {
                continue;
            }
            let off = self.border_offsets[v];
            let xi = reduced.rows(n_int + off, nb.ncols()).into_owned();
            let ends = nb * xi;
            for (pos, &dof) in self.trace_dofs[v].iter().enumerate() {
                full[dof] = ends[pos];
            }
        }
        full
    }

    /// Apply `C*` to a full vector.
    pub fn restrict(&self, full: &DVector<C64>) -> DVector<C64> {
        assert_eq!(full.len(), self.n_dof);
        let mut reduced = DVector::zeros(self.reduced_dim());
        for (i, &g) in self.interior_globals.iter().enumerate() {
            reduced[i] = full[g];
        }
        let n_int = self.interior_globals.len();
        for (v, nb) in self.kernel_bases.iter().enumerate() {
            if nb.ncols() == 0 {
                continue;
            }
            let ends =
                DVector::from_fn(self.trace_dofs[v].len(), |i, _| full[self.trace_dofs[v][i]]);
            let xi = nb.adjoint() * ends;
            let off = self.border_offsets[v];
            for m in 0..nb.ncols() {
                reduced[n_int + off + m] = xi[m];
            }
        }
        reduced
    }

    pub fn apply_stiffness(&self, x: &DVector<C64>) -> DVector<C64> {
        let mut y = DVector::zeros(self.n_dof);
        for &(i, j, v) in &self.k_triplets {
            y[i] += x[j] * v;
        }
        y
    }

    pub fn apply_mass(&self, x: &DVector<C64>) -> DVector<C64> {
        let mut y = DVector::zeros(self.n_dof);
        for &(i, j, v) in &self.m_triplets {
            y[i] += x[j] * v;
        }
        y
    }

    /// Value of the quadratic form: `⟨f', g'⟩ + Σ_v ⟨coupling·tr_v f, tr_v g⟩`,
    /// conjugate-linear in `f`.
    pub fn form_product(&self, f: &DVector<C64>, g: &DVector<C64>) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &(i, j, v) in &self.k_triplets {
            acc += f[i].conj() * g[j] * v;
        }
        for (v, vc) in self.conditions.iter().enumerate() {
            let tf = DVector::from_fn(self.trace_dofs[v].len(), |i, _| f[self.trace_dofs[v][i]]);
            let tg = DVector::from_fn(self.trace_dofs[v].len(), |i, _| g[self.trace_dofs[v][i]]);
            acc += tf.dotc(&(vc.coupling() * tg));
        }
        acc
    }

    /// Mass inner product `⟨f, g⟩`, conjugate-linear in `f`.
    pub fn mass_product(&self, f: &DVector<C64>, g: &DVector<C64>) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &(i, j, v) in &self.m_triplets {
            acc += f[i].conj() * g[j] * v;
        }
        acc
    }

    /// Largest projection-constraint violation `‖P_v tr_v(x)‖` over vertices.
    pub fn constraint_defect(&self, full: &DVector<C64>) -> f64 {
        let mut defect: f64 = 0.0;
        for (v, vc) in self.conditions.iter().enumerate() {
            let t = DVector::from_fn(self.trace_dofs[v].len(), |i, _| full[self.trace_dofs[v][i]]);
            defect = defect.max((vc.projection() * t).norm());
        }
        defect
    }

    pub fn stiffness_triplets(&self) -> &[(usize, usize, f64)] {
        &self.k_triplets
    }

    pub fn mass_triplets(&self) -> &[(usize, usize, f64)] {
        &self.m_triplets
    }

    /// Triplets of the full form matrix `A = K + T*·L·T`.
    pub fn form_triplets(&self) -> Vec<(usize, usize, C64)> {
        let mut out: Vec<(usize, usize, C64)> = self
            .k_triplets
            .iter()
            .map(|&(i, j, v)| (i, j, C64::new(v, 0.0)))
            .collect();
        for (v, vc) in self.conditions.iter().enumerate() {
            let dofs = &self.trace_dofs[v];
            for (i, &di) in dofs.iter().enumerate() {
                for (j, &dj) in dofs.iter().enumerate() {
                    let val = vc.coupling()[(i, j)];
                    if val.norm() > 0.0 {
                        out.push((di, dj, val));
                    }
                }
            }
        }
        out
    }

    /// Trace-operator triplets: one row per edge end, vertices in order.
    pub fn trace_triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        let mut row = 0usize;
        for dofs in &self.trace_dofs {
            for &d in dofs {
                out.push((row, d, 1.0));
                row += 1;
            }
        }
        out
    }

    /// Constraint-basis triplets (columns: interiors, then vertex blocks).
    pub fn constraint_basis_triplets(&self) -> Vec<(usize, usize, C64)> {
        let mut out = Vec::new();
        for (col, &g) in self.interior_globals.iter().enumerate() {
            out.push((g, col, C64::new(1.0, 0.0)));
        }
        let n_int = self.interior_globals.len();
        for (v, nb) in self.kernel_bases.iter().enumerate() {
            let off = self.border_offsets[v];
            for m in 0..nb.ncols() {
                for (pos, &dof) in self.trace_dofs[v].iter().enumerate() {
                    let val = nb[(pos, m)];
                    if val.norm() > 0.0 {
                        out.push((dof, n_int + off + m, val));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal coupling triplets in trace coordinates.
    pub fn coupling_block_triplets(&self) -> Vec<(usize, usize, C64)> {
        let mut out = Vec::new();
        let mut base = 0usize;
        for vc in &self.conditions {
            let d = vc.degree();
            for i in 0..d {
                for j in 0..d {
                    let val = vc.coupling()[(i, j)];
                    if val.norm() > 0.0 {
                        out.push((base + i, base + j, val));
                    }
                }
            }
            base += d;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::VertexCondition;
    use crate::graph::MetricGraph;
    use approx::assert_relative_eq;

    fn dense_from_triplets_c(
        n: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(n, n);
        for (i, j, v) in triplets {
            m[(i, j)] += v;
        }
        m
    }

    #[test]
    fn missing_condition_rejected() {
        let g = MetricGraph::interval(1.0);
        let meshes = build_meshes(&g, 0.5, 20.0);
        let conditions = vec![VertexCondition::dirichlet(1).unwrap()];
        assert!(matches!(
            assemble_form(&g, &meshes, &conditions),
            Err(DiscError::MissingCondition { .. })
        ));
    }

    #[test]
    fn dirichlet_interval_reduces_to_interior_stiffness() {
        let g = MetricGraph::interval(1.0);
        let meshes = build_meshes(&g, 0.25, 20.0);
        let conditions = vec![
            VertexCondition::dirichlet(1).unwrap(),
            VertexCondition::dirichlet(1).unwrap(),
        ];
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        assert_eq!(p.reduced_dim(), 3); // 5 nodes - 2 endpoints
        let a = p.pencil().a.to_dense();
        let h = 0.25;
        for i in 0..3 {
            assert_relative_eq!(a[(i, i)].re, 2.0 / h, epsilon = 1e-12);
            if i + 1 < 3 {
                assert_relative_eq!(a[(i, i + 1)].re, -1.0 / h, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn neumann_interval_keeps_all_dofs() {
        let g = MetricGraph::interval(1.0);
        let meshes = build_meshes(&g, 0.25, 20.0);
        let conditions = vec![
            VertexCondition::neumann(1).unwrap(),
            VertexCondition::neumann(1).unwrap(),
        ];
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        assert_eq!(p.reduced_dim(), 5);
        // reduced A equals full K up to the basis reordering
        let a_red = p.pencil().a.to_dense();
        let k_full = dense_from_triplets_c(
            p.n_dof(),
            p.stiffness_triplets()
                .iter()
                .map(|&(i, j, v)| (i, j, C64::new(v, 0.0))),
        );
        // expand each reduced basis vector and compare quadratic forms
        for i in 0..5 {
            for j in 0..5 {
                let mut ei = DVector::zeros(5);
                ei[i] = C64::new(1.0, 0.0);
                let mut ej = DVector::zeros(5);
                ej[j] = C64::new(1.0, 0.0);
                let fi = p.expand(&ei);
                let fj = p.expand(&ej);
                let full_val = (0..p.n_dof())
                    .map(|r| {
                        fi[r].conj() * (0..p.n_dof()).map(|c| k_full[(r, c)] * fj[c]).sum::<C64>()
                    })
                    .sum::<C64>();
                assert!((a_red[(i, j)] - full_val).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn kirchhoff_join_identifies_endpoint_values() {
        let g = MetricGraph::split_interval(1.0, 1.0);
        let meshes = build_meshes(&g, 0.5, 20.0);
        let conditions = vec![
            VertexCondition::dirichlet(1).unwrap(),
            VertexCondition::kirchhoff(2).unwrap(),
            VertexCondition::dirichlet(1).unwrap(),
        ];
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        // 3 nodes/edge: 2 interiors; middle vertex contributes one border dof
        assert_eq!(p.reduced_dim(), 3);
        // expanding the border coordinate gives equal values at both ends
        let mut red = DVector::zeros(3);
        red[2] = C64::new(1.0, 0.0);
        let full = p.expand(&red);
        let m = g.vertex_by_id("m").unwrap();
        let dofs = p.trace_dofs(m);
        assert!((full[dofs[0]] - full[dofs[1]]).norm() < 1e-14);
        assert!(p.constraint_defect(&full) < 1e-12);
    }

    #[test]
    fn reduced_form_is_hermitian_and_mass_definite() {
        use nalgebra::Cholesky;
        let g = MetricGraph::star(3, 1.0);
        let meshes = build_meshes(&g, 0.21, 20.0);
        let mut conditions = vec![VertexCondition::delta(-1.0, 3).unwrap()];
        for _ in 0..3 {
            conditions.push(VertexCondition::delta(0.7, 1).unwrap());
        }
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        let a = p.pencil().a.to_dense();
        let m = p.pencil().m.to_dense();
        assert!(crate::linalg::hermiticity_defect(&a) < 1e-12);
        assert!(crate::linalg::hermiticity_defect(&m) < 1e-12);
        assert!(Cholesky::new(m).is_some(), "C*MC must be positive definite");
    }

    #[test]
    fn truncated_ray_gets_dirichlet_cap() {
        let g = MetricGraph::build(crate::graph::GraphSpec {
            vertices: vec!["a".into()],
            edges: vec![crate::graph::EdgeSpec {
                id: "ray".into(),
                from: "a".into(),
                to: None,
                length: crate::graph::EdgeLength::Infinite,
            }],
        })
        .unwrap();
        let meshes = build_meshes(&g, 0.5, 2.0);
        let conditions = vec![VertexCondition::neumann(1).unwrap()];
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        // 5 nodes: cap eliminated, vertex end in border, 3 interiors
        assert_eq!(p.reduced_dim(), 4);
        let mut red = DVector::zeros(4);
        red[0] = C64::new(2.0, 0.0);
        let full = p.expand(&red);
        assert_eq!(full[p.dof(0, 4)], C64::new(0.0, 0.0));
    }

    #[test]
    fn mismatched_condition_degree_rejected() {
        let g = MetricGraph::interval(1.0);
        let meshes = build_meshes(&g, 0.5, 20.0);
        let conditions = vec![
            VertexCondition::dirichlet(2).unwrap(),
            VertexCondition::dirichlet(1).unwrap(),
        ];
        assert!(matches!(
            assemble_form(&g, &meshes, &conditions),
            Err(DiscError::DimensionMismatch { .. })
        ));
    }
}
