//! Cubic boundary-matching extension: a compactly supported function with
//! prescribed values and ingoing derivatives at one vertex.

use nalgebra::DVector;

use super::DiscreteProblem;
use crate::poly::Poly;
use crate::C64;

impl DiscreteProblem {
    /// Support length used by [`DiscreteProblem::cubic_extension`] at vertex
    /// `v`: half the smaller of the uniform length bound and the shortest
    /// incident (effective) edge length.
    pub fn extension_support(&self, v: usize) -> f64 {
        let star = self.graph().vertex_star(v);
        let shortest = star
            .ends
            .iter()
            .map(|end| self.meshes()[end.edge].length)
            .fold(f64::INFINITY, f64::min);
        (self.graph().u_min() / 2.0).min(shortest / 2.0)
    }

    /// Sample, on the mesh, the piecewise-cubic function that takes boundary
    /// value `values[i]` and ingoing derivative `derivatives[i]` at the i-th
    /// edge end of vertex `v`, decays to zero with zero derivative at
    /// distance `extension_support(v)` into each edge, and vanishes
    /// elsewhere.
    pub fn cubic_extension(
        &self,
        v: usize,
        values: &DVector<C64>,
        derivatives: &DVector<C64>,
    ) -> DVector<C64> {
        let star = self.graph().vertex_star(v);
        assert_eq!(values.len(), star.degree());
        assert_eq!(derivatives.len(), star.degree());
        let s = self.extension_support(v);
        let mut out = DVector::zeros(self.n_dof());
        for (pos, end) in star.ends.iter().enumerate() {
            // in the ingoing coordinate the signed derivative is the plain
            // derivative at 0 for either end tag
            let p = Poly::hermite_cubic(
                values[pos],
                derivatives[pos],
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                s,
            );
            let mesh = &self.meshes()[end.edge];
            for j in 0..mesh.n_nodes {
                let t = mesh.node(j);
                let xi = match end.tag {
                    crate::graph::EndTag::Start => t,
                    crate::graph::EndTag::End => mesh.length - t,
                };
                if xi < s {
                    out[self.dof(end.edge, j)] += p.eval(xi);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::VertexCondition;
    use crate::disc::{assemble_form, build_meshes};
    use crate::graph::MetricGraph;
    use approx::assert_relative_eq;

    fn star_problem(h: f64) -> DiscreteProblem {
        let g = MetricGraph::star(3, 1.0);
        let meshes = build_meshes(&g, h, 20.0);
        let mut conditions = vec![VertexCondition::neumann(3).unwrap()];
        for _ in 0..3 {
            conditions.push(VertexCondition::neumann(1).unwrap());
        }
        assemble_form(&g, &meshes, &conditions).unwrap()
    }

    #[test]
    fn zero_data_gives_zero_vector() {
        let p = star_problem(0.1);
        let z = DVector::zeros(3);
        let f = p.cubic_extension(0, &z, &z);
        assert_eq!(f.norm(), 0.0);
    }

    #[test]
    fn unit_bump_on_single_edge() {
        // value 1, derivative 0, support 1: p(t) = 1 - 3t² + 2t³ on [0,1]
        let g = MetricGraph::interval(2.0);
        let meshes = build_meshes(&g, 0.125, 20.0);
        let conditions = vec![
            VertexCondition::neumann(1).unwrap(),
            VertexCondition::neumann(1).unwrap(),
        ];
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        assert_relative_eq!(p.extension_support(0), 1.0, epsilon = 1e-14);
        let f = p.cubic_extension(
            0,
            &DVector::from_element(1, C64::new(1.0, 0.0)),
            &DVector::zeros(1),
        );
        let t = 0.5;
        let expected = 1.0 - 3.0 * t * t + 2.0 * t * t * t;
        assert_relative_eq!(f[p.dof(0, 4)].re, expected, epsilon = 1e-13);
        // vanishes beyond the support
        assert!(f[p.dof(0, 12)].norm() < 1e-15);
        assert_relative_eq!(f[p.dof(0, 0)].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn traces_match_prescribed_data_to_stencil_order() {
        let p = star_problem(0.002);
        let v = 0usize;
        let values = DVector::from_vec(vec![
            C64::new(1.0, 0.5),
            C64::new(-0.3, 0.0),
            C64::new(0.2, -0.7),
        ]);
        let derivs = DVector::from_vec(vec![
            C64::new(0.4, 0.0),
            C64::new(-1.1, 0.2),
            C64::new(0.0, 0.9),
        ]);
        let f = p.cubic_extension(v, &values, &derivs);
        let tr = p.trace_of(&f);
        let str_tr = p.signed_derivative_trace_of(&f).unwrap();
        assert!((tr.vertex(v) - &values).norm() < 1e-12);
        // one-sided stencil error on a cubic is O(h²)
        assert!((str_tr.vertex(v) - &derivs).norm() < 1e-3);
        // leaves see nothing
        for leaf in 1..=3 {
            assert!(tr.vertex(leaf).norm() < 1e-15);
        }
    }

    #[test]
    fn loop_edge_receives_both_end_contributions() {
        let g = MetricGraph::build(crate::graph::GraphSpec {
            vertices: vec!["v".into()],
            edges: vec![crate::graph::EdgeSpec {
                id: "e".into(),
                from: "v".into(),
                to: Some("v".into()),
                length: crate::graph::EdgeLength::Finite(2.0),
            }],
        })
        .unwrap();
        let meshes = build_meshes(&g, 0.05, 20.0);
        let conditions = vec![VertexCondition::neumann(2).unwrap()];
        let p = assemble_form(&g, &meshes, &conditions).unwrap();
        let values = DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        let derivs = DVector::zeros(2);
        let f = p.cubic_extension(0, &values, &derivs);
        let tr = p.trace_of(&f);
        assert!((tr.vertex(0) - &values).norm() < 1e-12);
        // supports from the two ends don't overlap (s ≤ l/2)
        let mid = p.dof(0, meshes[0].n_nodes / 2);
        assert!(f[mid].norm() < 1e-12);
    }
}
