//! Cross-route consistency checks: weak form against strong operator,
//! slicing against dense factorization, constraint stability under
//! vertex-continuous multipliers, and the cubic-extension norm bound.

use mgspec_core::analysis::{greens_identity_suite, spectrum};
use mgspec_core::conditions::VertexCondition;
use mgspec_core::disc::strong::assemble_strong;
use mgspec_core::disc::{assemble_form, build_meshes, DiscreteProblem};
use mgspec_core::graph::{EdgeLength, EdgeSpec, GraphSpec, MetricGraph};
use mgspec_core::poly::Poly;
use mgspec_core::{linalg, random, C64};
use nalgebra::DVector;
use rand::Rng;

fn test_graph() -> (MetricGraph, Vec<VertexCondition>) {
    let graph = MetricGraph::star(3, 1.0);
    let mut conditions = vec![VertexCondition::delta(-1.5, 3).unwrap()];
    conditions.push(VertexCondition::delta(0.8, 1).unwrap());
    conditions.push(VertexCondition::dirichlet(1).unwrap());
    conditions.push(VertexCondition::neumann(1).unwrap());
    (graph, conditions)
}

fn assemble(graph: &MetricGraph, conditions: &[VertexCondition], h: f64) -> DiscreteProblem {
    let meshes = build_meshes(graph, h, 20.0);
    assemble_form(graph, &meshes, conditions).unwrap()
}

/// Smooth per-edge function satisfying the continuum vertex conditions:
/// admissible boundary data from each condition's Lagrangian graph, matched
/// by compactly supported cubics near the vertices, plus a bulk part that
/// vanishes to second order at both ends.
struct SmoothAdmissible {
    /// Per edge: bulk polynomial on the effective length.
    bulk: Vec<Poly>,
    /// Per edge: (support, cubic from the start, cubic from the end).
    matchers: Vec<(f64, Poly, Option<Poly>)>,
    lengths: Vec<f64>,
}

impl SmoothAdmissible {
    fn random(problem: &DiscreteProblem, rng: &mut impl Rng) -> SmoothAdmissible {
        let graph = problem.graph();
        let zero = C64::new(0.0, 0.0);
        // admissible boundary data per vertex: x = q in ker P, y = Lq + p
        let mut end_data: Vec<(C64, C64)> = vec![(zero, zero); 2 * graph.edge_count()];
        for (v, vc) in problem.conditions().iter().enumerate() {
            let kernel = vc.kernel_basis();
            let range = vc.range_basis();
            let d = vc.degree();
            let mut q = DVector::zeros(d);
            for j in 0..kernel.ncols() {
                let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                q += kernel.column(j) * c;
            }
            let mut y = vc.coupling() * &q;
            for j in 0..range.ncols() {
                let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                y += range.column(j) * c;
            }
            let star = graph.vertex_star(v);
            for (pos, end) in star.ends.iter().enumerate() {
                let slot = 2 * end.edge
                    + if end.tag == mgspec_core::graph::EndTag::Start {
                        0
                    } else {
                        1
                    };
                end_data[slot] = (q[pos], y[pos]);
            }
        }
        let mut bulk = Vec::new();
        let mut matchers = Vec::new();
        let mut lengths = Vec::new();
        for (k, mesh) in problem.meshes().iter().enumerate() {
            let l = mesh.length;
            lengths.push(l);
            // t²(l-t)²·(c0 + c1 t): zero value and slope at both ends
            let c0 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let c1 = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let window = Poly::new(vec![
                zero,
                zero,
                C64::new(l * l, 0.0),
                C64::new(-2.0 * l, 0.0),
                C64::new(1.0, 0.0),
            ]);
            bulk.push(window.mul(&Poly::new(vec![c0, c1])));
            let s = problem.extension_support(graph.edge(k).start).min(l / 2.0);
            let (a0, b0) = end_data[2 * k];
            let start_cubic = Poly::hermite_cubic(a0, b0, zero, zero, s);
            let end_cubic = if mesh.truncated {
                None
            } else {
                let (a1, b1) = end_data[2 * k + 1];
                Some(Poly::hermite_cubic(a1, b1, zero, zero, s))
            };
            matchers.push((s, start_cubic, end_cubic));
        }
        SmoothAdmissible {
            bulk,
            matchers,
            lengths,
        }
    }

    fn eval(&self, edge: usize, t: f64) -> C64 {
        let l = self.lengths[edge];
        let (s, start_cubic, end_cubic) = &self.matchers[edge];
        let mut v = self.bulk[edge].eval(t);
        if t < *s {
            v += start_cubic.eval(t);
        }
        if let Some(cubic) = end_cubic {
            if l - t < *s {
                v += cubic.eval(l - t);
            }
        }
        v
    }

    fn sample(&self, problem: &DiscreteProblem) -> DVector<C64> {
        let mut out = DVector::zeros(problem.n_dof());
        for (k, mesh) in problem.meshes().iter().enumerate() {
            for j in 0..mesh.n_nodes {
                out[problem.dof(k, j)] = self.eval(k, mesh.node(j));
            }
        }
        out
    }
}

/// Defect of `⟨H f, g⟩_M = ⟨f', g'⟩ + Σ_v ⟨coupling·tr_v f, tr_v g⟩` for a
/// fixed pair of smooth admissible functions sampled on the problem's mesh.
fn form_operator_defect(
    problem: &DiscreteProblem,
    f_fn: &SmoothAdmissible,
    g_fn: &SmoothAdmissible,
) -> f64 {
    let strong = assemble_strong(problem).unwrap();
    let f = strong.embed(&f_fn.sample(problem));
    let g = strong.embed(&g_fn.sample(problem));
    let hf = strong.apply(&f);
    let weak = problem.form_product(&f, &g);
    let op = problem.mass_product(&hf, &g);
    (op - weak).norm()
}

#[test]
fn form_and_strong_operator_agree_to_second_order() {
    let (graph, conditions) = test_graph();
    let coarse_problem = assemble(&graph, &conditions, 0.02);
    let fine_problem = assemble(&graph, &conditions, 0.01);
    let mut rng = random::seeded(3);
    let mut ratios = Vec::new();
    for _ in 0..6 {
        let f_fn = SmoothAdmissible::random(&coarse_problem, &mut rng);
        let g_fn = SmoothAdmissible::random(&coarse_problem, &mut rng);
        let coarse = form_operator_defect(&coarse_problem, &f_fn, &g_fn);
        let fine = form_operator_defect(&fine_problem, &f_fn, &g_fn);
        ratios.push(coarse / fine);
    }
    // halving h divides the defect by about four
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!(
        (3.2..=4.8).contains(&mean),
        "mean defect ratio {mean} from {ratios:?}"
    );
}

#[test]
fn vertex_continuous_multiplier_preserves_constraints() {
    let (graph, conditions) = test_graph();
    let problem = assemble(&graph, &conditions, 0.05);
    let mut rng = random::seeded(5);
    // random admissible function
    let reduced = DVector::from_fn(problem.reduced_dim(), |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let x = problem.expand(&reduced);
    assert!(problem.constraint_defect(&x) < 1e-12);

    // multiplier constant across each vertex star, varying along edges:
    // on edge e = (u, w) interpolate linearly between the vertex values
    let vertex_values: Vec<C64> = (0..graph.vertex_count())
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let mut phi = DVector::zeros(problem.n_dof());
    for (k, mesh) in problem.meshes().iter().enumerate() {
        let e = graph.edge(k);
        let start_val = vertex_values[e.start];
        let end_val = e.end.map_or(C64::new(0.0, 0.0), |v| vertex_values[v]);
        for j in 0..mesh.n_nodes {
            let t = mesh.node(j) / mesh.length;
            phi[problem.dof(k, j)] = start_val * (1.0 - t) + end_val * t;
        }
    }
    let product = DVector::from_fn(problem.n_dof(), |i, _| phi[i] * x[i]);
    // the trace of the product scales each vertex block by a constant, so
    // the projection constraint survives exactly
    assert!(problem.constraint_defect(&product) < 1e-12);
}

#[test]
fn slicing_and_dense_agree_on_random_graphs() {
    let mut rng = random::seeded(17);
    for trial in 0..10 {
        let spec = random::random_graph_spec(&mut rng, 6, 1.0, 2.0);
        let graph = MetricGraph::build(spec).unwrap();
        let conditions: Vec<VertexCondition> = (0..graph.vertex_count())
            .map(|v| random::random_vertex_condition(&mut rng, graph.degree(v), true))
            .collect();
        // coarse enough to stay small, fine enough to exceed the dense cutoff
        let problem = assemble(&graph, &conditions, 0.05);
        let dim = problem.reduced_dim();
        if dim <= 64 || dim > 400 {
            continue;
        }
        let k = 6.min(dim);
        let report = spectrum(&problem, k).unwrap();
        let a = problem.pencil().a.to_dense();
        let m = problem.pencil().m.to_dense();
        let (dense_vals, _) = linalg::dense_generalized_eigen(&a, &m, k).unwrap();
        for (i, (s, d)) in report.eigenvalues.iter().zip(&dense_vals).enumerate() {
            assert!(
                (s - d).abs() <= 1e-8 * (1.0 + d.abs()),
                "trial {trial} eigenvalue {i}: slicing {s} dense {d}"
            );
        }
    }
}

#[test]
fn greens_identity_on_fifty_edge_graph() {
    // chain of 25 vertices with doubled edges between consecutive ones
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..25 {
        vertices.push(format!("v{i}"));
    }
    for i in 0..24 {
        for copy in 0..2 {
            edges.push(EdgeSpec {
                id: format!("e{i}_{copy}"),
                from: format!("v{i}"),
                to: Some(format!("v{}", i + 1)),
                length: EdgeLength::Finite(1.0 + 0.03 * (i as f64) + 0.11 * copy as f64),
            });
        }
    }
    edges.push(EdgeSpec {
        id: "loop".into(),
        from: "v0".into(),
        to: Some("v0".into()),
        length: EdgeLength::Finite(2.0),
    });
    edges.push(EdgeSpec {
        id: "ray".into(),
        from: "v24".into(),
        to: None,
        length: EdgeLength::Infinite,
    });
    let graph = MetricGraph::build(GraphSpec { vertices, edges }).unwrap();
    assert_eq!(graph.edge_count(), 50);
    let meshes = build_meshes(&graph, 0.25, 10.0);
    let report = greens_identity_suite(&graph, &meshes, 40, 23);
    assert!(report.passed, "defect {}", report.max_defect);
}

#[test]
fn cubic_extension_norm_bound_monotone_in_support() {
    // exact Sobolev norm of the extension against the explicit constant
    // c(s)² = 2·max(13s/35 + 6/(5s) + 12/s³, s³/105 + 2s/15 + 4/s)
    let c_bound = |s: f64| -> f64 {
        let value_part = 13.0 * s / 35.0 + 6.0 / (5.0 * s) + 12.0 / (s * s * s);
        let deriv_part = s * s * s / 105.0 + 2.0 * s / 15.0 + 4.0 / s;
        (2.0 * value_part.max(deriv_part)).sqrt()
    };
    let mut conditions = vec![VertexCondition::neumann(4).unwrap()];
    for _ in 0..4 {
        conditions.push(VertexCondition::neumann(1).unwrap());
    }
    let mut rng = random::seeded(29);
    let mut prev_bound = 0.0f64;
    for s in [0.5, 0.25, 0.125] {
        // shrink the support by shortening u_min through the mesh: the
        // support formula is min(u_min/2, shortest/2), so rescale edges
        let scaled = MetricGraph::star(4, 2.0 * s);
        let meshes = build_meshes(&scaled, s / 50.0, 20.0);
        let problem = assemble_form(&scaled, &meshes, &conditions).unwrap();
        assert!((problem.extension_support(0) - s).abs() < 1e-12);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let values = DVector::from_fn(4, |_, _| {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let derivs = DVector::from_fn(4, |_, _| {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            // exact W^{2,2} norm of the piecewise cubic the extension samples
            let mut norm_sq = 0.0;
            for i in 0..4 {
                let p = Poly::hermite_cubic(
                    values[i],
                    derivs[i],
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    s,
                );
                let dp = p.derivative();
                let ddp = dp.derivative();
                norm_sq += mgspec_core::poly::norm_sq(&p, s)
                    + mgspec_core::poly::norm_sq(&dp, s)
                    + mgspec_core::poly::norm_sq(&ddp, s);
            }
            let data_norm = values.norm() + derivs.norm();
            worst = worst.max(norm_sq.sqrt() / data_norm);
            // the sampled mesh vector matches the prescribed trace exactly
            let f = problem.cubic_extension(0, &values, &derivs);
            let tr = problem.trace_of(&f);
            assert!((tr.vertex(0) - &values).norm() < 1e-12);
        }
        assert!(
            worst <= c_bound(s),
            "s = {s}: observed ratio {worst} above c(s) = {}",
            c_bound(s)
        );
        // the constant grows as the support shrinks
        assert!(c_bound(s) > prev_bound);
        prev_bound = c_bound(s);
    }
}
