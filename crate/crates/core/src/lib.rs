//! Spectral engine for Laplacians on metric graphs.
//!
//! A metric graph carries a second-derivative operator `-f''` on every edge;
//! the operator becomes self-adjoint once each vertex is equipped with a
//! boundary condition given by an orthogonal projection and a Hermitian
//! coupling map acting on the boundary data of incident edge ends. This crate
//! models such graphs and conditions, discretizes the associated quadratic
//! form with linear finite elements, and computes low-lying spectra of the
//! constrained generalized eigenproblem together with lower-bound
//! certificates and a set of analytic consistency suites (Green's identity,
//! boundary trace inequalities, vertex-collapse trends).
//!
//! Modules:
//! - [`graph`]: immutable metric-graph model and edge-end bookkeeping
//! - [`conditions`]: vertex-condition algebra (families, matrix-pair
//!   conversions, symplectic toolkit)
//! - [`disc`]: meshes, form assembly, trace extraction, strong operator
//! - [`analysis`]: eigensolver, certificates, verification suites
//! - [`oracle`]: independent secular-equation eigenvalue oracles
//! - [`poly`]: exact polynomial quadrature used by the analytic suites
//!
//! Computing the five lowest Dirichlet eigenvalues of a unit interval:
//!
//! ```
//! use mgspec_core::analysis::spectrum;
//! use mgspec_core::conditions::VertexCondition;
//! use mgspec_core::disc::{assemble_form, build_meshes};
//! use mgspec_core::graph::MetricGraph;
//!
//! let graph = MetricGraph::interval(1.0);
//! let meshes = build_meshes(&graph, 1e-2, 20.0);
//! let conditions = vec![
//!     VertexCondition::dirichlet(1).unwrap(),
//!     VertexCondition::dirichlet(1).unwrap(),
//! ];
//! let problem = assemble_form(&graph, &meshes, &conditions).unwrap();
//! let report = spectrum(&problem, 5).unwrap();
//! let pi = std::f64::consts::PI;
//! for (k, ev) in report.eigenvalues.iter().enumerate() {
//!     let exact = ((k + 1) as f64 * pi).powi(2);
//!     assert!((ev - exact).abs() < 1e-2 * exact);
//! }
//! ```

pub mod analysis;
pub mod conditions;
pub mod disc;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod report;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Absolute tolerance for algebraic matrix identities (Hermiticity,
/// idempotency, support conditions), measured in spectral norm.
pub const TAU_ALG: f64 = 1e-10;

/// Tolerance for subspace comparisons (principal-angle distance).
pub const TAU_SUBSPACE: f64 = 1e-8;

/// Tolerance for solution-set equivalence checks of converted conditions.
pub const TAU_SOLUTION_SET: f64 = 1e-8;

/// Threshold separating the {0,1} eigenvalue clusters of a projection.
pub const PROJECTION_RANK_TOL: f64 = 1e-8;
