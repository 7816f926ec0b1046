//! Lower-bound certificate for the discrete spectrum.
//!
//! With `S` the uniform bound on the negative parts of the couplings and `u`
//! the lower edge-length bound, the quadratic form obeys
//! `⟨H f, f⟩ ≥ -(4S/ε)‖f‖²` for `ε = min(u, 1/(2S))`. The discrete problem is
//! a Rayleigh–Ritz restriction of that form, so its lowest eigenvalue must
//! respect the same bound; the certificate records both sides.

use super::spectrum::SpectrumReport;
use crate::conditions::uniform_negative_bound;
use crate::disc::DiscreteProblem;

#[derive(Debug, Clone)]
pub struct LowerBoundCertificate {
    /// Uniform negative-part bound `S` of the conditions.
    pub negative_part_bound: f64,
    /// Lower edge-length bound of the graph (`+∞` when all edges are rays).
    pub length_bound: f64,
    /// `min(u, 1/(2S))`; equals `u` when `S = 0`.
    pub epsilon: f64,
    /// Certified bound `-4S/ε` (zero when `S = 0`).
    pub lower_bound: f64,
    pub observed_min: f64,
    pub tol: f64,
    pub passed: bool,
}

pub fn lower_bound_certificate(
    problem: &DiscreteProblem,
    report: &SpectrumReport,
) -> LowerBoundCertificate {
    let s = uniform_negative_bound(problem.conditions());
    let u = problem.graph().u_min();
    let epsilon = if s == 0.0 { u } else { u.min(1.0 / (2.0 * s)) };
    let lower_bound = if s == 0.0 { 0.0 } else { -4.0 * s / epsilon };
    let tol = 1e-6 * (1.0 + lower_bound.abs());
    let observed_min = report.eigenvalues[0];
    LowerBoundCertificate {
        negative_part_bound: s,
        length_bound: u,
        epsilon,
        lower_bound,
        observed_min,
        tol,
        passed: observed_min >= lower_bound - tol,
    }
}
