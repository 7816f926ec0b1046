//! Spectral computation and the verification suites built on top of it.

pub mod bounded_l;
pub mod certificate;
pub mod experiments;
pub mod greens;
pub(crate) mod piecewise;
pub mod sobolev;
pub mod spectrum;

pub use bounded_l::{
    bordered_coupling_truncation, bounded_coupling_truncations, BoundedCouplingReport,
};
pub use certificate::{lower_bound_certificate, LowerBoundCertificate};
pub use experiments::{
    delta_collapse, delta_prime_collapse, kirchhoff_transparency, CollapseReport, CollapseRow,
    ExperimentError, FamilyBound, TransparencyReport,
};
pub use greens::{greens_identity_suite, GreensReport};
pub use sobolev::{trace_inequality_suite, TraceInequalityReport};
pub use spectrum::{spectrum, SolveError, SpectrumReport};
