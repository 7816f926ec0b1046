//! Vertex boundary-condition algebra.
//!
//! A condition at a vertex of degree `d` is a pair of `d×d` complex matrices:
//! an orthogonal projection onto the constrained part of the boundary values,
//! and a Hermitian coupling map supported on the complementary subspace. The
//! boundary data `(x, y)` of a function — values and ingoing derivatives at
//! the incident edge ends — is admissible when `P x = 0` and
//! `coupling · x = (1 - P) y`.
//!
//! Submodules provide the named families (Dirichlet, Neumann, delta-type,
//! delta-prime), the conversion from Kostrykin–Schrader matrix pairs, the
//! symplectic/Lagrangian-subspace toolkit, and the positive/negative
//! spectral splitting used by lower-bound certificates.

mod ab;
mod families;
mod lagrangian;
mod split;

pub use ab::ABCondition;
pub use lagrangian::{is_lagrangian, LagrangianCheck, LagrangianSubspace};
pub use split::{uniform_negative_bound, CouplingSplit};

use nalgebra::DMatrix;
use thiserror::Error;

use crate::linalg::{hermiticity_defect, idempotency_defect, spectral_norm};
use crate::{C64, TAU_ALG};

#[derive(Debug, Error, PartialEq)]
pub enum ConditionError {
    #[error("projection is not Hermitian (defect {defect:.3e})")]
    ProjectionNotHermitian { defect: f64 },
    #[error("projection is not idempotent (defect {defect:.3e})")]
    ProjectionNotIdempotent { defect: f64 },
    #[error("coupling is not Hermitian (defect {defect:.3e})")]
    CouplingNotHermitian { defect: f64 },
    #[error("coupling is not supported on the complement of the projection (defect {defect:.3e})")]
    CouplingNotSupported { defect: f64 },
    #[error("projection and coupling have mismatched dimensions {p}x{p} vs {l}x{l}")]
    ShapeMismatch { p: usize, l: usize },
    #[error("vertex degree must be at least 1")]
    InvalidDegree,
    #[error("delta-prime condition requires a nonzero parameter")]
    ZeroAlpha,
    #[error("matrix block [A B] is rank deficient (rank {rank} < {d})")]
    RankDeficient { rank: usize, d: usize },
    #[error("A B* is not Hermitian (defect {defect:.3e})")]
    NonHermitianABStar { defect: f64 },
    #[error("conversion is numerically singular (smallest pivot {sigma_min:.3e})")]
    SingularConversion { sigma_min: f64 },
    #[error("converted condition does not reproduce the solution set (defect {defect:.3e})")]
    ConversionMismatch { defect: f64 },
    #[error("candidate basis has dependent columns")]
    DependentColumns,
    #[error("subspace is not Lagrangian (defect {defect:.3e})")]
    NotLagrangian { defect: f64 },
    #[error("decomposition round-trip failed (subspace distance {distance:.3e})")]
    DecompositionMismatch { distance: f64 },
}

/// Boundary condition at a single vertex: orthogonal projection plus a
/// Hermitian coupling stored as a full matrix vanishing on the projection's
/// range.
#[derive(Debug, Clone)]
pub struct VertexCondition {
    projection: DMatrix<C64>,
    coupling: DMatrix<C64>,
}

impl VertexCondition {
    /// Validate and wrap a projection/coupling pair.
    pub fn new(projection: DMatrix<C64>, coupling: DMatrix<C64>) -> Result<Self, ConditionError> {
        if projection.nrows() != projection.ncols()
            || coupling.nrows() != coupling.ncols()
            || projection.nrows() != coupling.nrows()
        {
            return Err(ConditionError::ShapeMismatch {
                p: projection.nrows(),
                l: coupling.nrows(),
            });
        }
        if projection.nrows() == 0 {
            return Err(ConditionError::InvalidDegree);
        }
        let d = hermiticity_defect(&projection);
        if d > TAU_ALG {
            return Err(ConditionError::ProjectionNotHermitian { defect: d });
        }
        let d = idempotency_defect(&projection);
        if d > TAU_ALG {
            return Err(ConditionError::ProjectionNotIdempotent { defect: d });
        }
        let d = hermiticity_defect(&coupling);
        if d > TAU_ALG {
            return Err(ConditionError::CouplingNotHermitian { defect: d });
        }
        let pl = spectral_norm(&(&projection * &coupling));
        let lp = spectral_norm(&(&coupling * &projection));
        let defect = pl.max(lp);
        if defect > TAU_ALG {
            return Err(ConditionError::CouplingNotSupported { defect });
        }
        Ok(VertexCondition {
            projection,
            coupling,
        })
    }

    pub fn degree(&self) -> usize {
        self.projection.nrows()
    }

    /// Orthogonal projection onto the constrained boundary values.
    pub fn projection(&self) -> &DMatrix<C64> {
        &self.projection
    }

    /// Hermitian coupling map, zero on the range of the projection.
    pub fn coupling(&self) -> &DMatrix<C64> {
        &self.coupling
    }

    /// Orthonormal basis of the admissible boundary values `ker P`.
    ///
    /// Eigenvalues of a valid projection cluster at {0, 1}; the split
    /// threshold tolerates the validation slack.
    pub fn kernel_basis(&self) -> DMatrix<C64> {
        let (vals, vecs) = crate::linalg::hermitian_eigen(&self.projection);
        let keep: Vec<usize> = vals
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < crate::PROJECTION_RANK_TOL)
            .map(|(i, _)| i)
            .collect();
        let mut out = DMatrix::zeros(self.degree(), keep.len());
        for (j, &i) in keep.iter().enumerate() {
            out.set_column(j, &vecs.column(i));
        }
        out
    }

    /// Orthonormal basis of the range of the projection.
    pub fn range_basis(&self) -> DMatrix<C64> {
        let (vals, vecs) = crate::linalg::hermitian_eigen(&self.projection);
        let keep: Vec<usize> = vals
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= crate::PROJECTION_RANK_TOL)
            .map(|(i, _)| i)
            .collect();
        let mut out = DMatrix::zeros(self.degree(), keep.len());
        for (j, &i) in keep.iter().enumerate() {
            out.set_column(j, &vecs.column(i));
        }
        out
    }

    /// Largest violation among the type invariants, for validation reports.
    pub fn invariant_defect(&self) -> f64 {
        let mut d = hermiticity_defect(&self.projection);
        d = d.max(idempotency_defect(&self.projection));
        d = d.max(hermiticity_defect(&self.coupling));
        d = d.max(spectral_norm(&(&self.projection * &self.coupling)));
        d = d.max(spectral_norm(&(&self.coupling * &self.projection)));
        d
    }
}
