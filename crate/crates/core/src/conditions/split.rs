//! Spectral splitting of couplings into positive and negative parts, and the
//! uniform lower bound entering the semiboundedness characterization.

use nalgebra::DMatrix;

use super::VertexCondition;
use crate::linalg::hermitian_eigen;
use crate::C64;

/// Positive/negative spectral parts of a coupling, with the eigendata they
/// were built from. Eigenvalue zero is assigned to the positive part.
#[derive(Debug, Clone)]
pub struct CouplingSplit {
    pub positive: DMatrix<C64>,
    pub negative: DMatrix<C64>,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<C64>,
}

impl VertexCondition {
    /// Split the coupling into its non-negative and negative spectral parts:
    /// `coupling = positive + negative`, `positive ⪰ 0 ⪰ negative`,
    /// `positive · negative = 0`.
    pub fn split_coupling(&self) -> CouplingSplit {
        let d = self.degree();
        let (vals, vecs) = hermitian_eigen(self.coupling());
        let mut positive = DMatrix::zeros(d, d);
        let mut negative = DMatrix::zeros(d, d);
        for (i, &lambda) in vals.iter().enumerate() {
            let v = vecs.column(i).into_owned();
            let rank_one = &v * v.adjoint() * C64::new(lambda, 0.0);
            if lambda >= 0.0 {
                positive += rank_one;
            } else {
                negative += rank_one;
            }
        }
        CouplingSplit {
            positive,
            negative,
            eigenvalues: vals,
            eigenvectors: vecs,
        }
    }

    /// `max(0, -λ_min)` of the coupling on the admissible subspace: this
    /// vertex's contribution to the uniform negative-part bound.
    pub fn negative_bound(&self) -> f64 {
        let (vals, _) = hermitian_eigen(self.coupling());
        vals.first().map_or(0.0, |&lambda| (-lambda).max(0.0))
    }
}

/// Smallest `S ≥ 0` with `⟨negative-part · x, x⟩ ≥ -S ⟨x, x⟩` across all
/// given conditions. Finite condition lists always produce a finite bound;
/// divergence can only occur along parametric families, which the collapse
/// experiments track separately.
pub fn uniform_negative_bound(conditions: &[VertexCondition]) -> f64 {
    conditions
        .iter()
        .map(|vc| vc.negative_bound())
        .fold(0.0, f64::max)
}
