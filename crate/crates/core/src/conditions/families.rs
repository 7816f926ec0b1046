//! Named boundary-condition families.

use nalgebra::DMatrix;

use super::{ConditionError, VertexCondition};
use crate::C64;

fn all_ones_projection(d: usize) -> DMatrix<C64> {
    // mean projection J/d onto span(1,...,1)
    DMatrix::from_element(d, d, C64::new(1.0 / d as f64, 0.0))
}

impl VertexCondition {
    /// Dirichlet: every boundary value vanishes (`P = I`, coupling 0).
    pub fn dirichlet(d: usize) -> Result<Self, ConditionError> {
        if d == 0 {
            return Err(ConditionError::InvalidDegree);
        }
        VertexCondition::new(DMatrix::identity(d, d), DMatrix::zeros(d, d))
    }

    /// Neumann: every ingoing derivative vanishes (`P = 0`, coupling 0).
    pub fn neumann(d: usize) -> Result<Self, ConditionError> {
        if d == 0 {
            return Err(ConditionError::InvalidDegree);
        }
        VertexCondition::new(DMatrix::zeros(d, d), DMatrix::zeros(d, d))
    }

    /// Delta-type coupling of strength `alpha`: boundary values continuous
    /// across the vertex, ingoing derivatives summing to `alpha` times the
    /// common value. `P = I − J/d`, coupling `(alpha/d)·J/d`.
    pub fn delta(alpha: f64, d: usize) -> Result<Self, ConditionError> {
        if d == 0 {
            return Err(ConditionError::InvalidDegree);
        }
        let mean = all_ones_projection(d);
        let projection = DMatrix::identity(d, d) - &mean;
        let coupling = mean * C64::new(alpha / d as f64, 0.0);
        VertexCondition::new(projection, coupling)
    }

    /// Kirchhoff (free) coupling: [`VertexCondition::delta`] with `alpha = 0`.
    pub fn kirchhoff(d: usize) -> Result<Self, ConditionError> {
        VertexCondition::delta(0.0, d)
    }

    /// Delta-prime coupling: the sum of boundary values equals `alpha` times
    /// each ingoing derivative. Written in projection/coupling form this is
    /// `P = 0` and coupling `J/alpha`; `alpha = 0` degenerates and is
    /// rejected.
    pub fn delta_prime(alpha: f64, d: usize) -> Result<Self, ConditionError> {
        if d == 0 {
            return Err(ConditionError::InvalidDegree);
        }
        if alpha == 0.0 {
            return Err(ConditionError::ZeroAlpha);
        }
        let coupling = DMatrix::from_element(d, d, C64::new(1.0 / alpha, 0.0));
        VertexCondition::new(DMatrix::zeros(d, d), coupling)
    }
}
