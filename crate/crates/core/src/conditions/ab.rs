//! Conversion of matrix-pair boundary conditions `A x + B y = 0` into
//! projection/coupling form.
//!
//! A pair `(A, B)` with `rank [A B] = d` and Hermitian `A B*` describes a
//! self-adjoint condition on the boundary data `(x, y)`. The equivalent
//! projection is the orthogonal projection onto `ker B`, and the coupling is
//! recovered from the action of `A` on the co-kernel. The conversion is
//! always re-verified by comparing solution sets on a null-space basis; a
//! numerically singular reduced block is reported instead of regularized.

use nalgebra::{DMatrix, DVector};

use super::{ConditionError, VertexCondition};
use crate::linalg::{hermiticity_defect, spectral_norm};
use crate::{C64, TAU_SOLUTION_SET};

/// Relative singular-value floor below which `B`-directions count as kernel.
const KERNEL_TOL: f64 = 1e-13;
/// Relative singular-value band that is too small to invert reliably.
const SINGULAR_TOL: f64 = 1e-10;

/// Boundary condition in matrix-pair form.
#[derive(Debug, Clone)]
pub struct ABCondition {
    a: DMatrix<C64>,
    b: DMatrix<C64>,
}

impl ABCondition {
    /// Validate the rank and self-adjointness requirements.
    pub fn new(a: DMatrix<C64>, b: DMatrix<C64>) -> Result<Self, ConditionError> {
        let d = a.nrows();
        if a.ncols() != d || b.nrows() != d || b.ncols() != d || d == 0 {
            return Err(ConditionError::ShapeMismatch {
                p: a.nrows(),
                l: b.nrows(),
            });
        }
        let mut block = DMatrix::zeros(d, 2 * d);
        block.view_mut((0, 0), (d, d)).copy_from(&a);
        block.view_mut((0, d), (d, d)).copy_from(&b);
        let scale = spectral_norm(&block).max(f64::MIN_POSITIVE);
        let rank = crate::linalg::rank(&block, 1e-12);
        if rank < d {
            return Err(ConditionError::RankDeficient { rank, d });
        }
        let ab_star = &a * b.adjoint();
        let defect = hermiticity_defect(&ab_star);
        if defect > 1e-10 * scale * scale {
            return Err(ConditionError::NonHermitianABStar { defect });
        }
        Ok(ABCondition { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<C64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<C64> {
        &self.b
    }

    /// Orthonormal basis of the solution set `{(x, y) : A x + B y = 0}`,
    /// which has dimension `d` by the rank condition.
    pub fn solution_basis(&self) -> DMatrix<C64> {
        let d = self.dim();
        let mut block = DMatrix::zeros(d, 2 * d);
        block.view_mut((0, 0), (d, d)).copy_from(&self.a);
        block.view_mut((0, d), (d, d)).copy_from(&self.b);
        crate::linalg::null_space(&block, 1e-12)
    }

    /// Convert to projection/coupling form and verify the solution sets
    /// agree in both directions.
    pub fn to_vertex_condition(&self) -> Result<VertexCondition, ConditionError> {
        let d = self.dim();
        let scale = spectral_norm(&self.a)
            .max(spectral_norm(&self.b))
            .max(f64::MIN_POSITIVE);

        let svd = self.b.clone().svd(true, true);
        let u = svd.u.as_ref().expect("svd u");
        let v_t = svd.v_t.as_ref().expect("svd v_t");
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let mut co_kernel: Vec<usize> = Vec::new();
        for (i, &s) in svd.singular_values.iter().enumerate() {
            if s > SINGULAR_TOL * scale {
                co_kernel.push(i);
            } else if s > KERNEL_TOL * scale.max(smax) {
                return Err(ConditionError::SingularConversion { sigma_min: s });
            }
        }
        let r = co_kernel.len();

        // columns spanning (ker B)^⊥ and ran B
        let mut v_r = DMatrix::zeros(d, r);
        let mut w_r = DMatrix::zeros(d, r);
        for (j, &i) in co_kernel.iter().enumerate() {
            v_r.set_column(j, &v_t.row(i).adjoint());
            w_r.set_column(j, &u.column(i).into_owned());
        }

        let projection = DMatrix::identity(d, d) - &v_r * v_r.adjoint();
        let projection = (&projection + projection.adjoint()) * C64::new(0.5, 0.0);

        // reduced equation: Σ_r (V_r* y) = -W_r* A x, i.e. coupling = -V_r Σ⁻¹ W_r* A V_r V_r*
        let mut coupling = DMatrix::zeros(d, d);
        if r > 0 {
            let mut inv_sigma = DMatrix::zeros(r, r);
            for (j, &i) in co_kernel.iter().enumerate() {
                inv_sigma[(j, j)] = C64::new(-1.0 / svd.singular_values[i], 0.0);
            }
            let small = inv_sigma * w_r.adjoint() * &self.a * &v_r;
            let small = (&small + small.adjoint()) * C64::new(0.5, 0.0);
            coupling = &v_r * small * v_r.adjoint();
        }

        let vc = VertexCondition::new(projection, coupling)?;
        // unit-norm samples against a coupling of norm ‖L‖ cannot match
        // better than roundoff times that norm, so the gate scales with it
        let defect = self.solution_set_defect(&vc);
        let tol = TAU_SOLUTION_SET * (1.0 + spectral_norm(vc.coupling()));
        if defect > tol {
            return Err(ConditionError::ConversionMismatch { defect });
        }
        Ok(vc)
    }

    /// Largest violation when checking the two descriptions against each
    /// other: null-space samples of `[A B]` against the projection/coupling
    /// equations, and the condition's admissible boundary data against
    /// `A x + B y = 0`.
    pub fn solution_set_defect(&self, vc: &VertexCondition) -> f64 {
        let d = self.dim();
        let mut defect: f64 = 0.0;

        let ns = self.solution_basis();
        for j in 0..ns.ncols() {
            let col = ns.column(j);
            let x = DVector::from_fn(d, |i, _| col[i]);
            let y = DVector::from_fn(d, |i, _| col[d + i]);
            let px = vc.projection() * &x;
            let residual = vc.coupling() * &x - (&y - vc.projection() * &y);
            defect = defect.max(px.norm()).max(residual.norm());
        }

        let graph = vc.to_lagrangian();
        let basis = graph.basis();
        for j in 0..basis.ncols() {
            let col = basis.column(j);
            let x = DVector::from_fn(d, |i, _| col[i]);
            let y = DVector::from_fn(d, |i, _| col[d + i]);
            let residual = &self.a * x + &self.b * y;
            defect = defect.max(residual.norm());
        }
        defect
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn neumann_from_zero_a() {
        let ab = ABCondition::new(DMatrix::zeros(2, 2), DMatrix::identity(2, 2)).unwrap();
        let vc = ab.to_vertex_condition().unwrap();
        assert!(vc.projection().norm() < 1e-14);
        assert!(vc.coupling().norm() < 1e-14);
    }

    #[test]
    fn dirichlet_from_zero_b() {
        let ab = ABCondition::new(DMatrix::identity(3, 3), DMatrix::zeros(3, 3)).unwrap();
        let vc = ab.to_vertex_condition().unwrap();
        assert!((vc.projection() - DMatrix::<C64>::identity(3, 3)).norm() < 1e-14);
        assert!(vc.coupling().norm() < 1e-14);
    }

    #[test]
    fn robin_sign_convention() {
        // -alpha x + y = 0 is the Robin condition y = alpha x
        let alpha = 1.0;
        let ab = ABCondition::new(
            DMatrix::from_element(1, 1, c(-alpha)),
            DMatrix::from_element(1, 1, c(1.0)),
        )
        .unwrap();
        let vc = ab.to_vertex_condition().unwrap();
        assert!(vc.projection().norm() < 1e-14);
        assert_relative_eq!(vc.coupling()[(0, 0)].re, alpha, epsilon = 1e-12);
        // matches the degree-1 delta family
        let delta = VertexCondition::delta(alpha, 1).unwrap();
        assert!((vc.coupling() - delta.coupling()).norm() < 1e-12);
    }

    #[test]
    fn hundred_random_solution_samples_satisfy_converted_condition() {
        use rand::Rng;
        let mut rng = crate::random::seeded(0xAB);
        let d = 4;
        let ab = crate::random::random_ab_pair(&mut rng, d, true);
        let vc = ab.to_vertex_condition().unwrap();
        let ns = ab.solution_basis();
        for _ in 0..100 {
            // random unit vector in the solution set
            let mut sample = nalgebra::DVector::zeros(2 * d);
            for j in 0..ns.ncols() {
                let coeff = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                sample += ns.column(j) * coeff;
            }
            if sample.norm() < 1e-6 {
                continue;
            }
            sample /= C64::new(sample.norm(), 0.0);
            let x = nalgebra::DVector::from_fn(d, |i, _| sample[i]);
            let y = nalgebra::DVector::from_fn(d, |i, _| sample[d + i]);
            assert!((vc.projection() * &x).norm() <= 1e-8);
            let residual = vc.coupling() * &x - (&y - vc.projection() * &y);
            assert!(residual.norm() <= 1e-8, "residual {}", residual.norm());
        }
    }

    #[test]
    fn rank_deficient_pair_rejected() {
        let err = ABCondition::new(DMatrix::zeros(2, 2), DMatrix::zeros(2, 2)).unwrap_err();
        assert!(matches!(err, ConditionError::RankDeficient { .. }));
    }

    #[test]
    fn non_hermitian_ab_star_rejected() {
        // A = [[0,1],[0,0]], B = I: AB* = A not Hermitian
        let mut a = DMatrix::zeros(2, 2);
        a[(0, 1)] = c(1.0);
        let err = ABCondition::new(a, DMatrix::identity(2, 2)).unwrap_err();
        assert!(matches!(err, ConditionError::NonHermitianABStar { .. }));
    }
}
