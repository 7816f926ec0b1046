//! Symplectic toolkit: Lagrangian subspaces of the doubled boundary space.
//!
//! Self-adjoint vertex conditions correspond exactly to subspaces
//! `G ⊂ ℂ^d ⊕ ℂ^d` that are maximal isotropic for the Hermitian symplectic
//! form `Ω((x₁,x₂),(y₁,y₂)) = ⟨x₂,y₁⟩ − ⟨x₁,y₂⟩`. Every such subspace splits
//! as the graph of a Hermitian map over `ker P` together with a purely
//! vertical part `{0} ⊕ ran P`, which is the projection/coupling
//! parametrization used everywhere else in this crate.

use nalgebra::{DMatrix, DVector};

use super::{ConditionError, VertexCondition};
use crate::linalg::{null_space, orthonormalize, subspace_distance};
use crate::{C64, TAU_ALG, TAU_SUBSPACE};

/// Hermitian symplectic form on the doubled space, conjugate-linear in the
/// first argument: `Ω(x, y) = ⟨x₂, y₁⟩ − ⟨x₁, y₂⟩`.
pub fn symplectic_form(x: &DVector<C64>, y: &DVector<C64>) -> C64 {
    assert_eq!(x.len(), y.len());
    assert_eq!(x.len() % 2, 0);
    let d = x.len() / 2;
    let mut top = C64::new(0.0, 0.0);
    let mut bottom = C64::new(0.0, 0.0);
    for i in 0..d {
        top += x[d + i].conj() * y[i];
        bottom += x[i].conj() * y[d + i];
    }
    top - bottom
}

/// Outcome of the Lagrangian test for a candidate basis.
#[derive(Debug, Clone, Copy)]
pub struct LagrangianCheck {
    /// Maximal isotropic: the span is a Lagrangian subspace.
    pub is_lagrangian: bool,
    /// Largest `|Ω(g_i, g_j)|` over basis pairs, including `i = j`.
    pub defect: f64,
    /// Dimension of the span.
    pub dim: usize,
}

/// Test whether the span of the given columns (vectors in `ℂ^d ⊕ ℂ^d`) is a
/// Lagrangian subspace. The defect is evaluated on the columns as provided.
pub fn is_lagrangian(basis: &DMatrix<C64>) -> Result<LagrangianCheck, ConditionError> {
    assert_eq!(basis.nrows() % 2, 0);
    let d = basis.nrows() / 2;
    let ortho = orthonormalize(basis, 1e-12);
    if ortho.ncols() < basis.ncols() {
        return Err(ConditionError::DependentColumns);
    }
    let mut defect: f64 = 0.0;
    for i in 0..basis.ncols() {
        for j in i..basis.ncols() {
            let gi = basis.column(i).into_owned();
            let gj = basis.column(j).into_owned();
            defect = defect.max(symplectic_form(&gi, &gj).norm());
        }
    }
    Ok(LagrangianCheck {
        is_lagrangian: basis.ncols() == d && defect <= TAU_ALG,
        defect,
        dim: basis.ncols(),
    })
}

/// A Lagrangian subspace held as an orthonormal 2d×d basis.
#[derive(Debug, Clone)]
pub struct LagrangianSubspace {
    basis: DMatrix<C64>,
}

impl LagrangianSubspace {
    /// Wrap a candidate basis; columns are orthonormalized, and the span is
    /// required to pass the Lagrangian test.
    pub fn new(basis: DMatrix<C64>) -> Result<Self, ConditionError> {
        let check = is_lagrangian(&basis)?;
        if !check.is_lagrangian {
            return Err(ConditionError::NotLagrangian {
                defect: check.defect,
            });
        }
        Ok(LagrangianSubspace {
            basis: orthonormalize(&basis, 1e-12),
        })
    }

    /// Endpoint-space dimension `d` (the basis is 2d×d).
    pub fn half_dim(&self) -> usize {
        self.basis.nrows() / 2
    }

    pub fn basis(&self) -> &DMatrix<C64> {
        &self.basis
    }

    pub fn distance(&self, other: &LagrangianSubspace) -> f64 {
        subspace_distance(&self.basis, &other.basis)
    }

    /// Recover the projection/coupling pair whose graph is this subspace.
    ///
    /// The vertical part `{p : (0,p) ∈ G}` determines the projection; on its
    /// orthogonal complement the subspace is the graph of the Hermitian
    /// coupling. The round trip back through [`VertexCondition::to_lagrangian`]
    /// is verified and a failure reported as numerical degeneracy.
    pub fn decompose(&self) -> Result<VertexCondition, ConditionError> {
        let d = self.half_dim();
        let top = self.basis.rows(0, d).into_owned();
        let bottom = self.basis.rows(d, d).into_owned();

        // vertical vectors (0, p): coefficients in the null space of the top block
        let vertical_coeff = null_space(&top, 1e-10);
        let p_range = orthonormalize(&(&bottom * &vertical_coeff), 1e-10);
        let projection = &p_range * p_range.adjoint();
        let projection = (&projection + projection.adjoint()) * C64::new(0.5, 0.0);

        // graph part over ker P
        let kernel = null_space(&p_range.adjoint().into_owned(), 1e-10);
        let mut coupling = DMatrix::zeros(d, d);
        if kernel.ncols() > 0 {
            // solve top * c = w by pseudo-inverse for each kernel direction
            let svd = top.clone().svd(true, true);
            for k in 0..kernel.ncols() {
                let w = kernel.column(k).into_owned();
                let c = svd
                    .solve(&w, 1e-12)
                    .map_err(|_| ConditionError::NotLagrangian {
                        defect: f64::INFINITY,
                    })?;
                let y = &bottom * c;
                let ly = &y - &projection * &y;
                coupling += ly * w.adjoint();
            }
            coupling = (&coupling + coupling.adjoint()) * C64::new(0.5, 0.0);
        }

        let vc = VertexCondition::new(projection, coupling)?;
        let distance = self.distance(&vc.to_lagrangian());
        if distance > TAU_SUBSPACE {
            return Err(ConditionError::DecompositionMismatch { distance });
        }
        Ok(vc)
    }
}

impl VertexCondition {
    /// The Lagrangian subspace `{(q, coupling·q + p) : P q = 0, P p = p}`
    /// encoding this condition, with an orthonormalized basis.
    pub fn to_lagrangian(&self) -> LagrangianSubspace {
        let d = self.degree();
        let kernel = self.kernel_basis();
        let range = self.range_basis();
        let mut raw = DMatrix::zeros(2 * d, kernel.ncols() + range.ncols());
        for j in 0..kernel.ncols() {
            let q = kernel.column(j).into_owned();
            let lq = self.coupling() * &q;
            for i in 0..d {
                raw[(i, j)] = q[i];
                raw[(d + i, j)] = lq[i];
            }
        }
        for j in 0..range.ncols() {
            let p = range.column(j).into_owned();
            for i in 0..d {
                raw[(d + i, kernel.ncols() + j)] = p[i];
            }
        }
        LagrangianSubspace {
            basis: orthonormalize(&raw, 1e-12),
        }
    }
}
