//! Small dense complex linear-algebra helpers shared across modules.
//!
//! Everything here targets the per-vertex scale (dimensions up to a few
//! dozen), so exact factorizations are used instead of iterative estimates.

use nalgebra::{DMatrix, DVector};

use crate::C64;

/// Hermitian inner product, conjugate-linear in the first argument.
pub fn dotc(a: &DVector<C64>, b: &DVector<C64>) -> C64 {
    a.dotc(b)
}

/// Spectral norm via singular values (exact for these small dimensions).
pub fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let svd = m.clone().svd(false, false);
    svd.singular_values.iter().cloned().fold(0.0, f64::max)
}

/// Hermiticity defect `‖M − M*‖`.
pub fn hermiticity_defect(m: &DMatrix<C64>) -> f64 {
    spectral_norm(&(m - m.adjoint()))
}

/// Idempotency defect `‖M² − M‖`.
pub fn idempotency_defect(m: &DMatrix<C64>) -> f64 {
    spectral_norm(&(m * m - m))
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// the matching orthonormal eigenvector columns.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &se.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Smallest eigenvalue of a Hermitian matrix (0 for the empty matrix).
pub fn hermitian_min_eigenvalue(m: &DMatrix<C64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let se = nalgebra::SymmetricEigen::new(m.clone());
    se.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Orthonormalize the columns of `m` by modified Gram-Schmidt with one
/// re-orthogonalization pass. Columns with norm below `rank_tol` after
/// projection are dropped, so the result has full column rank.
pub fn orthonormalize(m: &DMatrix<C64>, rank_tol: f64) -> DMatrix<C64> {
    let rows = m.nrows();
    let mut basis: Vec<DVector<C64>> = Vec::with_capacity(m.ncols());
    for j in 0..m.ncols() {
        let mut v: DVector<C64> = m.column(j).into();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dotc(&v);
                v -= q * c;
            }
        }
        let norm = v.norm();
        if norm > rank_tol {
            basis.push(v / C64::new(norm, 0.0));
        }
    }
    let mut out = DMatrix::zeros(rows, basis.len());
    for (j, q) in basis.iter().enumerate() {
        out.set_column(j, q);
    }
    out
}

/// Rank of a matrix by singular-value thresholding relative to the largest.
pub fn rank(m: &DMatrix<C64>, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > rel_tol * smax)
        .count()
}

/// Orthonormal basis of the null space of `m` (right singular vectors whose
/// singular value falls below `abs_tol`, or below `abs_tol * σ_max`).
pub fn null_space(m: &DMatrix<C64>, abs_tol: f64) -> DMatrix<C64> {
    let cols = m.ncols();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd with v requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let tol = abs_tol * smax.max(1.0);
    // v_t has min(nrows, ncols) rows; singular directions beyond them have
    // singular value zero and live in the orthogonal complement of the rows.
    let mut keep: Vec<DVector<C64>> = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= tol {
            keep.push(v_t.row(i).adjoint());
        }
    }
    if v_t.nrows() < cols {
        // complement the row space of v_t
        let mut full = DMatrix::zeros(cols, v_t.nrows() + keep.len() + cols);
        for i in 0..v_t.nrows() {
            full.set_column(i, &v_t.row(i).adjoint());
        }
        for (j, k) in keep.iter().enumerate() {
            full.set_column(v_t.nrows() + j, k);
        }
        for j in 0..cols {
            let mut e = DVector::zeros(cols);
            e[j] = C64::new(1.0, 0.0);
            full.set_column(v_t.nrows() + keep.len() + j, &e);
        }
        let q = orthonormalize(&full, 1e-12);
        // first v_t.nrows() columns span the row space; the rest extend it
        let extra = q.columns(v_t.nrows(), q.ncols() - v_t.nrows()).into_owned();
        let mut all = DMatrix::zeros(cols, keep.len() + extra.ncols());
        for (j, k) in keep.iter().enumerate() {
            all.set_column(j, k);
        }
        for j in 0..extra.ncols() {
            all.set_column(keep.len() + j, &extra.column(j).into_owned());
        }
        return orthonormalize(&all, 1e-12);
    }
    let mut out = DMatrix::zeros(cols, keep.len());
    for (j, k) in keep.iter().enumerate() {
        out.set_column(j, k);
    }
    out
}

/// Principal-angle distance between equal-dimensional subspaces given by
/// orthonormal bases: `sin θ_max`, evaluated as the norm of the projection
/// residual `(1 - Q₁Q₁*) Q₂` so that tiny angles don't cancel away.
pub fn subspace_distance(q1: &DMatrix<C64>, q2: &DMatrix<C64>) -> f64 {
    assert_eq!(q1.nrows(), q2.nrows());
    if q1.ncols() != q2.ncols() {
        return 1.0;
    }
    if q1.ncols() == 0 {
        return 0.0;
    }
    let r12 = q2 - q1 * (q1.adjoint() * q2);
    let r21 = q1 - q2 * (q2.adjoint() * q1);
    spectral_norm(&r12).max(spectral_norm(&r21))
}

/// Lowest `k` eigenpairs of the Hermitian-definite pencil `(A, M)` by dense
/// factorization: `M = R*R`, then a Hermitian solve on `R^{-*} A R^{-1}`.
pub fn dense_generalized_eigen(
    a: &DMatrix<C64>,
    m: &DMatrix<C64>,
    k: usize,
) -> Option<(Vec<f64>, Vec<DVector<C64>>)> {
    let n = a.nrows();
    if k > n {
        return None;
    }
    let chol = nalgebra::Cholesky::new(m.clone())?;
    let l = chol.l();
    // B = L^{-1} A L^{-*}
    let mut b = a.clone();
    l.solve_lower_triangular_mut(&mut b);
    let mut bt = b.adjoint();
    l.solve_lower_triangular_mut(&mut bt);
    let sym = bt.adjoint();
    // enforce exact Hermiticity against roundoff before the eigensolve
    let sym = (&sym + sym.adjoint()) * C64::new(0.5, 0.0);
    let (vals, vecs) = hermitian_eigen(&sym);
    let mut out_vals = Vec::with_capacity(k);
    let mut out_vecs = Vec::with_capacity(k);
    for i in 0..k {
        out_vals.push(vals[i]);
        let z = vecs.column(i).into_owned();
        let y = l
            .adjoint()
            .solve_upper_triangular(&z)
            .expect("triangular solve");
        out_vecs.push(y);
    }
    Some((out_vals, out_vecs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(3.0, 0.0), c(-5.0, 0.0)]));
        assert_relative_eq!(spectral_norm(&m), 5.0, max_relative = 1e-12);
    }

    #[test]
    fn hermitian_eigen_sorts_ascending() {
        let m =
            DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert_relative_eq!(vals[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-12);
        for j in 0..2 {
            let v = vecs.column(j).into_owned();
            let mv = &m * &v;
            assert!((mv - v * c(vals[j], 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn null_space_of_projection_complement() {
        // P = diag(1, 0): kernel is span(e2)
        let p = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
        let ns = null_space(&p, 1e-10);
        assert_eq!(ns.ncols(), 1);
        assert!(ns[(0, 0)].norm() < 1e-12);
        assert_relative_eq!(ns[(1, 0)].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn null_space_of_zero_map_is_everything() {
        let z = DMatrix::<C64>::zeros(3, 3);
        let ns = null_space(&z, 1e-10);
        assert_eq!(ns.ncols(), 3);
    }

    #[test]
    fn subspace_distance_detects_rotation() {
        let e1 = DMatrix::from_column_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let rot = DMatrix::from_column_slice(2, 1, &[c(0.5f64.sqrt(), 0.0), c(0.5f64.sqrt(), 0.0)]);
        assert_relative_eq!(subspace_distance(&e1, &e1), 0.0, epsilon = 1e-12);
        assert_relative_eq!(subspace_distance(&e1, &rot), 0.5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn dense_pencil_matches_plain_eigen_for_identity_mass() {
        let a = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(2.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
                c(2.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
                c(2.0, 0.0),
            ],
        );
        let m = DMatrix::identity(3, 3);
        let (vals, vecs) = dense_generalized_eigen(&a, &m, 3).unwrap();
        // closed form: 2 - 2cos(kπ/4)
        for (k, &v) in vals.iter().enumerate() {
            let expected = 2.0 - 2.0 * (std::f64::consts::PI * (k as f64 + 1.0) / 4.0).cos();
            assert_relative_eq!(v, expected, epsilon = 1e-12);
            let r = &a * &vecs[k] - &vecs[k] * c(v, 0.0);
            assert!(r.norm() < 1e-10);
        }
    }
}
