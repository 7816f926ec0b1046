//! Finite truncations of the bordered coupling operator whose first row and
//! column decay geometrically: the classical example of a bounded coupling
//! at a vertex of unbounded degree.

use nalgebra::DMatrix;

use crate::linalg::{hermiticity_defect, spectral_norm};
use crate::C64;

/// `n×n` truncation: entry `(0,0) = 1/2`, first row/column `1/2^{k+1}`,
/// zero elsewhere.
pub fn bordered_coupling_truncation(n: usize) -> DMatrix<C64> {
    assert!(n >= 1);
    let mut m = DMatrix::zeros(n, n);
    m[(0, 0)] = C64::new(0.5, 0.0);
    for k in 1..n {
        let v = C64::new(0.5f64.powi(k as i32 + 1), 0.0);
        m[(0, k)] = v;
        m[(k, 0)] = v;
    }
    m
}

#[derive(Debug, Clone)]
pub struct BoundedCouplingReport {
    /// `(n, operator norm)` for each truncation size.
    pub norms: Vec<(usize, f64)>,
    pub max_norm: f64,
    pub all_hermitian: bool,
    pub passed: bool,
}

/// Operator norms of all truncations up to `n_max`; they must stay below 1.
pub fn bounded_coupling_truncations(n_max: usize) -> BoundedCouplingReport {
    assert!(n_max >= 2);
    let mut norms = Vec::with_capacity(n_max - 1);
    let mut all_hermitian = true;
    for n in 2..=n_max {
        let m = bordered_coupling_truncation(n);
        all_hermitian &= hermiticity_defect(&m) == 0.0;
        norms.push((n, spectral_norm(&m)));
    }
    let max_norm = norms.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    BoundedCouplingReport {
        norms,
        max_norm,
        all_hermitian,
        passed: all_hermitian && max_norm <= 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_by_two_norm_from_closed_form() {
        // [[1/2, 1/4], [1/4, 0]]: eigenvalues (1 ± √2)/4
        let report = bounded_coupling_truncations(2);
        let expected = (1.0 + 2.0f64.sqrt()) / 4.0;
        assert_relative_eq!(report.norms[0].1, expected, epsilon = 1e-12);
        assert!(report.passed);
    }

    #[test]
    fn norms_stay_below_one_up_to_sixty_four() {
        let report = bounded_coupling_truncations(64);
        assert!(report.all_hermitian);
        assert!(report.max_norm <= 1.0, "max norm {}", report.max_norm);
        assert!(report.passed);
        // norms increase with n but stay bounded
        for w in report.norms.windows(2) {
            assert!(w[1].1 >= w[0].1 - 1e-12);
        }
    }
}
