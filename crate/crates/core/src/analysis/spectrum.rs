//! Eigenvalues of the constrained pencil by inertia bisection.
//!
//! Every factorization of `A - μM` exposes how many pencil eigenvalues lie
//! below `μ` (Sylvester's law through the bordered `LDL*`), so the k lowest
//! eigenvalues can be boxed by bisection with exact multiplicity accounting
//! — degenerate clusters are counted, not guessed from Krylov behaviour.
//! Eigenvectors come from shifted inverse iteration with deflation inside
//! clusters. Small problems go through a dense reference path instead.
//!
//! The whole pipeline is deterministic: fixed seeds, fixed iteration
//! schedules, no data-dependent thread scheduling.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::disc::reduced::ReducedPencil;
use crate::disc::DiscreteProblem;
use crate::C64;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("requested {k} eigenvalues but the reduced space has dimension {dim}")]
    KTooLarge { k: usize, dim: usize },
    #[error("eigensolver breakdown: {detail}")]
    SolverBreakdown { detail: String },
}

/// Computed low-lying spectrum with per-pair residuals.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Ascending pencil eigenvalues (with multiplicity).
    pub eigenvalues: Vec<f64>,
    /// `‖A y - λ M y‖₂` for each returned pair, `‖y‖_M = 1`.
    pub residuals: Vec<f64>,
    /// Eigenvectors in reduced coordinates, M-normalized.
    pub eigenvectors: Vec<DVector<C64>>,
    pub reduced_dim: usize,
    /// Largest mesh width of the underlying problem.
    pub mesh_width: f64,
    /// True when truncated infinite edges are present.
    pub truncated: bool,
    /// Residual tolerance the solver enforced.
    pub solver_tol: f64,
}

/// Threshold below which the dense reference path is used.
const DENSE_DIM: usize = 64;
/// Maximum bracket-expansion steps while hunting for the spectrum edges.
const MAX_EXPAND: usize = 200;

/// Lowest `k` eigenpairs of the assembled problem.
pub fn spectrum(problem: &DiscreteProblem, k: usize) -> Result<SpectrumReport, SolveError> {
    let pencil = problem.pencil();
    let dim = pencil.dim();
    if k == 0 || k > dim {
        return Err(SolveError::KTooLarge { k, dim });
    }
    let (eigenvalues, eigenvectors) = if dim <= DENSE_DIM {
        dense_path(pencil, k)?
    } else {
        slicing_path(pencil, k)?
    };

    let a_scale = pencil.a.inf_norm();
    let m_scale = pencil.m.inf_norm();
    let mut residuals = Vec::with_capacity(k);
    let mut solver_tol: f64 = 0.0;
    for (lambda, y) in eigenvalues.iter().zip(&eigenvectors) {
        let r = pencil.a.apply(y) - pencil.m.apply(y) * C64::new(*lambda, 0.0);
        let tol = 1e-7 * (a_scale + lambda.abs() * m_scale) * y.norm();
        solver_tol = solver_tol.max(tol);
        let res = r.norm();
        if res > tol {
            return Err(SolveError::SolverBreakdown {
                detail: format!("residual {res:.3e} above tolerance {tol:.3e} at λ = {lambda}"),
            });
        }
        residuals.push(res);
    }

    Ok(SpectrumReport {
        eigenvalues,
        residuals,
        eigenvectors,
        reduced_dim: dim,
        mesh_width: problem.largest_mesh_width(),
        truncated: problem.has_truncated_edges(),
        solver_tol,
    })
}

fn dense_path(
    pencil: &ReducedPencil,
    k: usize,
) -> Result<(Vec<f64>, Vec<DVector<C64>>), SolveError> {
    let a = pencil.a.to_dense();
    let m = pencil.m.to_dense();
    let (vals, mut vecs) = crate::linalg::dense_generalized_eigen(&a, &m, k).ok_or_else(|| {
        SolveError::SolverBreakdown {
            detail: "mass matrix is not positive definite".into(),
        }
    })?;
    for y in &mut vecs {
        let nrm = (&m * &*y).dotc(y).re.sqrt();
        *y /= C64::new(nrm, 0.0);
    }
    Ok((vals, vecs))
}

fn slicing_path(
    pencil: &ReducedPencil,
    k: usize,
) -> Result<(Vec<f64>, Vec<DVector<C64>>), SolveError> {
    // memoize counts: sorted list of (shift, eigenvalues strictly below)
    let mut memo: Vec<(f64, usize)> = Vec::new();
    let count = |mu: f64, memo: &mut Vec<(f64, usize)>| -> usize {
        if let Some(&(_, c)) = memo.iter().find(|&&(m, _)| m == mu) {
            return c;
        }
        let c = pencil.count_below(mu);
        let at = memo.partition_point(|&(m, _)| m < mu);
        memo.insert(at, (mu, c));
        c
    };

    // bracket the spectrum edge from below
    let mut lo = -1.0;
    let mut expand = 0;
    while count(lo, &mut memo) > 0 {
        lo = lo * 4.0 - 1.0;
        expand += 1;
        if expand > MAX_EXPAND {
            return Err(SolveError::SolverBreakdown {
                detail: "no lower spectral bound found; pencil may be degenerate".into(),
            });
        }
    }
    let mut hi = 1.0;
    expand = 0;
    while count(hi, &mut memo) < k {
        hi = hi * 4.0 + 1.0;
        expand += 1;
        if expand > MAX_EXPAND {
            return Err(SolveError::SolverBreakdown {
                detail: format!("fewer than {k} eigenvalues reachable"),
            });
        }
    }

    // bisect each eigenvalue; memoized counts shrink later brackets
    let mut eigenvalues = Vec::with_capacity(k);
    for j in 1..=k {
        let mut a = memo
            .iter()
            .filter(|&&(_, c)| c < j)
            .map(|&(m, _)| m)
            .fold(lo, f64::max);
        let mut b = memo
            .iter()
            .filter(|&&(_, c)| c >= j)
            .map(|&(m, _)| m)
            .fold(hi, f64::min);
        for _ in 0..200 {
            let width = b - a;
            if width <= 1e-13 * (1.0 + a.abs().max(b.abs())) {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count(mid, &mut memo) >= j {
                b = mid;
            } else {
                a = mid;
            }
        }
        eigenvalues.push(0.5 * (a + b));
    }

    // group into clusters and take eigenvectors by deflated inverse iteration
    let mut eigenvectors: Vec<DVector<C64>> = Vec::with_capacity(k);
    let mut idx = 0;
    while idx < k {
        let lambda = eigenvalues[idx];
        let mut m_count = 1;
        while idx + m_count < k
            && (eigenvalues[idx + m_count] - lambda).abs() <= 1e-10 * (1.0 + lambda.abs())
        {
            m_count += 1;
        }
        let shift = lambda + 1e-10 * (1.0 + lambda.abs());
        let factor = pencil.factor(shift);
        for copy in 0..m_count {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + (idx + copy) as u64);
            let mut y = DVector::from_fn(pencil.dim(), |_, _| {
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let mut accepted = false;
            for _attempt in 0..6 {
                // deflate against everything found so far (M-inner product)
                for prev in &eigenvectors {
                    let overlap = pencil.m.apply(prev).dotc(&y);
                    y -= prev * overlap;
                }
                let nrm = pencil.m.apply(&y).dotc(&y).re.max(1e-300).sqrt();
                y /= C64::new(nrm, 0.0);
                let z = factor.solve(&pencil.m.apply(&y));
                let nrm = pencil.m.apply(&z).dotc(&z).re.max(1e-300).sqrt();
                y = z / C64::new(nrm, 0.0);

                let r = pencil.a.apply(&y) - pencil.m.apply(&y) * C64::new(lambda, 0.0);
                let tol =
                    1e-8 * (pencil.a.inf_norm() + lambda.abs() * pencil.m.inf_norm()) * y.norm();
                if r.norm() <= tol {
                    accepted = true;
                    break;
                }
            }
            if !accepted {
                return Err(SolveError::SolverBreakdown {
                    detail: format!("inverse iteration stalled at λ = {lambda}"),
                });
            }
            eigenvectors.push(y);
        }
        idx += m_count;
    }

    Ok((eigenvalues, eigenvectors))
}
