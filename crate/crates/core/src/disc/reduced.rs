//! Reduced (constraint-eliminated) matrices and their bordered factorization.
//!
//! After eliminating vertex constraints through per-vertex kernel bases, the
//! stiffness and mass matrices act on `interior ⊕ border` coordinates:
//! interiors carry the per-edge tridiagonal couplings, the border collects
//! one coefficient block per vertex. Factorizations exploit this shape — a
//! Hermitian `LDL*` sweep over the tridiagonal part plus a dense Schur
//! complement on the border — which also yields the inertia (eigenvalue
//! count below a shift) by Sylvester's law. That count drives the bisection
//! eigensolver in `analysis::spectrum`.

use nalgebra::{DMatrix, DVector};

use crate::C64;

/// Hermitian matrix in interior ⊕ border coordinates.
#[derive(Debug, Clone)]
pub struct ReducedMatrix {
    pub n_interior: usize,
    pub n_border: usize,
    /// Interior diagonal.
    pub diag: Vec<f64>,
    /// `off[i]` couples interiors `i` and `i+1`; zero across edge boundaries.
    pub off: Vec<f64>,
    /// Per border column: sparse interior couplings.
    pub coupling: Vec<Vec<(usize, C64)>>,
    /// Dense Hermitian border block.
    pub border: DMatrix<C64>,
}

impl ReducedMatrix {
    pub fn zeros(n_interior: usize, n_border: usize) -> Self {
        ReducedMatrix {
            n_interior,
            n_border,
            diag: vec![0.0; n_interior],
            off: vec![0.0; n_interior.saturating_sub(1)],
            coupling: vec![Vec::new(); n_border],
            border: DMatrix::zeros(n_border, n_border),
        }
    }

    pub fn dim(&self) -> usize {
        self.n_interior + self.n_border
    }

    pub fn apply(&self, x: &DVector<C64>) -> DVector<C64> {
        let n = self.n_interior;
        let mut y = DVector::zeros(self.dim());
        for i in 0..n {
            let mut acc = x[i] * self.diag[i];
            if i > 0 {
                acc += x[i - 1] * self.off[i - 1];
            }
            if i + 1 < n {
                acc += x[i + 1] * self.off[i];
            }
            y[i] = acc;
        }
        for (j, col) in self.coupling.iter().enumerate() {
            let xb = x[n + j];
            let mut acc = C64::new(0.0, 0.0);
            for &(i, v) in col {
                y[i] += v * xb;
                acc += v.conj() * x[i];
            }
            y[n + j] += acc;
        }
        if self.n_border > 0 {
            let xb = x.rows(n, self.n_border).into_owned();
            let yb = &self.border * xb;
            for j in 0..self.n_border {
                y[n + j] += yb[j];
            }
        }
        y
    }

    /// Dense expansion, for small cross-checks and matrix dumps.
    pub fn to_dense(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..self.n_interior {
            m[(i, i)] = C64::new(self.diag[i], 0.0);
            if i + 1 < self.n_interior {
                m[(i, i + 1)] = C64::new(self.off[i], 0.0);
                m[(i + 1, i)] = C64::new(self.off[i], 0.0);
            }
        }
        for (j, col) in self.coupling.iter().enumerate() {
            for &(i, v) in col {
                m[(i, self.n_interior + j)] = v;
                m[(self.n_interior + j, i)] = v.conj();
            }
        }
        for a in 0..self.n_border {
            for b in 0..self.n_border {
                m[(self.n_interior + a, self.n_interior + b)] = self.border[(a, b)];
            }
        }
        m
    }

    /// Infinity-norm estimate used to scale solver tolerances.
    pub fn inf_norm(&self) -> f64 {
        let mut rows = vec![0.0f64; self.dim()];
        for i in 0..self.n_interior {
            rows[i] += self.diag[i].abs();
            if i + 1 < self.n_interior {
                rows[i] += self.off[i].abs();
                rows[i + 1] += self.off[i].abs();
            }
        }
        for (j, col) in self.coupling.iter().enumerate() {
            for &(i, v) in col {
                rows[i] += v.norm();
                rows[self.n_interior + j] += v.norm();
            }
        }
        for a in 0..self.n_border {
            for b in 0..self.n_border {
                rows[self.n_interior + a] += self.border[(a, b)].norm();
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    }
}

/// Hermitian pencil `(a, m)` in reduced coordinates; `m` is positive
/// definite whenever the mass matrix came from a valid mesh.
#[derive(Debug, Clone)]
pub struct ReducedPencil {
    pub a: ReducedMatrix,
    pub m: ReducedMatrix,
}

impl ReducedPencil {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Factor `a - shift·m`.
    pub fn factor(&self, shift: f64) -> BorderedFactor {
        BorderedFactor::new(self, shift)
    }

    /// Number of pencil eigenvalues strictly below `shift`.
    pub fn count_below(&self, shift: f64) -> usize {
        self.factor(shift).negative_count
    }

    pub fn shifted_apply(&self, shift: f64, x: &DVector<C64>) -> DVector<C64> {
        self.a.apply(x) - self.m.apply(x) * C64::new(shift, 0.0)
    }
}

/// `LDL*`-style factorization of `a - shift·m` split into the tridiagonal
/// interior part and the dense Schur complement on the border.
pub struct BorderedFactor {
    n_interior: usize,
    n_border: usize,
    /// Real pivots of the Hermitian tridiagonal factorization.
    pivots: Vec<f64>,
    /// Subdiagonal multipliers.
    multipliers: Vec<f64>,
    /// Shifted border coupling columns.
    b_cols: Vec<Vec<(usize, C64)>>,
    /// Eigendecomposition of the Schur complement (robust for indefinite
    /// shifts and exposes the border inertia directly).
    schur_values: Vec<f64>,
    schur_vectors: DMatrix<C64>,
    pub negative_count: usize,
}

/// Floor applied to tiny Schur eigenvalues during solves.
const PIVOT_FLOOR: f64 = 1e-300;

impl BorderedFactor {
    fn new(pencil: &ReducedPencil, shift: f64) -> Self {
        let n = pencil.a.n_interior;
        let nb = pencil.a.n_border;
        // relative pivot floor in the style of the classical Sturm count:
        // a vanishing pivot is replaced by a tiny negative value on the
        // scale of its row, which keeps the recurrence finite and the count
        // off by at most one right at an exact hit
        let mut scale: f64 = 0.0;
        for i in 0..n {
            let mut row = (pencil.a.diag[i] - shift * pencil.m.diag[i]).abs();
            if i > 0 {
                row += (pencil.a.off[i - 1] - shift * pencil.m.off[i - 1]).abs();
            }
            if i + 1 < n {
                row += (pencil.a.off[i] - shift * pencil.m.off[i]).abs();
            }
            scale = scale.max(row);
        }
        let floor = (f64::EPSILON * scale).max(PIVOT_FLOOR);
        let mut pivots: Vec<f64> = vec![0.0; n];
        let mut multipliers: Vec<f64> = vec![0.0; n.saturating_sub(1)];
        let mut negative = 0usize;
        for i in 0..n {
            let mut d = pencil.a.diag[i] - shift * pencil.m.diag[i];
            if i > 0 {
                let off = pencil.a.off[i - 1] - shift * pencil.m.off[i - 1];
                let l = off / pivots[i - 1];
                multipliers[i - 1] = l;
                d -= l * off;
            }
            if d.abs() < floor {
                d = -floor;
            }
            if d < 0.0 {
                negative += 1;
            }
            pivots[i] = d;
        }

        // shifted border columns and block
        let mut b_cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); nb];
        for j in 0..nb {
            let mut entries: std::collections::BTreeMap<usize, C64> =
                std::collections::BTreeMap::new();
            for &(i, v) in &pencil.a.coupling[j] {
                *entries.entry(i).or_insert(C64::new(0.0, 0.0)) += v;
            }
            for &(i, v) in &pencil.m.coupling[j] {
                *entries.entry(i).or_insert(C64::new(0.0, 0.0)) -= v * shift;
            }
            b_cols[j] = entries.into_iter().collect();
        }
        let border = &pencil.a.border - &pencil.m.border * C64::new(shift, 0.0);

        // Schur complement S = D - B* T^{-1} B, one column at a time
        let mut schur = border;
        for j in 0..nb {
            if b_cols[j].is_empty() {
                continue;
            }
            let mut w = DVector::zeros(n);
            for &(i, v) in &b_cols[j] {
                w[i] = v;
            }
            tridiag_solve(&pivots, &multipliers, &mut w);
            for m_idx in 0..nb {
                let mut acc = C64::new(0.0, 0.0);
                for &(i, v) in &b_cols[m_idx] {
                    acc += v.conj() * w[i];
                }
                schur[(m_idx, j)] -= acc;
            }
        }
        let schur = (&schur + schur.adjoint()) * C64::new(0.5, 0.0);
        let (schur_values, schur_vectors) = crate::linalg::hermitian_eigen(&schur);
        negative += schur_values.iter().filter(|&&v| v < 0.0).count();

        BorderedFactor {
            n_interior: n,
            n_border: nb,
            pivots,
            multipliers,
            b_cols,
            schur_values,
            schur_vectors,
            negative_count: negative,
        }
    }

    /// Solve `(a - shift·m) y = r` in place.
    pub fn solve(&self, r: &DVector<C64>) -> DVector<C64> {
        let n = self.n_interior;
        let nb = self.n_border;
        let mut u = r.rows(0, n).into_owned();
        tridiag_solve(&self.pivots, &self.multipliers, &mut u);

        let mut y = DVector::zeros(n + nb);
        if nb > 0 {
            let mut rhs_b = DVector::zeros(nb);
            for j in 0..nb {
                let mut acc = r[n + j];
                for &(i, v) in &self.b_cols[j] {
                    acc -= v.conj() * u[i];
                }
                rhs_b[j] = acc;
            }
            // S^{-1} via eigendecomposition with tiny-eigenvalue protection
            let coeff = self.schur_vectors.adjoint() * rhs_b;
            let mut scaled = DVector::zeros(nb);
            for j in 0..nb {
                let lam = if self.schur_values[j].abs() < PIVOT_FLOOR {
                    -PIVOT_FLOOR
                } else {
                    self.schur_values[j]
                };
                scaled[j] = coeff[j] / lam;
            }
            let yb = &self.schur_vectors * scaled;

            // back-substitute the border into the interior
            let mut rhs_i = r.rows(0, n).into_owned();
            for j in 0..nb {
                for &(i, v) in &self.b_cols[j] {
                    rhs_i[i] -= v * yb[j];
                }
            }
            tridiag_solve(&self.pivots, &self.multipliers, &mut rhs_i);
            for i in 0..n {
                y[i] = rhs_i[i];
            }
            for j in 0..nb {
                y[n + j] = yb[j];
            }
        } else {
            for i in 0..n {
                y[i] = u[i];
            }
        }
        y
    }
}

/// In-place solve of the Hermitian tridiagonal `L D L*` system.
fn tridiag_solve(pivots: &[f64], multipliers: &[f64], x: &mut DVector<C64>) {
    let n = pivots.len();
    for i in 1..n {
        let l = multipliers[i - 1];
        let prev = x[i - 1];
        x[i] -= prev * l;
    }
    for i in 0..n {
        x[i] /= pivots[i];
    }
    for i in (0..n.saturating_sub(1)).rev() {
        let next = x[i + 1];
        x[i] -= next * multipliers[i];
    }
}
