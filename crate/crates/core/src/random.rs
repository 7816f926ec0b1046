//! Seeded generators for randomized verification suites.
//!
//! All suites draw through a counter-based generator from explicit seeds, so
//! every randomized check in this crate and its consumers replays exactly.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::conditions::{ABCondition, VertexCondition};
use crate::graph::{EdgeLength, EdgeSpec, GraphSpec};
use crate::linalg::orthonormalize;
use crate::C64;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(rng: &mut impl Rng, complex: bool) -> C64 {
    if complex {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    } else {
        C64::new(rng.gen_range(-1.0..1.0), 0.0)
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, complex: bool) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| entry(rng, complex))
}

/// Haar-ish unitary (orthogonal when `complex` is false) via orthonormalized
/// random columns; retried in the measure-zero rank-deficient case.
pub fn random_unitary(rng: &mut impl Rng, d: usize, complex: bool) -> DMatrix<C64> {
    loop {
        let q = orthonormalize(&random_matrix(rng, d, d, complex), 1e-8);
        if q.ncols() == d {
            return q;
        }
    }
}

/// Random Hermitian matrix with spectrum inside `[-bound, bound]`.
pub fn random_hermitian_bounded(
    rng: &mut impl Rng,
    d: usize,
    bound: f64,
    complex: bool,
) -> DMatrix<C64> {
    let g = random_matrix(rng, d, d, complex);
    let h = (&g + g.adjoint()) * C64::new(0.5, 0.0);
    let norm = crate::linalg::spectral_norm(&h);
    if norm <= bound || norm == 0.0 {
        h
    } else {
        h * C64::new(bound / norm, 0.0)
    }
}

/// Random Hermitian positive-semidefinite matrix with norm at most `bound`.
pub fn random_psd_bounded(rng: &mut impl Rng, d: usize, bound: f64, complex: bool) -> DMatrix<C64> {
    let g = random_matrix(rng, d, d, complex);
    let h = &g * g.adjoint();
    let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    let norm = crate::linalg::spectral_norm(&h);
    if norm <= bound || norm == 0.0 {
        h
    } else {
        h * C64::new(bound / norm, 0.0)
    }
}

/// Random orthogonal projection of uniformly drawn rank `0..=d`.
pub fn random_projection(rng: &mut impl Rng, d: usize, complex: bool) -> DMatrix<C64> {
    let rank = rng.gen_range(0..=d);
    if rank == 0 {
        return DMatrix::zeros(d, d);
    }
    loop {
        let q = orthonormalize(&random_matrix(rng, d, rank, complex), 1e-8);
        if q.ncols() == rank {
            let p = &q * q.adjoint();
            return (&p + p.adjoint()) * C64::new(0.5, 0.0);
        }
    }
}

/// Random valid vertex condition: random projection plus a Hermitian
/// coupling compressed onto its complement, spectrum within `[-3, 3]`.
pub fn random_vertex_condition(rng: &mut impl Rng, d: usize, complex: bool) -> VertexCondition {
    let p = random_projection(rng, d, complex);
    let compl = DMatrix::identity(d, d) - &p;
    let h = random_hermitian_bounded(rng, d, 3.0, complex);
    let l = &compl * h * &compl;
    let l = (&l + l.adjoint()) * C64::new(0.5, 0.0);
    VertexCondition::new(p, l).expect("constructed condition is valid")
}

/// Random condition whose coupling is positive semidefinite (no negative
/// part, `S = 0`).
pub fn random_psd_vertex_condition(rng: &mut impl Rng, d: usize, complex: bool) -> VertexCondition {
    let p = random_projection(rng, d, complex);
    let compl = DMatrix::identity(d, d) - &p;
    let h = random_psd_bounded(rng, d, 3.0, complex);
    let l = &compl * h * &compl;
    let l = (&l + l.adjoint()) * C64::new(0.5, 0.0);
    VertexCondition::new(p, l).expect("constructed condition is valid")
}

/// Random self-adjoint matrix pair `A = M(U - 1)`, `B = iM(U + 1)` with `U`
/// unitary and `M` invertible: full rank with Hermitian `A B*` by
/// construction. Draws where `B` is nearly singular (a unitary eigenphase
/// close to π, i.e. an almost-Dirichlet direction) are rejected so the
/// converted coupling stays on a scale where absolute solution-set
/// comparisons are meaningful.
pub fn random_ab_pair(rng: &mut impl Rng, d: usize, complex: bool) -> ABCondition {
    loop {
        let u = random_unitary(rng, d, complex);
        // well-conditioned invertible factor: unitary sandwich of a diagonal
        let q1 = random_unitary(rng, d, complex);
        let q2 = random_unitary(rng, d, complex);
        let diag = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(rng.gen_range(0.5..2.0), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let m = q1 * diag * q2.adjoint();
        let eye = DMatrix::<C64>::identity(d, d);
        let a = &m * (&u - &eye);
        let b = (&m * (&u + &eye)) * C64::new(0.0, 1.0);
        let svd = b.clone().svd(false, false);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let smin = svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let scale = crate::linalg::spectral_norm(&a).max(smax);
        if smin > 1e-3 * scale {
            return ABCondition::new(a, b).expect("constructed pair is self-adjoint and full rank");
        }
    }
}

/// Random connected multigraph (loops and parallel edges allowed) with at
/// most `max_edges` edges and lengths in `[len_lo, len_hi]`.
pub fn random_graph_spec(
    rng: &mut impl Rng,
    max_edges: usize,
    len_lo: f64,
    len_hi: f64,
) -> GraphSpec {
    assert!(max_edges >= 1);
    let n_v = rng.gen_range(1..=5usize.min(max_edges + 1));
    let vertices: Vec<String> = (0..n_v).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    // spanning tree keeps the graph connected
    for i in 1..n_v {
        let j = rng.gen_range(0..i);
        edges.push(EdgeSpec {
            id: format!("e{}", edges.len()),
            from: vertices[j].clone(),
            to: Some(vertices[i].clone()),
            length: EdgeLength::Finite(rng.gen_range(len_lo..len_hi)),
        });
    }
    let extra = rng.gen_range(if n_v == 1 { 1 } else { 0 }..=(max_edges - edges.len()).max(1));
    for _ in 0..extra {
        if edges.len() >= max_edges {
            break;
        }
        let from = rng.gen_range(0..n_v);
        let to = rng.gen_range(0..n_v);
        edges.push(EdgeSpec {
            id: format!("e{}", edges.len()),
            from: vertices[from].clone(),
            to: Some(vertices[to].clone()),
            length: EdgeLength::Finite(rng.gen_range(len_lo..len_hi)),
        });
    }
    GraphSpec { vertices, edges }
}
