//! Complex polynomials with exact integration on intervals.
//!
//! The analytic verification suites (Green's identity, boundary trace
//! inequalities, cubic boundary matching) evaluate integrals of products of
//! low-degree polynomials. Doing this through coefficient arithmetic keeps
//! those checks independent of any mesh or quadrature rule.

use crate::C64;

/// Polynomial `Σ coeffs[k] t^k` over the complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(coeffs: Vec<C64>) -> Self {
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn eval(&self, t: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    pub fn conj(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }
    }

    /// Exact integral over `[0, l]` by monomial antiderivatives.
    pub fn integrate(&self, l: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        let mut power = l;
        for (k, &c) in self.coeffs.iter().enumerate() {
            acc += c * power / (k as f64 + 1.0);
            power *= l;
        }
        acc
    }

    /// Interpolating cubic with value `a` and derivative `b` at `t = 0`,
    /// value `c` and derivative `d` at `t = l`.
    pub fn hermite_cubic(a: C64, b: C64, c: C64, d: C64, l: f64) -> Poly {
        let l2 = l * l;
        let l3 = l2 * l;
        let q2 = -((b * 2.0 + d) / l + (a - c) * 3.0 / l2);
        let q3 = (a - c) * 2.0 / l3 + (b + d) / l2;
        Poly {
            coeffs: vec![a, b, q2, q3],
        }
    }
}

/// `∫₀ˡ conj(p)(t) q(t) dt`, exact.
pub fn inner_product(p: &Poly, q: &Poly, l: f64) -> C64 {
    p.conj().mul(q).integrate(l)
}

/// `∫₀ˡ |p(t)|² dt`, exact.
pub fn norm_sq(p: &Poly, l: f64) -> f64 {
    inner_product(p, p, l).re
}
