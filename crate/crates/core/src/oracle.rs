//! Independent transcendental eigenvalue oracles for intervals and stars.
//!
//! Every expected eigenvalue used by the verification suites that is not a
//! closed form `(kπ/l)²` comes from these secular equations, built from
//! sine/cosine (or hyperbolic) fundamental solutions and refined by
//! bisection. Nothing here touches the finite-element path, so agreement
//! between the two is a genuine cross-check.

/// Boundary condition at one interval end. `Robin(alpha)` couples the
/// ingoing derivative to the value: `f'(0) = alpha·f(0)` on the left,
/// `-f'(l) = alpha·f(l)` on the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndCondition {
    Dirichlet,
    Neumann,
    Robin(f64),
}

/// Fundamental solutions of `-f'' = λ f` with `c(0)=1, c'(0)=0` and
/// `s(0)=0, s'(0)=1`; returns `(c(t), s(t), c'(t), s'(t))`.
fn fundamental(lambda: f64, t: f64) -> (f64, f64, f64, f64) {
    if lambda > 0.0 {
        let w = lambda.sqrt();
        let (sin, cos) = (w * t).sin_cos();
        if w * t.abs() < 1e-9 {
            let s = t * (1.0 - lambda * t * t / 6.0);
            (cos, s, -lambda * s, cos)
        } else {
            (cos, sin / w, -w * sin, cos)
        }
    } else if lambda < 0.0 {
        let k = (-lambda).sqrt();
        let (ch, sh) = ((k * t).cosh(), (k * t).sinh());
        if k * t.abs() < 1e-9 {
            let s = t * (1.0 - lambda * t * t / 6.0);
            (ch, s, -lambda * s, ch)
        } else {
            (ch, sh / k, k * sh, ch)
        }
    } else {
        (1.0, t, 0.0, 1.0)
    }
}

/// Initial data `(f(0), f'(0))` of the solution family satisfying the left
/// boundary condition.
fn left_data(bc: EndCondition) -> (f64, f64) {
    match bc {
        EndCondition::Dirichlet => (0.0, 1.0),
        EndCondition::Neumann => (1.0, 0.0),
        EndCondition::Robin(alpha) => (1.0, alpha),
    }
}

/// Residual of the right boundary condition for the left-matched solution.
fn secular_residual(lambda: f64, l: f64, left: EndCondition, right: EndCondition) -> f64 {
    let (a, b) = left_data(left);
    let (c, s, dc, ds) = fundamental(lambda, l);
    let value = a * c + b * s;
    let derivative = a * dc + b * ds;
    match right {
        EndCondition::Dirichlet => value,
        EndCondition::Neumann => derivative,
        EndCondition::Robin(alpha) => alpha * value + derivative,
    }
}

fn bisect(mut lo: f64, mut hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (flo < 0.0) == (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Scan `g` over the given grid and refine every sign change.
fn roots_on_grid(grid: &[f64], mut g: impl FnMut(f64) -> f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in grid {
        let gx = g(x);
        if gx == 0.0 {
            roots.push(x);
            prev = None;
            continue;
        }
        if let Some((px, pg)) = prev {
            if (pg < 0.0) != (gx < 0.0) {
                roots.push(bisect(px, x, &mut g));
            }
        }
        prev = Some((x, gx));
    }
    roots
}

/// Grid covering `[λ_lo, λ_hi]`: uniform in `κ = sqrt(-λ)` below zero and in
/// `x = sqrt(λ)` above, which matches the oscillation scales of the secular
/// functions.
fn scan_grid(kappa_max: f64, x_max: f64, l: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    if kappa_max > 0.0 {
        let n = 8000;
        for i in (1..=n).rev() {
            let kappa = kappa_max * i as f64 / n as f64;
            grid.push(-(kappa / l).powi(2) * l * l / (l * l)); // -(kappa)^2 in absolute units
        }
    }
    grid.push(0.0);
    let n = ((x_max / std::f64::consts::PI) * 200.0).ceil() as usize;
    for i in 1..=n.max(10) {
        let x = x_max * i as f64 / n.max(10) as f64;
        grid.push(x * x);
    }
    grid
}

/// Lowest `count` eigenvalues of `-f'' = λ f` on `[0, l]` with the given end
/// conditions, by secular-equation bisection.
pub fn interval_eigenvalues(
    l: f64,
    left: EndCondition,
    right: EndCondition,
    count: usize,
) -> Vec<f64> {
    let alpha_scale = [left, right]
        .iter()
        .map(|bc| match bc {
            EndCondition::Robin(a) => a.abs(),
            _ => 0.0,
        })
        .fold(0.0, f64::max);
    // bound states satisfy κ ≤ ~|alpha| per end; positive roots appear with
    // spacing ~π/l in sqrt(λ)
    let kappa_max = 2.0 * alpha_scale + 2.0;
    let x_max = ((count as f64 + 4.0) * std::f64::consts::PI + alpha_scale * l + 2.0) / l;
    let grid = scan_grid(kappa_max, x_max * l, l)
        .into_iter()
        .map(|g| if g > 0.0 { g / (l * l) } else { g })
        .collect::<Vec<_>>();
    let mut roots = roots_on_grid(&grid, |lambda| secular_residual(lambda, l, left, right));
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-11 * (1.0 + a.abs()));
    roots.truncate(count);
    roots
}

/// Ground state of the star with `n` equal edges of length `l`, delta-type
/// coupling of strength `alpha` at the center, Dirichlet at the leaves.
///
/// The spectrum splits into the symmetric mode (common value at the center)
/// and, for `n ≥ 2`, center-Dirichlet antisymmetric modes at `(kπ/l)²`; the
/// ground state is the smaller candidate.
pub fn star_delta_ground(n: usize, alpha: f64, l: f64) -> f64 {
    assert!(n >= 1);
    // symmetric mode: f(0) = 1, n f'(0) = alpha, Dirichlet residual at l
    let kappa_max = 2.0 * alpha.abs() + 2.0;
    let x_max = 3.0 * std::f64::consts::PI + alpha.abs() * l + 2.0;
    let grid = scan_grid(kappa_max, x_max, l)
        .into_iter()
        .map(|g| if g > 0.0 { g / (l * l) } else { g })
        .collect::<Vec<_>>();
    let sym = roots_on_grid(&grid, |lambda| {
        let (c, s, _, _) = fundamental(lambda, l);
        c + (alpha / n as f64) * s
    });
    let sym_ground = sym.first().copied().unwrap_or(f64::INFINITY);
    if n >= 2 {
        sym_ground.min((std::f64::consts::PI / l).powi(2))
    } else {
        sym_ground
    }
}

/// Ground state of the star with delta-prime coupling of strength
/// `alpha ≠ 0` at the center and Dirichlet leaves. Antisymmetric modes see a
/// Neumann-type center and sit at `((k-1/2)π/l)²` for `n ≥ 2`.
pub fn star_delta_prime_ground(n: usize, alpha: f64, l: f64) -> f64 {
    assert!(n >= 1);
    assert!(alpha != 0.0);
    let kappa_max = 2.0 * (n as f64 / alpha.abs()).max(1.0) + 2.0;
    let x_max = 3.0 * std::f64::consts::PI + 2.0;
    let grid = scan_grid(kappa_max, x_max, l)
        .into_iter()
        .map(|g| if g > 0.0 { g / (l * l) } else { g })
        .collect::<Vec<_>>();
    // symmetric mode: n f(0) = alpha f'(0), i.e. initial data (alpha, n)
    let sym = roots_on_grid(&grid, |lambda| {
        let (c, s, _, _) = fundamental(lambda, l);
        alpha * c + n as f64 * s
    });
    let sym_ground = sym.first().copied().unwrap_or(f64::INFINITY);
    if n >= 2 {
        sym_ground.min((std::f64::consts::PI / (2.0 * l)).powi(2))
    } else {
        sym_ground
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn dirichlet_interval_closed_form() {
        let evs = interval_eigenvalues(1.0, EndCondition::Dirichlet, EndCondition::Dirichlet, 5);
        for (k, &ev) in evs.iter().enumerate() {
            let expected = ((k as f64 + 1.0) * PI).powi(2);
            assert_relative_eq!(ev, expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn neumann_interval_includes_zero_mode() {
        let evs = interval_eigenvalues(2.0, EndCondition::Neumann, EndCondition::Neumann, 4);
        assert!(evs[0].abs() < 1e-12);
        for (k, &ev) in evs.iter().enumerate().skip(1) {
            let expected = (k as f64 * PI / 2.0).powi(2);
            assert_relative_eq!(ev, expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn mixed_dirichlet_neumann_quarter_modes() {
        let evs = interval_eigenvalues(1.0, EndCondition::Neumann, EndCondition::Dirichlet, 3);
        for (k, &ev) in evs.iter().enumerate() {
            let expected = ((k as f64 + 0.5) * PI).powi(2);
            assert_relative_eq!(ev, expected, max_relative = 1e-10);
        }
    }

    #[test]
    fn robin_eigenvalue_satisfies_transcendental_equation() {
        // f'(0) = α f(0), -f'(l) = α f(l), α = 1, l = 1: positive roots solve
        // (λ - α²) sin w = 2 α w cos w with w = sqrt(λ)
        let alpha = 1.0;
        let evs = interval_eigenvalues(
            1.0,
            EndCondition::Robin(alpha),
            EndCondition::Robin(alpha),
            3,
        );
        for &ev in &evs {
            let w = ev.sqrt();
            let residual = (ev - alpha * alpha) * w.sin() - 2.0 * alpha * w * w.cos();
            assert!(
                residual.abs() < 1e-7 * (1.0 + ev.abs()),
                "residual {residual}"
            );
        }
    }

    #[test]
    fn strongly_negative_robin_has_two_bound_states() {
        let evs =
            interval_eigenvalues(1.0, EndCondition::Robin(-4.0), EndCondition::Robin(-4.0), 3);
        assert!(evs[0] < -10.0 && evs[0] > -20.0, "ground {}", evs[0]);
        assert!(evs[1] < 0.0, "first excited {}", evs[1]);
        assert!(evs[2] > 0.0);
        // even/odd split: κ tanh(κ/2) = 4 and κ coth(κ/2) = 4
        let k0 = (-evs[0]).sqrt();
        let k1 = (-evs[1]).sqrt();
        assert!(
            (k0 * (k0 / 2.0).tanh() - 4.0).abs() < 1e-6
                || (k0 * ((k0 / 2.0).cosh() / (k0 / 2.0).sinh()) - 4.0).abs() < 1e-6
        );
        assert!(k0 > k1);
    }

    #[test]
    fn kirchhoff_star_ground_is_quarter_wave() {
        // the symmetric mode of the Kirchhoff star is the Neumann-Dirichlet
        // quarter wave independent of the number of edges
        for n in [2usize, 4, 8, 32] {
            let ground = star_delta_ground(n, 0.0, 1.0);
            assert_relative_eq!(ground, (PI / 2.0).powi(2), max_relative = 1e-10);
        }
    }

    #[test]
    fn two_star_equals_interval_of_double_length() {
        // Kirchhoff transparency: 2-star of unit edges = interval [0,2]
        let ground = star_delta_ground(2, 0.0, 1.0);
        let interval =
            interval_eigenvalues(2.0, EndCondition::Dirichlet, EndCondition::Dirichlet, 1);
        assert_relative_eq!(ground, interval[0], max_relative = 1e-10);
    }

    #[test]
    fn delta_prime_star_ground_is_antisymmetric_for_positive_alpha() {
        for n in [2usize, 8, 32] {
            let ground = star_delta_prime_ground(n, 1.0, 1.0);
            assert_relative_eq!(ground, (PI / 2.0).powi(2), max_relative = 1e-10);
        }
    }

    #[test]
    fn delta_prime_single_edge_matches_robin_oracle() {
        // n = 1: f(0) = α f'(0) is Robin with parameter 1/α at the center
        let alpha = 2.0;
        let ground = star_delta_prime_ground(1, alpha, 1.0);
        let robin = interval_eigenvalues(
            1.0,
            EndCondition::Robin(1.0 / alpha),
            EndCondition::Dirichlet,
            1,
        );
        assert_relative_eq!(ground, robin[0], max_relative = 1e-9);
    }

    #[test]
    fn scaling_invariance_of_robin_family() {
        // lengths × s with α → α/s rescales eigenvalues by 1/s²
        let base = interval_eigenvalues(1.0, EndCondition::Robin(1.5), EndCondition::Robin(1.5), 3);
        let s = 2.5;
        let scaled = interval_eigenvalues(
            s,
            EndCondition::Robin(1.5 / s),
            EndCondition::Robin(1.5 / s),
            3,
        );
        for (b, sc) in base.iter().zip(&scaled) {
            assert_relative_eq!(*sc, b / (s * s), max_relative = 1e-9);
        }
    }
}
