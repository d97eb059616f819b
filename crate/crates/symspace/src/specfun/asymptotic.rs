//! Large-degree asymptotic approximants for Jacobi polynomials on the
//! trigonometric scale: the Darboux cosine form (interior of (0, π)) and
//! the two Szegő–Hilb Bessel forms (accurate down to θ ~ 1/N). These serve
//! as independent cross-check oracles for the polynomial evaluator and for
//! the kernel scaling limits; none of them feeds production code paths.

use crate::error::{Error, Result};
use crate::specfun::bessel::bessel_j;
use crate::specfun::gamma::log_gamma;
use std::f64::consts::PI;

/// Effective degree N′ = N + (A+B+1)/2 shared by all three approximants.
fn n_prime(n: usize, a: f64, b: f64) -> f64 {
    n as f64 + 0.5 * (a + b + 1.0)
}

/// Darboux main term for P_N^{(A,B)}(cos θ):
/// (πN)^{−1/2} (sin θ/2)^{−A−1/2} (cos θ/2)^{−B−1/2} cos(N′θ + γ),
/// γ = −(A + 1/2)π/2. Error O(N^{−3/2}) uniformly on c/N ≤ θ ≤ π − ε.
pub fn darboux_approx(n: usize, a: f64, b: f64, theta: f64) -> f64 {
    assert!(theta > 0.0 && theta < PI, "theta must lie in (0, π)");
    let np = n_prime(n, a, b);
    let gamma = -(a + 0.5) * PI / 2.0;
    let s = (0.5 * theta).sin();
    let c = (0.5 * theta).cos();
    (PI * n as f64).sqrt().recip() * s.powf(-a - 0.5) * c.powf(-b - 0.5) * (np * theta + gamma).cos()
}

/// First Szegő–Hilb main term (requires A > −1), as an approximation to the
/// weighted polynomial (sin θ/2)^A (cos θ/2)^B P_N^{(A,B)}(cos θ):
/// N^{−A} Γ(N+A+1)/N! · √(θ/sin θ) · J_A(N′θ).
///
/// Returned here solved back for P_N itself so that all three approximants
/// share the same target quantity.
pub fn hilb_approx(n: usize, a: f64, b: f64, theta: f64) -> Result<f64> {
    if !(a > -1.0) {
        return Err(Error::domain(format!(
            "hilb_approx requires A > -1 (got A={a}); use hilb2_approx"
        )));
    }
    assert!(theta > 0.0 && theta < PI, "theta must lie in (0, π)");
    let np = n_prime(n, a, b);
    let nf = n as f64;
    let prefactor = (log_gamma(nf + a + 1.0) - log_gamma(nf + 1.0) - a * nf.ln()).exp();
    let s = (0.5 * theta).sin();
    let c = (0.5 * theta).cos();
    let weighted = prefactor * (theta / theta.sin()).sqrt() * bessel_j(a, np * theta);
    Ok(weighted * s.powf(-a) * c.powf(-b))
}

/// Second Szegő main term, valid for arbitrary real A:
/// P_N^{(A,B)}(cos θ) ≈ (sin θ/2)^{−A} (cos θ/2)^{−B} √(θ/sin θ) J_A(N′θ),
/// with error θ^{1/2−A}O(N^{−3/2}) on c/N ≤ θ ≤ π − ε.
pub fn hilb2_approx(n: usize, a: f64, b: f64, theta: f64) -> f64 {
    assert!(theta > 0.0 && theta < PI, "theta must lie in (0, π)");
    let np = n_prime(n, a, b);
    let s = (0.5 * theta).sin();
    let c = (0.5 * theta).cos();
    s.powf(-a) * c.powf(-b) * (theta / theta.sin()).sqrt() * bessel_j(a, np * theta)
}
