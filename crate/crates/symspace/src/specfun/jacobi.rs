//! Jacobi polynomials P_n^{(A,B)} for real A, B > −2.
//!
//! Evaluation strategy: the explicit binomial sum for small degree
//! (n ≤ 4, where it is exact and cheap and where the three-term recurrence
//! coefficients can degenerate for A+B ∈ {−2, −3}), and the standard
//! three-term recurrence seeded from the sum for n ≥ 5 (the recurrence
//! denominators 2n(n+A+B)(2n+A+B−2) are bounded away from zero there for
//! all A, B > −2). The binomial sum doubles as an independent oracle at
//! moderate degree in the tests.

use super::gamma::binom_real;

/// Largest degree evaluated by the explicit binomial sum; beyond this the
/// three-term recurrence is used (its coefficients are regular for n ≥ 5
/// whenever A, B > −2).
const SUM_DEGREE_MAX: usize = 4;

fn check_params(a: f64, b: f64) {
    assert!(
        a > -2.0 && b > -2.0 && a.is_finite() && b.is_finite(),
        "jacobi polynomials require A, B > -2, got A={a}, B={b}"
    );
}

/// Explicit binomial-sum evaluation
/// P_n^{(A,B)}(x) = Σ_{s=0}^n C(n+A, n−s) C(n+B, s) ((x−1)/2)^s ((x+1)/2)^{n−s}.
///
/// Exact for any real A, B, but catastrophically cancelling at large n;
/// only used directly for n ≤ 4 and as a test oracle at moderate n.
pub(crate) fn jacobi_poly_sum(n: usize, a: f64, b: f64, x: f64) -> f64 {
    let minus = 0.5 * (x - 1.0);
    let plus = 0.5 * (x + 1.0);
    let mut total = 0.0;
    for s in 0..=n {
        total += binom_real(n as f64 + a, n - s)
            * binom_real(n as f64 + b, s)
            * minus.powi(s as i32)
            * plus.powi((n - s) as i32);
    }
    total
}

/// Evaluates (P_n^{(A,B)}(x), P_{n−1}^{(A,B)}(x)) in one pass.
///
/// The Christoffel–Darboux kernel needs consecutive degrees at every call,
/// so the pair is the primitive operation. `n = 0` returns (1, 0).
pub fn jacobi_pair(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    check_params(a, b);
    if n == 0 {
        return (1.0, 0.0);
    }
    if n <= SUM_DEGREE_MAX {
        return (jacobi_poly_sum(n, a, b, x), jacobi_poly_sum(n - 1, a, b, x));
    }
    // Seed at degrees 3, 4 from the sum, then recur upward. For k ≥ 5 and
    // A+B > −4, every factor of c1 = 2k(k+A+B)(2k+A+B−2) is positive.
    let mut p_prev = jacobi_poly_sum(SUM_DEGREE_MAX - 1, a, b, x);
    let mut p_curr = jacobi_poly_sum(SUM_DEGREE_MAX, a, b, x);
    for k in (SUM_DEGREE_MAX + 1)..=n {
        let kf = k as f64;
        let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c2 = (2.0 * kf + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * kf + a + b - 2.0) * (2.0 * kf + a + b - 1.0) * (2.0 * kf + a + b);
        let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let p_next = ((c2 + c3 * x) * p_curr - c4 * p_prev) / c1;
        p_prev = p_curr;
        p_curr = p_next;
    }
    (p_curr, p_prev)
}

/// Jacobi polynomial P_n^{(A,B)}(x) for real A, B > −2.
pub fn jacobi_poly(n: usize, a: f64, b: f64, x: f64) -> f64 {
    jacobi_pair(n, a, b, x).0
}

/// Derivative d/dx P_n^{(A,B)}(x) = (n+A+B+1)/2 · P_{n−1}^{(A+1,B+1)}(x).
pub fn jacobi_poly_deriv(n: usize, a: f64, b: f64, x: f64) -> f64 {
    check_params(a, b);
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + a + b + 1.0) * jacobi_poly(n - 1, a + 1.0, b + 1.0, x)
}
