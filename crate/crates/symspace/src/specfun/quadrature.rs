//! Gauss–Jacobi quadrature via the Golub–Welsch symmetric tridiagonal
//! eigenproblem, plus a small adaptive Gauss–Legendre integrator for
//! smooth integrands on finite intervals.

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma;
use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of an n-point quadrature rule on [−1, 1].
///
/// For a Gauss–Jacobi rule with exponents (α, β) the rule integrates
/// f ↦ ∫ f(t)(1−t)^α(1+t)^β dt exactly for polynomials f of degree ≤ 2n−1;
/// the weight function is absorbed into the weights.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Applies the rule: Σ w_i f(x_i).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// n-point Gauss–Jacobi rule for the weight (1−t)^α (1+t)^β on [−1, 1].
///
/// Requires α, β > −1 (integrable weight). Nodes are returned in increasing
/// order; weights are positive and sum to the total mass
/// 2^{α+β+1} B(α+1, β+1).
pub fn gauss_jacobi_rule(n: usize, alpha: f64, beta_exp: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::domain("quadrature rule needs n ≥ 1"));
    }
    if !(alpha > -1.0) || !(beta_exp > -1.0) {
        return Err(Error::domain(format!(
            "gauss_jacobi_rule requires exponents > -1, got alpha={alpha}, beta={beta_exp}"
        )));
    }
    let (al, be) = (alpha, beta_exp);

    // Three-term recurrence coefficients of the monic Jacobi polynomials:
    // diagonal a_k and squared off-diagonal b_k² of the Jacobi matrix.
    let diag = |k: usize| -> f64 {
        if k == 0 {
            (be - al) / (al + be + 2.0)
        } else {
            let kf = k as f64;
            (be * be - al * al) / ((2.0 * kf + al + be) * (2.0 * kf + al + be + 2.0))
        }
    };
    let offdiag_sq = |k: usize| -> f64 {
        let kf = k as f64;
        if k == 1 {
            // cancelled form of the general expression, finite at α+β = −1
            4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be).powi(2) * (3.0 + al + be))
        } else {
            4.0 * kf * (kf + al) * (kf + be) * (kf + al + be)
                / ((2.0 * kf + al + be).powi(2)
                    * (2.0 * kf + al + be + 1.0)
                    * (2.0 * kf + al + be - 1.0))
        }
    };

    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jm[(k, k)] = diag(k);
        if k + 1 < n {
            let b = offdiag_sq(k + 1).sqrt();
            jm[(k, k + 1)] = b;
            jm[(k + 1, k)] = b;
        }
    }

    // total mass μ₀ = ∫ (1−t)^α(1+t)^β dt = 2^{α+β+1} B(α+1, β+1)
    let mu0 = ((al + be + 1.0) * 2.0f64.ln() + log_gamma(al + 1.0) + log_gamma(be + 1.0)
        - log_gamma(al + be + 2.0))
        .exp();

    let eigen = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eigen.eigenvalues[i];
            let first = eigen.eigenvectors[(0, i)];
            (node, mu0 * first * first)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));

    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// n-point Gauss–Legendre rule (Gauss–Jacobi with α = β = 0).
pub fn gauss_legendre_rule(n: usize) -> QuadratureRule {
    gauss_jacobi_rule(n, 0.0, 0.0).expect("legendre exponents are valid")
}

fn gl16() -> &'static QuadratureRule {
    use std::sync::OnceLock;
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(16))
}

fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let rule = gl16();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| half * w * f(mid + half * x))
        .sum()
}

fn adaptive_rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid);
    let right = panel(f, mid, b);
    let err = (left + right - whole).abs();
    // negated comparison so a NaN estimate stops refinement instead of
    // recursing to full depth: splitting cannot reduce an unmeasurable error
    if !(err > tol) || depth == 0 {
        return left + right;
    }
    adaptive_rec(f, a, mid, left, 0.5 * tol, depth - 1)
        + adaptive_rec(f, mid, b, right, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Legendre integration of a smooth function on [a, b].
///
/// Bisects panels until the 16-point estimate is stable to `tol`
/// (absolute). Integrable endpoint steepness is handled by the bisection;
/// genuinely singular integrands should use a Gauss–Jacobi rule instead.
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let g: &dyn Fn(f64) -> f64 = &f;
    let whole = panel(g, lo, hi);
    sign * adaptive_rec(g, lo, hi, whole, tol, 28)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::log_gamma;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn one_point_legendre_is_midpoint() {
        let r = gauss_jacobi_rule(1, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(r.nodes[0], 0.0, epsilon = 1e-14);
        assert_relative_eq!(r.weights[0], 2.0, max_relative = 1e-14);
    }

    #[test]
    fn legendre_exactness_on_monomials() {
        // ∫ t² dt = 2/3 for any rule with n ≥ 2
        for n in 2..6 {
            let r = gauss_legendre_rule(n);
            assert_relative_eq!(r.integrate(|t| t * t), 2.0 / 3.0, max_relative = 1e-13);
        }
        // degree-9 exactness with n = 5: ∫ t⁸ = 2/9
        let r = gauss_legendre_rule(5);
        assert_relative_eq!(r.integrate(|t| t.powi(8)), 2.0 / 9.0, max_relative = 1e-12);
    }

    #[test]
    fn known_legendre_five_point_nodes() {
        // classical values: ±√(5 − 2√(10/7))/3, ±√(5 + 2√(10/7))/3, 0
        let r = gauss_legendre_rule(5);
        let inner = (5.0 - 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
        let outer = (5.0 + 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
        let expect = [-outer, -inner, 0.0, inner, outer];
        for (got, want) in r.nodes.iter().zip(expect) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_relative_eq!(r.weights[2], 128.0 / 225.0, max_relative = 1e-12);
    }

    #[test]
    fn arcsine_rule_is_chebyshev() {
        // α = β = −1/2: nodes cos((2i−1)π/(2n)), all weights π/n, mass π.
        let n = 8;
        let r = gauss_jacobi_rule(n, -0.5, -0.5).unwrap();
        let total: f64 = r.weights.iter().sum();
        assert_relative_eq!(total, PI, max_relative = 1e-12);
        for (i, &x) in r.nodes.iter().enumerate() {
            // nodes ascend; Chebyshev index descends
            let k = n - i;
            let expect = ((2.0 * k as f64 - 1.0) * PI / (2.0 * n as f64)).cos();
            assert_abs_diff_eq!(x, expect, epsilon = 1e-12);
            assert_relative_eq!(r.weights[i], PI / n as f64, max_relative = 1e-11);
        }
    }

    #[test]
    fn jacobi_moments_match_beta_function() {
        // ∫ (1−t)^α(1+t)^β t^m dt computed independently by substituting
        // t = 2u−1, expanding (2u−1)^m, and reducing to Beta integrals:
        //   2^{α+β+1} Σ_i C(m,i) 2^i (−1)^{m−i} B(β+1+i, α+1)
        fn moment_direct(alpha: f64, beta: f64, m: usize) -> f64 {
            let mut total = 0.0;
            for i in 0..=m {
                let binom = crate::specfun::gamma::binom_real(m as f64, i);
                let log_b = log_gamma(beta + 1.0 + i as f64) + log_gamma(alpha + 1.0)
                    - log_gamma(alpha + beta + 2.0 + i as f64);
                total +=
                    binom * 2.0f64.powi(i as i32) * (-1.0f64).powi((m - i) as i32) * log_b.exp();
            }
            2.0f64.powf(alpha + beta + 1.0) * total
        }
        for &(alpha, beta) in &[(0.3, -0.7), (-0.5, 1.5), (2.0, 0.0)] {
            let rule = gauss_jacobi_rule(6, alpha, beta).unwrap();
            for m in 0..=9 {
                let got = rule.integrate(|t| t.powi(m as i32));
                let want = moment_direct(alpha, beta, m);
                assert_relative_eq!(got, want, max_relative = 1e-10, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_integrable_exponents() {
        assert!(gauss_jacobi_rule(4, -1.0, 0.0).is_err());
        assert!(gauss_jacobi_rule(4, 0.0, -1.2).is_err());
        assert!(gauss_jacobi_rule(0, 0.0, 0.0).is_err());
    }

    #[test]
    fn adaptive_integrator_handles_oscillation_and_steepness() {
        let v = integrate_adaptive(|t: f64| (10.0 * t).cos(), 0.0, PI, 1e-12);
        assert_abs_diff_eq!(v, (10.0 * PI).sin() / 10.0, epsilon = 1e-10);
        // steep but integrable: ∫_0^1 1/√t dt = 2 (endpoint refinement)
        let v = integrate_adaptive(|t: f64| t.sqrt().recip(), 1e-12, 1.0, 1e-9);
        assert!((v - 2.0).abs() < 2e-5);
        // orientation: ∫_b^a = −∫_a^b
        let fwd = integrate_adaptive(|t| t * t, 0.0, 2.0, 1e-12);
        let bwd = integrate_adaptive(|t| t * t, 2.0, 0.0, 1e-12);
        assert_relative_eq!(fwd, -bwd, max_relative = 1e-14);
        assert_relative_eq!(fwd, 8.0 / 3.0, max_relative = 1e-12);
    }
}
