//! Log-Gamma, reciprocal Gamma, and binomial coefficients with real upper
//! argument. All kernel normalization constants are formed from ratios of
//! Gamma values; working in log space with explicit signs keeps them finite
//! and accurate for the negative non-integer exponents the ensembles use.

use std::f64::consts::PI;

/// Natural logarithm of |Γ(x)| together with the sign of Γ(x).
///
/// Defined for every non-pole real `x`; at poles (`x = 0, −1, −2, …`)
/// the log is `+∞`.
pub fn log_gamma_sign(x: f64) -> (f64, f64) {
    let (lg, sign) = libm::lgamma_r(x);
    (lg, sign as f64)
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "log_gamma requires x > 0, got {x}");
    libm::lgamma_r(x).0
}

/// sin(πx) evaluated with argument reduction against the nearest integer,
/// so it is accurate (and exactly zero) near integer x.
pub fn sin_pi(x: f64) -> f64 {
    let m = x.round();
    let r = x - m;
    let s = (PI * r).sin();
    // sin(π(m+r)) = (−1)^m sin(πr)
    if (m as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Reciprocal Gamma function 1/Γ(x), entire in x (zero at the poles of Γ).
pub fn rgamma(x: f64) -> f64 {
    if x > 0.0 {
        (-libm::lgamma_r(x).0).exp()
    } else {
        // Reflection: 1/Γ(x) = Γ(1−x)·sin(πx)/π.
        let s = sin_pi(x);
        if s == 0.0 {
            return 0.0;
        }
        let (lg, sign) = libm::lgamma_r(1.0 - x);
        sign as f64 * s / PI * lg.exp()
    }
}

/// Product of Gamma values expressed as Π Γ(num) / Π Γ(den), computed in
/// log space with signs. Any argument at a pole of a numerator Gamma makes
/// the result ±∞; a pole in the denominator makes it 0.
pub fn gamma_product(numerators: &[f64], denominators: &[f64]) -> f64 {
    let mut log_sum = 0.0;
    let mut sign = 1.0;
    for &x in numerators {
        let (lg, s) = log_gamma_sign(x);
        log_sum += lg;
        sign *= s;
    }
    for &x in denominators {
        let (lg, s) = log_gamma_sign(x);
        log_sum -= lg;
        sign *= s; // s ∈ {±1}; dividing by it is the same as multiplying
    }
    sign * log_sum.exp()
}

/// Binomial coefficient C(z, k) = z(z−1)⋯(z−k+1)/k! for real `z` and
/// nonnegative integer `k`, via the product form
/// C(z, k) = Π_{i=1..k} (z − k + i)/i.
///
/// Unlike a Gamma-ratio evaluation this is analytic in `z` (no pole
/// cancellation needed): e.g. C(A+N, N) vanishes smoothly as A → −1.
pub fn binom_real(z: f64, k: usize) -> f64 {
    let mut p = 1.0;
    for i in 1..=k {
        p *= (z - k as f64 + i as f64) / i as f64;
    }
    p
}
