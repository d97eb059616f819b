//! Scalar special functions underlying the correlation kernels:
//! log-Gamma utilities, Jacobi polynomials, Bessel functions of the first
//! kind (with primitives and the sine integral), Gauss–Jacobi quadrature,
//! and the Darboux/Hilb asymptotic approximants used as cross-check oracles.

pub mod asymptotic;
pub mod bessel;
pub mod gamma;
pub mod jacobi;
pub mod quadrature;

pub use asymptotic::{darboux_approx, hilb2_approx, hilb_approx};
pub use bessel::{bessel_j, bessel_j_primitive, sine_integral};
pub use gamma::{binom_real, gamma_product, log_gamma, rgamma};
pub use jacobi::{jacobi_pair, jacobi_poly, jacobi_poly_deriv};
pub use quadrature::{gauss_jacobi_rule, gauss_legendre_rule, integrate_adaptive, QuadratureRule};
