//! Random-matrix ensembles on compact symmetric spaces.
//!
//! This crate provides an end-to-end numerical realization of the classical
//! compact matrix ensembles and their eigenvalue statistics:
//!
//! * **Haar sampling** on U(N), O(N), SO(N), USp(2N) and the matrix
//!   realizations of the seven infinite families of type-I symmetric-space
//!   ensembles (plus the circular and group ensembles themselves)
//!   — [`ensembles`].
//! * **Finite-rank correlation kernels** built from Jacobi polynomials:
//!   the Christoffel–Darboux kernel for β = 2 and the summation-formula
//!   kernels with ε/δ rank-one corrections for β = 1, 4 — [`kernels::finite`].
//! * **Scaling limits**: the arcsine global density, bulk sine kernels, and
//!   hard-edge Bessel kernels (scalar and matrix forms, including the
//!   analytic continuation below integrable exponents) — [`kernels::limit`].
//! * **Quaternion determinants** via Pfaffians, n-level correlation
//!   functions for β ∈ {1, 2, 4}, and kernel rescaling under changes of
//!   variables — [`qdet`].
//! * **Statistics**: histograms, Kolmogorov–Smirnov distances, level
//!   rescaling, pair-correlation estimates, and finite-size → limit
//!   convergence reports — [`stats`], [`verify`].
//! * A Metropolis sampler for the Jacobi eigenvalue measure
//!   ∝ |Δ(x)|^β Π (1−x_j)^a (1+x_j)^b — [`ensembles::mcmc`].
//!
//! The `examples/` directory is the front door: each example is a runnable
//! walkthrough of one capability (sampling, spectra vs. measure, bulk and
//! edge universality, correlation functions, verification). A thin `symspace`
//! binary exposes the same functionality as subcommands
//! (`sample | density | kernel | correlate | verify`).

pub mod cli;
pub mod ensembles;
pub mod error;
pub mod kernels;
pub mod qdet;
pub mod specfun;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
