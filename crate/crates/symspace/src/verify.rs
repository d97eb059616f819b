//! Runnable verification suites tying the layers together.
//!
//! Each function here checks one family of gates — sampling measures against
//! the Metropolis chain, finite-rank kernels against their scaling limits,
//! Bessel/sine identities, the quaternion-determinant algebra, Weyl-density
//! proportionality, Monte-Carlo edge densities, analytic-continuation seams,
//! and the special-function invariants — and reports the results as
//! [`VerifyEntry`] records ({test_name, metric, value, tolerance, pass}).
//!
//! [`run_suite`] strings all of them together. [`Suite::Smoke`] runs reduced
//! sample counts with correspondingly looser statistical gates (a few dozen
//! seconds); [`Suite::Full`] runs everything at reporting scale.

use std::f64::consts::PI;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ensembles::roots::jacobi_reference;
use crate::ensembles::{
    mcmc_jacobi, sample_spectrum, stream_rng, table_params, weyl_density, EnsembleSpec, Family,
};
use crate::error::{Error, Result};
use crate::kernels::finite::{cd_kernel, delta_apply, s_r4, SummationKernel};
use crate::kernels::limit::{
    bessel_matrix, bessel_scalar, edge_density, kappa, sine_matrix, sine_scalar, LocalCoords,
    Regime,
};
use crate::qdet::{pfaffian, qdet, C64};
use crate::specfun::jacobi::jacobi_poly_sum;
use crate::specfun::{
    bessel_j, bessel_j_primitive, binom_real, darboux_approx, gamma_product, gauss_jacobi_rule,
    hilb2_approx, hilb_approx, jacobi_poly, jacobi_poly_deriv,
};
use crate::stats::{ks_distance, ks_two_sample, rescale_levels};

/// Scale at which a verification suite runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Reduced sample counts, loosened statistical gates; finishes in well
    /// under a minute.
    Smoke,
    /// Reporting scale: the sample counts and tolerances the library's
    /// documented gates are stated at.
    Full,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "smoke" => Ok(Suite::Smoke),
            "full" => Ok(Suite::Full),
            other => Err(Error::config(format!(
                "unknown suite '{other}' (expected smoke|full)"
            ))),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Suite::Smoke => "smoke",
            Suite::Full => "full",
        })
    }
}

/// One verification gate: a named scalar metric compared against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyEntry {
    /// What was checked.
    pub test_name: String,
    /// Which scalar the value is (max abs error, KS distance, ratio, …).
    pub metric: String,
    /// The measured value.
    pub value: f64,
    /// The gate; the entry passes when `value <= tolerance` and is finite.
    pub tolerance: f64,
    /// `value <= tolerance` with a finiteness guard.
    pub pass: bool,
}

impl VerifyEntry {
    fn new(name: impl Into<String>, metric: impl Into<String>, value: f64, tol: f64) -> Self {
        VerifyEntry {
            test_name: name.into(),
            metric: metric.into(),
            value,
            tolerance: tol,
            pass: value.is_finite() && value <= tol,
        }
    }
}

/// Relative gap with a small absolute floor, so identities whose two sides
/// pass near a common zero are not penalized by pure relative error.
fn rel_gap(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-2)
}

fn max_update(acc: &mut f64, candidate: f64) {
    if candidate > *acc || candidate.is_nan() {
        *acc = candidate;
    }
}

/// Runs every verification group in order and concatenates the reports.
pub fn run_suite(suite: Suite, master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let mut out = Vec::new();
    out.extend(measure_agreement(suite, master_seed)?);
    out.extend(closed_form_small_cases(suite, master_seed)?);
    out.extend(global_density_gates(suite, master_seed)?);
    out.extend(bulk_universality(suite)?);
    out.extend(hard_edge_universality(suite)?);
    out.extend(bessel_special_cases()?);
    out.extend(kernel_identities()?);
    out.extend(qdet_layer(master_seed)?);
    out.extend(weyl_proportionality(master_seed)?);
    out.extend(edge_density_vs_mc(suite, master_seed)?);
    out.extend(continuation_continuity()?);
    out.extend(specfun_suite()?);
    Ok(out)
}

fn pooled_draws(
    spec: &EnsembleSpec,
    draws: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut levels = Vec::with_capacity(draws * spec.r);
    let mut thetas = Vec::with_capacity(draws * spec.r);
    for _ in 0..draws {
        let s = sample_spectrum(spec, rng)?;
        levels.extend_from_slice(&s.levels);
        thetas.extend_from_slice(&s.thetas);
    }
    Ok((levels, thetas))
}

/// Matrix-model spectra against the Metropolis chain for the same Jacobi
/// measure, family by family: pooled levels must agree in KS distance.
pub fn measure_agreement(suite: Suite, master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let configs: [(Family, usize, usize); 10] = [
        (Family::AIII, 3, 0),
        (Family::AIII, 3, 2),
        (Family::BDI, 3, 0),
        (Family::BDI, 3, 1),
        (Family::BDI, 3, 3),
        (Family::DIII, 2, 0),
        (Family::DIII, 2, 1),
        (Family::CI, 3, 0),
        (Family::CII, 3, 0),
        (Family::CII, 3, 1),
    ];
    let (draws, chain_len, gate) = match suite {
        Suite::Smoke => (2_000, 20_000, 0.03),
        Suite::Full => (20_000, 100_000, 0.02),
    };

    let mut out = Vec::new();
    for (idx, &(family, r, l)) in configs.iter().enumerate() {
        let spec = EnsembleSpec::new(family, r, l)?;
        let mut rng = stream_rng(master_seed, 1_000 + idx as u64);
        let (matrix_levels, _) = pooled_draws(&spec, draws, &mut rng)?;

        let (beta, a, b) = table_params(&spec)?;
        let mut chain_rng = stream_rng(master_seed, 2_000 + idx as u64);
        let run = mcmc_jacobi(r, beta, a, b, chain_len, 600, &mut chain_rng)?;
        let chain_levels: Vec<f64> = run.samples.iter().flatten().copied().collect();

        let ks = ks_two_sample(&matrix_levels, &chain_levels);
        out.push(VerifyEntry::new(
            format!("measure agreement {} R={r} L={l}", spec.family.label()),
            "ks two-sample",
            ks,
            gate,
        ));
    }
    Ok(out)
}

/// Rank-one ensembles whose level laws are exactly uniform.
pub fn closed_form_small_cases(suite: Suite, master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let (draws, gate) = match suite {
        Suite::Smoke => (10_000, 0.025),
        Suite::Full => (100_000, 0.01),
    };
    let mut out = Vec::new();

    let cases: [(Family, &str, bool); 3] = [
        (Family::AIII, "uniform level", false),
        (Family::BDI, "uniform angle", true),
        (Family::CI, "uniform level", false),
    ];
    for (idx, &(family, law, in_angle)) in cases.iter().enumerate() {
        let spec = EnsembleSpec::new(family, 1, 0)?;
        let mut rng = stream_rng(master_seed, 3_000 + idx as u64);
        let (levels, thetas) = pooled_draws(&spec, draws, &mut rng)?;
        let ks = if in_angle {
            ks_distance(&thetas, |t| (t / PI).clamp(0.0, 1.0))
        } else {
            ks_distance(&levels, |x| (0.5 * (x + 1.0)).clamp(0.0, 1.0))
        };
        out.push(VerifyEntry::new(
            format!("small case {} M=N=1 {law}", spec.family.label()),
            "ks",
            ks,
            gate,
        ));
    }
    Ok(out)
}

/// The two global-density gates: the rank-200 flat-weight projector diagonal
/// against the arcsine law, and Monte-Carlo pooled-angle flatness at R = 30.
pub fn global_density_gates(suite: Suite, master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let n = 200;
    let mut max_rel: f64 = 0.0;
    let mut x = -0.9;
    while x <= 0.9 + 1e-12 {
        let diag = cd_kernel(n, 0.0, 0.0, x, x)?;
        let arcsine = n as f64 / (PI * (1.0 - x * x).sqrt());
        max_update(&mut max_rel, (diag / arcsine - 1.0).abs());
        x += 0.05;
    }
    let mut out = vec![VerifyEntry::new(
        "global density projector diagonal n=200",
        "max relative error",
        max_rel,
        0.02,
    )];

    let (draws, gate) = match suite {
        Suite::Smoke => (300, 0.05),
        Suite::Full => (2_000, 0.03),
    };
    let spec = EnsembleSpec::new(Family::AIII, 30, 0)?;
    let mut rng = stream_rng(master_seed, 3_100);
    let (_, thetas) = pooled_draws(&spec, draws, &mut rng)?;
    let ks = ks_distance(&thetas, |t| (t / PI).clamp(0.0, 1.0));
    out.push(VerifyEntry::new(
        "global angle flatness AIII R=30",
        "ks",
        ks,
        gate,
    ));
    Ok(out)
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|k| lo + step * k as f64).collect()
}

/// Max deviation between a rescaled finite kernel and its limit over a grid.
fn chart_error(
    chart: &LocalCoords,
    pts: &[f64],
    finite: &dyn Fn(f64, f64) -> Result<f64>,
    limit: &dyn Fn(f64, f64) -> Result<f64>,
    scalar_weight: bool,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &xi in pts {
        for &eta in pts {
            let jac = if scalar_weight {
                (chart.x_prime(xi) * chart.x_prime(eta)).abs().sqrt()
            } else {
                chart.x_prime(eta).abs()
            };
            let approx = jac * finite(chart.x(xi), chart.x(eta))?;
            max_update(&mut worst, (approx - limit(xi, eta)?).abs());
        }
    }
    Ok(worst)
}

/// Bulk universality: rescaled finite kernels at the spectrum center against
/// the sine kernels, with both an absolute gate at the larger rank and a
/// decay gate between the two ranks.
pub fn bulk_universality(suite: Suite) -> Result<Vec<VerifyEntry>> {
    let (ranks, pts, gate2, gate14, decay) = match suite {
        Suite::Smoke => ([100usize, 200], grid(-2.0, 2.0, 1.0), 0.06, 0.10, 0.9),
        Suite::Full => ([200usize, 400], grid(-2.0, 2.0, 0.5), 0.03, 0.05, 0.8),
    };

    let mut out = Vec::new();
    for beta in [2u8, 1, 4] {
        let mut errs = Vec::new();
        for &r in &ranks {
            let chart = LocalCoords::new(0.0, r)?;
            let err = match beta {
                2 => chart_error(
                    &chart,
                    &pts,
                    &|x, y| cd_kernel(r, 0.0, 0.0, x, y),
                    &|xi, eta| Ok(sine_scalar(xi, eta)),
                    true,
                )?,
                _ => {
                    let kernel = SummationKernel::new(beta, r, 0.0, 0.0)?;
                    chart_error(
                        &chart,
                        &pts,
                        &|x, y| kernel.eval(x, y),
                        &|xi, eta| Ok(sine_matrix(beta, xi, eta)?.s),
                        false,
                    )?
                }
            };
            errs.push(err);
        }
        let gate = if beta == 2 { gate2 } else { gate14 };
        out.push(VerifyEntry::new(
            format!("bulk beta={beta} max error R={}", ranks[1]),
            "max abs error",
            errs[1],
            gate,
        ));
        out.push(VerifyEntry::new(
            format!("bulk beta={beta} error decay"),
            "error ratio 2R/R",
            errs[1] / errs[0],
            decay,
        ));
    }
    Ok(out)
}

/// Hard-edge universality: the same two gates as the bulk check, in the edge
/// chart against the Bessel kernels, covering the half-integer orthogonal
/// case and the continued symplectic case alongside the regular exponents.
pub fn hard_edge_universality(suite: Suite) -> Result<Vec<VerifyEntry>> {
    let (ranks, pts, gate2, gate14, decay) = match suite {
        Suite::Smoke => ([100usize, 200], grid(0.5, 3.0, 0.5), 0.06, 0.10, 0.9),
        Suite::Full => ([200usize, 400], grid(0.25, 3.0, 0.25), 0.03, 0.05, 0.8),
    };

    let cases: [(u8, f64); 5] = [(2, 0.0), (1, -0.5), (1, 0.0), (4, 0.0), (4, 1.0)];
    let mut out = Vec::new();
    for &(beta, a) in &cases {
        let mut errs = Vec::new();
        for &r in &ranks {
            let chart = LocalCoords::new(1.0, r)?;
            let err = match beta {
                2 => chart_error(
                    &chart,
                    &pts,
                    &|x, y| cd_kernel(r, a, 0.0, x, y),
                    &|xi, eta| bessel_scalar(a, xi, eta),
                    true,
                )?,
                _ => {
                    let kernel = SummationKernel::new(beta, r, a, 0.0)?;
                    chart_error(
                        &chart,
                        &pts,
                        &|x, y| kernel.eval(x, y),
                        &|xi, eta| Ok(bessel_matrix(beta, a, xi, eta)?.s),
                        false,
                    )?
                }
            };
            errs.push(err);
        }
        let gate = if beta == 2 { gate2 } else { gate14 };
        out.push(VerifyEntry::new(
            format!("hard edge beta={beta} a={a} max error R={}", ranks[1]),
            "max abs error",
            errs[1],
            gate,
        ));
        out.push(VerifyEntry::new(
            format!("hard edge beta={beta} a={a} error decay"),
            "error ratio 2R/R",
            errs[1] / errs[0],
            decay,
        ));
    }
    Ok(out)
}

/// At exponents ∓1/2 the scalar Bessel kernel collapses to the even/odd sine
/// kernel combinations; checked pointwise on a 20×20 grid.
pub fn bessel_special_cases() -> Result<Vec<VerifyEntry>> {
    let sinc = |z: f64| if z.abs() < 1e-8 { 1.0 } else { z.sin() / z };
    let mut worst_even: f64 = 0.0;
    let mut worst_odd: f64 = 0.0;
    for i in 1..=20 {
        for j in 1..=20 {
            let xi = 0.15 * i as f64;
            let eta = 0.15 * j as f64;
            let diff = sinc(PI * (xi - eta));
            let sum = sinc(PI * (xi + eta));
            max_update(
                &mut worst_even,
                rel_gap(bessel_scalar(-0.5, xi, eta)?, diff + sum),
            );
            max_update(
                &mut worst_odd,
                rel_gap(bessel_scalar(0.5, xi, eta)?, diff - sum),
            );
        }
    }
    Ok(vec![
        VerifyEntry::new("bessel kernel a=-1/2 even sine form", "max gap", worst_even, 1e-9),
        VerifyEntry::new("bessel kernel a=+1/2 odd sine form", "max gap", worst_odd, 1e-9),
    ])
}

/// Draws a pair of points with a minimum separation, so denominators of the
/// form ξ² − η² stay well away from the confluent switch.
fn separated_pair(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64) {
    loop {
        let x: f64 = rng.gen_range(lo..hi);
        let y: f64 = rng.gen_range(lo..hi);
        if (x - y).abs() > 0.05 {
            return (x, y);
        }
    }
}

/// The Bessel-kernel identity suite: the two-sided κ recursion, the index
/// shift of the scalar kernel, the primitive shifts, and the alternative
/// (index-shifted) forms of the orthogonal and symplectic edge kernels.
pub fn kernel_identities() -> Result<Vec<VerifyEntry>> {
    let mut rng = stream_rng(0x6b65726e, 0);
    let mut out = Vec::new();

    // √(x/y)κ_{α+1/2} − √(y/x)κ_{α−1/2} = −((x²−y²)/√(xy))·J_{α−1}(x)J_α(y)
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let alpha: f64 = rng.gen_range(-0.4..3.0);
        let x: f64 = rng.gen_range(0.2..20.0);
        let y: f64 = rng.gen_range(0.2..20.0);
        let lhs = (x / y).sqrt() * kappa(alpha + 0.5, x, y)
            - (y / x).sqrt() * kappa(alpha - 0.5, x, y);
        let rhs =
            -((x * x - y * y) / (x * y).sqrt()) * bessel_j(alpha - 1.0, x) * bessel_j(alpha, y);
        max_update(&mut worst, rel_gap(lhs, rhs));
    }
    out.push(VerifyEntry::new("kappa recursion", "max gap", worst, 1e-9));

    // √(ξ/η)K̂₂^(A) = √(η/ξ)K̂₂^(A−1) − πJ_{A−1}(πξ)J_A(πη)
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a: f64 = rng.gen_range(0.2..3.0);
        let (xi, eta) = separated_pair(&mut rng, 0.2, 3.0);
        let lhs = (xi / eta).sqrt() * bessel_scalar(a, xi, eta)?;
        let rhs = (eta / xi).sqrt() * bessel_scalar(a - 1.0, xi, eta)?
            - PI * bessel_j(a - 1.0, PI * xi) * bessel_j(a, PI * eta);
        max_update(&mut worst, rel_gap(lhs, rhs));
    }
    out.push(VerifyEntry::new(
        "scalar kernel index shift",
        "max gap",
        worst,
        1e-9,
    ));

    // ∫₀^z J_A − 2J_{A+1}(z) = ∫₀^z J_{A+2} and the reverse orientation
    let mut worst_down: f64 = 0.0;
    let mut worst_up: f64 = 0.0;
    for _ in 0..100 {
        let a: f64 = rng.gen_range(-0.5..1.0);
        let z: f64 = rng.gen_range(0.3..18.0);
        let lhs = bessel_j_primitive(a, z) - 2.0 * bessel_j(a + 1.0, z);
        max_update(&mut worst_down, rel_gap(lhs, bessel_j_primitive(a + 2.0, z)));

        let a: f64 = rng.gen_range(1.2..3.0);
        let z: f64 = rng.gen_range(0.3..18.0);
        let lhs = bessel_j_primitive(a, z) + 2.0 * bessel_j(a - 1.0, z);
        max_update(&mut worst_up, rel_gap(lhs, bessel_j_primitive(a - 2.0, z)));
    }
    out.push(VerifyEntry::new(
        "primitive shift raising",
        "max gap",
        worst_down,
        1e-9,
    ));
    out.push(VerifyEntry::new(
        "primitive shift lowering",
        "max gap",
        worst_up,
        1e-9,
    ));

    // Ŝ₁(ξ,η) = √(η/ξ)K̂₂^(2a) + (π/2)J_{2a+1}(πη)[1 − ∫₀^{πξ}J_{2a−1}]
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a: f64 = rng.gen_range(0.15..2.0);
        let (xi, eta) = separated_pair(&mut rng, 0.2, 3.0);
        let direct = bessel_matrix(1, a, xi, eta)?.s;
        let alt = (eta / xi).sqrt() * bessel_scalar(2.0 * a, xi, eta)?
            + 0.5
                * PI
                * bessel_j(2.0 * a + 1.0, PI * eta)
                * (1.0 - bessel_j_primitive(2.0 * a - 1.0, PI * xi));
        max_update(&mut worst, rel_gap(direct, alt));
    }
    out.push(VerifyEntry::new(
        "orthogonal edge kernel alternative form",
        "max gap",
        worst,
        1e-9,
    ));

    // Ŝ₄(ξ,η) = √(η/ξ)K̂₂^(a)(2ξ,2η) − (π/2)J_{a−1}(2πη)∫₀^{2πξ}J_{a+1}
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a: f64 = rng.gen_range(0.2..2.0);
        let (xi, eta) = separated_pair(&mut rng, 0.2, 3.0);
        let direct = bessel_matrix(4, a, xi, eta)?.s;
        let alt = (eta / xi).sqrt() * bessel_scalar(a, 2.0 * xi, 2.0 * eta)?
            - 0.5
                * PI
                * bessel_j(a - 1.0, 2.0 * PI * eta)
                * bessel_j_primitive(a + 1.0, 2.0 * PI * xi);
        max_update(&mut worst, rel_gap(direct, alt));
    }
    out.push(VerifyEntry::new(
        "symplectic edge kernel alternative form",
        "max gap",
        worst,
        1e-9,
    ));

    Ok(out)
}

fn random_complex(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn random_antisymmetric(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let g = random_complex(n, rng);
    &g - g.transpose()
}

/// Random self-dual matrix [[S, B], [C, Sᵀ]] with antisymmetric B, C, drawn
/// until the determinant is safely away from zero so that relative gates on
/// qdet² = det are meaningful.
fn random_self_dual(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    loop {
        let s = random_complex(n, rng);
        let b = random_antisymmetric(n, rng);
        let c = random_antisymmetric(n, rng);
        let mut h = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                h[(i, j)] = s[(i, j)];
                h[(i, n + j)] = b[(i, j)];
                h[(n + i, j)] = c[(i, j)];
                h[(n + i, n + j)] = s[(j, i)];
            }
        }
        if h.clone().lu().determinant().norm() > 1e-3 {
            return h;
        }
    }
}

/// The quaternion-determinant algebra on random self-dual matrices:
/// Pf² = det, qdet² = det, the sandwich factorization, and the parity rule
/// qdet(−H) = (−1)ⁿ qdet(H).
pub fn qdet_layer(master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let mut rng = stream_rng(master_seed, 5_000);
    let mut pf_sq: f64 = 0.0;
    let mut q_sq: f64 = 0.0;
    let mut sandwich: f64 = 0.0;
    let mut parity: f64 = 0.0;

    for n in 1..=6usize {
        for _ in 0..3 {
            let a = loop {
                let cand = random_antisymmetric(2 * n, &mut rng);
                if cand.clone().lu().determinant().norm() > 1e-3 {
                    break cand;
                }
            };
            let pf = pfaffian(&a)?;
            let det = a.clone().lu().determinant();
            max_update(&mut pf_sq, (pf * pf - det).norm() / det.norm());

            let h = random_self_dual(n, &mut rng);
            let q = qdet(&h)?;
            let det = h.clone().lu().determinant();
            max_update(&mut q_sq, (q * q - det).norm() / det.norm());

            let qneg = qdet(&(-&h))?;
            let expect = if n % 2 == 0 { q } else { -q };
            max_update(&mut parity, (qneg - expect).norm() / q.norm());

            // qdet(diag(I, K) · H · diag(Kᵀ, I)) = det(K) · qdet(H)
            let k = random_complex(n, &mut rng);
            let mut d1 = DMatrix::from_diagonal_element(2 * n, 2 * n, C64::new(1.0, 0.0));
            let mut d2 = d1.clone();
            for i in 0..n {
                for j in 0..n {
                    d1[(n + i, n + j)] = k[(i, j)];
                    d2[(i, j)] = k[(j, i)];
                }
            }
            let lhs = qdet(&(&d1 * &h * &d2))?;
            let rhs = k.clone().lu().determinant() * q;
            max_update(&mut sandwich, (lhs - rhs).norm() / rhs.norm().max(1e-6));
        }
    }

    Ok(vec![
        VerifyEntry::new("pfaffian squares to determinant", "max relative gap", pf_sq, 1e-8),
        VerifyEntry::new("qdet squares to determinant", "max relative gap", q_sq, 1e-8),
        VerifyEntry::new("qdet sandwich factorization", "max relative gap", sandwich, 1e-8),
        VerifyEntry::new("qdet parity under negation", "max relative gap", parity, 1e-8),
    ])
}

/// Weyl density against the closed Jacobi (or circle-Vandermonde) form: the
/// ratio must be a constant over random angle tuples, for every family.
pub fn weyl_proportionality(master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let configs: [(Family, usize); 15] = [
        (Family::AI, 0),
        (Family::AII, 0),
        (Family::CUE, 0),
        (Family::SOOdd, 0),
        (Family::USpGroup, 0),
        (Family::SOEven, 0),
        (Family::CI, 0),
        (Family::AIII, 0),
        (Family::AIII, 2),
        (Family::BDI, 0),
        (Family::BDI, 3),
        (Family::DIII, 0),
        (Family::DIII, 1),
        (Family::CII, 0),
        (Family::CII, 2),
    ];
    let r = 4;
    let mut rng = stream_rng(master_seed, 5_100);
    let mut out = Vec::new();

    for &(family, l) in &configs {
        let spec = EnsembleSpec::new(family, r, l)?;
        let circular = spec.is_circular();
        let mut ratios = Vec::with_capacity(100);
        for _ in 0..100 {
            let thetas: Vec<f64> = if circular {
                (0..r).map(|_| rng.gen_range(-3.0..3.0)).collect()
            } else {
                (0..r).map(|_| rng.gen_range(0.05..PI - 0.05)).collect()
            };
            let dens = weyl_density(&spec, &thetas)?;
            let reference = if circular {
                let m_diff = match family {
                    Family::AI => 1.0,
                    Family::AII => 4.0,
                    _ => 2.0,
                };
                let mut prod = 1.0;
                for j in 0..r {
                    for k in (j + 1)..r {
                        let gap = 2.0 * (0.5 * (thetas[j] - thetas[k])).sin().abs();
                        prod *= gap.powf(m_diff);
                    }
                }
                prod
            } else {
                let (beta, a, b) = table_params(&spec)?;
                jacobi_reference(beta, a, b, &thetas)
            };
            ratios.push(dens / reference);
        }
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let spread = (max - min) / mean.abs();
        out.push(VerifyEntry::new(
            format!("weyl proportionality {} L={l}", spec.family.label()),
            "relative spread",
            spread,
            1e-9,
        ));
    }
    Ok(out)
}

/// Cumulative hard-edge density on [0, cutoff], midpoint-integrated on a
/// fine grid and normalized, for use as a reference CDF.
struct EdgeCdf {
    step: f64,
    cum: Vec<f64>,
}

impl EdgeCdf {
    fn build(beta: u8, a: f64, cutoff: f64) -> Result<Self> {
        let n = 1_200usize;
        let step = cutoff / n as f64;
        let mut cum = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for k in 0..n {
            let mid = (k as f64 + 0.5) * step;
            acc += edge_density(beta, a, mid)? * step;
            cum.push(acc);
        }
        Ok(EdgeCdf { step, cum })
    }

    fn eval(&self, xi: f64) -> f64 {
        let total = *self.cum.last().unwrap();
        if xi <= 0.0 {
            return 0.0;
        }
        let pos = xi / self.step;
        let k = pos.floor() as usize;
        if k + 1 >= self.cum.len() {
            return 1.0;
        }
        let frac = pos - k as f64;
        ((1.0 - frac) * self.cum[k] + frac * self.cum[k + 1]) / total
    }
}

/// Monte-Carlo hard-edge statistics: rescaled angles near the +1 edge pooled
/// over draws, against the integrated limiting edge density.
pub fn edge_density_vs_mc(suite: Suite, master_seed: u64) -> Result<Vec<VerifyEntry>> {
    let all: [(Family, usize, usize); 4] = [
        (Family::AIII, 40, 0),
        (Family::CI, 40, 0),
        (Family::CII, 40, 0),
        (Family::BDI, 40, 1),
    ];
    let (configs, draws, gate): (&[(Family, usize, usize)], usize, f64) = match suite {
        Suite::Smoke => (&all[..2], 800, 0.08),
        Suite::Full => (&all[..], 5_000, 0.05),
    };
    let cutoff = 3.0;

    let mut out = Vec::new();
    for (idx, &(family, r, l)) in configs.iter().enumerate() {
        let spec = EnsembleSpec::new(family, r, l)?;
        let (beta_f, a, _) = table_params(&spec)?;
        let beta = beta_f as u8;
        let cdf = EdgeCdf::build(beta, a, cutoff)?;

        let mut rng = stream_rng(master_seed, 4_000 + idx as u64);
        let mut pooled = Vec::new();
        for _ in 0..draws {
            let s = sample_spectrum(&spec, &mut rng)?;
            let xi = rescale_levels(&s.thetas, Regime::HardEdgePlus, 0.0, r)?;
            pooled.extend(xi.into_iter().filter(|&v| v > 0.0 && v <= cutoff));
        }
        let ks = ks_distance(&pooled, |v| cdf.eval(v));
        out.push(VerifyEntry::new(
            format!(
                "edge vs MC {} R={r} L={l} (beta={beta}, a={a})",
                spec.family.label()
            ),
            "ks",
            ks,
            gate,
        ));
    }
    Ok(out)
}

/// Seam checks for the analytic continuations: the symplectic summation
/// kernel across its internal exponent −1, the continued δ-primitive across
/// −1, and finiteness/continuity of the symplectic edge kernel on (−1, 0].
pub fn continuation_continuity() -> Result<Vec<VerifyEntry>> {
    let eps = 1e-4;
    let mut out = Vec::new();

    let mut seam: f64 = 0.0;
    for &(x, y) in &[(0.3, 0.4), (0.7, 0.2), (-0.5, 0.1)] {
        let above = s_r4(6, eps, 0.0, x, y)?;
        let below = s_r4(6, -eps, 0.0, x, y)?;
        max_update(&mut seam, (above - below).abs());
    }
    out.push(VerifyEntry::new(
        "symplectic kernel seam at a=0",
        "max jump",
        seam,
        1e-2,
    ));

    let mut seam: f64 = 0.0;
    for &x in &[0.5, -0.2, 0.9] {
        let above = delta_apply(4, -1.0 + eps, 0.0, x)?;
        let below = delta_apply(4, -1.0 - eps, 0.0, x)?;
        max_update(&mut seam, (above - below).abs());
    }
    out.push(VerifyEntry::new(
        "delta primitive seam at a=-1",
        "max jump",
        seam,
        1e-2,
    ));

    // symplectic edge kernel over a ∈ (−1, 0]: every block entry finite,
    // and the S entry moves continuously along the exponent grid
    let pts = [(0.5, 1.1), (1.3, 0.7)];
    let mut bad = 0.0;
    for &(xi, eta) in &pts {
        for k in 0..=3 {
            let a = -0.999 + 0.003 * k as f64;
            let b = bessel_matrix(4, a, xi, eta)?;
            if !(b.s.is_finite() && b.i_minus.is_finite() && b.d.is_finite() && b.st.is_finite()) {
                bad += 1.0;
            }
        }
    }
    out.push(VerifyEntry::new(
        "symplectic edge kernel finite near a=-1",
        "non-finite entries",
        bad,
        0.5,
    ));

    let mut rough: f64 = 0.0;
    for &(xi, eta) in &pts {
        let mut prev: Option<f64> = None;
        for k in 0..=19 {
            let a = -0.95 + 0.05 * k as f64;
            let s = bessel_matrix(4, a, xi, eta)?.s;
            if let Some(p) = prev {
                max_update(&mut rough, (s - p).abs());
            }
            prev = Some(s);
        }
    }
    out.push(VerifyEntry::new(
        "symplectic edge kernel continuity in a",
        "max step (da=0.05)",
        rough,
        0.25,
    ));

    Ok(out)
}

/// The special-function invariants behind everything else: Jacobi endpoint
/// values, recurrence-vs-series agreement, parameter-swap symmetry,
/// orthogonality under the weight, derivative consistency, the Darboux and
/// Hilb asymptotic error bands with their decay rates, quadrature moments,
/// and the Bessel recurrence/primitive pair.
pub fn specfun_suite() -> Result<Vec<VerifyEntry>> {
    let mut out = Vec::new();
    let params = [(0.0, 0.0), (0.7, -0.3), (2.5, 1.5), (-0.5, -0.5)];

    let mut worst: f64 = 0.0;
    for &(a, b) in &params {
        for n in 0..=12 {
            let got = jacobi_poly(n, a, b, 1.0);
            let want = binom_real(n as f64 + a, n);
            max_update(&mut worst, rel_gap(got, want));
        }
    }
    out.push(VerifyEntry::new("jacobi endpoint values", "max gap", worst, 1e-11));

    let mut worst: f64 = 0.0;
    for &(a, b) in &params {
        for n in [5usize, 8, 12] {
            for k in 0..9 {
                let x = -0.8 + 0.2 * k as f64;
                let via_rec = jacobi_poly(n, a, b, x);
                let via_sum = jacobi_poly_sum(n, a, b, x);
                max_update(
                    &mut worst,
                    (via_rec - via_sum).abs() / via_sum.abs().max(1e-3),
                );
            }
        }
    }
    out.push(VerifyEntry::new(
        "jacobi recurrence vs series",
        "max gap",
        worst,
        1e-9,
    ));

    let mut worst: f64 = 0.0;
    for &(a, b) in &params {
        for n in 0..=10 {
            for k in 0..7 {
                let x = -0.9 + 0.3 * k as f64;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = jacobi_poly(n, a, b, -x);
                let rhs = sign * jacobi_poly(n, b, a, x);
                max_update(&mut worst, rel_gap(lhs, rhs));
            }
        }
    }
    out.push(VerifyEntry::new(
        "jacobi parameter swap symmetry",
        "max gap",
        worst,
        1e-10,
    ));

    let mut worst: f64 = 0.0;
    for &(a, b) in &[(0.0, 0.0), (0.5, -0.3), (2.0, 1.0)] {
        let rule = gauss_jacobi_rule(20, a, b)?;
        let norms: Vec<f64> = (0..=12)
            .map(|n| rule.integrate(|x| jacobi_poly(n, a, b, x).powi(2)))
            .collect();
        for m in 0..=12usize {
            for n in (m + 1)..=12 {
                let dot = rule.integrate(|x| jacobi_poly(m, a, b, x) * jacobi_poly(n, a, b, x));
                max_update(&mut worst, dot.abs() / (norms[m] * norms[n]).sqrt());
            }
        }
    }
    out.push(VerifyEntry::new(
        "jacobi orthogonality under weight",
        "max normalized inner product",
        worst,
        1e-10,
    ));

    let mut worst: f64 = 0.0;
    let h = 1e-6;
    for &(a, b) in &params {
        for n in [3usize, 7, 11] {
            for k in 0..5 {
                let x = -0.8 + 0.4 * k as f64;
                let fd = (jacobi_poly(n, a, b, x + h) - jacobi_poly(n, a, b, x - h)) / (2.0 * h);
                let an = jacobi_poly_deriv(n, a, b, x);
                max_update(&mut worst, (fd - an).abs() / an.abs().max(1.0));
            }
        }
    }
    out.push(VerifyEntry::new(
        "jacobi derivative identity",
        "max gap vs finite difference",
        worst,
        1e-6,
    ));

    // Darboux band at the spectrum center and its three-halves decay rate
    let n = 200;
    let theta = PI / 2.0;
    let err = (jacobi_poly(n, 0.0, 0.0, theta.cos()) - darboux_approx(n, 0.0, 0.0, theta)).abs();
    out.push(VerifyEntry::new(
        "darboux error band n=200",
        "error over band",
        err / (5.0 * (n as f64).powf(-1.5)),
        1.0,
    ));
    let theta: f64 = 1.0;
    let d_err = |n: usize| -> f64 {
        (jacobi_poly(n, 0.0, 0.0, theta.cos()) - darboux_approx(n, 0.0, 0.0, theta)).abs()
    };
    out.push(VerifyEntry::new(
        "darboux error decay",
        "error ratio 2N/N",
        d_err(400) / d_err(200),
        0.7,
    ));

    // Hilb band in the θ ~ 1/N regime, plus the continued variant's decay
    let n = 200;
    let theta = 2.0 / n as f64;
    let err = (jacobi_poly(n, 0.0, 0.0, theta.cos()) - hilb_approx(n, 0.0, 0.0, theta)?).abs();
    out.push(VerifyEntry::new(
        "hilb error band near origin n=200",
        "error over band",
        err / (50.0 * (n as f64).powf(-1.5)),
        1.0,
    ));
    let theta: f64 = 0.8;
    let h_err = |n: usize| -> f64 {
        (jacobi_poly(n, -1.5, 0.0, theta.cos()) - hilb2_approx(n, -1.5, 0.0, theta)).abs()
    };
    out.push(VerifyEntry::new(
        "hilb continued-variant error decay",
        "error ratio 2N/N",
        h_err(400) / h_err(200),
        0.7,
    ));

    // quadrature moments against the Beta-function expansion of
    // ∫(1−x)^α(1+x)^β xᵐ dx under x = 1 − 2t
    let mut worst: f64 = 0.0;
    for &(alpha, beta) in &[(-0.5, -0.5), (0.0, 0.0), (1.3, 0.4)] {
        let rule = gauss_jacobi_rule(12, alpha, beta)?;
        for m in 0..=6usize {
            let got = rule.integrate(|x| x.powi(m as i32));
            let mut want = 0.0;
            for k in 0..=m {
                let coeff = binom_real(m as f64, k) * (-2.0f64).powi(k as i32);
                want += coeff
                    * gamma_product(&[alpha + k as f64 + 1.0, beta + 1.0], &[alpha + beta + k as f64 + 2.0]);
            }
            want *= 2.0f64.powf(alpha + beta + 1.0);
            max_update(&mut worst, rel_gap(got, want));
        }
    }
    out.push(VerifyEntry::new(
        "quadrature moments vs beta function",
        "max gap",
        worst,
        1e-10,
    ));

    let mut rng = stream_rng(0x73706563, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let nu: f64 = rng.gen_range(-0.9..4.0);
        let z: f64 = rng.gen_range(0.2..25.0);
        let lhs = bessel_j(nu - 1.0, z) + bessel_j(nu + 1.0, z);
        let rhs = 2.0 * nu / z * bessel_j(nu, z);
        max_update(&mut worst, rel_gap(lhs, rhs));
    }
    out.push(VerifyEntry::new(
        "bessel three-term recurrence",
        "max gap",
        worst,
        1e-9,
    ));

    let mut worst: f64 = 0.0;
    let h = 1e-6;
    for _ in 0..50 {
        let nu: f64 = rng.gen_range(-0.5..3.0);
        let z: f64 = rng.gen_range(0.5..15.0);
        let fd = (bessel_j_primitive(nu, z + h) - bessel_j_primitive(nu, z - h)) / (2.0 * h);
        max_update(&mut worst, (fd - bessel_j(nu, z)).abs());
    }
    out.push(VerifyEntry::new(
        "bessel primitive derivative",
        "max gap vs finite difference",
        worst,
        1e-6,
    ));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parses_case_insensitively() {
        assert_eq!(Suite::from_str("SMOKE").unwrap(), Suite::Smoke);
        assert_eq!(Suite::from_str("full").unwrap(), Suite::Full);
        assert!(Suite::from_str("medium").is_err());
    }

    #[test]
    fn entry_pass_requires_finite_value() {
        assert!(VerifyEntry::new("t", "m", 0.5, 1.0).pass);
        assert!(!VerifyEntry::new("t", "m", 2.0, 1.0).pass);
        assert!(!VerifyEntry::new("t", "m", f64::NAN, 1.0).pass);
    }

    #[test]
    fn deterministic_identity_groups_pass() {
        for entry in kernel_identities().unwrap() {
            assert!(entry.pass, "{}: {} = {}", entry.test_name, entry.metric, entry.value);
        }
        for entry in bessel_special_cases().unwrap() {
            assert!(entry.pass, "{}: {}", entry.test_name, entry.value);
        }
        for entry in continuation_continuity().unwrap() {
            assert!(entry.pass, "{}: {}", entry.test_name, entry.value);
        }
    }

    #[test]
    fn qdet_and_weyl_groups_pass() {
        for entry in qdet_layer(0).unwrap() {
            assert!(entry.pass, "{}: {}", entry.test_name, entry.value);
        }
        for entry in weyl_proportionality(0).unwrap() {
            assert!(entry.pass, "{}: {}", entry.test_name, entry.value);
        }
    }

    #[test]
    fn specfun_group_passes() {
        for entry in specfun_suite().unwrap() {
            assert!(entry.pass, "{}: {} = {}", entry.test_name, entry.metric, entry.value);
        }
    }

    #[test]
    fn edge_cdf_is_monotone_and_normalized() {
        let cdf = EdgeCdf::build(2, 0.0, 3.0).unwrap();
        assert_eq!(cdf.eval(0.0), 0.0);
        assert!((cdf.eval(3.0) - 1.0).abs() < 1e-12);
        let mut prev = 0.0;
        for k in 0..=30 {
            let v = cdf.eval(0.1 * k as f64);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn json_report_shape_is_stable() {
        let entry = VerifyEntry::new("demo", "ks", 0.01, 0.05);
        let text = serde_json::to_string(&entry).unwrap();
        assert!(text.contains("\"test_name\":\"demo\""));
        assert!(text.contains("\"pass\":true"));
    }
}
