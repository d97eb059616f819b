//! Metropolis sampler for the Jacobi eigenvalue measure
//! ∝ |Δ(x)|^β Π (1−x_j)^a (1+x_j)^b on [−1, 1]^R.
//!
//! Single-coordinate sweeps keep each proposal O(R): only the log-Vandermonde
//! terms touching the moved coordinate change.  Proposals are uniform windows
//! reflected at ±1 (which keeps the proposal symmetric), and the window is
//! auto-tuned during burn-in toward a 30–50% acceptance rate.

use crate::error::{Error, Result};
use rand::Rng;

const WIDTH_MIN: f64 = 1e-3;
const WIDTH_MAX: f64 = 2.0;
const TUNE_INTERVAL: usize = 100;
/// Sweeps between kept samples (so 5·R coordinate moves per sample).
const THIN_SWEEPS: usize = 5;

/// A finished chain: the kept samples plus the diagnostics the gates check.
#[derive(Debug, Clone)]
pub struct McmcRun {
    /// Kept level vectors, each sorted ascending.
    pub samples: Vec<Vec<f64>>,
    /// Post-burn-in acceptance rate.
    pub acceptance_rate: f64,
    /// Proposal half-width after auto-tuning.
    pub proposal_width: f64,
}

fn log_weight_term(a: f64, b: f64, x: f64) -> f64 {
    a * (1.0 - x).ln() + b * (1.0 + x).ln()
}

/// Change in log density when coordinate i moves from `old` to `new`.
fn log_ratio(xs: &[f64], i: usize, new: f64, beta: f64, a: f64, b: f64) -> f64 {
    let old = xs[i];
    let mut delta = log_weight_term(a, b, new) - log_weight_term(a, b, old);
    for (j, &xj) in xs.iter().enumerate() {
        if j != i {
            delta += beta * ((new - xj).abs().ln() - (old - xj).abs().ln());
        }
    }
    delta
}

/// Samples `n_samples` level vectors from the Jacobi measure.  `burn_in`
/// counts full sweeps; every 5th post-burn-in sweep is kept.
pub fn mcmc_jacobi(
    r: usize,
    beta: f64,
    a: f64,
    b: f64,
    n_samples: usize,
    burn_in: usize,
    rng: &mut impl Rng,
) -> Result<McmcRun> {
    if r == 0 {
        return Err(Error::domain("rank R must be at least 1"));
    }
    if !(beta > 0.0) {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::domain(format!(
            "weight exponents must exceed -1 for integrability, got a={a}, b={b}"
        )));
    }
    if n_samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }

    // Evenly spread starting point, strictly interior.
    let mut xs: Vec<f64> = (0..r)
        .map(|j| -1.0 + 2.0 * (j as f64 + 1.0) / (r as f64 + 1.0))
        .collect();
    let mut width: f64 = 0.5;

    let sweep = |xs: &mut Vec<f64>, width: f64, rng: &mut dyn rand::RngCore| -> usize {
        let mut accepted = 0;
        for i in 0..r {
            let step = width * (2.0 * rng.gen::<f64>() - 1.0);
            let mut proposal = xs[i] + step;
            if proposal > 1.0 {
                proposal = 2.0 - proposal;
            } else if proposal < -1.0 {
                proposal = -2.0 - proposal;
            }
            // Reflection can land exactly on a zero-weight endpoint.
            if proposal.abs() >= 1.0 {
                continue;
            }
            let delta = log_ratio(xs, i, proposal, beta, a, b);
            if delta >= 0.0 || rng.gen::<f64>() < delta.exp() {
                xs[i] = proposal;
                accepted += 1;
            }
        }
        accepted
    };

    // Burn-in with periodic width tuning.
    let mut window_accepted = 0usize;
    let mut window_moves = 0usize;
    for s in 0..burn_in {
        window_accepted += sweep(&mut xs, width, rng);
        window_moves += r;
        if (s + 1) % TUNE_INTERVAL == 0 {
            let rate = window_accepted as f64 / window_moves as f64;
            if rate < 0.3 {
                width = (width * 0.8).max(WIDTH_MIN);
            } else if rate > 0.5 {
                width = (width * 1.25).min(WIDTH_MAX);
            }
            window_accepted = 0;
            window_moves = 0;
        }
    }

    let mut samples = Vec::with_capacity(n_samples);
    let mut accepted = 0usize;
    let mut moves = 0usize;
    while samples.len() < n_samples {
        for _ in 0..THIN_SWEEPS {
            accepted += sweep(&mut xs, width, rng);
            moves += r;
        }
        let mut kept = xs.clone();
        kept.sort_unstable_by(|p, q| p.partial_cmp(q).unwrap());
        samples.push(kept);
    }
    Ok(McmcRun {
        samples,
        acceptance_rate: accepted as f64 / moves as f64,
        proposal_width: width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::stream_rng;
    use crate::stats::{ks_distance, ks_two_sample};

    #[test]
    fn flat_weight_at_rank_one_is_uniform() {
        let mut rng = stream_rng(200, 0);
        let run = mcmc_jacobi(1, 2.0, 0.0, 0.0, 100_000, 500, &mut rng).unwrap();
        let xs: Vec<f64> = run.samples.iter().map(|s| s[0]).collect();
        let ks = ks_distance(&xs, |x| ((x + 1.0) / 2.0).clamp(0.0, 1.0));
        assert!(ks < 0.01, "KS = {ks}");
    }

    #[test]
    fn arcsine_weight_matches_the_inverse_cdf_law() {
        let mut rng = stream_rng(201, 0);
        let run = mcmc_jacobi(1, 1.0, -0.5, -0.5, 100_000, 500, &mut rng).unwrap();
        let xs: Vec<f64> = run.samples.iter().map(|s| s[0]).collect();
        // x = cos(πu) with u uniform: CDF(x) = 1 − acos(x)/π.
        let ks = ks_distance(&xs, |x: f64| 1.0 - x.clamp(-1.0, 1.0).acos() / std::f64::consts::PI);
        assert!(ks < 0.01, "KS = {ks}");
    }

    #[test]
    fn acceptance_rate_lands_in_the_tuned_band() {
        let mut rng = stream_rng(202, 0);
        let run = mcmc_jacobi(5, 2.0, 0.0, 0.0, 20_000, 1_000, &mut rng).unwrap();
        assert!(
            (0.2..=0.6).contains(&run.acceptance_rate),
            "rate = {}",
            run.acceptance_rate
        );
        assert!(run.proposal_width > WIDTH_MIN && run.proposal_width < WIDTH_MAX);
    }

    #[test]
    fn independent_chains_agree_in_distribution() {
        let pooled = |seed: u64| {
            let mut rng = stream_rng(203, seed);
            let run = mcmc_jacobi(3, 1.0, 0.5, -0.5, 20_000, 1_000, &mut rng).unwrap();
            run.samples.iter().flatten().copied().collect::<Vec<f64>>()
        };
        let ks = ks_two_sample(&pooled(0), &pooled(1));
        assert!(ks < 0.02, "KS = {ks}");
    }

    #[test]
    fn samples_stay_inside_the_open_interval_and_sorted() {
        let mut rng = stream_rng(204, 0);
        let run = mcmc_jacobi(4, 4.0, 2.0, 1.0, 2_000, 500, &mut rng).unwrap();
        for s in &run.samples {
            assert!(s.windows(2).all(|w| w[0] <= w[1]));
            assert!(s.iter().all(|x| x.abs() < 1.0));
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let mut rng = stream_rng(205, 0);
        assert!(mcmc_jacobi(0, 2.0, 0.0, 0.0, 10, 10, &mut rng).is_err());
        assert!(mcmc_jacobi(2, 0.0, 0.0, 0.0, 10, 10, &mut rng).is_err());
        assert!(mcmc_jacobi(2, 2.0, -1.0, 0.0, 10, 10, &mut rng).is_err());
        assert!(mcmc_jacobi(2, 2.0, 0.0, -1.5, 10, 10, &mut rng).is_err());
        assert!(mcmc_jacobi(2, 2.0, 0.0, 0.0, 0, 10, &mut rng).is_err());
    }

    #[test]
    fn matrix_model_and_chain_sample_the_same_measure() {
        // Pooled levels of the rank-3 complex split quotient (β=2, a=b=0)
        // against the chain targeting the same weight.
        use crate::ensembles::{sample_spectrum, EnsembleSpec, Family};
        let spec = EnsembleSpec::new(Family::AIII, 3, 0).unwrap();
        let mut rng = stream_rng(206, 0);
        let mut matrix_levels = Vec::with_capacity(60_000);
        for _ in 0..20_000 {
            matrix_levels.extend(sample_spectrum(&spec, &mut rng).unwrap().levels);
        }
        let mut rng = stream_rng(206, 1);
        let run = mcmc_jacobi(3, 2.0, 0.0, 0.0, 20_000, 1_000, &mut rng).unwrap();
        let chain_levels: Vec<f64> = run.samples.iter().flatten().copied().collect();
        let ks = ks_two_sample(&matrix_levels, &chain_levels);
        assert!(ks < 0.02, "KS = {ks}");
    }
}
