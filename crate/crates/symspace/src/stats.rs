//! Empirical statistics: histograms, Kolmogorov–Smirnov distances, the
//! bulk/hard-edge level-rescaling charts, pair-correlation estimation, and
//! finite-rank → limit kernel convergence reports.

use crate::error::{Error, Result};
use crate::kernels::limit::Regime;
use serde::Serialize;

/// A normalized histogram: `density[i]` is the probability density over the
/// i-th bin, so that Σ density·width = 1 over the in-range samples.
#[derive(Debug, Clone)]
pub struct Histogram {
    /// Lower edge of the range.
    pub lo: f64,
    /// Upper edge of the range.
    pub hi: f64,
    /// Raw in-range counts per bin.
    pub counts: Vec<u64>,
    /// Normalized density per bin.
    pub density: Vec<f64>,
    /// Number of samples that fell inside the range.
    pub total_in_range: u64,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.bins() as f64
    }

    /// Bin centers, for plotting and comparison against reference curves.
    pub fn centers(&self) -> Vec<f64> {
        let w = self.bin_width();
        (0..self.bins())
            .map(|i| self.lo + (i as f64 + 0.5) * w)
            .collect()
    }

    /// Rows (bin_left, bin_right, density), the CSV serialization order.
    pub fn rows(&self) -> Vec<(f64, f64, f64)> {
        let w = self.bin_width();
        self.density
            .iter()
            .enumerate()
            .map(|(i, &d)| (self.lo + i as f64 * w, self.lo + (i + 1) as f64 * w, d))
            .collect()
    }
}

/// Builds a normalized histogram of the samples falling in `range`.
/// Out-of-range samples are dropped; the density integrates to one over the
/// retained ones.
pub fn empirical_density(samples: &[f64], bins: usize, range: (f64, f64)) -> Result<Histogram> {
    if samples.is_empty() {
        return Err(Error::domain("empirical_density requires samples"));
    }
    if bins < 2 {
        return Err(Error::domain(format!("need at least 2 bins, got {bins}")));
    }
    let (lo, hi) = range;
    if !(hi > lo) {
        return Err(Error::domain(format!("invalid range [{lo}, {hi}]")));
    }
    let mut counts = vec![0u64; bins];
    let w = (hi - lo) / bins as f64;
    let mut total = 0u64;
    for &x in samples {
        if x < lo || x > hi || !x.is_finite() {
            continue;
        }
        let idx = (((x - lo) / w) as usize).min(bins - 1);
        counts[idx] += 1;
        total += 1;
    }
    if total == 0 {
        return Err(Error::domain("no samples inside the histogram range"));
    }
    let density = counts
        .iter()
        .map(|&c| c as f64 / (total as f64 * w))
        .collect();
    Ok(Histogram {
        lo,
        hi,
        counts,
        density,
        total_in_range: total,
    })
}

/// One-sample Kolmogorov–Smirnov distance between the empirical CDF of the
/// samples and a reference CDF (which must be monotone over the sample
/// range).  Returns a value in [0, 1]; an empty sample list gives 1.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    if samples.is_empty() {
        return 1.0;
    }
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).expect("NaN sample"));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d.clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov–Smirnov distance (sup difference of the two
/// empirical CDFs).
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 1.0;
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_unstable_by(|p, q| p.partial_cmp(q).expect("NaN sample"));
    ys.sort_unstable_by(|p, q| p.partial_cmp(q).expect("NaN sample"));
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d.clamp(0.0, 1.0)
}

/// Maps eigenangles to locally rescaled coordinates with unit mean spacing:
/// bulk ξ = (θ − α₀)·R/π around the band center z₀ = cos α₀; hard edge at
/// +1: ξ = θ·R/π; hard edge at −1: ξ = (π − θ)·R/π.  Exactly inverts the
/// cosine localization chart x = cos(α₀ + πξ/R).
pub fn rescale_levels(thetas: &[f64], regime: Regime, z_o: f64, r: usize) -> Result<Vec<f64>> {
    if r == 0 {
        return Err(Error::domain("rank must be positive"));
    }
    let scale = r as f64 / std::f64::consts::PI;
    match regime {
        Regime::Bulk => {
            if z_o.abs() >= 1.0 {
                return Err(Error::domain(format!(
                    "bulk rescaling needs |z_o| < 1, got {z_o}"
                )));
            }
            let alpha0 = z_o.acos();
            Ok(thetas.iter().map(|&t| (t - alpha0) * scale).collect())
        }
        Regime::HardEdgePlus => Ok(thetas.iter().map(|&t| t * scale).collect()),
        Regime::HardEdgeMinus => Ok(thetas
            .iter()
            .map(|&t| (std::f64::consts::PI - t) * scale)
            .collect()),
    }
}

/// Estimates the two-level correlation function R₂(r) from per-draw lists of
/// rescaled levels (unit mean spacing).  Reference points are taken in the
/// band |ξ| ≤ window; ordered pairs are binned by gap over [0, window] and
/// normalized by the expected counts of a unit-density Poisson process, so a
/// structureless input gives ≈ 1 in every bin.
pub fn pair_correlation_estimate(
    draws: &[Vec<f64>],
    window: f64,
    bins: usize,
) -> Result<Histogram> {
    if draws.len() < 100 {
        return Err(Error::domain(format!(
            "pair correlation needs at least 100 draws, got {}",
            draws.len()
        )));
    }
    if bins < 2 {
        return Err(Error::domain(format!("need at least 2 bins, got {bins}")));
    }
    if !(window > 0.0) {
        return Err(Error::domain(format!("window must be positive: {window}")));
    }
    let w = window / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut n_ref = 0u64;
    for draw in draws {
        for (i, &xi) in draw.iter().enumerate() {
            if xi.abs() > window {
                continue;
            }
            n_ref += 1;
            for (j, &xj) in draw.iter().enumerate() {
                if i == j {
                    continue;
                }
                let gap = (xj - xi).abs();
                if gap < window {
                    counts[(gap / w) as usize] += 1;
                }
            }
        }
    }
    if n_ref == 0 {
        return Err(Error::domain("no reference levels inside the window"));
    }
    // Expected ordered-pair count per reference per bin is 2·w for a unit
    // Poisson process (both sides of the reference).
    let density = counts
        .iter()
        .map(|&c| c as f64 / (n_ref as f64 * 2.0 * w))
        .collect();
    Ok(Histogram {
        lo: 0.0,
        hi: window,
        counts,
        density,
        total_in_range: n_ref,
    })
}

/// Outcome of one statistical check, serializable into the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct StatReport {
    pub test_name: String,
    pub sample_count: usize,
    pub bins: usize,
    pub ks_distance: Option<f64>,
    pub max_abs_error: Option<f64>,
    pub l2_error: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl StatReport {
    pub fn from_ks(name: impl Into<String>, sample_count: usize, ks: f64, tol: f64) -> Self {
        StatReport {
            test_name: name.into(),
            sample_count,
            bins: 0,
            ks_distance: Some(ks),
            max_abs_error: None,
            l2_error: None,
            tolerance: tol,
            pass: ks <= tol,
        }
    }

    pub fn from_errors(
        name: impl Into<String>,
        sample_count: usize,
        max_abs: f64,
        l2: f64,
        tol: f64,
    ) -> Self {
        StatReport {
            test_name: name.into(),
            sample_count,
            bins: 0,
            ks_distance: None,
            max_abs_error: Some(max_abs),
            l2_error: Some(l2),
            tolerance: tol,
            pass: max_abs <= tol,
        }
    }

    /// The headline metric: KS distance if present, else the max error.
    pub fn metric(&self) -> (&'static str, f64) {
        match (self.ks_distance, self.max_abs_error) {
            (Some(ks), _) => ("ks_distance", ks),
            (None, Some(m)) => ("max_abs_error", m),
            _ => ("metric", f64::NAN),
        }
    }
}

/// Compares a rescaled finite-rank kernel against its limit on a tensor grid
/// for each rank in `r_list`.  Returns one report per rank (max/L2 error,
/// pass ⇔ max error ≤ tolerance at that rank) followed by a trend report
/// whose `max_abs_error` holds the last/first error ratio and which passes
/// iff the max error decreases monotonically along `r_list`.
pub fn convergence_report(
    name: &str,
    mut finite: impl FnMut(usize, f64, f64) -> Result<f64>,
    mut limit: impl FnMut(f64, f64) -> Result<f64>,
    grid: &[f64],
    r_list: &[usize],
    tolerance: f64,
) -> Result<Vec<StatReport>> {
    if grid.is_empty() || r_list.is_empty() {
        return Err(Error::domain("convergence report needs a grid and ranks"));
    }
    let mut reports = Vec::new();
    let mut max_errors = Vec::new();
    for &r in r_list {
        let mut max_err: f64 = 0.0;
        let mut sum_sq = 0.0;
        for &xi in grid {
            for &eta in grid {
                let err = (finite(r, xi, eta)? - limit(xi, eta)?).abs();
                max_err = max_err.max(err);
                sum_sq += err * err;
            }
        }
        let l2 = (sum_sq / (grid.len() * grid.len()) as f64).sqrt();
        reports.push(StatReport::from_errors(
            format!("{name} R={r}"),
            grid.len() * grid.len(),
            max_err,
            l2,
            tolerance,
        ));
        max_errors.push(max_err);
    }
    let monotone = max_errors.windows(2).all(|p| p[1] < p[0]);
    let ratio = max_errors.last().unwrap() / max_errors.first().unwrap().max(f64::MIN_POSITIVE);
    reports.push(StatReport {
        test_name: format!("{name} trend"),
        sample_count: grid.len() * grid.len(),
        bins: 0,
        ks_distance: None,
        max_abs_error: Some(ratio),
        l2_error: None,
        tolerance: 1.0,
        pass: monotone,
    });
    Ok(reports)
}
