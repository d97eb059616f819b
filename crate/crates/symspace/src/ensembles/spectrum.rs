//! Spectrum extraction: from a realized matrix H (normal, unit-modulus
//! eigenvalues) to the R fundamental eigenangles θ_j ∈ [0, π].
//!
//! The eigenvalues are read off the Hermitian part (H + H†)/2, whose
//! spectrum is exactly {cos θ} with the same multiplicities: this halves the
//! work relative to a general complex eigensolver and lands directly in the
//! folded coordinate.  Unit modulus is certified up front by the unitarity
//! residual (for a normal matrix the singular values are the |λ|).

use super::{haar_sample, realize, EnsembleSpec};
use crate::error::{Error, Result};
use crate::qdet::C64;
use nalgebra::DMatrix;
use rand::Rng;

/// |λ| may deviate from 1 by at most this much.
const MODULUS_TOL: f64 = 1e-8;
/// Angle tolerance for recognizing forced eigenvalues and grouped folds.
const ANGLE_TOL: f64 = 1e-6;
/// Cosine-scale companion to [`ANGLE_TOL`]: near θ = 0 or π an eigenvalue
/// perturbation ε maps to an angle shift of √(2ε), so recognition there must
/// compare in the eigenvalue variable, not the angle.
const COS_TOL: f64 = 1e-9;

/// The folded spectrum of one realized matrix.
#[derive(Debug, Clone)]
pub struct SpectrumSample {
    /// The R fundamental angles, ascending in [0, π].
    pub thetas: Vec<f64>,
    /// Levels x_j = cos θ_j (descending, matching `thetas`).
    pub levels: Vec<f64>,
    /// Multiplicity of the forced eigenvalue +1 that was removed.
    pub forced: usize,
    /// 2 when each angle carries a Kramers-doubled pair, else 1.
    pub pair_multiplicity: usize,
    /// Number of adjacent angle groups closer than the grouping tolerance
    /// (degenerate draws are kept, not rejected; this is the audit counter).
    pub degenerate_groups: usize,
}

/// Extracts the folded spectrum of a realized matrix, removing the family's
/// forced +1 eigenvalues and collapsing conjugate pairs / doubled pairs into
/// single angles.
pub fn spectrum(spec: &EnsembleSpec, h: &DMatrix<C64>) -> Result<SpectrumSample> {
    let dim = spec.matrix_dim();
    if h.nrows() != dim || h.ncols() != dim {
        return Err(Error::domain(format!(
            "expected a {dim}×{dim} matrix, got {}×{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let eye = DMatrix::<C64>::identity(dim, dim);
    let unit_res = (h.adjoint() * h - eye).norm();
    if !(unit_res <= MODULUS_TOL) {
        return Err(Error::numerical(format!(
            "eigenvalue moduli deviate from 1 (unitarity residual {unit_res:.3e})"
        )));
    }
    let herm = (h + h.adjoint()).scale(0.5);
    let eig = herm.symmetric_eigen().eigenvalues;
    let mut angles: Vec<f64> = Vec::with_capacity(dim);
    for &x in eig.iter() {
        if x.abs() > 1.0 + MODULUS_TOL {
            return Err(Error::numerical(format!(
                "cosine eigenvalue {x} outside [-1, 1]"
            )));
        }
        angles.push(x.clamp(-1.0, 1.0).acos());
    }
    angles.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    let forced = spec.forced_multiplicity();
    for &t in &angles[..forced] {
        if 1.0 - t.cos() > COS_TOL {
            return Err(Error::numerical(format!(
                "forced eigenvalue missing: nearest angle {t:.3e}"
            )));
        }
    }
    let fold = spec.fold_degeneracy();
    let free = &angles[forced..];
    debug_assert_eq!(free.len(), spec.r * fold);
    let mut thetas = Vec::with_capacity(spec.r);
    for chunk in free.chunks_exact(fold) {
        let spread = chunk[fold - 1] - chunk[0];
        let cos_spread = (chunk[0].cos() - chunk[fold - 1].cos()).abs();
        if spread > ANGLE_TOL && cos_spread > COS_TOL {
            return Err(Error::numerical(format!(
                "eigenvalue grouping inconsistent: fold spread {spread:.3e}"
            )));
        }
        thetas.push(chunk.iter().sum::<f64>() / fold as f64);
    }
    let degenerate_groups = thetas.windows(2).filter(|w| w[1] - w[0] < ANGLE_TOL).count();
    let levels = thetas.iter().map(|t| t.cos()).collect();
    Ok(SpectrumSample {
        thetas,
        levels,
        forced,
        pair_multiplicity: spec.pair_multiplicity(),
        degenerate_groups,
    })
}

/// Haar draw → realization → folded spectrum, in one call.
pub fn sample_spectrum(spec: &EnsembleSpec, rng: &mut impl Rng) -> Result<SpectrumSample> {
    let g = haar_sample(spec.group(), rng)?;
    let h = realize(spec, &g)?;
    spectrum(spec, &h)
}

/// Full-circle eigenangles in (−π, π], ascending, for a unitary matrix whose
/// repeated eigenvalues are genuinely equal (circular-family draws and their
/// Kramers doubles).  The sine of each angle is recovered as a Rayleigh
/// quotient of the anti-Hermitian part on the Hermitian part's eigenvectors,
/// which is exact unless distinct eigenvalues λ ≠ λ̄ share a cosine — that is
/// the conjugate-paired case, where the fundamental domain [0, π] and
/// [`spectrum`] are the right tools.
pub fn circular_angles(h: &DMatrix<C64>) -> Result<Vec<f64>> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::domain("matrix must be square"));
    }
    let eye = DMatrix::<C64>::identity(n, n);
    let unit_res = (h.adjoint() * h - eye).norm();
    if !(unit_res <= MODULUS_TOL) {
        return Err(Error::numerical(format!(
            "matrix is not unitary (residual {unit_res:.3e})"
        )));
    }
    let herm = (h + h.adjoint()).scale(0.5);
    let skew = (h - h.adjoint()).scale(0.5) * C64::new(0.0, -1.0);
    let eig = herm.symmetric_eigen();
    let mut angles = Vec::with_capacity(n);
    for k in 0..n {
        let v = eig.eigenvectors.column(k);
        let s = (v.adjoint() * &skew * v)[(0, 0)].re;
        let c = eig.eigenvalues[k];
        angles.push(s.atan2(c));
    }
    angles.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(angles)
}
