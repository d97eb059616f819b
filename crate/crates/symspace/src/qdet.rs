//! Pfaffians, quaternion determinants, and kernel changes of variables.
//!
//! Orthogonal (β = 1) and symplectic (β = 4) n-level correlations are
//! quaternion determinants of self-dual 2n×2n matrices rather than ordinary
//! determinants.  This module supplies the numerical core: a complex
//! [`pfaffian`] via Parlett–Reid congruence tridiagonalization, the
//! quaternion determinant [`qdet`] defined as Pf(JH)/Pf(J), the
//! [`correlation`] dispatcher covering all three symmetry classes, and the
//! change-of-variables maps [`rescale_scalar_kernel`] /
//! [`rescale_matrix_kernel`] that carry a kernel from spectral coordinates
//! to locally rescaled ones while keeping its correlations covariant.

use crate::error::{Error, Result};
use crate::kernels::KernelBlock;
use nalgebra::{Complex, DMatrix};

/// Complex double: the scalar type of all matrix-valued quantities here.
pub type C64 = Complex<f64>;

/// Pivot threshold below which the Pfaffian is declared zero.
const PIVOT_TOL: f64 = 1e-12;

/// Relative antisymmetry / self-duality residual accepted on input matrices.
const STRUCTURE_TOL: f64 = 1e-10;

/// Relative imaginary residue of a quaternion determinant above which the
/// computation is aborted instead of clamped.
const IM_ERROR: f64 = 1e-5;

const ONE: C64 = C64::new(1.0, 0.0);

/// Pfaffian of a complex antisymmetric matrix of even dimension.
///
/// Uses Parlett–Reid elimination: congruence transformations with pair
/// pivoting reduce the matrix to a form whose Pfaffian is the product of the
/// (2k, 2k+1) entries, each row swap flipping the sign.  Input must satisfy
/// ‖A + Aᵀ‖ ≤ 1e−10 ‖A‖ in the Frobenius norm; anything looser is rejected
/// rather than silently antisymmetrized.  An exhausted pivot column (all
/// candidates below 1e−12 relative) short-circuits to zero.
pub fn pfaffian(a: &DMatrix<C64>) -> Result<C64> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::domain(format!(
            "pfaffian requires a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if n % 2 != 0 {
        return Err(Error::domain(format!(
            "pfaffian requires even dimension, got {n}"
        )));
    }
    if n == 0 {
        return Ok(ONE);
    }
    let scale = a.norm();
    let asym = (a + a.transpose()).norm();
    if asym > STRUCTURE_TOL * scale {
        return Err(Error::numerical(format!(
            "matrix is not antisymmetric: ‖A + Aᵀ‖ = {asym:.3e} vs ‖A‖ = {scale:.3e}"
        )));
    }
    let mut m = a.clone_owned();
    let mut pf = ONE;
    for k in (0..n).step_by(2) {
        let mut p = k + 1;
        let mut best = m[(k + 1, k)].norm();
        for i in k + 2..n {
            let v = m[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best <= PIVOT_TOL * scale.max(1.0) {
            return Ok(C64::new(0.0, 0.0));
        }
        if p != k + 1 {
            m.swap_rows(p, k + 1);
            m.swap_columns(p, k + 1);
            pf = -pf;
        }
        let piv = m[(k + 1, k)];
        for i in k + 2..n {
            let f = m[(i, k)] / piv;
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let upd = f * m[(k + 1, j)];
                m[(i, j)] -= upd;
            }
            for j in 0..n {
                let upd = f * m[(j, k + 1)];
                m[(j, i)] -= upd;
            }
        }
        pf *= m[(k, k + 1)];
    }
    Ok(pf)
}

/// The 2n×2n block matrix J = [[0, Iₙ], [−Iₙ, 0]] matching the row/column
/// layout of [`crate::kernels::assemble_blocks`].
fn block_j(n: usize) -> DMatrix<C64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = ONE;
        j[(n + i, i)] = -ONE;
    }
    j
}

/// Quaternion determinant qdet H = Pf(JH)/Pf(J) of a self-dual matrix in
/// block layout.
///
/// Self-duality H = JHᵀJᵀ is exactly the condition that JH be antisymmetric;
/// it is checked to ‖H − JHᵀJᵀ‖ ≤ 1e−10 ‖H‖ before the Pfaffians are taken.
/// The normalization by Pf(J) pins the sign so that qdet(I) = 1, and
/// (qdet H)² = det H.
pub fn qdet(h: &DMatrix<C64>) -> Result<C64> {
    let n2 = h.nrows();
    if h.ncols() != n2 || n2 == 0 || n2 % 2 != 0 {
        return Err(Error::domain(format!(
            "qdet requires a nonempty square matrix of even dimension, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let j = block_j(n2 / 2);
    let jh = &j * h;
    let resid = (&jh + jh.transpose()).norm();
    if resid > STRUCTURE_TOL * h.norm().max(1.0) {
        return Err(Error::numerical(format!(
            "matrix is not self-dual: ‖JH + (JH)ᵀ‖ = {resid:.3e}"
        )));
    }
    Ok(pfaffian(&jh)? / pfaffian(&j)?)
}

/// Quaternion determinant of a real self-dual matrix.  The arithmetic stays
/// real, so the result is returned without an imaginary-residue check.
pub fn qdet_real(h: &DMatrix<f64>) -> Result<f64> {
    Ok(qdet(&h.map(|x| C64::new(x, 0.0)))?.re)
}

/// Kernel evaluator accepted by [`correlation`]: a scalar kernel for the
/// unitary class, a 2×2 quaternion block for the orthogonal and symplectic
/// classes.
pub enum KernelEvaluator<'a> {
    /// β = 2 scalar kernel S(x, y).
    Scalar(&'a dyn Fn(f64, f64) -> Result<f64>),
    /// β ∈ {1, 4} quaternion block at (x, y).
    Block(&'a dyn Fn(f64, f64) -> Result<KernelBlock>),
}

/// n-level correlation function ρₙ(x₁, …, xₙ).
///
/// For β = 2 this is det[S(xⱼ, xₖ)] of the scalar kernel; for β ∈ {1, 4} it
/// is the quaternion determinant of the assembled 2n×2n self-dual matrix.
/// Points must be pairwise distinct (coincidences are limits handled by the
/// kernels' diagonal forms, via a lower-order correlation).  Any imaginary
/// residue of the quaternion determinant is clamped away; a relative residue
/// above 1e−5 aborts with a numerical error.
pub fn correlation(beta: u8, kernel: &KernelEvaluator, points: &[f64]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::domain("correlation requires at least one point"));
    }
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            if x == y {
                return Err(Error::domain(format!(
                    "correlation points must be pairwise distinct, got {x} twice"
                )));
            }
        }
    }
    let n = points.len();
    match (beta, kernel) {
        (2, KernelEvaluator::Scalar(f)) => {
            let mut m = DMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    m[(j, k)] = f(points[j], points[k])?;
                }
            }
            Ok(m.determinant())
        }
        (1 | 4, KernelEvaluator::Block(f)) => {
            let mut m = DMatrix::zeros(2 * n, 2 * n);
            for j in 0..n {
                for k in 0..n {
                    let b = f(points[j], points[k])?;
                    m[(j, k)] = C64::new(b.s, 0.0);
                    m[(j, n + k)] = C64::new(b.i_minus, 0.0);
                    m[(n + j, k)] = C64::new(b.d, 0.0);
                    m[(n + j, n + k)] = C64::new(b.st, 0.0);
                }
            }
            let q = qdet(&m)?;
            if q.im.abs() > IM_ERROR * q.re.abs().max(1.0) {
                return Err(Error::numerical(format!(
                    "quaternion determinant has imaginary residue {:.3e}",
                    q.im
                )));
            }
            Ok(q.re)
        }
        (2, KernelEvaluator::Block(_)) => Err(Error::domain(
            "beta = 2 correlations take a scalar kernel evaluator",
        )),
        (1 | 4, KernelEvaluator::Scalar(_)) => Err(Error::domain(
            "beta = 1 and beta = 4 correlations take a block kernel evaluator",
        )),
        _ => Err(Error::domain(format!(
            "beta must be 1, 2, or 4, got {beta}"
        ))),
    }
}

/// A monotone change of variables u ↦ X(u) together with its derivative,
/// used to move kernels between global spectral coordinates and locally
/// rescaled ones (e.g. X(u) = cos(α₀ + πu/R) for bulk scaling).
pub struct ChangeOfVariables<'a> {
    /// The map X itself.
    pub map: &'a dyn Fn(f64) -> f64,
    /// Its derivative X′.
    pub deriv: &'a dyn Fn(f64) -> f64,
}

impl ChangeOfVariables<'_> {
    fn jacobians(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        let du = (self.deriv)(u);
        let dv = (self.deriv)(v);
        if du == 0.0 || dv == 0.0 || (du > 0.0) != (dv > 0.0) {
            return Err(Error::domain(
                "change of variables is not monotone over the evaluated points",
            ));
        }
        Ok((du, dv))
    }
}

/// Rescaled scalar kernel 𝒦(u, v) = √|X′(u) X′(v)| · K(X(u), X(v)).
///
/// Determinantal correlations transform covariantly: every n-point
/// determinant of 𝒦 equals the corresponding determinant of K at the mapped
/// points times Π|X′(uⱼ)|, which is precisely how a density of levels
/// transforms.  A vanishing or sign-changing X′ across an evaluated pair
/// (non-monotone map) is rejected.
pub fn rescale_scalar_kernel<'a>(
    kernel: &'a dyn Fn(f64, f64) -> Result<f64>,
    change: &'a ChangeOfVariables<'a>,
) -> impl Fn(f64, f64) -> Result<f64> + 'a {
    move |u, v| {
        let (du, dv) = change.jacobians(u, v)?;
        Ok((du * dv).abs().sqrt() * kernel((change.map)(u), (change.map)(v))?)
    }
}

/// Rescaled matrix kernel.  With σ = sign X′ and Λ the Jacobian factors:
///
/// * 𝒮(u, v)  = S(X(u), X(v)) · |X′(v)|
/// * 𝒮ᵀ(u, v) = Sᵀ(X(u), X(v)) · |X′(u)|
/// * (ℐ−ε)(u, v) = σ · (I−ε)(X(u), X(v))
/// * 𝒟(u, v)  = σ · D(X(u), X(v)) · |X′(u) X′(v)|
///
/// This is the unique scaling that preserves the defining relations
/// ℐ(u, v) = −∫ᵤᵛ 𝒮(u, t) dt and 𝒟 = ∂ᵤ𝒮 in the new coordinates: an
/// orientation-reversing map flips ℐ, ε, and 𝒟 together, which conjugates
/// the assembled self-dual matrix by diag(1, −1) blocks and therefore leaves
/// quaternion-determinant correlations covariant with the positive factors
/// Π|X′(uⱼ)| for either orientation.
pub fn rescale_matrix_kernel<'a>(
    kernel: &'a dyn Fn(f64, f64) -> Result<KernelBlock>,
    change: &'a ChangeOfVariables<'a>,
) -> impl Fn(f64, f64) -> Result<KernelBlock> + 'a {
    move |u, v| {
        let (du, dv) = change.jacobians(u, v)?;
        let sg = du.signum();
        let b = kernel((change.map)(u), (change.map)(v))?;
        Ok(KernelBlock {
            s: b.s * dv.abs(),
            i_minus: sg * b.i_minus,
            d: sg * b.d * (du * dv).abs(),
            st: b.st * du.abs(),
            delta_flag: b.delta_flag,
        })
    }
}
