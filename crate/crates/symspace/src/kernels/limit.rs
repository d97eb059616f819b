//! Limiting local kernels: the bulk sine kernel, the hard-edge Bessel kernel,
//! the one-level densities they induce, and the 2×2 matrix extensions used by
//! the β = 1 and β = 4 correlation functions.
//!
//! Conventions. Local coordinates are measured in mean level spacings, so the
//! bulk density is identically 1 and every kernel below is dimensionless. The
//! scalar Bessel kernel with exponent `a` is
//!
//! K̂₂⁽ᵃ⁾(ξ,η) = √(ξη)/(ξ²−η²) · [πξ J_{a+1}(πξ)J_a(πη) − J_a(πξ) πη J_{a+1}(πη)],
//!
//! with the confluent diagonal (π/2)(πξ)[J_a² − J_{a−1}J_{a+1}](πξ). The β = 1
//! and β = 4 S-entries add a rank-one Bessel term to a reindexed K̂₂; their I
//! and D entries are the primitive (−∫_ξ^η S(ξ,t)dt) and the ∂_ξ derivative,
//! exactly as for the finite-rank kernels. At the left spectral edge the
//! kernels are the mirror image x → −x of the right-edge ones with the two
//! weight exponents swapped, so a single code path serves both edges.

use crate::error::{Error, Result};
use crate::kernels::KernelBlock;
use crate::specfun::quadrature::integrate_adaptive;
use crate::specfun::{bessel_j, bessel_j_primitive, sine_integral};
use std::f64::consts::PI;

/// Same diagonal-confluence threshold as the finite-rank kernels.
const DIAG_EPS: f64 = 1e-7;

/// Separation below which ∂_ξ falls back to a centered difference of the
/// S-entry (the analytic form divides by (ξ²−η²)²).
const DERIV_SWITCH: f64 = 1e-4;

/// Macroscopic level density of the angle-cosines: the arcsine law
/// 1/(π√(1−x²)) on (−1,1).
pub fn global_density(x: f64) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!(
            "global_density needs |x| < 1, got {x}"
        )));
    }
    Ok(1.0 / (PI * (1.0 - x * x).sqrt()))
}

fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-8 {
        1.0 - z * z / 6.0
    } else {
        z.sin() / z
    }
}

fn sinc_prime(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        z * (-1.0 / 3.0 + z * z / 30.0)
    } else {
        (z.cos() - sinc(z)) / z
    }
}

fn eps_sign(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else {
        0.5 * z.signum()
    }
}

/// Scalar sine kernel sin(π(ξ−η))/(π(ξ−η)); 1 on the diagonal.
pub fn sine_scalar(xi: f64, eta: f64) -> f64 {
    sinc(PI * (xi - eta))
}

/// 2×2 matrix sine-kernel entries for β ∈ {1,4} at one pair of points.
///
/// β = 4 is the scalar kernel at doubled arguments; β = 1 is the scalar
/// kernel itself with the extra −ε(ξ−η) in the I slot. I and D have closed
/// forms through the sine integral and the sinc derivative.
pub fn sine_matrix(beta: u8, xi: f64, eta: f64) -> Result<KernelBlock> {
    let scale = match beta {
        1 => 1.0,
        4 => 2.0,
        _ => {
            return Err(Error::domain(format!(
                "matrix sine kernel defined for beta 1 or 4, got {beta}"
            )))
        }
    };
    let d = xi - eta;
    let s = sinc(scale * PI * d);
    let (i_minus, dv) = if d == 0.0 {
        (0.0, 0.0)
    } else {
        let i = -sine_integral(scale * PI * -d) / (scale * PI)
            - if beta == 1 { eps_sign(d) } else { 0.0 };
        (i, scale * PI * sinc_prime(scale * PI * d))
    };
    Ok(KernelBlock {
        s,
        i_minus,
        d: dv,
        st: s,
        delta_flag: u8::from(beta == 1),
    })
}

/// κ_α(x,y) = x J_{α+1/2}(x) J_{α−1/2}(y) − J_{α−1/2}(x) y J_{α+1/2}(y):
/// the antisymmetric Bessel cross term the hard-edge kernels are built from.
pub(crate) fn kappa(alpha: f64, x: f64, y: f64) -> f64 {
    x * bessel_j(alpha + 0.5, x) * bessel_j(alpha - 0.5, y)
        - bessel_j(alpha - 0.5, x) * y * bessel_j(alpha + 0.5, y)
}

/// Diagonal of the scalar Bessel kernel: (π/2)(πξ)[J_a² − J_{a−1}J_{a+1}](πξ).
fn rho2_closed(a: f64, xi: f64) -> f64 {
    let z = PI * xi;
    0.5 * PI * z * (bessel_j(a, z).powi(2) - bessel_j(a - 1.0, z) * bessel_j(a + 1.0, z))
}

/// K̂₂⁽ᵃ⁾ without domain checks; `a` may lie below −1 here because the matrix
/// kernels evaluate it at shifted indices.
fn k2hat(a: f64, xi: f64, eta: f64) -> f64 {
    if (xi - eta).abs() < DIAG_EPS {
        return rho2_closed(a, 0.5 * (xi + eta));
    }
    (xi * eta).sqrt() / (xi * xi - eta * eta) * kappa(a + 0.5, PI * xi, PI * eta)
}

/// ∂/∂x K̂₂⁽ᵃ⁾(x,y), valid away from the diagonal.
fn k2hat_dx(a: f64, x: f64, y: f64) -> f64 {
    let (u, v) = (PI * x, PI * y);
    let jau = bessel_j(a, u);
    let ja1u = bessel_j(a + 1.0, u);
    let jav = bessel_j(a, v);
    let ja1v = bessel_j(a + 1.0, v);
    let kap = u * ja1u * jav - jau * v * ja1v;
    // ∂_u κ via J'_ν = J_{ν−1} − (ν/z)J_ν applied at ν = a+1 and
    // J'_ν = (ν/z)J_ν − J_{ν+1} at ν = a, keeping only orders a, a+1.
    let dkap = (u * jau - a * ja1u) * jav - ((a / u) * jau - ja1u) * v * ja1v;
    let pre = (x * y).sqrt() / (x * x - y * y);
    pre * (0.5 / x - 2.0 * x / (x * x - y * y)) * kap + pre * PI * dkap
}

/// Scalar hard-edge (Bessel) kernel with exponent a > −1 at positive ξ, η;
/// confluent closed form within `DIAG_EPS` of the diagonal.
pub fn bessel_scalar(a: f64, xi: f64, eta: f64) -> Result<f64> {
    if a <= -1.0 {
        return Err(Error::domain(format!(
            "bessel_scalar needs exponent a > -1, got {a}"
        )));
    }
    if xi <= 0.0 || eta <= 0.0 {
        return Err(Error::domain(format!(
            "bessel_scalar needs positive local coordinates, got ({xi}, {eta})"
        )));
    }
    Ok(k2hat(a, xi, eta))
}

/// ∫_{πξ}^∞ J_ν = 1 − ∫₀^{πξ} J_ν, using that the full integral of J_ν is 1.
fn bessel_tail(nu: f64, z: f64) -> f64 {
    1.0 - bessel_j_primitive(nu, z)
}

/// S-entry of the β = 1 hard-edge matrix kernel.
fn s1_entry(a: f64, xi: f64, eta: f64) -> f64 {
    (xi / eta).sqrt() * k2hat(2.0 * a + 1.0, xi, eta)
        + 0.5 * PI * bessel_j(2.0 * a + 1.0, PI * eta) * bessel_tail(2.0 * a + 1.0, PI * xi)
}

/// S-entry of the β = 4 hard-edge matrix kernel. The primitive at index
/// a − 1 ≤ −1 is the analytically continued one.
fn s4_entry(a: f64, xi: f64, eta: f64) -> f64 {
    (xi / eta).sqrt() * k2hat(a - 1.0, 2.0 * xi, 2.0 * eta)
        - 0.5
            * PI
            * bessel_j(a - 1.0, 2.0 * PI * eta)
            * bessel_j_primitive(a - 1.0, 2.0 * PI * xi)
}

fn s_edge(beta: u8, a: f64, xi: f64, eta: f64) -> f64 {
    if beta == 1 {
        s1_entry(a, xi, eta)
    } else {
        s4_entry(a, xi, eta)
    }
}

/// ∂_ξ of the hard-edge S-entry: analytic away from the diagonal, centered
/// difference of the S-entry inside `DERIV_SWITCH`.
fn d_edge(beta: u8, a: f64, xi: f64, eta: f64) -> f64 {
    if (xi - eta).abs() < DERIV_SWITCH {
        let h = 1e-5_f64.min(0.5 * xi);
        return (s_edge(beta, a, xi + h, eta) - s_edge(beta, a, xi - h, eta)) / (2.0 * h);
    }
    if beta == 1 {
        let idx = 2.0 * a + 1.0;
        0.5 / (xi * eta).sqrt() * k2hat(idx, xi, eta)
            + (xi / eta).sqrt() * k2hat_dx(idx, xi, eta)
            - 0.5 * PI * PI * bessel_j(idx, PI * eta) * bessel_j(idx, PI * xi)
    } else {
        let idx = a - 1.0;
        0.5 / (xi * eta).sqrt() * k2hat(idx, 2.0 * xi, 2.0 * eta)
            + (xi / eta).sqrt() * 2.0 * k2hat_dx(idx, 2.0 * xi, 2.0 * eta)
            - PI * PI * bessel_j(idx, 2.0 * PI * eta) * bessel_j(idx, 2.0 * PI * xi)
    }
}

/// One-level density at the hard edge for β ∈ {1,2,4} with exponent a > −1.
pub fn edge_density(beta: u8, a: f64, xi: f64) -> Result<f64> {
    if a <= -1.0 {
        return Err(Error::domain(format!(
            "edge_density needs exponent a > -1, got {a}"
        )));
    }
    if xi <= 0.0 {
        return Err(Error::domain(format!(
            "edge_density needs positive local coordinate, got {xi}"
        )));
    }
    match beta {
        2 => Ok(rho2_closed(a, xi)),
        1 => {
            let idx = 2.0 * a + 1.0;
            Ok(rho2_closed(idx, xi)
                + 0.5 * PI * bessel_j(idx, PI * xi) * bessel_tail(idx, PI * xi))
        }
        4 => {
            let z = 2.0 * PI * xi;
            Ok(rho2_closed(a, 2.0 * xi)
                - 0.5 * PI * bessel_j(a - 1.0, z) * bessel_j_primitive(a + 1.0, z))
        }
        _ => Err(Error::domain(format!(
            "edge_density defined for beta in {{1,2,4}}, got {beta}"
        ))),
    }
}

/// 2×2 matrix hard-edge kernel entries for β ∈ {1,4} with exponent a > −1.
///
/// S per the summation-formula limits, I = −∫_ξ^η S(ξ,t)dt by adaptive
/// quadrature (minus ε(ξ−η) when β = 1), D = ∂_ξ S, Sᵀ the arguments swapped.
pub fn bessel_matrix(beta: u8, a: f64, xi: f64, eta: f64) -> Result<KernelBlock> {
    if !matches!(beta, 1 | 4) {
        return Err(Error::domain(format!(
            "matrix Bessel kernel defined for beta 1 or 4, got {beta}"
        )));
    }
    if a <= -1.0 {
        return Err(Error::domain(format!(
            "bessel_matrix needs exponent a > -1, got {a}"
        )));
    }
    if xi <= 0.0 || eta <= 0.0 {
        return Err(Error::domain(format!(
            "bessel_matrix needs positive local coordinates, got ({xi}, {eta})"
        )));
    }
    let s = s_edge(beta, a, xi, eta);
    let st = s_edge(beta, a, eta, xi);
    let (i_minus, d) = if xi == eta {
        (0.0, 0.0)
    } else {
        let integral = integrate_adaptive(|t| s_edge(beta, a, xi, t), xi, eta, 1e-11);
        let i = -integral - if beta == 1 { eps_sign(xi - eta) } else { 0.0 };
        (i, d_edge(beta, a, xi, eta))
    };
    Ok(KernelBlock {
        s,
        i_minus,
        d,
        st,
        delta_flag: u8::from(beta == 1),
    })
}

/// Local scaling regime at which a limiting kernel is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Bulk,
    HardEdgePlus,
    HardEdgeMinus,
}

/// A fully specified limiting kernel: β, regime, and the two weight
/// exponents. The minus edge mirrors x → −x, which swaps the roles of the
/// exponents, so it evaluates the plus-edge kernel with b in place of a.
#[derive(Clone, Copy, Debug)]
pub struct LimitKernelSpec {
    pub beta: u8,
    pub regime: Regime,
    pub a: f64,
    pub b: f64,
}

impl LimitKernelSpec {
    fn edge_exponent(&self) -> f64 {
        match self.regime {
            Regime::HardEdgeMinus => self.b,
            _ => self.a,
        }
    }

    /// One-level density in local coordinates (identically 1 in the bulk).
    pub fn density(&self, xi: f64) -> Result<f64> {
        match self.regime {
            Regime::Bulk => Ok(1.0),
            _ => edge_density(self.beta, self.edge_exponent(), xi),
        }
    }

    /// Scalar kernel value; requires β = 2.
    pub fn scalar(&self, xi: f64, eta: f64) -> Result<f64> {
        if self.beta != 2 {
            return Err(Error::domain(format!(
                "scalar limiting kernel requires beta = 2, got {}",
                self.beta
            )));
        }
        match self.regime {
            Regime::Bulk => Ok(sine_scalar(xi, eta)),
            _ => bessel_scalar(self.edge_exponent(), xi, eta),
        }
    }

    /// Matrix-kernel entries; requires β ∈ {1,4}.
    pub fn block(&self, xi: f64, eta: f64) -> Result<KernelBlock> {
        if !matches!(self.beta, 1 | 4) {
            return Err(Error::domain(format!(
                "matrix limiting kernel requires beta 1 or 4, got {}",
                self.beta
            )));
        }
        match self.regime {
            Regime::Bulk => sine_matrix(self.beta, xi, eta),
            _ => bessel_matrix(self.beta, self.edge_exponent(), xi, eta),
        }
    }
}

/// Affine-in-angle local coordinates around a center level z_o = cos α_o:
/// x(ξ) = cos(α_o + (π/R)ξ), which stretches angles by the factor R/π that
/// makes the mean local spacing 1.
#[derive(Clone, Copy, Debug)]
pub struct LocalCoords {
    pub z_o: f64,
    pub alpha_o: f64,
    pub r: usize,
}

impl LocalCoords {
    pub fn new(z_o: f64, r: usize) -> Result<Self> {
        if !(-1.0..=1.0).contains(&z_o) {
            return Err(Error::domain(format!(
                "local chart center {z_o} outside [-1, 1]"
            )));
        }
        if r == 0 {
            return Err(Error::domain("local chart needs rank >= 1"));
        }
        Ok(Self {
            z_o,
            alpha_o: z_o.acos(),
            r,
        })
    }

    /// The angle α_o + (π/R)ξ of the point with local coordinate ξ.
    pub fn angle(&self, xi: f64) -> f64 {
        self.alpha_o + PI * xi / self.r as f64
    }

    /// Global coordinate x(ξ) = cos(angle(ξ)).
    pub fn x(&self, xi: f64) -> f64 {
        self.angle(xi).cos()
    }

    /// dx/dξ, the Jacobian needed to rescale kernels into this chart.
    pub fn x_prime(&self, xi: f64) -> f64 {
        -PI / self.r as f64 * self.angle(xi).sin()
    }
}
