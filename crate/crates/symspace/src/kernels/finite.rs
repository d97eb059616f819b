//! Finite-rank correlation kernels on the level interval (−1, 1).
//!
//! The unitary-symmetry class is governed by the Christoffel–Darboux kernel
//! [`cd_kernel`] of the Jacobi weight (1−x)^A(1+x)^B.  The orthogonal and
//! symplectic classes are handled without skew-orthogonal polynomials through
//! the summation kernels [`s_r1`] and [`s_r4`], which add a rank-one
//! correction built from the half-weight functions ψ_N ([`psi`]), their
//! normalizations c_N ([`c_norm`]), and the integral operators [`eps_apply`]
//! and [`delta_apply`].  [`assemble_matrix_kernel`] packs these into the
//! 2n×2n self-dual matrix whose quaternion determinant gives n-level
//! correlations.

use crate::error::{Error, Result};
use crate::kernels::{assemble_blocks, KernelBlock};
use crate::specfun::gamma::binom_real;
use crate::specfun::jacobi::{jacobi_pair, jacobi_poly, jacobi_poly_deriv};
use crate::specfun::quadrature::{gauss_jacobi_rule, integrate_adaptive, QuadratureRule};
use crate::specfun::{gamma_product, log_gamma};
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Switch point between the direct δ integral and its analytic continuation.
const DELTA_SWITCH: f64 = -1.0 + 1e-6;

/// Divided-difference cancellation threshold for the kernel diagonal.
const DIAG_EPS: f64 = 1e-7;

/// Jacobi level weight |1−x|^a |1+x|^b.
///
/// Returns `+∞` at an endpoint whose exponent is negative; callers evaluating
/// densities must keep levels strictly interior in that case.
pub fn weight(x: f64, a: f64, b: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::domain(format!(
            "weight exponents must exceed -1, got a={a}, b={b}"
        )));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("weight argument {x} outside [-1, 1]")));
    }
    if x == 1.0 && a < 0.0 || x == -1.0 && b < 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 - x).powf(a) * (1.0 + x).powf(b))
}

/// Cached evaluator for the rank-N Christoffel–Darboux kernel of the weight
/// (1−x)^a(1+x)^b.
pub(crate) struct CdEngine {
    n: usize,
    a: f64,
    b: f64,
    pre: f64,
}

impl CdEngine {
    pub(crate) fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("cd_kernel rank {n} below 2")));
        }
        if a <= -2.0 || b <= -2.0 {
            return Err(Error::domain(format!(
                "cd_kernel exponents must exceed -2, got a={a}, b={b}"
            )));
        }
        let nf = n as f64;
        let pre = 2f64.powf(-a - b) / (2.0 * nf + a + b)
            * gamma_product(&[nf + 1.0, nf + a + b + 1.0], &[nf + a, nf + b]);
        if !pre.is_finite() || pre == 0.0 {
            return Err(Error::numerical(format!(
                "cd_kernel prefactor degenerate at n={n}, a={a}, b={b}"
            )));
        }
        Ok(CdEngine { n, a, b, pre })
    }

    fn weight_sqrt(&self, x: f64) -> f64 {
        (1.0 - x).powf(0.5 * self.a) * (1.0 + x).powf(0.5 * self.b)
    }

    pub(crate) fn eval(&self, x: f64, y: f64) -> f64 {
        if (x - y).abs() < DIAG_EPS {
            return self.eval_diag(0.5 * (x + y));
        }
        let (pn_x, pn1_x) = jacobi_pair(self.n, self.a, self.b, x);
        let (pn_y, pn1_y) = jacobi_pair(self.n, self.a, self.b, y);
        self.pre * self.weight_sqrt(x) * self.weight_sqrt(y) * (pn_x * pn1_y - pn1_x * pn_y)
            / (x - y)
    }

    pub(crate) fn eval_diag(&self, x: f64) -> f64 {
        let (pn, pn1) = jacobi_pair(self.n, self.a, self.b, x);
        let dpn = jacobi_poly_deriv(self.n, self.a, self.b, x);
        let dpn1 = jacobi_poly_deriv(self.n - 1, self.a, self.b, x);
        let w = (1.0 - x).powf(self.a) * (1.0 + x).powf(self.b);
        self.pre * w * (dpn * pn1 - dpn1 * pn)
    }

    /// ∂K/∂x.  Analytic away from the diagonal; a centered difference takes
    /// over inside |x−y| < 1e−4 where the divided differences cancel.
    pub(crate) fn deriv_x(&self, x: f64, y: f64) -> f64 {
        if (x - y).abs() < 1e-4 {
            let h = 1e-5;
            return (self.eval(x + h, y) - self.eval(x - h, y)) / (2.0 * h);
        }
        let (pn_x, pn1_x) = jacobi_pair(self.n, self.a, self.b, x);
        let (pn_y, pn1_y) = jacobi_pair(self.n, self.a, self.b, y);
        let dpn_x = jacobi_poly_deriv(self.n, self.a, self.b, x);
        let dpn1_x = jacobi_poly_deriv(self.n - 1, self.a, self.b, x);
        let g = pn_x * pn1_y - pn1_x * pn_y;
        let gx = dpn_x * pn1_y - dpn1_x * pn_y;
        let u = 0.5 * (-self.a / (1.0 - x) + self.b / (1.0 + x));
        let ws = self.weight_sqrt(x) * self.weight_sqrt(y);
        self.pre * ws * (u * g / (x - y) + (gx - g / (x - y)) / (x - y))
    }
}

/// Rank-N Christoffel–Darboux kernel K_N^{(a,b)}(x, y) of the Jacobi weight,
/// including the √(w(x)w(y)) factors.  On the diagonal (|x−y| < 1e−7) the
/// confluent form built from polynomial derivatives is used.
pub fn cd_kernel(n: usize, a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    if x.abs() >= 1.0 || y.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "cd_kernel arguments ({x}, {y}) must lie in (-1, 1)"
        )));
    }
    Ok(CdEngine::new(n, a, b)?.eval(x, y))
}

/// Half-weight function ψ_N(t) = (1−t)^{(a−1)/2}(1+t)^{(b−1)/2} P_N^{(a,b)}(t).
pub fn psi(n: usize, a: f64, b: f64, t: f64) -> Result<f64> {
    if t.abs() > 1.0 {
        return Err(Error::domain(format!("psi argument {t} outside [-1, 1]")));
    }
    if (t == 1.0 && a < 1.0) || (t == -1.0 && b < 1.0) {
        return Err(Error::domain(
            "psi endpoint evaluation with negative exponent",
        ));
    }
    Ok(psi_raw(n, a, b, t))
}

fn psi_raw(n: usize, a: f64, b: f64, t: f64) -> f64 {
    (1.0 - t).powf(0.5 * (a - 1.0)) * (1.0 + t).powf(0.5 * (b - 1.0)) * jacobi_poly(n, a, b, t)
}

/// Normalization constant c_N = 2^{−a−b−1} Γ(N+2)Γ(N+a+b+2) / (Γ(N+a+1)Γ(N+b+1))
/// making √(c_N c_{N+1}) ψ_N ψ_{N+1} the natural summation-kernel correction.
pub fn c_norm(n: usize, a: f64, b: f64) -> Result<f64> {
    let nf = n as f64;
    let c = 2f64.powf(-a - b - 1.0)
        * gamma_product(&[nf + 2.0, nf + a + b + 2.0], &[nf + a + 1.0, nf + b + 1.0]);
    if !c.is_finite() {
        return Err(Error::numerical(format!(
            "c_norm degenerate at n={n}, a={a}, b={b}"
        )));
    }
    Ok(c)
}

/// A ψ_N together with its parameters and normalization.
#[derive(Debug, Clone, Copy)]
pub struct PsiData {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub c_n: f64,
}

impl PsiData {
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        Ok(PsiData {
            n,
            a,
            b,
            c_n: c_norm(n, a, b)?,
        })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        psi(self.n, self.a, self.b, t)
    }
}

/// ∫_x^1 (1−t)^p g(t) dt where `rule` integrates the weight (1−u)^p on [−1,1].
///
/// Only [max(x,0), 1] goes through the mapped rule: g may vary sharply near
/// t = −1 (it typically carries a (1+t)^q factor), which would ruin the rule's
/// accuracy once the mapped interval approaches that endpoint. Any remaining
/// piece [x, 0] is smooth and handled adaptively.
fn one_sided_upper(p: f64, g: impl Fn(f64) -> f64, x: f64, rule: &QuadratureRule) -> f64 {
    let lo = x.max(0.0);
    let half = 0.5 * (1.0 - lo);
    let mut s = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        s += w * g(1.0 - half * (1.0 - u));
    }
    s *= half.powf(p + 1.0);
    if x < 0.0 {
        s += integrate_adaptive(|t| (1.0 - t).powf(p) * g(t), x, 0.0, 1e-12);
    }
    s
}

/// ∫_{−1}^x (1+t)^q g(t) dt where `rule` integrates the weight (1+u)^q on [−1,1].
///
/// Mirror image of `one_sided_upper`: the mapped rule covers [−1, min(x,0)]
/// and an adaptive pass covers [0, x] when x > 0.
fn one_sided_lower(q: f64, g: impl Fn(f64) -> f64, x: f64, rule: &QuadratureRule) -> f64 {
    let hi = x.min(0.0);
    let half = 0.5 * (1.0 + hi);
    let mut s = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        s += w * g(-1.0 + half * (1.0 + u));
    }
    s *= half.powf(q + 1.0);
    if x > 0.0 {
        s += integrate_adaptive(|t| (1.0 + t).powf(q) * g(t), 0.0, x, 1e-12);
    }
    s
}

fn eps_with_rules(
    n: usize,
    a: f64,
    b: f64,
    x: f64,
    rule_up: &QuadratureRule,
    rule_lo: &QuadratureRule,
) -> f64 {
    let p = 0.5 * (a - 1.0);
    let q = 0.5 * (b - 1.0);
    let upper = one_sided_upper(
        p,
        |t| (1.0 + t).powf(q) * jacobi_poly(n, a, b, t),
        x,
        rule_up,
    );
    let lower = one_sided_lower(
        q,
        |t| (1.0 - t).powf(p) * jacobi_poly(n, a, b, t),
        x,
        rule_lo,
    );
    0.5 * (lower - upper)
}

/// The antisymmetric smoothing operator applied to ψ_N:
/// (εψ_N)(x) = ½∫_{−1}^x ψ_N − ½∫_x^1 ψ_N.
///
/// Each side is integrated by a Gauss–Jacobi rule whose weight exponent
/// matches the endpoint singularity of ψ_N, so the polynomial factor is
/// integrated exactly.
pub fn eps_apply(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::domain(format!(
            "eps_apply requires a, b > -1 for integrability, got a={a}, b={b}"
        )));
    }
    if x.abs() >= 1.0 {
        return Err(Error::domain(format!("eps_apply point {x} outside (-1, 1)")));
    }
    let m = n / 2 + 8;
    let rule_up = gauss_jacobi_rule(m, 0.5 * (a - 1.0), 0.0)?;
    let rule_lo = gauss_jacobi_rule(m, 0.0, 0.5 * (b - 1.0))?;
    Ok(eps_with_rules(n, a, b, x, &rule_up, &rule_lo))
}

fn delta_direct_with_rule(n: usize, a: f64, b: f64, x: f64, rule: &QuadratureRule) -> f64 {
    let q = 0.5 * (b - 1.0);
    one_sided_upper(
        0.5 * (a - 1.0),
        |t| (1.0 + t).powf(q) * jacobi_poly(n, a, b, t),
        x,
        rule,
    )
}

/// Continuation of ∫_x^1 ψ_N below a = −1: splitting off P_N(1) and
/// integrating the endpoint term by parts leaves only exponents > −1.
fn delta_continued_with_rules(
    n: usize,
    a: f64,
    b: f64,
    x: f64,
    rule_main: &QuadratureRule,
    rule_tail: &QuadratureRule,
) -> f64 {
    let p1 = 0.5 * (a + 1.0);
    let q = 0.5 * (b - 1.0);
    let nf = n as f64;
    let pn_at_one = binom_real(nf + a, n);
    // (P_N(1) − P_N(t))/(1−t) stays well conditioned: P_N'(1) ~ N²/2·P_N(1)
    // dominates the rounding of the numerator.
    let t1 = -one_sided_upper(
        p1,
        |t| (1.0 + t).powf(q) * (pn_at_one - jacobi_poly(n, a, b, t)) / (1.0 - t),
        x,
        rule_main,
    );
    let c = binom_real(nf + a, n - 1);
    let t2 = (2.0 / nf) * c * (1.0 - x).powf(p1) * (1.0 + x).powf(q);
    let t3 = ((b - 1.0) / nf)
        * c
        * one_sided_upper(p1, |t| (1.0 + t).powf(0.5 * (b - 3.0)), x, rule_tail);
    t1 + t2 + t3
}

/// One-sided integral (δψ_N)(x) = ∫_x^1 ψ_N, defined for a > −2.
///
/// For a > −1 the integral converges and is evaluated directly; for
/// −2 < a ≤ −1 it is aliased to its analytic continuation in a, which is what
/// the symplectic-class summation kernel requires.
pub fn delta_apply(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if a <= -2.0 {
        return Err(Error::domain(format!(
            "delta_apply requires a > -2, got a={a}"
        )));
    }
    if !(-1.0 < x && x <= 1.0) {
        return Err(Error::domain(format!("delta_apply point {x} outside (-1, 1]")));
    }
    if x == 1.0 {
        return Ok(0.0);
    }
    let m = n / 2 + 8;
    if a > DELTA_SWITCH {
        let rule = gauss_jacobi_rule(m, 0.5 * (a - 1.0), 0.0)?;
        Ok(delta_direct_with_rule(n, a, b, x, &rule))
    } else {
        if n == 0 {
            return Err(Error::domain(
                "delta_apply continuation needs degree N >= 1",
            ));
        }
        let rule_main = gauss_jacobi_rule(m, 0.5 * (a + 1.0), 0.0)?;
        let rule_tail = gauss_jacobi_rule(40, 0.5 * (a + 1.0), 0.0)?;
        Ok(delta_continued_with_rules(
            n, a, b, x, &rule_main, &rule_tail,
        ))
    }
}

/// ∫ f dθ over [lo, hi] (either orientation) with panels no wider than
/// π/(4·freq) so that oscillation at angular frequency `freq` is resolved,
/// each panel refined adaptively.
fn panel_integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, freq: usize, tol: f64) -> f64 {
    if lo == hi {
        return 0.0;
    }
    let (a, b, sign) = if lo < hi { (lo, hi, 1.0) } else { (hi, lo, -1.0) };
    let len = b - a;
    let max_w = PI / (4.0 * freq.max(1) as f64);
    let n_panels = (len / max_w).ceil().max(1.0) as usize;
    let w = len / n_panels as f64;
    let mut total = 0.0;
    for i in 0..n_panels {
        let pa = a + i as f64 * w;
        let pb = if i + 1 == n_panels { b } else { pa + w };
        total += integrate_adaptive(&f, pa, pb, tol * w / len);
    }
    sign * total
}

/// Cached evaluator for the orthogonal (β = 1) or symplectic (β = 4)
/// summation kernel S_{Rβ}^{(a,b)} at rank R with level-weight exponents
/// (a, b), together with its integrated and differentiated matrix-kernel
/// entries.
pub struct SummationKernel {
    beta: u8,
    r: usize,
    cd: CdEngine,
    /// Multiplier of the Christoffel–Darboux term (1 for β=1, ½ for β=4).
    cd_coef: f64,
    /// Signed coefficient of the rank-one ψ⊗(εψ or δψ) correction.
    r1_coef: f64,
    /// d/dx of the smoothing operator: +ψ for ε, −ψ for δ.
    gprime_sign: f64,
    /// Degree of the ψ factor attached to the second argument.
    n_y: usize,
    /// Degree of the ψ factor inside the integral operator.
    n_x: usize,
    /// Polynomial parameters of all ψ's and the CD kernel.
    pa: f64,
    pb: f64,
    rule_up: Option<QuadratureRule>,
    rule_lo: Option<QuadratureRule>,
    rule_c1: Option<QuadratureRule>,
    rule_c3: Option<QuadratureRule>,
}

impl SummationKernel {
    pub fn new(beta: u8, r: usize, a: f64, b: f64) -> Result<Self> {
        if a <= -1.0 || b <= -1.0 {
            return Err(Error::domain(format!(
                "summation kernel requires a, b > -1, got a={a}, b={b}"
            )));
        }
        let (pa, pb, n_cd, cd_coef, n_y, n_x, r1_sign, gprime_sign) = match beta {
            1 => {
                if r % 2 != 0 || r < 4 {
                    return Err(Error::domain(format!(
                        "orthogonal summation kernel needs even rank >= 4, got {r}"
                    )));
                }
                (2.0 * a + 1.0, 2.0 * b + 1.0, r - 1, 1.0, r - 1, r - 2, 1.0, 1.0)
            }
            4 => {
                if r < 1 {
                    return Err(Error::domain("symplectic kernel needs rank >= 1"));
                }
                (a - 1.0, b - 1.0, 2 * r, 0.5, 2 * r, 2 * r - 1, -0.5, -1.0)
            }
            _ => {
                return Err(Error::domain(format!(
                    "summation kernels exist for beta 1 and 4, got {beta}"
                )))
            }
        };
        let cd = CdEngine::new(n_cd, pa, pb)?;
        let r1_coef = r1_sign * c_norm(n_x, pa, pb)?;
        let m = n_y / 2 + 8;
        let p = 0.5 * (pa - 1.0);
        let q = 0.5 * (pb - 1.0);
        let (rule_up, rule_lo, rule_c1, rule_c3) = if beta == 1 {
            (
                Some(gauss_jacobi_rule(m, p, 0.0)?),
                Some(gauss_jacobi_rule(m, 0.0, q)?),
                None,
                None,
            )
        } else if pa > DELTA_SWITCH {
            (Some(gauss_jacobi_rule(m, p, 0.0)?), None, None, None)
        } else {
            let p1 = 0.5 * (pa + 1.0);
            (
                None,
                None,
                Some(gauss_jacobi_rule(m, p1, 0.0)?),
                Some(gauss_jacobi_rule(40, p1, 0.0)?),
            )
        };
        Ok(SummationKernel {
            beta,
            r,
            cd,
            cd_coef,
            r1_coef,
            gprime_sign,
            n_y,
            n_x,
            pa,
            pb,
            rule_up,
            rule_lo,
            rule_c1,
            rule_c3,
        })
    }

    pub fn beta(&self) -> u8 {
        self.beta
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// (εψ_{n_x})(x) for β=1, (δψ_{n_x})(x) for β=4.
    fn g_at(&self, x: f64) -> f64 {
        if self.beta == 1 {
            eps_with_rules(
                self.n_x,
                self.pa,
                self.pb,
                x,
                self.rule_up.as_ref().unwrap(),
                self.rule_lo.as_ref().unwrap(),
            )
        } else {
            self.delta_at(self.n_x, x)
        }
    }

    /// ∫_x^1 ψ_n with the cached rules (shared by the rank-one term and the
    /// integrated matrix-kernel entry).
    fn delta_at(&self, n: usize, x: f64) -> f64 {
        if x >= 1.0 {
            return 0.0;
        }
        if self.pa > DELTA_SWITCH {
            delta_direct_with_rule(n, self.pa, self.pb, x, self.rule_up.as_ref().unwrap())
        } else {
            delta_continued_with_rules(
                n,
                self.pa,
                self.pb,
                x,
                self.rule_c1.as_ref().unwrap(),
                self.rule_c3.as_ref().unwrap(),
            )
        }
    }

    fn eval_raw(&self, x: f64, y: f64) -> f64 {
        let pre = ((1.0 - x * x) / (1.0 - y * y)).sqrt();
        self.cd_coef * pre * self.cd.eval(x, y)
            + self.r1_coef * psi_raw(self.n_y, self.pa, self.pb, y) * self.g_at(x)
    }

    fn diag_raw(&self, x: f64) -> f64 {
        self.cd_coef * self.cd.eval_diag(x)
            + self.r1_coef * psi_raw(self.n_y, self.pa, self.pb, x) * self.g_at(x)
    }

    /// Kernel value S(x, y) at interior points.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        if x.abs() >= 1.0 || y.abs() >= 1.0 {
            return Err(Error::domain(format!(
                "kernel arguments ({x}, {y}) must lie in (-1, 1)"
            )));
        }
        Ok(self.eval_raw(x, y))
    }

    /// One-level density S(x, x).
    pub fn diag(&self, x: f64) -> Result<f64> {
        if x.abs() >= 1.0 {
            return Err(Error::domain(format!("kernel argument {x} outside (-1, 1)")));
        }
        Ok(self.diag_raw(x))
    }

    /// Integrated entry I(x, y) = −∫_x^y S(x, t) dt.
    ///
    /// The Christoffel–Darboux part is integrated in the angle variable
    /// (where √(1−t²) cancels) over panels fine enough to resolve the rank-R
    /// oscillation; the rank-one part reduces to δψ evaluations.
    fn i_entry(&self, x: f64, y: f64) -> f64 {
        if x == y {
            return 0.0;
        }
        let cd_int = panel_integrate(
            |th| self.cd.eval(x, th.cos()),
            y.acos(),
            x.acos(),
            self.cd.n,
            1e-9,
        );
        let i_cd = -self.cd_coef * (1.0 - x * x).sqrt() * cd_int;
        let rank1 =
            -self.r1_coef * self.g_at(x) * (self.delta_at(self.n_y, x) - self.delta_at(self.n_y, y));
        i_cd + rank1
    }

    /// Derivative entry D(x, y) = ∂S/∂x.
    fn d_entry(&self, x: f64, y: f64) -> f64 {
        let pre = ((1.0 - x * x) / (1.0 - y * y)).sqrt();
        let chain =
            self.cd_coef * pre * (self.cd.deriv_x(x, y) - x / (1.0 - x * x) * self.cd.eval(x, y));
        let r1 = self.r1_coef
            * psi_raw(self.n_y, self.pa, self.pb, y)
            * self.gprime_sign
            * psi_raw(self.n_x, self.pa, self.pb, x);
        chain + r1
    }

    /// The 2×2 quaternion block at (x, y).  Coincident points take the
    /// diagonal form I = D = 0 dictated by the antisymmetry of those entries.
    pub fn block(&self, x: f64, y: f64) -> Result<KernelBlock> {
        if x.abs() >= 1.0 || y.abs() >= 1.0 {
            return Err(Error::domain(format!(
                "kernel arguments ({x}, {y}) must lie in (-1, 1)"
            )));
        }
        Ok(self.block_raw(x, y))
    }

    /// `block` without the domain guard, for callers that validated already.
    fn block_raw(&self, x: f64, y: f64) -> KernelBlock {
        let delta_flag = u8::from(self.beta == 1);
        if x == y {
            let s = self.diag_raw(x);
            return KernelBlock {
                s,
                i_minus: 0.0,
                d: 0.0,
                st: s,
                delta_flag,
            };
        }
        let mut i_minus = self.i_entry(x, y);
        if self.beta == 1 {
            i_minus -= 0.5 * (x - y).signum();
        }
        KernelBlock {
            s: self.eval_raw(x, y),
            i_minus,
            d: self.d_entry(x, y),
            st: self.eval_raw(y, x),
            delta_flag,
        }
    }
}

/// Orthogonal-class summation kernel S_{R1}^{(a,b)}(x, y) for even rank R:
/// the rank-(R−1) Christoffel–Darboux kernel at shifted parameters
/// (2a+1, 2b+1) plus the rank-one correction c_{R−2} ψ_{R−1}(y)(εψ_{R−2})(x).
pub fn s_r1(r: usize, a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    SummationKernel::new(1, r, a, b)?.eval(x, y)
}

/// Symplectic-class summation kernel S_{R4}^{(a,b)}(x, y):
/// ½·(rank-2R Christoffel–Darboux kernel at parameters (a−1, b−1)) minus
/// ½ c_{2R−1} ψ_{2R}(y)(δψ_{2R−1})(x), with δ analytically continued when
/// a ≤ 0 makes the direct integral divergent.
pub fn s_r4(r: usize, a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    SummationKernel::new(4, r, a, b)?.eval(x, y)
}

/// Assembles the 2n×2n self-dual matrix kernel [[S, I−δε], [D, Sᵀ]] of the
/// β ∈ {1, 4} ensemble at the given pairwise-distinct interior points.
pub fn assemble_matrix_kernel(
    beta: u8,
    r: usize,
    a: f64,
    b: f64,
    points: &[f64],
) -> Result<DMatrix<f64>> {
    for (i, &x) in points.iter().enumerate() {
        if x.abs() >= 1.0 {
            return Err(Error::domain(format!("point {x} outside (-1, 1)")));
        }
        if points[..i].contains(&x) {
            return Err(Error::domain(format!("points must be distinct, {x} repeats")));
        }
    }
    let kernel = SummationKernel::new(beta, r, a, b)?;
    Ok(assemble_blocks(points.len(), |j, k| {
        kernel.block_raw(points[j], points[k])
    }))
}

/// log Γ-based reference for tests needing factorial ratios.
#[allow(dead_code)]
fn log_factorial(n: usize) -> f64 {
    log_gamma(n as f64 + 1.0)
}
