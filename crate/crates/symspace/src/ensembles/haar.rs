//! Haar-distributed samples from the classical compact groups.
//!
//! All samplers use the Gaussian-matrix factorization: a Ginibre matrix (real,
//! complex, or quaternion-structured complex) is orthonormalized by modified
//! Gram–Schmidt.  Because Gram–Schmidt produces the unique QR factor with
//! positive diagonal R, the resulting Q is exactly Haar — no rejection, no
//! phase fixing.  SO(n) is obtained from O(n) by flipping the last column of
//! draws landing in the det = −1 component (right translation by a fixed
//! reflection, which pushes Haar forward to Haar).

use crate::error::{Error, Result};
use crate::qdet::C64;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// A classical compact group together with its matrix size: `U(n)`, `O(n)`,
/// `SO(n)`, and `USp(size)` with even `size` (the ambient 2N×2N complex form).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    U(usize),
    O(usize),
    SO(usize),
    USp(usize),
}

impl Group {
    /// Matrix side length.
    pub fn dim(&self) -> usize {
        match *self {
            Group::U(n) | Group::O(n) | Group::SO(n) | Group::USp(n) => n,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Group::U(n) => format!("U({n})"),
            Group::O(n) => format!("O({n})"),
            Group::SO(n) => format!("SO({n})"),
            Group::USp(n) => format!("USp({n})"),
        }
    }
}

fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn gauss_c(rng: &mut impl Rng) -> C64 {
    C64::new(gauss(rng), gauss(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// Modified Gram–Schmidt in place; returns false if a column degenerates
/// (probability zero for Gaussian input).
fn orthonormalize(m: &mut DMatrix<C64>) -> bool {
    let n = m.ncols();
    for j in 0..n {
        for i in 0..j {
            let qi = m.column(i).into_owned();
            let proj = qi.dotc(&m.column(j));
            let mut col = m.column_mut(j);
            col.axpy(-proj, &qi, C64::new(1.0, 0.0));
        }
        let norm = m.column(j).norm();
        if norm < 1e-12 {
            return false;
        }
        m.column_mut(j).unscale_mut(norm);
    }
    true
}

/// The symplectic partner τ(v) = J·conj(v) = (−ȳ; x̄) for v = (x; y).
fn symplectic_partner(v: &DVector<C64>) -> DVector<C64> {
    let half = v.len() / 2;
    let mut out = DVector::zeros(v.len());
    for k in 0..half {
        out[k] = -v[half + k].conj();
        out[half + k] = v[k].conj();
    }
    out
}

fn haar_unitary(n: usize, rng: &mut impl Rng) -> DMatrix<C64> {
    loop {
        let mut z = DMatrix::from_fn(n, n, |_, _| gauss_c(rng));
        if orthonormalize(&mut z) {
            return z;
        }
    }
}

fn haar_orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<C64> {
    loop {
        let mut z = DMatrix::from_fn(n, n, |_, _| C64::new(gauss(rng), 0.0));
        if orthonormalize(&mut z) {
            return z;
        }
    }
}

fn haar_special_orthogonal(n: usize, rng: &mut impl Rng) -> DMatrix<C64> {
    let mut g = haar_orthogonal(n, rng);
    let det = g.clone().determinant();
    if det.re < 0.0 {
        let last = n - 1;
        for i in 0..n {
            g[(i, last)] = -g[(i, last)];
        }
    }
    g
}

/// Quaternionic Gram–Schmidt: draw N Gaussian columns, orthonormalize each
/// against the previous columns *and their symplectic partners*, and place
/// the partner τ(q) in column N+j.  The result is unitary and satisfies
/// gᵀJg = J, and the construction is the unique quaternion-QR convention, so
/// the output is Haar on USp(2N).
fn haar_symplectic(two_n: usize, rng: &mut impl Rng) -> DMatrix<C64> {
    let n = two_n / 2;
    'restart: loop {
        let mut q = DMatrix::<C64>::zeros(two_n, two_n);
        for j in 0..n {
            let mut v = DVector::from_fn(two_n, |_, _| gauss_c(rng));
            for i in 0..j {
                let qi = q.column(i).into_owned();
                let ti = q.column(n + i).into_owned();
                let pq = qi.dotc(&v);
                let pt = ti.dotc(&v);
                v.axpy(-pq, &qi, C64::new(1.0, 0.0));
                v.axpy(-pt, &ti, C64::new(1.0, 0.0));
            }
            let norm = v.norm();
            if norm < 1e-12 {
                continue 'restart;
            }
            v.unscale_mut(norm);
            let t = symplectic_partner(&v);
            q.set_column(j, &v);
            q.set_column(n + j, &t);
        }
        return q;
    }
}

/// Draws a Haar-distributed element of the group.  The output is always a
/// complex matrix; orthogonal draws have zero imaginary part.
pub fn haar_sample(group: Group, rng: &mut impl Rng) -> Result<DMatrix<C64>> {
    match group {
        Group::U(n) => {
            if n == 0 {
                return Err(Error::domain("U(n) needs n ≥ 1"));
            }
            Ok(haar_unitary(n, rng))
        }
        Group::O(n) => {
            if n == 0 {
                return Err(Error::domain("O(n) needs n ≥ 1"));
            }
            Ok(haar_orthogonal(n, rng))
        }
        Group::SO(n) => {
            if n == 0 {
                return Err(Error::domain("SO(n) needs n ≥ 1"));
            }
            Ok(haar_special_orthogonal(n, rng))
        }
        Group::USp(n) => {
            if n == 0 || n % 2 != 0 {
                return Err(Error::domain(format!(
                    "USp requires a positive even size, got {n}"
                )));
            }
            Ok(haar_symplectic(n, rng))
        }
    }
}

/// Frobenius residual of the group membership conditions: unitarity for all
/// groups, realness (and det = +1 for SO) for the orthogonal ones, and
/// gᵀJg = J for USp.
pub fn group_residual(group: Group, g: &DMatrix<C64>) -> f64 {
    let n = group.dim();
    if g.nrows() != n || g.ncols() != n {
        return f64::INFINITY;
    }
    let eye = DMatrix::<C64>::identity(n, n);
    let mut res = (g.adjoint() * g - &eye).norm();
    match group {
        Group::U(_) => {}
        Group::O(_) | Group::SO(_) => {
            let imag = g.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
            res = res.max(imag);
            if matches!(group, Group::SO(_)) {
                res = res.max((g.clone().determinant() - C64::new(1.0, 0.0)).norm());
            }
        }
        Group::USp(_) => {
            let j = super::realize::j_n(n / 2);
            res = res.max((g.transpose() * &j * g - &j).norm());
        }
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::stream_rng;
    use crate::stats::ks_two_sample;

    const MEMBERSHIP_TOL: f64 = 1e-10;

    #[test]
    fn u1_phases_are_uniform_on_the_circle() {
        let mut rng = stream_rng(1, 0);
        let mut sum = C64::new(0.0, 0.0);
        let n = 100_000;
        for _ in 0..n {
            sum += haar_sample(Group::U(1), &mut rng).unwrap()[(0, 0)];
        }
        assert!((sum / C64::new(n as f64, 0.0)).norm() < 0.01);
    }

    #[test]
    fn every_group_draw_satisfies_its_membership_residual() {
        let mut rng = stream_rng(2, 0);
        for group in [
            Group::U(5),
            Group::O(5),
            Group::SO(5),
            Group::SO(6),
            Group::USp(6),
        ] {
            for _ in 0..5 {
                let g = haar_sample(group, &mut rng).unwrap();
                let res = group_residual(group, &g);
                assert!(res < MEMBERSHIP_TOL, "{}: residual {res}", group.label());
            }
        }
    }

    #[test]
    fn symplectic_columns_carry_their_partners() {
        let mut rng = stream_rng(3, 0);
        let g = haar_sample(Group::USp(8), &mut rng).unwrap();
        for j in 0..4 {
            let t = symplectic_partner(&g.column(j).into_owned());
            assert!((g.column(4 + j) - t).norm() < 1e-14);
        }
    }

    #[test]
    fn left_translation_leaves_the_trace_distribution_invariant() {
        // Re tr(g) and Re tr(ug) for a fixed independent u must agree in
        // distribution; this is the definition of left invariance.
        let mut rng = stream_rng(4, 0);
        let u = haar_sample(Group::U(4), &mut rng).unwrap();
        let mut plain = Vec::new();
        let mut translated = Vec::new();
        for _ in 0..10_000 {
            let g = haar_sample(Group::U(4), &mut rng).unwrap();
            plain.push(g.trace().re);
            translated.push((&u * g).trace().re);
        }
        let ks = ks_two_sample(&plain, &translated);
        assert!(ks < 0.02, "KS = {ks}");
    }

    #[test]
    fn so_draws_always_have_unit_determinant() {
        let mut rng = stream_rng(5, 0);
        for _ in 0..20 {
            let g = haar_sample(Group::SO(3), &mut rng).unwrap();
            assert!((g.determinant() - C64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn draws_are_reproducible_per_stream() {
        let a = haar_sample(Group::U(3), &mut stream_rng(9, 4)).unwrap();
        let b = haar_sample(Group::U(3), &mut stream_rng(9, 4)).unwrap();
        let c = haar_sample(Group::U(3), &mut stream_rng(9, 5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_sizes_are_rejected() {
        let mut rng = stream_rng(6, 0);
        assert!(haar_sample(Group::U(0), &mut rng).is_err());
        assert!(haar_sample(Group::USp(5), &mut rng).is_err());
    }
}
