//! Matrix realizations of the symmetric-space ensembles.
//!
//! Each type-I family is the image of G under g ↦ H = g·Ω(g)⁻¹ for the
//! family's involution Ω; the type-II (group) families take H = g itself.
//! This module builds the canonical structure matrices, applies the maps,
//! and checks the defining matrix identities of each image set.

use super::{EnsembleSpec, Family};
use crate::error::{Error, Result};
use crate::qdet::C64;
use nalgebra::DMatrix;

const GROUP_TOL: f64 = 1e-8;

/// J_P = [[0, −I_P], [I_P, 0]]: the canonical antisymmetric form (2P × 2P).
pub fn j_n(p: usize) -> DMatrix<C64> {
    let one = C64::new(1.0, 0.0);
    DMatrix::from_fn(2 * p, 2 * p, |i, j| {
        if i < p && j == i + p {
            -one
        } else if i >= p && j == i - p {
            one
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// J′_P = [[0, I_P], [I_P, 0]]: the symmetric swap form (2P × 2P).
pub fn jp_n(p: usize) -> DMatrix<C64> {
    let one = C64::new(1.0, 0.0);
    DMatrix::from_fn(2 * p, 2 * p, |i, j| {
        if (i < p && j == i + p) || (i >= p && j == i - p) {
            one
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// blockdiag(J_M, J_N): the split antisymmetric form (2(M+N) square).
pub fn j_mn(m: usize, n: usize) -> DMatrix<C64> {
    let mut out = DMatrix::zeros(2 * (m + n), 2 * (m + n));
    out.view_mut((0, 0), (2 * m, 2 * m)).copy_from(&j_n(m));
    out.view_mut((2 * m, 2 * m), (2 * n, 2 * n))
        .copy_from(&j_n(n));
    out
}

/// I′_{M,N} = diag(I_M, −I_N).
pub fn ip_mn(m: usize, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(m + n, m + n, |i, j| {
        if i != j {
            C64::new(0.0, 0.0)
        } else if i < m {
            C64::new(1.0, 0.0)
        } else {
            C64::new(-1.0, 0.0)
        }
    })
}

/// diag(I_M, −I_N, I_M, −I_N): the signature involution written in the
/// canonical symplectic coordinates of USp(2(M+N)), where it commutes with
/// J_{M+N} and its fixed-point group is USp(2M) × USp(2N).
pub fn ip_cii(m: usize, n: usize) -> DMatrix<C64> {
    let p = m + n;
    DMatrix::from_fn(2 * p, 2 * p, |i, j| {
        if i != j {
            C64::new(0.0, 0.0)
        } else if i % p < m {
            C64::new(1.0, 0.0)
        } else {
            C64::new(-1.0, 0.0)
        }
    })
}

/// Bundle of the canonical structure matrices at block sizes (M, N), mostly
/// useful for checking their algebraic invariants in one place.
pub struct InvolutionData {
    /// J_{M+N}.
    pub j: DMatrix<C64>,
    /// J′_{M+N}.
    pub jprime: DMatrix<C64>,
    /// blockdiag(J_M, J_N).
    pub j_mn: DMatrix<C64>,
    /// diag(I_M, −I_N).
    pub iprime_mn: DMatrix<C64>,
    /// diag(I_M, −I_N, I_M, −I_N).
    pub iprime_cii: DMatrix<C64>,
}

impl InvolutionData {
    pub fn new(m: usize, n: usize) -> Self {
        InvolutionData {
            j: j_n(m + n),
            jprime: jp_n(m + n),
            j_mn: j_mn(m, n),
            iprime_mn: ip_mn(m, n),
            iprime_cii: ip_cii(m, n),
        }
    }
}

/// Maps a group element to the realized ensemble matrix H = g·Ω(g)⁻¹
/// (H = g for the group families).  Rejects g outside the family's group.
pub fn realize(spec: &EnsembleSpec, g: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let dim = spec.matrix_dim();
    if g.nrows() != dim || g.ncols() != dim {
        return Err(Error::domain(format!(
            "expected a {dim}×{dim} element of {}, got {}×{}",
            spec.group().label(),
            g.nrows(),
            g.ncols()
        )));
    }
    let res = super::haar::group_residual(spec.group(), g);
    if !(res <= GROUP_TOL) {
        return Err(Error::domain(format!(
            "matrix is not in {} (membership residual {res:.3e})",
            spec.group().label()
        )));
    }
    let h = match spec.family {
        // Ω(g) = (gᵀ)⁻¹, so H = g·gᵀ: symmetric unitary.
        Family::AI => g * g.transpose(),
        // Ω(g) = (g^D)⁻¹ with the dual g^D = J gᵀ Jᵀ, so H = g·J gᵀ Jᵀ.
        Family::AII => {
            let j = j_n(spec.r);
            g * &j * g.transpose() * j.transpose()
        }
        // Ω(g) = I′ g I′ with I′ = diag(I_M, −I_N), so H = g I′ g⁻¹ I′.
        Family::AIII => {
            let ip = ip_mn(spec.m(), spec.n());
            g * &ip * g.adjoint() * &ip
        }
        Family::BDI => {
            let ip = ip_mn(spec.m(), spec.n());
            g * &ip * g.transpose() * &ip
        }
        // Ω(g) = Jᵀ g J, so H = g Jᵀ gᵀ J.
        Family::DIII => {
            let j = j_n(2 * spec.r + spec.l);
            g * j.transpose() * g.transpose() * &j
        }
        Family::CI => {
            let ip = ip_mn(spec.r, spec.r);
            g * &ip * g.adjoint() * &ip
        }
        Family::CII => {
            let ip = ip_cii(spec.m(), spec.n());
            g * &ip * g.adjoint() * &ip
        }
        Family::CUE | Family::SOOdd | Family::USpGroup | Family::SOEven => g.clone(),
    };
    Ok(h)
}

/// Frobenius residual of the family's defining matrix identities for H:
/// unitarity plus symmetry (A I), self-duality (A II), Hermitian H·I′
/// (A III/C I/C II, with the anti-commutation J·G = −Ḡ·J for C I), real
/// symmetric H·I′ (BD I), and antisymmetric H·J (D III).  Signature
/// conditions are spectral and are checked by the spectrum layer.
pub fn membership_residual(spec: &EnsembleSpec, h: &DMatrix<C64>) -> f64 {
    let dim = spec.matrix_dim();
    if h.nrows() != dim || h.ncols() != dim {
        return f64::INFINITY;
    }
    let eye = DMatrix::<C64>::identity(dim, dim);
    let unitary = (h.adjoint() * h - &eye).norm();
    let structural = match spec.family {
        Family::AI => (h - h.transpose()).norm(),
        Family::AII => {
            let j = j_n(spec.r);
            (h - &j * h.transpose() * j.transpose()).norm()
        }
        Family::AIII => {
            let g = h * ip_mn(spec.m(), spec.n());
            (&g - g.adjoint()).norm()
        }
        Family::BDI => {
            let g = h * ip_mn(spec.m(), spec.n());
            let imag = g.iter().map(|z| z.im * z.im).sum::<f64>().sqrt();
            (&g - g.transpose()).norm().max(imag)
        }
        Family::DIII => {
            let j = j_n(2 * spec.r + spec.l);
            let hj = h * &j;
            let real = super::haar::group_residual(spec.group(), h);
            (&hj + hj.transpose()).norm().max(real)
        }
        Family::CI => {
            let j = j_n(spec.r);
            let g = h * ip_mn(spec.r, spec.r);
            let herm = (&g - g.adjoint()).norm();
            let anti = (&j * &g + g.map(|z| z.conj()) * &j).norm();
            herm.max(anti)
        }
        Family::CII => {
            let g = h * ip_cii(spec.m(), spec.n());
            let j = j_n(spec.m() + spec.n());
            let herm = (&g - g.adjoint()).norm();
            let sympl = (h.transpose() * &j * h - &j).norm();
            herm.max(sympl)
        }
        Family::CUE | Family::SOOdd | Family::USpGroup | Family::SOEven => {
            super::haar::group_residual(spec.group(), h)
        }
    };
    unitary.max(structural)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{haar_sample, stream_rng, ALL_FAMILIES};
    use crate::qdet::pfaffian;

    fn realize_random(spec: &EnsembleSpec, seed: u64) -> DMatrix<C64> {
        let mut rng = stream_rng(seed, 0);
        let g = haar_sample(spec.group(), &mut rng).unwrap();
        realize(spec, &g).unwrap()
    }

    #[test]
    fn structure_matrices_satisfy_their_algebra() {
        let data = InvolutionData::new(3, 2);
        let eye5 = DMatrix::<C64>::identity(10, 10);
        assert!((&data.j * &data.j + &eye5).norm() < 1e-14);
        assert!((&data.j_mn * &data.j_mn + &eye5).norm() < 1e-14);
        assert!((&data.jprime * &data.jprime - &eye5).norm() < 1e-14);
        let ip5 = DMatrix::<C64>::identity(5, 5);
        assert!((&data.iprime_mn * &data.iprime_mn - ip5).norm() < 1e-14);
        assert!((&data.iprime_cii * &data.iprime_cii - &eye5).norm() < 1e-14);
        for m in [&data.j, &data.jprime, &data.j_mn, &data.iprime_mn, &data.iprime_cii] {
            for z in m.iter() {
                assert!(z.im == 0.0 && (z.re == 0.0 || z.re.abs() == 1.0));
            }
        }
        // The C II involution commutes with the canonical symplectic form, so
        // conjugation by it preserves USp(2(M+N)).
        assert!((&data.iprime_cii * &data.j * &data.iprime_cii - &data.j).norm() < 1e-14);
    }

    #[test]
    fn identity_maps_to_the_base_point() {
        for family in ALL_FAMILIES {
            let spec = EnsembleSpec::new(family, 2, 0).unwrap();
            let dim = spec.matrix_dim();
            let g = DMatrix::<C64>::identity(dim, dim);
            let h = realize(&spec, &g).unwrap();
            if family.label().starts_with("SO") || family == crate::ensembles::Family::CUE {
                continue; // group families: H = g = I trivially
            }
            assert!((h - DMatrix::<C64>::identity(dim, dim)).norm() < 1e-14);
        }
    }

    #[test]
    fn symmetric_unitary_image_for_the_orthogonal_quotient() {
        let spec = EnsembleSpec::new(Family::AI, 5, 0).unwrap();
        let h = realize_random(&spec, 11);
        assert!((&h - h.transpose()).norm() < 1e-10);
        let eye = DMatrix::<C64>::identity(5, 5);
        assert!((h.adjoint() * &h - eye).norm() < 1e-10);
    }

    #[test]
    fn every_family_meets_its_membership_identities() {
        for family in ALL_FAMILIES {
            for l in 0..=1 {
                let spec = match EnsembleSpec::new(family, 2, l) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let h = realize_random(&spec, 100 + l as u64);
                let res = membership_residual(&spec, &h);
                assert!(res < 1e-8, "{family} L={l}: residual {res:.3e}");
            }
        }
    }

    #[test]
    fn split_signature_is_preserved() {
        // H·I′ for the real split quotient is symmetric with signature (M, N).
        let spec = EnsembleSpec::new(Family::BDI, 1, 1).unwrap(); // M=2, N=1
        let h = realize_random(&spec, 21);
        let g = (&h * ip_mn(2, 1)).map(|z| z.re);
        let eig = g.symmetric_eigen().eigenvalues;
        let mut signs: Vec<f64> = eig.iter().copied().collect();
        signs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!(signs[0] > 0.99 && signs[1] > 0.99 && signs[2] < -0.99);
        // Same count for the complex split quotient, via the Hermitian part.
        let spec = EnsembleSpec::new(Family::AIII, 2, 1).unwrap(); // M=3, N=2
        let h = realize_random(&spec, 22);
        let g = h * ip_mn(3, 2);
        let pos = g
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .filter(|&&x| x > 0.0)
            .count();
        assert_eq!(pos, 3);
    }

    #[test]
    fn quaternionic_signature_is_doubled() {
        let spec = EnsembleSpec::new(Family::CII, 1, 1).unwrap(); // M=2, N=1
        let h = realize_random(&spec, 23);
        let g = &h * ip_cii(2, 1);
        let eig = g.symmetric_eigen().eigenvalues;
        let pos = eig.iter().filter(|&&x| x > 0.0).count();
        let neg = eig.iter().filter(|&&x| x < 0.0).count();
        assert_eq!((pos, neg), (4, 2));
        for x in eig.iter() {
            assert!((x.abs() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn skew_product_is_dexter_for_both_parities() {
        // H·J = g·J·gᵀ with det g = 1, so its Pfaffian must equal Pf(J):
        // the conjugating orthogonal matrix has determinant +1.
        for l in 0..=1 {
            let spec = EnsembleSpec::new(Family::DIII, 2, l).unwrap();
            let h = realize_random(&spec, 31 + l as u64);
            let p = 2 * spec.r + spec.l;
            let j = j_n(p);
            let ratio = pfaffian(&(&h * &j)).unwrap() / pfaffian(&j).unwrap();
            assert!((ratio - C64::new(1.0, 0.0)).norm() < 1e-8, "L={l}: {ratio}");
        }
    }

    #[test]
    fn foreign_matrices_are_rejected() {
        let spec = EnsembleSpec::new(Family::AI, 3, 0).unwrap();
        let bad = DMatrix::<C64>::identity(3, 3) * C64::new(2.0, 0.0);
        assert!(realize(&spec, &bad).is_err());
        let wrong_size = DMatrix::<C64>::identity(4, 4);
        assert!(realize(&spec, &wrong_size).is_err());
        // An orthogonal matrix is unitary, but a reflection is not in SO.
        let spec = EnsembleSpec::new(Family::SOEven, 1, 0).unwrap();
        let mut refl = DMatrix::<C64>::identity(2, 2);
        refl[(1, 1)] = C64::new(-1.0, 0.0);
        assert!(realize(&spec, &refl).is_err());
    }
}
