//! Restricted root systems and the eigenangle density they induce.
//!
//! The Weyl integration density on the fundamental domain is
//! Π_{α>0} |sin(α(Θ)/2)|^{m_α}, with the positive roots drawn from the
//! four linear forms θ_k − θ_j, θ_k + θ_j, θ_j, 2θ_j.  Converting to
//! x = cos θ turns this into the Jacobi weight |Δ(x)|^β Π (1−x)^a (1+x)^b;
//! the parameter map is β = m_diff, a = (m_2θ + m_θ − 1)/2, b = (m_2θ − 1)/2,
//! and `table_params` records the resulting table exactly.

use super::{EnsembleSpec, Family};
use crate::error::{Error, Result};

/// The linear forms α(Θ) that occur as positive restricted roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootForm {
    /// θ_k − θ_j over j < k.
    Diff,
    /// θ_k + θ_j over j < k.
    Sum,
    /// θ_j.
    Theta,
    /// 2 θ_j.
    TwoTheta,
}

/// Positive roots of a family as (form, multiplicity) pairs; forms with zero
/// multiplicity are omitted.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub roots: Vec<(RootForm, u32)>,
}

impl RootSystem {
    pub fn multiplicity(&self, form: RootForm) -> u32 {
        self.roots
            .iter()
            .find(|(f, _)| *f == form)
            .map(|&(_, m)| m)
            .unwrap_or(0)
    }
}

/// The restricted root multiplicities of the family.
pub fn root_system(spec: &EnsembleSpec) -> RootSystem {
    use RootForm::*;
    let l = spec.l as u32;
    let roots: Vec<(RootForm, u32)> = match spec.family {
        Family::AI => vec![(Diff, 1)],
        Family::AII => vec![(Diff, 4)],
        Family::CUE => vec![(Diff, 2)],
        Family::AIII => vec![(Diff, 2), (Sum, 2), (Theta, 2 * l), (TwoTheta, 1)],
        Family::BDI => vec![(Diff, 1), (Sum, 1), (Theta, l)],
        Family::DIII => vec![(Diff, 4), (Sum, 4), (Theta, 4 * l), (TwoTheta, 1)],
        Family::CI => vec![(Diff, 1), (Sum, 1), (TwoTheta, 1)],
        Family::CII => vec![(Diff, 4), (Sum, 4), (Theta, 4 * l), (TwoTheta, 3)],
        Family::SOOdd => vec![(Diff, 2), (Sum, 2), (Theta, 2)],
        Family::USpGroup => vec![(Diff, 2), (Sum, 2), (TwoTheta, 2)],
        Family::SOEven => vec![(Diff, 2), (Sum, 2)],
    };
    RootSystem {
        roots: roots.into_iter().filter(|&(_, m)| m > 0).collect(),
    }
}

/// Evaluates the (unnormalized) Weyl integration density
/// Π_{α>0} |sin(α(Θ)/2)|^{m_α} at the given angles.
pub fn weyl_density(spec: &EnsembleSpec, thetas: &[f64]) -> Result<f64> {
    if thetas.len() != spec.r {
        return Err(Error::domain(format!(
            "expected {} angles, got {}",
            spec.r,
            thetas.len()
        )));
    }
    let system = root_system(spec);
    let mut log_density = 0.0;
    for &(form, m) in &system.roots {
        let m = m as f64;
        match form {
            RootForm::Diff | RootForm::Sum => {
                for j in 0..thetas.len() {
                    for k in (j + 1)..thetas.len() {
                        let arg = match form {
                            RootForm::Diff => (thetas[k] - thetas[j]) / 2.0,
                            _ => (thetas[k] + thetas[j]) / 2.0,
                        };
                        log_density += m * arg.sin().abs().ln();
                    }
                }
            }
            RootForm::Theta => {
                for &t in thetas {
                    log_density += m * (t / 2.0).sin().abs().ln();
                }
            }
            RootForm::TwoTheta => {
                for &t in thetas {
                    log_density += m * t.sin().abs().ln();
                }
            }
        }
    }
    Ok(log_density.exp())
}

/// The (β, a, b) parameters of the Jacobi eigenvalue measure
/// |Δ(x)|^β Π (1−x_j)^a (1+x_j)^b in x = cos θ.  The full-circle families
/// carry no Jacobi weight and are rejected with a "circular" marker.
pub fn table_params(spec: &EnsembleSpec) -> Result<(f64, f64, f64)> {
    let l = spec.l as f64;
    match spec.family {
        Family::AI | Family::AII | Family::CUE => Err(Error::domain(format!(
            "{} is a circular ensemble: the eigenvalue measure lives on the full circle, not on a Jacobi weight",
            spec.family.label()
        ))),
        Family::AIII => Ok((2.0, l, 0.0)),
        Family::BDI => Ok((1.0, (l - 1.0) / 2.0, -0.5)),
        Family::DIII => Ok(if spec.l == 0 {
            (4.0, 0.0, 0.0)
        } else {
            (4.0, 2.0, 0.0)
        }),
        Family::CI => Ok((1.0, 0.0, 0.0)),
        Family::CII => Ok((4.0, 2.0 * l + 1.0, 1.0)),
        Family::SOOdd => Ok((2.0, 0.5, -0.5)),
        Family::USpGroup => Ok((2.0, 0.5, 0.5)),
        Family::SOEven => Ok((2.0, -0.5, -0.5)),
    }
}

/// The Jacobi-measure density (up to normalization) that `weyl_density`
/// must be proportional to: |Δ(cos Θ)|^β Π (1−cos θ)^{a+1/2} (1+cos θ)^{b+1/2}.
/// The extra halves absorb the dθ → dx Jacobian.
pub fn jacobi_reference(beta: f64, a: f64, b: f64, thetas: &[f64]) -> f64 {
    let xs: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
    let mut log_density = 0.0;
    for j in 0..xs.len() {
        for k in (j + 1)..xs.len() {
            log_density += beta * (xs[k] - xs[j]).abs().ln();
        }
    }
    for &x in &xs {
        log_density += (a + 0.5) * (1.0 - x).ln() + (b + 0.5) * (1.0 + x).ln();
    }
    log_density.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{stream_rng, ALL_FAMILIES};
    use rand::Rng;
    use std::f64::consts::PI;

    #[test]
    fn quaternionic_split_multiplicities_match_the_table() {
        let spec = EnsembleSpec::new(Family::CII, 3, 2).unwrap();
        let rs = root_system(&spec);
        assert_eq!(rs.multiplicity(RootForm::Diff), 4);
        assert_eq!(rs.multiplicity(RootForm::Sum), 4);
        assert_eq!(rs.multiplicity(RootForm::Theta), 8);
        assert_eq!(rs.multiplicity(RootForm::TwoTheta), 3);
    }

    #[test]
    fn rank_one_symplectic_density_is_sin_theta() {
        // C I at R = 1: only the 2θ root with multiplicity 1 survives,
        // giving |sin θ| exactly.
        let spec = EnsembleSpec::new(Family::CI, 1, 0).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let d = weyl_density(&spec, &[t]).unwrap();
            assert!((d - t.sin().abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn parameter_table_matches_the_frozen_entries() {
        let cases: Vec<(Family, usize, (f64, f64, f64))> = vec![
            (Family::AIII, 0, (2.0, 0.0, 0.0)),
            (Family::AIII, 2, (2.0, 2.0, 0.0)),
            (Family::BDI, 0, (1.0, -0.5, -0.5)),
            (Family::BDI, 1, (1.0, 0.0, -0.5)),
            (Family::DIII, 0, (4.0, 0.0, 0.0)),
            (Family::DIII, 1, (4.0, 2.0, 0.0)),
            (Family::CI, 0, (1.0, 0.0, 0.0)),
            (Family::CII, 0, (4.0, 1.0, 1.0)),
            (Family::CII, 1, (4.0, 3.0, 1.0)),
            (Family::SOOdd, 0, (2.0, 0.5, -0.5)),
            (Family::USpGroup, 0, (2.0, 0.5, 0.5)),
            (Family::SOEven, 0, (2.0, -0.5, -0.5)),
        ];
        for (family, l, expected) in cases {
            let spec = EnsembleSpec::new(family, 2, l).unwrap();
            assert_eq!(table_params(&spec).unwrap(), expected, "{family} L={l}");
        }
        let err = table_params(&EnsembleSpec::new(Family::AII, 2, 0).unwrap()).unwrap_err();
        assert!(err.to_string().contains("circular"));
    }

    #[test]
    fn parameters_follow_from_the_root_multiplicities() {
        // β = m_diff, a = (m_2θ + m_θ − 1)/2, b = (m_2θ − 1)/2 must
        // reproduce the frozen table for every Jacobi family.
        for family in ALL_FAMILIES {
            for l in 0..=3 {
                let spec = match EnsembleSpec::new(family, 2, l) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let Ok((beta, a, b)) = table_params(&spec) else {
                    continue;
                };
                let rs = root_system(&spec);
                let m_diff = rs.multiplicity(RootForm::Diff) as f64;
                let m_theta = rs.multiplicity(RootForm::Theta) as f64;
                let m_two = rs.multiplicity(RootForm::TwoTheta) as f64;
                assert_eq!(rs.multiplicity(RootForm::Sum) as f64, m_diff);
                assert_eq!(beta, m_diff, "{family} L={l}");
                assert_eq!(a, (m_two + m_theta - 1.0) / 2.0, "{family} L={l}");
                assert_eq!(b, (m_two - 1.0) / 2.0, "{family} L={l}");
            }
        }
    }

    #[test]
    fn weyl_density_is_proportional_to_the_jacobi_weight() {
        let mut rng = stream_rng(90, 0);
        for family in ALL_FAMILIES {
            for l in 0..=1 {
                let spec = match EnsembleSpec::new(family, 4, l) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                let Ok((beta, a, b)) = table_params(&spec) else {
                    continue;
                };
                let mut ratios = Vec::new();
                for _ in 0..10 {
                    let thetas: Vec<f64> =
                        (0..spec.r).map(|_| rng.gen_range(0.05..PI - 0.05)).collect();
                    let w = weyl_density(&spec, &thetas).unwrap();
                    let j = jacobi_reference(beta, a, b, &thetas);
                    ratios.push(w / j);
                }
                let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
                for r in &ratios {
                    assert!(
                        (r - mean).abs() / mean.abs() < 1e-9,
                        "{family} L={l}: ratio spread"
                    );
                }
            }
        }
    }

    #[test]
    fn density_vanishes_where_a_root_factor_does() {
        let spec = EnsembleSpec::new(Family::USpGroup, 2, 0).unwrap();
        // 2θ root: both endpoints kill the density.
        assert!(weyl_density(&spec, &[1e-12, 1.0]).unwrap() < 1e-20);
        assert!(weyl_density(&spec, &[1.0, PI - 1e-12]).unwrap() < 1e-20);
        // Diff root: coincident angles kill it too.
        assert!(weyl_density(&spec, &[1.0, 1.0 + 1e-12]).unwrap() < 1e-20);
        // Even orthogonal: no θ/2θ roots, endpoint density stays positive.
        let spec = EnsembleSpec::new(Family::SOEven, 2, 0).unwrap();
        assert!(weyl_density(&spec, &[1e-12, 1.0]).unwrap() > 0.05);
    }
}
