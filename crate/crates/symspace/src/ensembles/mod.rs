//! Matrix-model layer: Haar sampling on the classical compact groups, the
//! matrix realizations H = g·Ω(g)⁻¹ of the seven infinite families of
//! symmetric-space ensembles (plus the circular/group ensembles), spectrum
//! extraction with forced-eigenvalue bookkeeping, the Weyl integration
//! density from root data, the Jacobi parameter table, and a Metropolis
//! sampler for the Jacobi eigenvalue measure.

pub mod haar;
pub mod mcmc;
pub mod realize;
pub mod roots;
pub mod spectrum;

use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

pub use haar::{haar_sample, Group};
pub use mcmc::{mcmc_jacobi, McmcRun};
pub use realize::{membership_residual, realize, InvolutionData};
pub use roots::{root_system, table_params, weyl_density, RootForm, RootSystem};
pub use spectrum::{circular_angles, sample_spectrum, spectrum, SpectrumSample};

/// The eleven ensemble families: seven infinite series of type-I symmetric
/// spaces and the four circular/group ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// U(R)/O(R): symmetric unitary matrices (circular orthogonal ensemble).
    AI,
    /// U(2R)/USp(2R): self-dual unitary matrices (circular symplectic ensemble).
    AII,
    /// U(M+N)/U(M)×U(N).
    AIII,
    /// O(M+N)/O(M)×O(N).
    BDI,
    /// SO(2P)/U(P) with P = 2R+L, L ∈ {0, 1}.
    DIII,
    /// USp(2R)/U(R).
    CI,
    /// USp(2(M+N))/USp(2M)×USp(2N).
    CII,
    /// U(R) itself (circular unitary ensemble).
    CUE,
    /// SO(2R+1) itself.
    SOOdd,
    /// USp(2R) itself.
    USpGroup,
    /// SO(2R) itself.
    SOEven,
}

pub const ALL_FAMILIES: [Family; 11] = [
    Family::AI,
    Family::AII,
    Family::AIII,
    Family::BDI,
    Family::DIII,
    Family::CI,
    Family::CII,
    Family::CUE,
    Family::SOOdd,
    Family::USpGroup,
    Family::SOEven,
];

impl Family {
    /// Canonical text label, used in CSV/JSONL rows and CLI arguments.
    pub fn label(&self) -> &'static str {
        match self {
            Family::AI => "AI",
            Family::AII => "AII",
            Family::AIII => "AIII",
            Family::BDI => "BDI",
            Family::DIII => "DIII",
            Family::CI => "CI",
            Family::CII => "CII",
            Family::CUE => "CUE",
            Family::SOOdd => "SO_odd",
            Family::USpGroup => "USp_group",
            Family::SOEven => "SO_even",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AI" => Ok(Family::AI),
            "AII" => Ok(Family::AII),
            "AIII" => Ok(Family::AIII),
            "BDI" => Ok(Family::BDI),
            "DIII" => Ok(Family::DIII),
            "CI" => Ok(Family::CI),
            "CII" => Ok(Family::CII),
            "CUE" => Ok(Family::CUE),
            "SO_ODD" => Ok(Family::SOOdd),
            "USP_GROUP" | "USP" => Ok(Family::USpGroup),
            "SO_EVEN" => Ok(Family::SOEven),
            other => Err(Error::domain(format!("unknown family '{other}'"))),
        }
    }
}

/// A fully specified ensemble: family, rank R, and the offset L = M − N for
/// the families that carry one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub family: Family,
    pub r: usize,
    pub l: usize,
}

impl EnsembleSpec {
    pub fn new(family: Family, r: usize, l: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("rank R must be at least 1"));
        }
        match family {
            Family::AIII | Family::BDI | Family::CII => {}
            Family::DIII => {
                if l > 1 {
                    return Err(Error::domain(format!(
                        "DIII takes L ∈ {{0, 1}} (even/odd case), got {l}"
                    )));
                }
            }
            _ => {
                if l != 0 {
                    return Err(Error::domain(format!(
                        "family {} does not take an offset L, got {l}",
                        family.label()
                    )));
                }
            }
        }
        Ok(EnsembleSpec { family, r, l })
    }

    /// M = R + L for the two-parameter families (and by convention otherwise).
    pub fn m(&self) -> usize {
        self.r + self.l
    }

    /// N = R: the rank equals min(M, N).
    pub fn n(&self) -> usize {
        self.r
    }

    /// Side length of the realized matrix H.
    pub fn matrix_dim(&self) -> usize {
        match self.family {
            Family::AI | Family::CUE => self.r,
            Family::AII | Family::CI | Family::USpGroup | Family::SOEven => 2 * self.r,
            Family::AIII | Family::BDI => self.m() + self.n(),
            Family::DIII => 2 * (2 * self.r + self.l),
            Family::CII => 2 * (self.m() + self.n()),
            Family::SOOdd => 2 * self.r + 1,
        }
    }

    /// The compact group G the Haar draw lives in.
    pub fn group(&self) -> Group {
        match self.family {
            Family::AI | Family::CUE => Group::U(self.r),
            Family::AII => Group::U(2 * self.r),
            Family::AIII => Group::U(self.m() + self.n()),
            Family::BDI => Group::O(self.m() + self.n()),
            Family::DIII => Group::SO(2 * (2 * self.r + self.l)),
            Family::CI => Group::USp(2 * self.r),
            Family::CII => Group::USp(2 * (self.m() + self.n())),
            Family::SOOdd => Group::SO(2 * self.r + 1),
            Family::USpGroup => Group::USp(2 * self.r),
            Family::SOEven => Group::SO(2 * self.r),
        }
    }

    /// Multiplicity of the forced eigenvalue +1 in the realized spectrum.
    pub fn forced_multiplicity(&self) -> usize {
        match self.family {
            Family::AIII | Family::BDI => self.l,
            Family::DIII => 2 * self.l,
            Family::CII => 2 * self.l,
            Family::SOOdd => 1,
            _ => 0,
        }
    }

    /// 2 when the free eigenvalues come in doubled (Kramers) pairs, else 1.
    pub fn pair_multiplicity(&self) -> usize {
        match self.family {
            Family::AII | Family::DIII | Family::CII => 2,
            _ => 1,
        }
    }

    /// Number of matrix eigenvalues that collapse onto a single angle
    /// θ ∈ [0, π]: 1 for a free circle point, 2 for a conjugate pair or a
    /// Kramers double, 4 for a doubled conjugate quadruple.
    pub fn fold_degeneracy(&self) -> usize {
        match self.family {
            Family::AI | Family::CUE => 1,
            Family::DIII | Family::CII => 4,
            _ => 2,
        }
    }

    /// True for the full-circle ensembles (A I, A II, CUE) whose eigenvalue
    /// measure lives on (−π, π] rather than on a fundamental domain [0, π].
    pub fn is_circular(&self) -> bool {
        matches!(self.family, Family::AI | Family::AII | Family::CUE)
    }

    /// True when the eigenvalue measure is a Jacobi ensemble on [−1, 1]
    /// (every family except the circular three).
    pub fn is_jacobi(&self) -> bool {
        !self.is_circular()
    }
}

/// Derives an independent reproducible RNG substream from a master seed:
/// stream k of a counter-based generator.  Used so that parallel sampling
/// workers and successive draws are reproducible regardless of scheduling.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation_enforces_family_shape() {
        assert!(EnsembleSpec::new(Family::AIII, 3, 2).is_ok());
        assert!(EnsembleSpec::new(Family::DIII, 3, 1).is_ok());
        assert!(EnsembleSpec::new(Family::DIII, 3, 2).is_err());
        assert!(EnsembleSpec::new(Family::CI, 3, 1).is_err());
        assert!(EnsembleSpec::new(Family::CUE, 0, 0).is_err());
    }

    #[test]
    fn dimensions_and_bookkeeping_are_consistent() {
        for family in ALL_FAMILIES {
            for l in 0..=2 {
                let spec = match EnsembleSpec::new(family, 3, l) {
                    Ok(s) => s,
                    Err(_) => continue,
                };
                // Forced eigenvalues plus R folded groups exhaust the matrix.
                assert_eq!(
                    spec.forced_multiplicity() + spec.r * spec.fold_degeneracy(),
                    spec.matrix_dim(),
                    "count mismatch for {family}"
                );
                assert_eq!(spec.group().dim(), spec.matrix_dim());
            }
        }
    }

    #[test]
    fn family_labels_round_trip() {
        for family in ALL_FAMILIES {
            let parsed: Family = family.label().parse().unwrap();
            assert_eq!(parsed, family);
        }
        assert!("XYZ".parse::<Family>().is_err());
    }

    #[test]
    fn rng_substreams_are_reproducible_and_distinct() {
        use rand::RngCore;
        let a1 = stream_rng(7, 0).next_u64();
        let a2 = stream_rng(7, 0).next_u64();
        let b = stream_rng(7, 1).next_u64();
        assert_eq!(a1, a2);
        assert_ne!(a1, b);
    }
}
