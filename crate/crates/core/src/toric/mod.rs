//! Pipelines over the torus: pullback factorization, degree-drop sets,
//! kernel actions on factor lists, the three-alternative irreducibility
//! checker, certificate search for specialization families, and the
//! function-field stripping check.

mod bertini;
mod certificate;
mod multivar;
mod orbits;
mod schinzel;

pub use bertini::{bertini_alternative, delta_set, gcd_reduction_check, specialize_and_factor,
                  BertiniOutcome, DeltaSet, GcdReductionOutcome};
pub use certificate::{hnf_candidates, CertificateContext, CertificateFailure,
                      CertificateOutcome, FactorPair, ImageStatus, OmegaCertificate,
                      SkippedCandidate, omega_certificate};
pub use multivar::factor_multivariate;
pub use orbits::{kernel_action_orbits, twist_by, KernelOrbits};
pub use schinzel::{schinzel_ff_check, ResidualStatus, SchinzelReport};

use thiserror::Error;

use crate::coeff::CoeffError;
use crate::factor::FactorError;
use crate::lattice::LatticeError;
use crate::laurent::{ExpVec, LaurentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("specialization is identically zero; colliding exponent pairs: {}",
            describe_collisions(.collisions))]
    ZeroSpecialization { collisions: Vec<(ExpVec, ExpVec)> },
    #[error("a factor list is required: {0}")]
    FactorListRequired(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no alternative holds; the calibration sets are incomplete: {0}")]
    NoAlternative(String),
}

fn describe_collisions(collisions: &[(ExpVec, ExpVec)]) -> String {
    collisions
        .iter()
        .map(|(a, b)| format!("{:?}~{:?}", a.0, b.0))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests;
