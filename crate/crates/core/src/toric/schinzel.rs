//! Stripping check along a line: specialize, remove the constant part (in
//! function-field mode) or the cyclotomic part (over `Q`), and classify the
//! residual.

use num_bigint::BigInt;

use crate::factor::{constant_part, cyclotomic_part, factor_in_ambient, Factorization};
use crate::laurent::LaurentPoly;

use super::{factor_multivariate, ToricError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualStatus {
    /// Everything was stripped away; the residual is a unit.
    UnitResidual,
    /// The residual is irreducible in the ambient mode.
    IrreducibleResidual,
    /// The residual factors further; the report carries the witness.
    ReducibleResidual,
}

#[derive(Debug, Clone)]
pub struct SchinzelReport {
    /// The specialization `F(t^a)`.
    pub specialized: LaurentPoly,
    /// The part stripped from the specialization (constant or cyclotomic).
    pub stripped: LaurentPoly,
    pub residual: LaurentPoly,
    pub status: ResidualStatus,
    /// Factorization of the residual when it is reducible.
    pub witness: Option<Factorization>,
}

/// Specializes a non-constant irreducible input along `t^a`, strips the
/// constant part (function-field mode, when the ambient designates a field
/// variable) or the cyclotomic part (over `Q`), and reports whether the
/// residual is a unit, irreducible, or a counterexample witness.
pub fn schinzel_ff_check(f: &LaurentPoly, a: &[BigInt]) -> Result<SchinzelReport, ToricError> {
    let ambient = f.ambient();
    let field = ambient.field_var();

    // precondition: irreducible, and in function-field mode non-constant
    // (not a field-variable scalar times a polynomial free of it)
    let base = factor_multivariate(f)?;
    if !base.is_irreducible() {
        return Err(ToricError::Precondition(
            "input must be irreducible".to_string(),
        ));
    }
    if let Some(fv) = field {
        let fv_name = &ambient.vars()[fv];
        let factor_uses_field = base.factors()[0]
            .0
            .degree_in(fv_name)
            .map(|(lo, hi)| lo != hi)
            .unwrap_or(false);
        if !factor_uses_field {
            return Err(ToricError::Precondition(
                "input is constant: its non-unit part is free of the field variable"
                    .to_string(),
            ));
        }
    }

    let specialized = f.specialize_line(a)?;
    if specialized.is_zero() {
        return Err(ToricError::ZeroSpecialization {
            collisions: f.specialization_collisions(a),
        });
    }

    let (stripped, residual, mode) = match field {
        Some(fv) => {
            let fv_name = ambient.vars()[fv].clone();
            let cp = constant_part(&specialized, &fv_name)?;
            let mode = cp.residual.ambient().clone();
            (cp.constant, cp.residual, mode)
        }
        None => {
            let cp = cyclotomic_part(&specialized)?;
            let mode = cp.residual.ambient().clone();
            (cp.cyclotomic, cp.residual, mode)
        }
    };

    if residual.is_unit(&mode) || residual.is_one() {
        return Ok(SchinzelReport {
            specialized,
            stripped,
            residual,
            status: ResidualStatus::UnitResidual,
            witness: None,
        });
    }
    let fac = factor_in_ambient(&residual)?;
    if fac.is_irreducible() {
        Ok(SchinzelReport {
            specialized,
            stripped,
            residual,
            status: ResidualStatus::IrreducibleResidual,
            witness: None,
        })
    } else {
        Ok(SchinzelReport {
            specialized,
            stripped,
            residual,
            status: ResidualStatus::ReducibleResidual,
            witness: Some(fac),
        })
    }
}
