//! Exact factorization engine.
//!
//! [`factor_in_ambient`] factors a Laurent polynomial with at most two live
//! variables in the ring designated by its ambient: plain `Q[vars^±1]`, or
//! function-field mode `Q(v)[others^±1]` where polynomials in the designated
//! field variable become units. On top of it sit cyclotomic-part and
//! constant-part extraction. Polynomials with three or more live variables
//! are handled by the pullback machinery in [`crate::toric`].

mod bi;
pub mod uni;

pub use uni::{cyclotomic_order, factor_uni_q, squarefree};

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::coeff::{Coefficient, QPoly, Rational};
use crate::laurent::{AmbientSpec, ExpVec, LaurentPoly};
use crate::parse::print_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor zero")]
    ZeroInput,
    #[error("only rational coefficients can be factored")]
    UnsupportedCoefficients,
    #[error("too many live variables ({0}); route through the pullback engine")]
    TooManyVariables(usize),
    #[error("exponent range too large: {0}")]
    DegreeTooLarge(String),
    #[error("reconstruction failed: factor product does not divide the input")]
    Reconstruction,
    #[error("{0}")]
    Precondition(String),
}

/// Unit times a list of irreducible factors with multiplicities, in a stated
/// ambient ring. Factors are canonically normalized (integer-primitive,
/// positive leading coefficient) and sorted; `unit * prod f_i^{e_i}`
/// reconstructs the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    ring: Arc<AmbientSpec>,
    unit: LaurentPoly,
    factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    pub fn ring(&self) -> &Arc<AmbientSpec> {
        &self.ring
    }

    pub fn unit(&self) -> &LaurentPoly {
        &self.unit
    }

    pub fn factors(&self) -> &[(LaurentPoly, u32)] {
        &self.factors
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.count_with_multiplicity() == 1
    }

    pub fn product(&self) -> LaurentPoly {
        let mut acc = self.unit.clone();
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as i64).expect("nonnegative power"));
        }
        acc
    }

    /// Renders as `unit * (f1)^e1 * ...` with the unit omitted when 1.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            parts.push(print_poly(&self.unit));
        }
        for (f, m) in &self.factors {
            let base = format!("({})", print_poly(f));
            if *m == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{m}"));
            }
        }
        parts.join(" * ")
    }
}

/// Canonical form of a factor: integer-primitive with positive leading
/// coefficient under the canonical term order. Returns `(canonical, scale)`
/// with `input = scale * canonical`.
pub fn canonicalize_factor(p: &LaurentPoly) -> (LaurentPoly, Rational) {
    assert!(!p.is_zero(), "cannot canonicalize zero");
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        let r = c.as_rational().expect("rational coefficients");
        den_lcm = den_lcm.lcm(r.denom());
    }
    for (_, c) in p.terms() {
        let r = c.as_rational().expect("rational coefficients");
        num_gcd = num_gcd.gcd(&(r.numer() * &den_lcm / r.denom()));
    }
    let mut scale = Rational::new(num_gcd, den_lcm);
    let lead = p.leading_term().expect("nonzero").1;
    if lead
        .as_rational()
        .expect("rational coefficients")
        .is_negative()
    {
        scale = -scale;
    }
    let canonical = p.mul_rational(&scale.recip());
    (canonical, scale)
}

/// Factors `f` in the ring designated by its ambient. Supports at most two
/// live variables (the bivariate engine's reach); factors supported entirely
/// on the field variable are absorbed into the unit in function-field mode.
pub fn factor_in_ambient(f: &LaurentPoly) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if f.terms().any(|(_, c)| c.as_rational().is_none()) {
        return Err(FactorError::UnsupportedCoefficients);
    }
    let ambient = f.ambient().clone();
    let (_, f0) = f.normalize_exponents();
    let live: Vec<usize> = (0..ambient.dim())
        .filter(|i| {
            let name = &ambient.vars()[*i];
            match f0.degree_in(name) {
                Ok((_, max)) => !max.is_zero(),
                Err(_) => false,
            }
        })
        .collect();
    let raw: Vec<LaurentPoly> = match live.len() {
        0 => Vec::new(),
        1 => {
            let var = ambient.vars()[live[0]].clone();
            let q = to_qpoly(&f0, &ambient, live[0])?;
            let (_, factors) = factor_uni_q(&q)?;
            factors
                .iter()
                .flat_map(|(g, m)| std::iter::repeat_n(g, *m as usize))
                .map(|g| from_qpoly(g, &ambient, &var))
                .collect()
        }
        2 => {
            let grid = to_grid(&f0, &ambient, live[0], live[1])?;
            bi::factor_two_var(&grid)
                .into_iter()
                .map(|g| from_grid(&g, &ambient, live[0], live[1]))
                .collect()
        }
        n => return Err(FactorError::TooManyVariables(n)),
    };
    assemble(f, &ambient, raw)
}

/// Builds a [`Factorization`] of `f` from a raw multiset of irreducible
/// factors: canonicalizes, absorbs units of the ambient mode, sorts, and
/// computes the unit by exact division.
pub(crate) fn assemble(
    f: &LaurentPoly,
    ambient: &Arc<AmbientSpec>,
    raw: Vec<LaurentPoly>,
) -> Result<Factorization, FactorError> {
    let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
    for g in raw {
        if g.is_unit(ambient) {
            continue;
        }
        let (canon, _) = canonicalize_factor(&g);
        match factors.iter_mut().find(|(h, _)| *h == canon) {
            Some((_, m)) => *m += 1,
            None => factors.push((canon, 1)),
        }
    }
    factors.sort_by(|(a, _), (b, _)| cmp_factors(a, b));
    let mut prod = LaurentPoly::one(ambient);
    for (g, m) in &factors {
        prod = prod.mul(&g.pow(*m as i64).expect("nonnegative power"));
    }
    let unit = f.divexact(&prod).ok_or(FactorError::Reconstruction)?;
    debug_assert!(unit.is_unit(ambient), "quotient must be a unit of the mode");
    let out = Factorization {
        ring: ambient.clone(),
        unit,
        factors,
    };
    debug_assert_eq!(out.product(), *f, "factorization must reconstruct");
    Ok(out)
}

/// Deterministic factor order: leading total degree, then the canonical term
/// lists compared elementwise.
pub(crate) fn cmp_factors(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let lead = |p: &LaurentPoly| {
        p.leading_term()
            .map(|(e, _)| e.total_degree())
            .unwrap_or_default()
    };
    lead(a).cmp(&lead(b)).then_with(|| {
        let ta = a.sorted_terms();
        let tb = b.sorted_terms();
        for ((ea, ca), (eb, cb)) in ta.iter().zip(tb.iter()) {
            match ea.cmp(eb).then_with(|| cmp_coeff(ca, cb)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        ta.len().cmp(&tb.len())
    })
}

fn cmp_coeff(a: &Coefficient, b: &Coefficient) -> std::cmp::Ordering {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => a.to_string().cmp(&b.to_string()),
    }
}

/// Splits a univariate Laurent polynomial over `Q` into its cyclotomic factor
/// and a residual with no cyclotomic part: `input = unit * cyclotomic *
/// residual`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPart {
    pub unit: LaurentPoly,
    pub cyclotomic: LaurentPoly,
    pub residual: LaurentPoly,
}

pub fn cyclotomic_part(f: &LaurentPoly) -> Result<CycPart, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let factorization = factor_in_ambient(f)?;
    let ambient = f.ambient();
    let mut cyc = LaurentPoly::one(ambient);
    let mut residual = LaurentPoly::one(ambient);
    for (g, m) in factorization.factors() {
        let live = g
            .ambient()
            .vars()
            .iter()
            .filter(|v| {
                g.degree_in(v)
                    .map(|(lo, hi)| lo != hi)
                    .unwrap_or(false)
            })
            .count();
        if live != 1 {
            return Err(FactorError::Precondition(
                "cyclotomic part is defined for univariate input".to_string(),
            ));
        }
        let idx = (0..ambient.dim())
            .find(|i| {
                g.degree_in(&ambient.vars()[*i])
                    .map(|(lo, hi)| lo != hi)
                    .unwrap_or(false)
            })
            .expect("live variable");
        let q = to_qpoly(g, ambient, idx)?;
        let target = if cyclotomic_order(&q).is_some() {
            &mut cyc
        } else {
            &mut residual
        };
        *target = target.mul(&g.pow(*m as i64).expect("nonnegative power"));
    }
    let unit = f
        .divexact(&cyc.mul(&residual))
        .ok_or(FactorError::Reconstruction)?;
    Ok(CycPart {
        unit,
        cyclotomic: cyc,
        residual,
    })
}

/// Splits `f` (in function-field mode over `field_var`) into its maximal
/// factor free of the field variable and the residual:
/// `input = unit * constant * residual`, the unit collecting the
/// field-variable-only part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstPart {
    pub unit: LaurentPoly,
    pub constant: LaurentPoly,
    pub residual: LaurentPoly,
}

pub fn constant_part(f: &LaurentPoly, field_var: &str) -> Result<ConstPart, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    if f.ambient().index_of(field_var).is_none() {
        return Err(FactorError::Precondition(format!(
            "no variable named {field_var}"
        )));
    }
    let mode = f.ambient().with_field(field_var);
    let in_mode = f.with_ambient(&mode);
    let factorization = factor_in_ambient(&in_mode)?;
    let mut constant = LaurentPoly::one(&mode);
    let mut residual = LaurentPoly::one(&mode);
    for (g, m) in factorization.factors() {
        let involves_field = g
            .degree_in(field_var)
            .map(|(lo, hi)| lo != hi)
            .unwrap_or(false);
        let target = if involves_field {
            &mut residual
        } else {
            &mut constant
        };
        *target = target.mul(&g.pow(*m as i64).expect("nonnegative power"));
    }
    let unit = in_mode
        .divexact(&constant.mul(&residual))
        .ok_or(FactorError::Reconstruction)?;
    Ok(ConstPart {
        unit,
        constant,
        residual,
    })
}

// ---------------------------------------------------------------------------
// conversions between LaurentPoly (normalized to min-exponent zero) and the
// dense engine representations
// ---------------------------------------------------------------------------

const MAX_DENSE_DEGREE: i64 = 100_000;

fn exp_to_usize(v: &BigInt) -> Result<usize, FactorError> {
    let x = v
        .to_i64()
        .filter(|&x| (0..=MAX_DENSE_DEGREE).contains(&x))
        .ok_or_else(|| FactorError::DegreeTooLarge(v.to_string()))?;
    Ok(x as usize)
}

pub(crate) fn to_qpoly(
    f: &LaurentPoly,
    ambient: &Arc<AmbientSpec>,
    var_idx: usize,
) -> Result<QPoly, FactorError> {
    let (_, f0) = f.normalize_exponents();
    let mut coeffs: Vec<Rational> = Vec::new();
    for (e, c) in f0.terms() {
        for (i, v) in e.0.iter().enumerate() {
            if i != var_idx && !v.is_zero() {
                return Err(FactorError::Precondition(format!(
                    "polynomial is not univariate in {}",
                    ambient.vars()[var_idx]
                )));
            }
        }
        let k = exp_to_usize(&e.0[var_idx])?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] = c.as_rational().ok_or(FactorError::UnsupportedCoefficients)?;
    }
    Ok(QPoly::new(coeffs))
}

pub(crate) fn from_qpoly(q: &QPoly, ambient: &Arc<AmbientSpec>, var: &str) -> LaurentPoly {
    let idx = ambient.index_of(var).expect("variable exists");
    let mut terms = Vec::new();
    for (k, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = ExpVec::zeros(ambient.dim());
        e.0[idx] = BigInt::from(k);
        terms.push((e, Coefficient::Rat(c.clone())));
    }
    LaurentPoly::from_terms(ambient, terms)
}

/// Dense two-variable grid: `zc[j]` is the coefficient of the second
/// variable's `j`-th power, a polynomial in the first variable.
pub(crate) fn to_grid(
    f: &LaurentPoly,
    _ambient: &Arc<AmbientSpec>,
    v1: usize,
    v2: usize,
) -> Result<bi::BiPoly, FactorError> {
    let (_, f0) = f.normalize_exponents();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (e, c) in f0.terms() {
        for (i, v) in e.0.iter().enumerate() {
            if i != v1 && i != v2 && !v.is_zero() {
                return Err(FactorError::Precondition(
                    "polynomial has more than two live variables".to_string(),
                ));
            }
        }
        let i = exp_to_usize(&e.0[v1])?;
        let j = exp_to_usize(&e.0[v2])?;
        if rows.len() <= j {
            rows.resize(j + 1, Vec::new());
        }
        if rows[j].len() <= i {
            rows[j].resize(i + 1, Rational::zero());
        }
        rows[j][i] = c.as_rational().ok_or(FactorError::UnsupportedCoefficients)?;
    }
    Ok(bi::BiPoly::new(
        rows.into_iter().map(QPoly::new).collect(),
    ))
}

pub(crate) fn from_grid(
    g: &bi::BiPoly,
    ambient: &Arc<AmbientSpec>,
    v1: usize,
    v2: usize,
) -> LaurentPoly {
    let mut terms = Vec::new();
    for (j, coeff) in g.z_coeffs().iter().enumerate() {
        for (i, c) in coeff.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = ExpVec::zeros(ambient.dim());
            e.0[v1] = BigInt::from(i);
            e.0[v2] = BigInt::from(j);
            terms.push((e, Coefficient::Rat(c.clone())));
        }
    }
    LaurentPoly::from_terms(ambient, terms)
}

#[cfg(test)]
mod tests;
