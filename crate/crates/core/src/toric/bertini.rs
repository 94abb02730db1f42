//! Degree-drop sets, specialization pipelines, the gcd-reduction check for
//! pullback reducibility along a line, and the three-alternative
//! irreducibility checker.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::factor::{factor_in_ambient, Factorization};
use crate::lattice::{solve_in_image, IntMatrix};
use crate::laurent::LaurentPoly;

use super::{factor_multivariate, ToricError};

/// Finite set of exponent differences whose non-vanishing pairing with `a`
/// guarantees that specialization preserves the top fiber degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSet {
    pub vectors: Vec<Vec<BigInt>>,
}

impl DeltaSet {
    /// True when `<c, a> != 0` for every stored difference, so the top
    /// fiber-degree coefficient survives the specialization `t^a`.
    pub fn degree_preserved_at(&self, a: &[BigInt]) -> bool {
        self.vectors.iter().all(|c| {
            !c.iter()
                .zip(a)
                .map(|(x, y)| x * y)
                .sum::<BigInt>()
                .is_zero()
        })
    }
}

/// Pairwise differences of the exponent vectors of the leading fiber
/// coefficient, sign-normalized and deduplicated. The full pairwise set is
/// used rather than differences against a single reference term.
pub fn delta_set(f: &LaurentPoly) -> Result<DeltaSet, ToricError> {
    let lead = f.leading_coeff_in_fiber()?;
    let subs = f.ambient().substituted();
    let exps: Vec<Vec<BigInt>> = lead
        .terms()
        .map(|(e, _)| subs.iter().map(|&i| e.0[i].clone()).collect())
        .collect();
    let mut vectors = Vec::new();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            let mut diff: Vec<BigInt> = exps[i]
                .iter()
                .zip(&exps[j])
                .map(|(a, b)| a - b)
                .collect();
            if diff.iter().all(Zero::is_zero) {
                continue;
            }
            if diff
                .iter()
                .find(|v| !v.is_zero())
                .is_some_and(Signed::is_negative)
            {
                for v in &mut diff {
                    *v = -v.clone();
                }
            }
            if !vectors.contains(&diff) {
                vectors.push(diff);
            }
        }
    }
    vectors.sort();
    Ok(DeltaSet { vectors })
}

/// Specializes along `t^a` and factors the image: in `Q(t)[z^±1]` when the
/// polynomial involves the fiber variable, in `Q[t^±1]` otherwise. A
/// specialization that collapses to zero is an error carrying the colliding
/// exponent pairs.
pub fn specialize_and_factor(f: &LaurentPoly, a: &[BigInt]) -> Result<Factorization, ToricError> {
    let image = f.specialize_line(a)?;
    if image.is_zero() {
        return Err(ToricError::ZeroSpecialization {
            collisions: f.specialization_collisions(a),
        });
    }
    let ambient = image.ambient().clone();
    let mode = if ambient.fiber().is_some() {
        ambient.with_field("t")
    } else {
        ambient
    };
    Ok(factor_in_ambient(&image.with_ambient(&mode))?)
}

/// Outcome of the divisor search for a reducible line pullback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdReductionOutcome {
    /// `f(t^m, z)` is already irreducible; nothing to reduce.
    SpecializationIrreducible,
    /// Least divisor `e` of `gcd(m, deg_z f)` with `f(t^e, z)` reducible.
    Witness(u64),
    /// `f(t^m, z)` is reducible but no divisor works over `Q`; over the
    /// complex numbers a witness exists, so this flags the rational
    /// restriction rather than a computation failure.
    NoRationalWitness,
}

/// For `f` irreducible in `Q(t)[z]` with `f(t^m, z)` reducible, searches the
/// divisors of `gcd(m, deg_z f)` for the least `e` with `f(t^e, z)`
/// reducible.
pub fn gcd_reduction_check(f: &LaurentPoly, m: u64) -> Result<GcdReductionOutcome, ToricError> {
    if m == 0 {
        return Err(ToricError::Precondition("m must be positive".to_string()));
    }
    let ambient = f.ambient();
    let fiber = ambient
        .fiber()
        .ok_or_else(|| ToricError::Precondition("no fiber variable designated".to_string()))?;
    let subs = ambient.substituted();
    if subs.len() != 1 {
        return Err(ToricError::Precondition(
            "exactly one line variable is required".to_string(),
        ));
    }
    let line_name = ambient.vars()[subs[0]].clone();
    let fiber_name = ambient.vars()[fiber].clone();
    let mode = ambient.with_field(&line_name);
    let base = factor_in_ambient(&f.with_ambient(&mode))?;
    if !base.is_irreducible() {
        return Err(ToricError::Precondition(format!(
            "input must be irreducible in Q({line_name})[{fiber_name}]"
        )));
    }
    let (zmin, zmax) = f.degree_in(&fiber_name)?;
    let d: u64 = num_traits::ToPrimitive::to_u64(&(&zmax - &zmin))
        .ok_or_else(|| ToricError::Precondition("fiber degree out of range".to_string()))?;
    if d == 0 {
        return Err(ToricError::Precondition(
            "input must have positive fiber degree".to_string(),
        ));
    }

    let reducible_at = |e: u64| -> Result<bool, ToricError> {
        let scaled = f.monomial_pullback(&IntMatrix::from_rows(&[vec![e as i64]]))?;
        let fac = factor_in_ambient(&scaled.with_ambient(&mode))?;
        Ok(fac.count_with_multiplicity() > 1)
    };

    if !reducible_at(m)? {
        return Ok(GcdReductionOutcome::SpecializationIrreducible);
    }
    let g = num_integer::gcd(m, d);
    let mut divisors: Vec<u64> = (1..=g).filter(|e| g % e == 0).collect();
    divisors.sort_unstable();
    for e in divisors {
        if e == 1 {
            continue; // f itself is irreducible by precondition
        }
        if reducible_at(e)? {
            return Ok(GcdReductionOutcome::Witness(e));
        }
    }
    Ok(GcdReductionOutcome::NoRationalWitness)
}

/// The three alternatives of the line-specialization irreducibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BertiniOutcome {
    /// Some `c` in the degenerate-direction set pairs to zero with `a`.
    SigmaHit { witness: Vec<BigInt> },
    /// `a` lies in the image of a matrix whose pullback is reducible.
    PullbackReducible { witness: IntMatrix },
    /// `F(t^a, z)` is irreducible up to units and divisors of powers of the
    /// specialized leading coefficient.
    Irreducible,
}

/// Decides which alternative holds for a direction `a`, given candidate sets
/// `sigma` (vectors) and `phi` (matrices). The final alternative is verified
/// directly: the specialization is factored over `Q[t, z]` and factors
/// dividing the specialized leading coefficient are discarded (localization);
/// exactly one non-unit factor of multiplicity one must remain.
///
/// Reducibility here is reducibility over `Q`; a rationally irreducible
/// pullback may still split over the complex numbers.
pub fn bertini_alternative(
    f: &LaurentPoly,
    a: &[BigInt],
    sigma: &[Vec<BigInt>],
    phi: &[IntMatrix],
) -> Result<BertiniOutcome, ToricError> {
    if a.iter().all(Zero::is_zero) {
        return Err(ToricError::Precondition("a must be nonzero".to_string()));
    }
    let base = factor_multivariate(f)?;
    if !base.is_irreducible() {
        return Err(ToricError::Precondition(
            "input must be irreducible".to_string(),
        ));
    }
    // (1) degenerate direction
    for c in sigma {
        if c.len() == a.len()
            && c.iter()
                .zip(a)
                .map(|(x, y)| x * y)
                .sum::<BigInt>()
                .is_zero()
        {
            return Ok(BertiniOutcome::SigmaHit { witness: c.clone() });
        }
    }
    // (2) membership in a reducible pullback image
    for m in phi {
        if m.nrows() != a.len() {
            continue;
        }
        if solve_in_image(m, a)?.is_none() {
            continue;
        }
        let pullback = f.monomial_pullback(m)?;
        let fac = factor_multivariate(&pullback)?;
        if fac.count_with_multiplicity() > 1 {
            return Ok(BertiniOutcome::PullbackReducible { witness: m.clone() });
        }
    }
    // (3) verify irreducibility of the specialization in the localized ring
    let lead = f.leading_coeff_in_fiber()?;
    let lead_image = lead.specialize_line(a)?;
    let image = f.specialize_line(a)?;
    if image.is_zero() {
        return Err(ToricError::ZeroSpecialization {
            collisions: f.specialization_collisions(a),
        });
    }
    // full factorization over Q[t, z]; only monomials are units here
    let fac = factor_in_ambient(&image)?;
    let mut surviving = 0u32;
    let mut multiplicity_one = true;
    for (g, m) in fac.factors() {
        // discarded iff it divides a power of the specialized leading
        // coefficient; for an irreducible factor that means dividing it once
        if !lead_image.is_zero() && lead_image.divexact(g).is_some() {
            continue;
        }
        surviving += 1;
        if *m != 1 {
            multiplicity_one = false;
        }
    }
    if surviving == 1 && multiplicity_one {
        Ok(BertiniOutcome::Irreducible)
    } else {
        Err(ToricError::NoAlternative(format!(
            "specialization at {:?} has {surviving} surviving factors",
            a.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        )))
    }
}
