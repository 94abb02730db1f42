//! Factorization of pullbacks with three or more live variables.
//!
//! The live variables other than one kept coordinate are collapsed into a
//! single fresh variable by a mixed-radix (Kronecker) substitution that is
//! injective on the factor box — per-variable degrees add under
//! multiplication, so every factor's support decodes uniquely. Divisor
//! multisets of the collapsed factorization are lifted back by decoding and
//! verified by exact division, smallest weighted degree first; a candidate
//! accepted at minimal degree is irreducible.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::factor::{factor_in_ambient, Factorization};
use crate::laurent::{AmbientSpec, ExpVec, LaurentPoly};

use super::ToricError;

/// Largest tolerated degree of the collapsed variable; pullbacks beyond it
/// are reported as requiring an externally supplied factor list.
const COLLAPSE_DEGREE_BUDGET: u64 = 4_000;

/// Complete irreducible factorization over `Q` of a Laurent polynomial with
/// any number of live variables, in the ring designated by its ambient.
pub fn factor_multivariate(f: &LaurentPoly) -> Result<Factorization, ToricError> {
    if f.is_zero() {
        return Err(ToricError::Factor(crate::factor::FactorError::ZeroInput));
    }
    let ambient = f.ambient().clone();
    let (_, f0) = f.normalize_exponents();
    let live: Vec<usize> = (0..ambient.dim())
        .filter(|i| {
            f0.degree_in(&ambient.vars()[*i])
                .map(|(_, max)| !max.is_zero())
                .unwrap_or(false)
        })
        .collect();
    if live.len() <= 2 {
        return Ok(factor_in_ambient(f)?);
    }

    // keep one distinguished coordinate (the fiber when live, else the field
    // variable, else the last live one); collapse the rest
    let kept = ambient
        .fiber()
        .filter(|i| live.contains(i))
        .or_else(|| ambient.field_var().filter(|i| live.contains(i)))
        .unwrap_or(*live.last().expect("nonempty"));
    let collapsed: Vec<usize> = live.iter().copied().filter(|&i| i != kept).collect();

    // mixed-radix weights over the per-variable degree box
    let mut radices = Vec::with_capacity(collapsed.len());
    for &i in &collapsed {
        let (_, max) = f0.degree_in(&ambient.vars()[i]).expect("live variable");
        let d = max.to_u64().ok_or_else(|| {
            ToricError::FactorListRequired(format!(
                "degree of {} exceeds the collapse budget",
                ambient.vars()[i]
            ))
        })?;
        radices.push(d + 1);
    }
    radices
        .iter()
        .try_fold(1u64, |acc, &r| {
            acc.checked_mul(r).filter(|&t| t <= COLLAPSE_DEGREE_BUDGET)
        })
        .ok_or_else(|| {
            ToricError::FactorListRequired(format!(
                "collapsed degree {} exceeds the budget {}",
                radices
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join("*"),
                COLLAPSE_DEGREE_BUDGET
            ))
        })?;
    let mut weights = Vec::with_capacity(collapsed.len());
    let mut w = 1u64;
    for &r in &radices {
        weights.push(w);
        w *= r;
    }

    // fresh collapsed-variable name
    let mut collapse_name = "u0".to_string();
    while ambient.index_of(&collapse_name).is_some() {
        collapse_name.push('_');
    }
    let kept_name = ambient.vars()[kept].clone();
    let plane = AmbientSpec::new(&[collapse_name.as_str(), kept_name.as_str()]);

    let collapse = |p: &LaurentPoly| -> LaurentPoly {
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            let mut k = BigInt::zero();
            for (slot, &i) in collapsed.iter().enumerate() {
                k += &e.0[i] * BigInt::from(weights[slot]);
            }
            terms.push((ExpVec(vec![k, e.0[kept].clone()]), c.clone()));
        }
        LaurentPoly::from_terms(&plane, terms)
    };

    let image = collapse(&f0);
    debug_assert_eq!(image.num_terms(), f0.num_terms(), "collapse is injective");
    let plane_fac = factor_in_ambient(&image)?;

    // divisor multisets of the collapsed factorization, lifted back
    let parts: Vec<(LaurentPoly, u32)> = plane_fac
        .factors()
        .iter()
        .map(|(g, m)| (g.clone(), *m))
        .collect();
    let mut remaining: Vec<u32> = parts.iter().map(|(_, m)| *m).collect();
    let mut current = f0.clone();
    let mut found: Vec<LaurentPoly> = Vec::new();
    let part_degree = |i: usize| -> u64 {
        parts[i]
            .0
            .leading_term()
            .map(|(e, _)| e.total_degree().to_u64().unwrap_or(0))
            .unwrap_or(0)
    };
    'outer: loop {
        let live_total: u32 = remaining.iter().sum();
        if live_total == 0 {
            break;
        }
        let mut divisors = divisor_vectors(&remaining);
        divisors.sort_by_key(|v| {
            (
                v.iter()
                    .enumerate()
                    .map(|(i, &m)| m as u64 * part_degree(i))
                    .sum::<u64>(),
                v.clone(),
            )
        });
        for v in &divisors {
            let picked: u32 = v.iter().sum();
            if picked == 0 || picked == live_total {
                continue;
            }
            let mut prod = LaurentPoly::one(&plane);
            for (i, &m) in v.iter().enumerate() {
                if m > 0 {
                    prod = prod.mul(&parts[i].0.pow(m as i64).expect("positive power"));
                }
            }
            let Some(candidate) = decode(&prod, &ambient, &collapsed, &radices, kept) else {
                continue;
            };
            if let Some(q) = current.divexact(&candidate) {
                found.push(candidate);
                current = q;
                for (slot, &m) in v.iter().enumerate() {
                    remaining[slot] -= m;
                }
                continue 'outer;
            }
        }
        // nothing proper divides: the remainder is a single irreducible factor
        break;
    }
    if current.num_terms() > 1 {
        found.push(current);
    }
    Ok(crate::factor::assemble(f, &ambient, found)?)
}

/// All componentwise sub-vectors of a multiplicity vector.
fn divisor_vectors(mults: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &m in mults {
        let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
        for prefix in &out {
            for take in 0..=m {
                let mut v = prefix.clone();
                v.push(take);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Lifts a collapsed bivariate polynomial back to the original ambient by
/// mixed-radix decoding; `None` when any exponent decodes outside the box.
fn decode(
    p: &LaurentPoly,
    ambient: &std::sync::Arc<AmbientSpec>,
    collapsed: &[usize],
    radices: &[u64],
    kept: usize,
) -> Option<LaurentPoly> {
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let mut k = e.0[0].clone();
        if k.is_negative() {
            return None;
        }
        let mut exp = ExpVec::zeros(ambient.dim());
        for (slot, &i) in collapsed.iter().enumerate() {
            let r = BigInt::from(radices[slot]);
            let (q, digit) = num_integer::Integer::div_rem(&k, &r);
            exp.0[i] = digit;
            k = q;
        }
        if !k.is_zero() {
            return None;
        }
        exp.0[kept] = e.0[1].clone();
        terms.push((exp, c.clone()));
    }
    Some(LaurentPoly::from_terms(ambient, terms))
}
