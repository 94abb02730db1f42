//! Action of the kernel of an isogeny on the irreducible factors of the
//! pullback: a torsion point twists each coefficient by the root of unity
//! paired with its exponent vector, permuting the factor list.

use num_traits::{ToPrimitive, Zero};

use crate::coeff::{Coefficient, CycNum};
use crate::lattice::{kernel_elements, IntMatrix, TorsionPoint};
use crate::laurent::LaurentPoly;

use super::{factor_multivariate, ToricError};

/// Result of letting the kernel act on a factor list: the orbit partition and
/// the stabilizer of the first factor.
#[derive(Debug, Clone)]
pub struct KernelOrbits {
    pub factors: Vec<LaurentPoly>,
    pub orbits: Vec<Vec<usize>>,
    pub stabilizer: Vec<TorsionPoint>,
    pub kernel: Vec<TorsionPoint>,
}

/// Coefficient twist `c_alpha -> zeta^alpha * c_alpha` over the substituted
/// variables; the paired root of unity is exact cyclotomic arithmetic.
pub fn twist_by(f: &LaurentPoly, zeta: &TorsionPoint) -> Result<LaurentPoly, ToricError> {
    let subs = f.ambient().substituted();
    if subs.len() != zeta.dim() {
        return Err(ToricError::Precondition(format!(
            "torsion point has dimension {}, polynomial has {} substituted variables",
            zeta.dim(),
            subs.len()
        )));
    }
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        let alpha: Vec<_> = subs.iter().map(|&i| e.0[i].clone()).collect();
        let phase = zeta.pair(&alpha);
        let coeff = if phase.is_zero() {
            c.clone()
        } else {
            let order = phase.denom().to_u32().ok_or_else(|| {
                ToricError::Precondition("torsion order exceeds machine range".to_string())
            })?;
            let k = phase.numer().to_i64().expect("reduced phase numerator");
            let root = Coefficient::Cyc(CycNum::root_of_unity(order, k)).normalized();
            c.try_mul(&root)?
        };
        terms.push((e.clone(), coeff));
    }
    Ok(LaurentPoly::from_terms(f.ambient(), terms))
}

/// Scales a factor so its leading coefficient is 1, making comparison up to
/// unit structural.
fn monic_form(f: &LaurentPoly) -> Result<LaurentPoly, ToricError> {
    let (_, lead) = f
        .leading_term()
        .ok_or_else(|| ToricError::Precondition("zero factor".to_string()))?;
    Ok(f.mul_coeff(&lead.try_inv()?))
}

/// Lets `ker(L)` act on the irreducible factors of the pullback
/// `F(x^L, z)`. Factors are computed over `Q` when none are supplied; when
/// the rational engine cannot reach them (or the action leaves the rational
/// list, e.g. a splitting only visible over a cyclotomic field) the caller
/// must supply the list, product-checked against the pullback.
pub fn kernel_action_orbits(
    f: &LaurentPoly,
    l: &IntMatrix,
    supplied: Option<Vec<LaurentPoly>>,
) -> Result<KernelOrbits, ToricError> {
    let pullback = f.monomial_pullback(l)?;
    let kernel = kernel_elements(l)?;
    let factors: Vec<LaurentPoly> = match supplied {
        Some(list) => {
            if list.is_empty() {
                return Err(ToricError::Precondition(
                    "supplied factor list is empty".to_string(),
                ));
            }
            let mut prod = LaurentPoly::one(list[0].ambient());
            for g in &list {
                prod = prod.try_mul(g)?;
            }
            let quotient = pullback.divexact(&prod).ok_or_else(|| {
                ToricError::Precondition(
                    "supplied factors do not multiply to the pullback".to_string(),
                )
            })?;
            if quotient.num_terms() != 1 {
                return Err(ToricError::Precondition(
                    "supplied factors miss a non-unit part of the pullback".to_string(),
                ));
            }
            list
        }
        None => {
            let fac = factor_multivariate(&pullback).map_err(|e| match e {
                ToricError::FactorListRequired(msg) => ToricError::FactorListRequired(msg),
                other => other,
            })?;
            fac.factors().iter().map(|(g, _)| g.clone()).collect()
        }
    };
    let keys: Vec<LaurentPoly> = factors
        .iter()
        .map(monic_form)
        .collect::<Result<_, _>>()?;

    // permutation induced by each kernel element
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(kernel.len());
    for zeta in &kernel {
        let mut perm = Vec::with_capacity(factors.len());
        for g in &factors {
            let twisted = monic_form(&twist_by(g, zeta)?)?;
            let j = keys.iter().position(|k| *k == twisted).ok_or_else(|| {
                ToricError::FactorListRequired(format!(
                    "the twist by {:?} leaves the factor list; supply factors over the \
                     cyclotomic field",
                    zeta.phases()
                ))
            })?;
            perm.push(j);
        }
        perms.push(perm);
    }

    // orbit partition: union-find over all permutations
    let mut parent: Vec<usize> = (0..factors.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for perm in &perms {
        for (i, &j) in perm.iter().enumerate() {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut grouped: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..factors.len() {
        let root = find(&mut parent, i);
        grouped.entry(root).or_default().push(i);
    }
    let orbits: Vec<Vec<usize>> = grouped.into_values().collect();

    let stabilizer: Vec<TorsionPoint> = kernel
        .iter()
        .zip(&perms)
        .filter(|(_, perm)| perm.first() == Some(&0))
        .map(|(z, _)| z.clone())
        .collect();

    Ok(KernelOrbits {
        factors,
        orbits,
        stabilizer,
        kernel,
    })
}
