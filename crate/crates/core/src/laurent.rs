//! Sparse Laurent polynomials and monomial substitution.
//!
//! A [`LaurentPoly`] is a map from integer exponent vectors to nonzero
//! coefficients over a shared [`AmbientSpec`]. Exponents are
//! arbitrary-precision: composed substitutions routinely leave machine range.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::coeff::{CoeffError, Coefficient, Rational};
use crate::lattice::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial does not involve the variable {0}")]
    MissingVariable(String),
    #[error("negative power of a non-monomial")]
    NonInvertible,
    #[error("coefficient arithmetic failed: {0}")]
    Coeff(#[from] CoeffError),
    #[error("variable name collision: {0}")]
    NameCollision(String),
}

/// Ordered variable list with optional designations: the fiber variable `z`,
/// the line parameter `t`, and (for function-field mode) the variable
/// generating the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientSpec {
    vars: Vec<String>,
    fiber: Option<usize>,
    line: Option<usize>,
    field: Option<usize>,
}

impl AmbientSpec {
    pub fn new(vars: &[&str]) -> Arc<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let mut uniq = vars.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), vars.len(), "duplicate variable names");
        Arc::new(AmbientSpec {
            vars,
            fiber: None,
            line: None,
            field: None,
        })
    }

    pub fn with_fiber(self: &Arc<Self>, name: &str) -> Arc<Self> {
        let mut s = (**self).clone();
        s.fiber = Some(s.index_of(name).expect("fiber variable must exist"));
        Arc::new(s)
    }

    pub fn with_line(self: &Arc<Self>, name: &str) -> Arc<Self> {
        let mut s = (**self).clone();
        s.line = Some(s.index_of(name).expect("line variable must exist"));
        Arc::new(s)
    }

    pub fn with_field(self: &Arc<Self>, name: &str) -> Arc<Self> {
        let mut s = (**self).clone();
        s.field = Some(s.index_of(name).expect("field variable must exist"));
        Arc::new(s)
    }

    /// Drops the function-field designation, back to plain `Q[vars^±1]`.
    pub fn without_field(self: &Arc<Self>) -> Arc<Self> {
        let mut s = (**self).clone();
        s.field = None;
        Arc::new(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn fiber(&self) -> Option<usize> {
        self.fiber
    }

    pub fn line(&self) -> Option<usize> {
        self.line
    }

    pub fn field_var(&self) -> Option<usize> {
        self.field
    }

    /// Indices of the variables a monomial map substitutes: everything that
    /// is neither the fiber variable nor the coefficient-field variable.
    pub fn substituted(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|i| Some(*i) != self.fiber && Some(*i) != self.field)
            .collect()
    }

    /// Indices left untouched by substitution (fiber / field variables).
    pub fn passthrough(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|i| Some(*i) == self.fiber || Some(*i) == self.field)
            .collect()
    }

    fn describe(&self) -> String {
        format!("({})", self.vars.join(","))
    }
}

/// Exponent vector; length equals the ambient dimension, negative entries
/// allowed. The `Ord` instance (total degree, then lexicographic) fixes the
/// storage order; display order is ambient-aware and lives in [`LaurentPoly`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(pub Vec<BigInt>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(vec![BigInt::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ExpVec(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn total_degree(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ambient: Arc<AmbientSpec>,
    terms: BTreeMap<ExpVec, Coefficient>,
}

impl LaurentPoly {
    pub fn zero(ambient: &Arc<AmbientSpec>) -> Self {
        LaurentPoly {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Arc<AmbientSpec>) -> Self {
        Self::constant(ambient, Coefficient::one())
    }

    pub fn constant(ambient: &Arc<AmbientSpec>, c: Coefficient) -> Self {
        let mut p = Self::zero(ambient);
        p.add_term(ExpVec::zeros(ambient.dim()), c);
        p
    }

    pub fn monomial(ambient: &Arc<AmbientSpec>, exp: ExpVec, c: Coefficient) -> Self {
        assert_eq!(exp.0.len(), ambient.dim());
        let mut p = Self::zero(ambient);
        p.add_term(exp, c);
        p
    }

    /// The variable `name` as a polynomial.
    pub fn var(ambient: &Arc<AmbientSpec>, name: &str) -> Self {
        let idx = ambient
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        let mut exp = ExpVec::zeros(ambient.dim());
        exp.0[idx] = BigInt::from(1);
        Self::monomial(ambient, exp, Coefficient::one())
    }

    pub fn from_terms(
        ambient: &Arc<AmbientSpec>,
        terms: impl IntoIterator<Item = (ExpVec, Coefficient)>,
    ) -> Self {
        let mut p = Self::zero(ambient);
        for (e, c) in terms {
            assert_eq!(e.0.len(), ambient.dim());
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: ExpVec, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.normalized());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().try_add(&c).expect("compatible coefficients");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ambient(&self) -> &Arc<AmbientSpec> {
        &self.ambient
    }

    /// Reinterprets the same terms under different designations of the same
    /// variable list.
    pub fn with_ambient(&self, ambient: &Arc<AmbientSpec>) -> Self {
        assert_eq!(ambient.vars(), self.ambient.vars(), "variable lists differ");
        LaurentPoly {
            ambient: ambient.clone(),
            terms: self.terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.0.iter().all(Zero::is_zero) && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> Option<&Coefficient> {
        self.terms.get(exp)
    }

    /// The value as a single coefficient, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return Some(Coefficient::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.0.iter().all(Zero::is_zero) {
                return Some(c.clone());
            }
        }
        None
    }

    fn check_same_ambient(&self, other: &Self) -> Result<(), LaurentError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(LaurentError::AmbientMismatch(
                self.ambient.describe(),
                other.ambient.describe(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_same_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_same_ambient(other)?;
        let mut out = Self::zero(&self.ambient);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1.try_mul(c2)?);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("same ambient")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("same ambient")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("same ambient")
    }

    pub fn mul_coeff(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ambient);
        }
        LaurentPoly {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.try_mul(c).expect("compatible coefficients")))
                .collect(),
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self.mul_coeff(&Coefficient::Rat(r.clone()))
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn mul_monomial(&self, shift: &ExpVec) -> Self {
        LaurentPoly {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self, LaurentError> {
        if e < 0 {
            // only monomials with invertible coefficient invert in the ring
            if self.terms.len() != 1 {
                return Err(LaurentError::NonInvertible);
            }
            let (exp, c) = self.terms.iter().next().unwrap();
            let inv_c = c.try_inv()?;
            let inv = LaurentPoly::monomial(
                &self.ambient,
                ExpVec(exp.0.iter().map(|v| -v).collect()),
                inv_c,
            );
            return inv.pow(-e);
        }
        let mut acc = Self::one(&self.ambient);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Exact exponent range of a variable across the terms of a nonzero
    /// polynomial.
    pub fn degree_in(&self, var: &str) -> Result<(BigInt, BigInt), LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let idx = self
            .ambient
            .index_of(var)
            .ok_or_else(|| LaurentError::MissingVariable(var.to_string()))?;
        let mut min: Option<BigInt> = None;
        let mut max: Option<BigInt> = None;
        for e in self.terms.keys() {
            let v = &e.0[idx];
            if min.as_ref().is_none_or(|m| v < m) {
                min = Some(v.clone());
            }
            if max.as_ref().is_none_or(|m| v > m) {
                max = Some(v.clone());
            }
        }
        Ok((min.unwrap(), max.unwrap()))
    }

    /// The coefficient of the top power of the fiber variable, as a
    /// polynomial in the remaining variables. Errors when the polynomial does
    /// not genuinely involve it (constant fiber exponent across terms).
    pub fn leading_coeff_in_fiber(&self) -> Result<LaurentPoly, LaurentError> {
        let fiber = self
            .ambient
            .fiber()
            .ok_or_else(|| LaurentError::MissingVariable("fiber variable".to_string()))?;
        let z_name = self.ambient.vars()[fiber].clone();
        let (zmin, zmax) = self.degree_in(&z_name)?;
        if zmin == zmax {
            return Err(LaurentError::MissingVariable(z_name));
        }
        let mut out = Self::zero(&self.ambient);
        for (e, c) in &self.terms {
            if e.0[fiber] == zmax {
                let mut reduced = e.clone();
                reduced.0[fiber] = BigInt::zero();
                out.add_term(reduced, c.clone());
            }
        }
        Ok(out)
    }

    /// True iff the polynomial is a unit of the ring designated by `ambient`:
    /// in plain mode a single term with invertible coefficient, in
    /// function-field mode anything supported on a single monomial in the
    /// non-field variables.
    pub fn is_unit(&self, ambient: &Arc<AmbientSpec>) -> bool {
        if self.is_zero() {
            return false;
        }
        match ambient.field_var() {
            None => self.terms.len() == 1,
            Some(fv) => {
                let mut seen: Option<Vec<&BigInt>> = None;
                for e in self.terms.keys() {
                    let key: Vec<&BigInt> = e
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != fv)
                        .map(|(_, v)| v)
                        .collect();
                    match &seen {
                        None => seen = Some(key),
                        Some(k) if *k == key => {}
                        _ => return false,
                    }
                }
                true
            }
        }
    }

    /// Componentwise minimum of all exponent vectors (zero polynomial maps to
    /// the zero vector).
    pub fn min_exponents(&self) -> ExpVec {
        let n = self.ambient.dim();
        let mut mins = vec![None::<BigInt>; n];
        for e in self.terms.keys() {
            for (i, v) in e.0.iter().enumerate() {
                if mins[i].as_ref().is_none_or(|m| v < m) {
                    mins[i] = Some(v.clone());
                }
            }
        }
        ExpVec(mins.into_iter().map(|m| m.unwrap_or_default()).collect())
    }

    /// Factors out the monomial making all minimal exponents zero, returning
    /// `(shift, polynomial)` with `self = x^shift * polynomial`.
    pub fn normalize_exponents(&self) -> (ExpVec, LaurentPoly) {
        let mins = self.min_exponents();
        let neg = ExpVec(mins.0.iter().map(|v| -v).collect());
        (mins, self.mul_monomial(&neg))
    }

    /// Monomial pullback `F(x^A, z)`: each substituted exponent row `alpha`
    /// becomes `alpha^T * A`; fiber/field variables pass through. For square
    /// `A` the substituted variables keep their names, otherwise `k` fresh
    /// variables `u1..uk` are introduced.
    pub fn monomial_pullback(&self, a: &IntMatrix) -> Result<LaurentPoly, LaurentError> {
        let subs = self.ambient.substituted();
        let pass = self.ambient.passthrough();
        if subs.len() != a.nrows() {
            return Err(LaurentError::DimensionMismatch(format!(
                "matrix has {} rows, polynomial has {} substituted variables",
                a.nrows(),
                subs.len()
            )));
        }
        let k = a.ncols();
        let out_ambient = if k == subs.len() {
            self.ambient.clone()
        } else {
            let mut names: Vec<String> = (1..=k).map(|i| format!("u{i}")).collect();
            for &p in &pass {
                let nm = self.ambient.vars()[p].clone();
                if names.contains(&nm) {
                    return Err(LaurentError::NameCollision(nm));
                }
                names.push(nm);
            }
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut amb = AmbientSpec::new(&refs);
            if let Some(f) = self.ambient.fiber() {
                amb = amb.with_fiber(&self.ambient.vars()[f]);
            }
            if let Some(f) = self.ambient.field_var() {
                amb = amb.with_field(&self.ambient.vars()[f]);
            }
            amb
        };
        let mut out = LaurentPoly::zero(&out_ambient);
        for (e, c) in &self.terms {
            let alpha: Vec<BigInt> = subs.iter().map(|&i| e.0[i].clone()).collect();
            let image = a.vec_mul(&alpha);
            let mut new_exp = vec![BigInt::zero(); out_ambient.dim()];
            if k == subs.len() {
                for (j, &i) in subs.iter().enumerate() {
                    new_exp[i] = image[j].clone();
                }
                for &p in &pass {
                    new_exp[p] = e.0[p].clone();
                }
            } else {
                new_exp[..k].clone_from_slice(&image);
                for (j, &p) in pass.iter().enumerate() {
                    new_exp[k + j] = e.0[p].clone();
                }
            }
            out.add_term(ExpVec(new_exp), c.clone());
        }
        Ok(out)
    }

    /// Line specialization `F(t^a, z)`: the pullback along the single-column
    /// matrix `a`. The substituted variables collapse into the line parameter
    /// `t`; fiber/field variables pass through.
    pub fn specialize_line(&self, a: &[BigInt]) -> Result<LaurentPoly, LaurentError> {
        let subs = self.ambient.substituted();
        if subs.len() != a.len() {
            return Err(LaurentError::DimensionMismatch(format!(
                "exponent vector has length {}, polynomial has {} substituted variables",
                a.len(),
                subs.len()
            )));
        }
        let pass = self.ambient.passthrough();
        let mut names = vec!["t".to_string()];
        for &p in &pass {
            let nm = self.ambient.vars()[p].clone();
            if nm == "t" {
                return Err(LaurentError::NameCollision(nm));
            }
            names.push(nm);
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut amb = AmbientSpec::new(&refs).with_line("t");
        if let Some(f) = self.ambient.fiber() {
            amb = amb.with_fiber(&self.ambient.vars()[f]);
        }
        if let Some(f) = self.ambient.field_var() {
            amb = amb.with_field(&self.ambient.vars()[f]);
        }
        let mut out = LaurentPoly::zero(&amb);
        for (e, c) in &self.terms {
            let texp: BigInt = subs
                .iter()
                .enumerate()
                .map(|(j, &i)| &e.0[i] * &a[j])
                .sum::<BigInt>();
            let mut new_exp = vec![BigInt::zero(); amb.dim()];
            new_exp[0] = texp;
            for (j, &p) in pass.iter().enumerate() {
                new_exp[1 + j] = e.0[p].clone();
            }
            out.add_term(ExpVec(new_exp), c.clone());
        }
        Ok(out)
    }

    /// Pairs of original exponent vectors that land on the same monomial
    /// under the specialization `t^a` — the witnesses reported when a
    /// specialization collapses to zero.
    pub fn specialization_collisions(&self, a: &[BigInt]) -> Vec<(ExpVec, ExpVec)> {
        let subs = self.ambient.substituted();
        let pass = self.ambient.passthrough();
        let mut buckets: BTreeMap<Vec<BigInt>, Vec<&ExpVec>> = BTreeMap::new();
        for e in self.terms.keys() {
            let mut key: Vec<BigInt> = vec![subs
                .iter()
                .enumerate()
                .map(|(j, &i)| &e.0[i] * &a[j])
                .sum::<BigInt>()];
            for &p in &pass {
                key.push(e.0[p].clone());
            }
            buckets.entry(key).or_default().push(e);
        }
        let mut out = Vec::new();
        for group in buckets.values() {
            for pair in group.windows(2) {
                out.push((pair[0].clone(), pair[1].clone()));
            }
        }
        out
    }

    /// Terms in canonical display order: fiber degree first (descending),
    /// then total degree of the rest, then lexicographic on the exponents.
    pub fn sorted_terms(&self) -> Vec<(ExpVec, Coefficient)> {
        let fiber = self.ambient.fiber();
        let mut terms: Vec<(ExpVec, Coefficient)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.sort_by(|(a, _), (b, _)| Self::display_cmp(fiber, a, b));
        terms
    }

    fn display_cmp(fiber: Option<usize>, a: &ExpVec, b: &ExpVec) -> Ordering {
        if let Some(f) = fiber {
            match b.0[f].cmp(&a.0[f]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        let rest_deg = |e: &ExpVec| -> BigInt {
            e.0.iter()
                .enumerate()
                .filter(|(i, _)| Some(*i) != fiber)
                .map(|(_, v)| v)
                .sum()
        };
        rest_deg(b).cmp(&rest_deg(a)).then_with(|| b.0.cmp(&a.0))
    }

    /// Leading term in the canonical display order.
    pub fn leading_term(&self) -> Option<(ExpVec, Coefficient)> {
        let fiber = self.ambient.fiber();
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| Self::display_cmp(fiber, a, b))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Exact division in the Laurent ring: `Some(q)` with `self = q * other`,
    /// or `None` when `other` does not divide `self`. Works over any field
    /// coefficients the two polynomials share.
    pub fn divexact(&self, other: &Self) -> Option<LaurentPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(&self.ambient));
        }
        self.check_same_ambient(other).ok()?;
        // reduce to true polynomials; monomials are units here
        let (s_num, num) = self.normalize_exponents();
        let (s_den, den) = other.normalize_exponents();
        let den_lead = den.terms.last_key_value().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = num;
        let mut quot = Self::zero(&self.ambient);
        while !rem.is_zero() {
            let (re, rc) = rem
                .terms
                .last_key_value()
                .map(|(e, c)| (e.clone(), c.clone()))
                .expect("nonzero remainder");
            let diff = re.sub(&den_lead.0);
            if diff.0.iter().any(|v| v.is_negative()) {
                return None;
            }
            let coeff = rc.try_mul(&den_lead.1.try_inv().ok()?).ok()?;
            let mono = Self::monomial(&self.ambient, diff, coeff);
            quot = quot.add(&mono);
            rem = rem.sub(&mono.mul(&den));
        }
        let shift = s_num.sub(&s_den);
        Some(quot.mul_monomial(&shift))
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::parse::print_poly(self))
    }
}

#[cfg(test)]
mod tests;
