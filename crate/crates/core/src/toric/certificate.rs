//! Certificate search: for a direction `a`, find a matrix `M` with
//! `a = M * b` such that every irreducible factor of the pullback `F(x^M, z)`
//! specializes along `t^b` to a unit or to an irreducible factor, and the
//! images reconstruct `F(t^a, z)` exactly.
//!
//! Candidates are enumerated canonically: column-style Hermite forms with
//! `|det|` ascending and a lexicographic tie-break, so certificates and scan
//! catalogs are reproducible byte for byte.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::factor::{factor_in_ambient, Factorization};
use crate::lattice::{solve_in_image, IntMatrix};
use crate::laurent::LaurentPoly;
use crate::parse::print_poly;

use super::factor_multivariate;

/// Status of one specialized factor inside a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageStatus {
    Unit,
    Irreducible,
}

/// One `(factor, image)` pair of an accepted certificate.
#[derive(Debug, Clone)]
pub struct FactorPair {
    pub factor: LaurentPoly,
    pub image: LaurentPoly,
    pub status: ImageStatus,
    pub multiplicity: u32,
}

/// Accepted certificate: `a = matrix * b`, with the factor list of the
/// pullback and the status of each specialized factor.
#[derive(Debug, Clone)]
pub struct OmegaCertificate {
    pub matrix: IntMatrix,
    pub b: Vec<BigInt>,
    pub pairs: Vec<FactorPair>,
}

/// A candidate that was passed over, with the reason.
#[derive(Debug, Clone)]
pub struct SkippedCandidate {
    pub matrix: IntMatrix,
    pub reason: String,
}

/// Failure report: what was tried and why nothing was accepted.
#[derive(Debug, Clone)]
pub struct CertificateFailure {
    pub reason: String,
    pub skipped: Vec<SkippedCandidate>,
}

#[derive(Debug, Clone)]
pub enum CertificateOutcome {
    Found(OmegaCertificate),
    Failed(CertificateFailure),
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&OmegaCertificate> {
        match self {
            CertificateOutcome::Found(c) => Some(c),
            CertificateOutcome::Failed(_) => None,
        }
    }
}

/// Canonical candidate enumeration: transposes of row-Hermite forms, i.e.
/// lower-triangular matrices with positive diagonal and reduced
/// off-diagonals, ordered by determinant, then diagonal, then entries.
/// Distinct candidates have distinct column images.
pub fn hnf_candidates(n: usize, det_bound: u64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for det in 1..=det_bound.max(1) {
        for diag in ordered_factorizations(det, n) {
            enumerate_off_diagonals(&diag, &mut out);
        }
    }
    out
}

fn ordered_factorizations(d: u64, n: usize) -> Vec<Vec<u64>> {
    if n == 0 {
        return if d == 1 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (1..=d).filter(|f| d % f == 0) {
        for rest in ordered_factorizations(d / first, n - 1) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

fn enumerate_off_diagonals(diag: &[u64], out: &mut Vec<IntMatrix>) {
    let n = diag.len();
    // positions above the diagonal of the row-HNF H, row-major
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut values = vec![0u64; positions.len()];
    loop {
        let mut h = IntMatrix::zero(n, n);
        for i in 0..n {
            h.set(i, i, BigInt::from(diag[i]));
        }
        for (slot, &(i, j)) in positions.iter().enumerate() {
            h.set(i, j, BigInt::from(values[slot]));
        }
        out.push(h.transpose());
        // odometer over [0, diag[j]) per position
        let mut pos = positions.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            values[pos] += 1;
            if values[pos] < diag[positions[pos].1] {
                break;
            }
            values[pos] = 0;
            if pos == 0 {
                return;
            }
        }
    }
}

/// Reusable certificate search state for one polynomial: the candidate list
/// and lazily memoized pullback factorizations (they are independent of the
/// direction `a`, so scans share them across the whole box).
pub struct CertificateContext {
    f: LaurentPoly,
    candidates: Vec<IntMatrix>,
    pullback_cache: Mutex<HashMap<usize, Arc<Result<Factorization, String>>>>,
    image_cache: Mutex<HashMap<String, Arc<Result<Factorization, String>>>>,
}

impl CertificateContext {
    pub fn new(f: &LaurentPoly, det_bound: u64) -> Self {
        let n = f.ambient().substituted().len();
        CertificateContext {
            f: f.clone(),
            candidates: hnf_candidates(n, det_bound),
            pullback_cache: Mutex::new(HashMap::new()),
            image_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn candidates(&self) -> &[IntMatrix] {
        &self.candidates
    }

    fn pullback_factorization(&self, idx: usize) -> Arc<Result<Factorization, String>> {
        if let Some(hit) = self.pullback_cache.lock().unwrap().get(&idx) {
            return hit.clone();
        }
        let value = Arc::new(
            self.f
                .monomial_pullback(&self.candidates[idx])
                .map_err(|e| e.to_string())
                .and_then(|g| factor_multivariate(&g).map_err(|e| e.to_string())),
        );
        self.pullback_cache
            .lock()
            .unwrap()
            .entry(idx)
            .or_insert(value)
            .clone()
    }

    fn image_factorization(
        &self,
        image: &LaurentPoly,
    ) -> Arc<Result<Factorization, String>> {
        let key = print_poly(image);
        if let Some(hit) = self.image_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let value = Arc::new(factor_in_ambient(image).map_err(|e| e.to_string()));
        self.image_cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(value)
            .clone()
    }

    /// Runs the search for one direction. Failure is a value, not an error.
    pub fn certificate(&self, a: &[BigInt]) -> CertificateOutcome {
        let mut skipped = Vec::new();
        if a.iter().all(Zero::is_zero) {
            return CertificateOutcome::Failed(CertificateFailure {
                reason: "the zero direction has no certificate".to_string(),
                skipped,
            });
        }
        let target = match self.f.specialize_line(a) {
            Ok(t) => t,
            Err(e) => {
                return CertificateOutcome::Failed(CertificateFailure {
                    reason: e.to_string(),
                    skipped,
                })
            }
        };
        if target.is_zero() {
            let collisions = self.f.specialization_collisions(a);
            return CertificateOutcome::Failed(CertificateFailure {
                reason: super::ToricError::ZeroSpecialization { collisions }.to_string(),
                skipped,
            });
        }
        let image_ambient = target.ambient().clone();
        let image_mode = if image_ambient.fiber().is_some() {
            image_ambient.with_field("t")
        } else {
            image_ambient
        };

        for (idx, m) in self.candidates.iter().enumerate() {
            let b = match solve_in_image(m, a) {
                Ok(Some(b)) => b,
                Ok(None) => continue,
                Err(e) => {
                    return CertificateOutcome::Failed(CertificateFailure {
                        reason: e.to_string(),
                        skipped,
                    })
                }
            };
            let factorization = self.pullback_factorization(idx);
            let factorization = match factorization.as_ref() {
                Ok(f) => f.clone(),
                Err(reason) => {
                    skipped.push(SkippedCandidate {
                        matrix: m.clone(),
                        reason: reason.clone(),
                    });
                    continue;
                }
            };
            match self.try_candidate(m, &b, &factorization, &target, &image_mode) {
                Ok(cert) => return CertificateOutcome::Found(cert),
                Err(reason) => {
                    skipped.push(SkippedCandidate {
                        matrix: m.clone(),
                        reason,
                    });
                }
            }
        }
        CertificateOutcome::Failed(CertificateFailure {
            reason: "no candidate matrix admitted a certificate".to_string(),
            skipped,
        })
    }

    fn try_candidate(
        &self,
        m: &IntMatrix,
        b: &[BigInt],
        factorization: &Factorization,
        target: &LaurentPoly,
        image_mode: &Arc<crate::laurent::AmbientSpec>,
    ) -> Result<OmegaCertificate, String> {
        let mut pairs = Vec::new();
        let mut product = factorization
            .unit()
            .specialize_line(b)
            .map_err(|e| e.to_string())?;
        if product.is_zero() {
            return Err("the unit part specializes to zero".to_string());
        }
        for (p, mult) in factorization.factors() {
            let image = p.specialize_line(b).map_err(|e| e.to_string())?;
            if image.is_zero() {
                return Err(format!(
                    "factor {} specializes to zero",
                    print_poly(p)
                ));
            }
            let in_mode = image.with_ambient(image_mode);
            let status = if in_mode.is_unit(image_mode) {
                ImageStatus::Unit
            } else {
                let fac = self.image_factorization(&in_mode);
                let fac = fac.as_ref().as_ref().map_err(|e| e.clone())?;
                if !fac.is_irreducible() {
                    return Err(format!(
                        "image {} of factor {} is reducible",
                        print_poly(&image),
                        print_poly(p)
                    ));
                }
                ImageStatus::Irreducible
            };
            product = product.mul(&image.pow(*mult as i64).expect("positive power"));
            pairs.push(FactorPair {
                factor: p.clone(),
                image,
                status,
                multiplicity: *mult,
            });
        }
        if product != *target {
            // specialization is a ring homomorphism, so this is unreachable
            // unless an engine invariant broke; report it as a hard failure
            return Err("reconstruction failed: image product differs from the specialization"
                .to_string());
        }
        Ok(OmegaCertificate {
            matrix: m.clone(),
            b: b.to_vec(),
            pairs,
        })
    }
}

/// One-shot certificate search.
pub fn omega_certificate(f: &LaurentPoly, a: &[BigInt], det_bound: u64) -> CertificateOutcome {
    CertificateContext::new(f, det_bound).certificate(a)
}
