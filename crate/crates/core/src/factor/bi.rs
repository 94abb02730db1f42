//! Bivariate factorization over `Q[t][z]`.
//!
//! Evaluate at a good point `t = t0`, factor the univariate image, lift the
//! factors `(t - t0)`-adically by linear Hensel steps, then recombine factor
//! subsets with an exact division test. Content in `Q[t]` is factored
//! univariately, so the output is the full irreducible factorization in
//! `Q[t, z]`.

use num_traits::Zero;

use crate::coeff::{QPoly, Rational};

use super::uni::factor_uni_q;

/// Dense polynomial in two variables: `zc[j]` is the coefficient of the
/// second variable's `j`-th power, itself a polynomial in the first variable.
/// No trailing zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct BiPoly {
    zc: Vec<QPoly>,
}

impl BiPoly {
    pub fn new(mut zc: Vec<QPoly>) -> Self {
        while zc.last().is_some_and(QPoly::is_zero) {
            zc.pop();
        }
        BiPoly { zc }
    }

    pub fn zero() -> Self {
        BiPoly { zc: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly {
            zc: vec![QPoly::one()],
        }
    }

    pub fn from_t_poly(p: QPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn z_coeffs(&self) -> &[QPoly] {
        &self.zc
    }

    pub fn is_zero(&self) -> bool {
        self.zc.is_empty()
    }

    pub fn deg_z(&self) -> Option<usize> {
        self.zc.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.zc.iter().filter_map(QPoly::degree).max()
    }

    pub fn lc_z(&self) -> QPoly {
        self.zc.last().cloned().unwrap_or_else(QPoly::zero)
    }

    fn coeff(&self, j: usize) -> QPoly {
        self.zc.get(j).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![QPoly::zero(); self.zc.len() + other.zc.len() - 1];
        for (i, a) in self.zc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.zc.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.zc.len().max(other.zc.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            out.push(self.coeff(j).sub(&other.coeff(j)));
        }
        Self::new(out)
    }

    pub fn mul_t_poly(&self, p: &QPoly) -> Self {
        Self::new(self.zc.iter().map(|c| c.mul(p)).collect())
    }

    /// Evaluation `t = t0`, leaving a univariate polynomial in `z`.
    pub fn eval_t(&self, t0: &Rational) -> QPoly {
        QPoly::new(self.zc.iter().map(|c| c.eval(t0)).collect())
    }

    /// Taylor shift of the first variable: `f(t + c, z)`.
    pub fn shift_t(&self, c: &Rational) -> Self {
        Self::new(self.zc.iter().map(|p| p.shift(c)).collect())
    }

    /// Truncation modulo `t^k`.
    pub fn truncate_t(&self, k: usize) -> Self {
        Self::new(
            self.zc
                .iter()
                .map(|p| QPoly::new(p.coeffs().iter().take(k).cloned().collect()))
                .collect(),
        )
    }

    /// Integer-primitive positive-leading content in the first variable.
    pub fn content_t(&self) -> QPoly {
        let mut g = QPoly::zero();
        for c in &self.zc {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return g;
        }
        g.primitive_int().0
    }

    pub fn primitive_t(&self) -> Self {
        let content = self.content_t();
        if content.is_zero() || content.is_one() {
            return self.clone();
        }
        Self::new(
            self.zc
                .iter()
                .map(|c| c.divexact(&content).expect("content divides"))
                .collect(),
        )
    }
}

// gcd and division in z over Q[t], with primitive pseudo-remainder
// sequences so coefficients stay polynomial

fn derivative_z(f: &BiPoly) -> BiPoly {
    if f.zc.len() <= 1 {
        return BiPoly::zero();
    }
    BiPoly::new(
        f.zc
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_scalar(&Rational::from_integer(i.into())))
            .collect(),
    )
}

/// Pseudo-remainder with respect to z: a scalar multiple of `a mod b`.
fn bi_prem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = b.deg_z().expect("nonzero divisor");
    let lc = b.lc_z();
    let mut rem = a.clone();
    while rem.deg_z().is_some_and(|d| d >= db) {
        let lead = rem.lc_z();
        let k = rem.deg_z().unwrap() - db;
        let mut scaled: Vec<QPoly> = rem.zc.iter().map(|c| c.mul(&lc)).collect();
        for (j, bc) in b.zc.iter().enumerate() {
            scaled[k + j] = scaled[k + j].sub(&lead.mul(bc));
        }
        rem = BiPoly::new(scaled);
    }
    rem
}

/// Primitive gcd with respect to z over `Q[t]`.
fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.primitive_t();
    }
    if b.is_zero() {
        return a.primitive_t();
    }
    let mut a = a.primitive_t();
    let mut b = b.primitive_t();
    if a.deg_z() < b.deg_z() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.deg_z() == Some(0) {
            // a nonzero coefficient gcd: contents were stripped
            return BiPoly::one();
        }
        let r = bi_prem(&a, &b);
        a = b;
        b = r.primitive_t();
    }
    a.primitive_t()
}

/// Exact division in `Q[t][z]`; `None` when `den` does not divide `num`.
fn bi_divexact(num: &BiPoly, den: &BiPoly) -> Option<BiPoly> {
    if den.is_zero() {
        return None;
    }
    if num.is_zero() {
        return Some(BiPoly::zero());
    }
    let dd = den.deg_z()?;
    if num.deg_z() < Some(dd) {
        return None;
    }
    let lc = den.lc_z();
    let mut rem = num.clone();
    let mut quot = vec![QPoly::zero(); num.deg_z().unwrap() - dd + 1];
    while let Some(d) = rem.deg_z() {
        if d < dd {
            return None;
        }
        let q = rem.lc_z().divexact(&lc)?;
        let k = d - dd;
        let mut next = rem.zc.clone();
        for (j, bc) in den.zc.iter().enumerate() {
            next[k + j] = next[k + j].sub(&q.mul(bc));
        }
        debug_assert!(next[d].is_zero());
        quot[k] = q;
        rem = BiPoly::new(next);
        if rem.is_zero() {
            return Some(BiPoly::new(quot));
        }
    }
    None
}

/// Yun squarefree decomposition in z over `Q[t]` for a `t`-primitive input;
/// the parts are primitive and pairwise coprime.
fn yun_bi(f: &BiPoly) -> Vec<(BiPoly, u32)> {
    let df = derivative_z(f);
    let g = bi_gcd(f, &df);
    // the primitive gcd divides both exactly by Gauss's lemma
    let mut b = bi_divexact(f, &g).expect("gcd divides");
    let mut c = bi_divexact(&df, &g).expect("gcd divides");
    let mut parts = Vec::new();
    let mut mult = 1u32;
    loop {
        let d = c.sub(&derivative_z(&b));
        if d.is_zero() {
            if b.deg_z().is_some_and(|deg| deg >= 1) {
                parts.push((b.primitive_t(), mult));
            }
            return parts;
        }
        let a = bi_gcd(&b, &d);
        if a.deg_z().is_some_and(|deg| deg >= 1) {
            parts.push((a.clone(), mult));
        }
        b = bi_divexact(&b, &a).expect("gcd divides");
        c = bi_divexact(&d, &a).expect("gcd divides");
        mult += 1;
        if b.deg_z().is_none_or(|deg| deg == 0) {
            return parts;
        }
    }
}

/// Complete irreducible factorization of a nonzero two-variable polynomial
/// over `Q`, content included; factors are returned with repetition, scaled
/// arbitrarily (callers canonicalize).
pub(crate) fn factor_two_var(f: &BiPoly) -> Vec<BiPoly> {
    assert!(!f.is_zero(), "cannot factor zero");
    let mut out = Vec::new();
    // content in t factors univariately
    let content = f.content_t();
    if let Some(d) = content.degree() {
        if d > 0 {
            let (_, factors) = factor_uni_q(&content).expect("nonzero content");
            for (g, m) in factors {
                for _ in 0..m {
                    out.push(BiPoly::from_t_poly(g.clone()));
                }
            }
        }
    }
    let f = f.primitive_t();
    let dz = f.deg_z().expect("nonzero");
    if dz == 0 {
        return out;
    }
    // squarefree structure in z over Q[t] (Yun with primitive gcds)
    let parts = yun_bi(&f);
    for (part, m) in parts {
        let irreducibles = factor_squarefree_bi(&part);
        for g in irreducibles {
            for _ in 0..m {
                out.push(g.clone());
            }
        }
    }
    out
}

/// Irreducible factorization of a squarefree, `t`-primitive polynomial with
/// positive `z`-degree.
fn factor_squarefree_bi(f: &BiPoly) -> Vec<BiPoly> {
    let dz = f.deg_z().expect("nonzero");
    if dz == 1 {
        return vec![f.clone()];
    }
    let dt = f.deg_t().unwrap_or(0);
    if dt == 0 {
        // univariate in z
        let zpoly = QPoly::new(self_coeffs_as_rationals(f));
        let (_, factors) = factor_uni_q(&zpoly).expect("nonzero");
        return factors
            .into_iter()
            .flat_map(|(g, m)| {
                let lifted = BiPoly::new(
                    g.coeffs()
                        .iter()
                        .map(|c| QPoly::constant(c.clone()))
                        .collect(),
                );
                std::iter::repeat_n(lifted, m as usize)
            })
            .collect();
    }
    // good evaluation point: |t0| minimal, leading coefficient nonzero,
    // squarefree image of full degree
    let t0 = (0i64..)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(|k| Rational::from_integer(k.into()))
        .find(|t0| {
            if f.lc_z().eval(t0).is_zero() {
                return false;
            }
            let image = f.eval_t(t0);
            image.gcd(&image.derivative()).is_one()
        })
        .expect("a good evaluation point exists for squarefree input");
    let image = f.eval_t(&t0);
    let (_, base) = factor_uni_q(&image).expect("nonzero image");
    if base.len() == 1 {
        return vec![f.clone()];
    }
    let monics: Vec<QPoly> = base.iter().map(|(g, _)| g.monic().0).collect();
    // shift so the expansion point is the origin
    let shifted = f.shift_t(&t0);
    let precision = dt + f.lc_z().degree().unwrap_or(0) + 1;
    let lifted = hensel_lift_bivariate(&shifted, &monics, precision);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = shifted;
    let mut found: Vec<BiPoly> = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        for combo in super::uni::combinations(remaining.len(), size) {
            let subset: Vec<usize> = combo.iter().map(|&i| remaining[i]).collect();
            let mut cand = BiPoly::from_t_poly(current.lc_z());
            for &i in &subset {
                cand = cand.mul(&lifted[i]).truncate_t(precision);
            }
            if cand.is_zero() {
                continue;
            }
            let cand = cand.primitive_t();
            if let Some(q) = bi_divexact(&current, &cand) {
                found.push(cand);
                current = q.primitive_t();
                remaining.retain(|i| !subset.contains(i));
                size = 1;
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.deg_z().is_some_and(|d| d >= 1) {
        found.push(current.primitive_t());
    }
    let neg_t0 = -t0;
    found.into_iter().map(|g| g.shift_t(&neg_t0)).collect()
}

fn self_coeffs_as_rationals(f: &BiPoly) -> Vec<Rational> {
    f.z_coeffs()
        .iter()
        .map(|c| c.coeff(0))
        .collect()
}

/// Linear Hensel lifting in the ideal `(t)`: from
/// `f(0, z) = lc(0) * prod h_i(z)` to `f = lc_z(f) * prod H_i mod t^k` with
/// the `H_i` monic in `z`.
fn hensel_lift_bivariate(f: &BiPoly, monics: &[QPoly], precision: usize) -> Vec<BiPoly> {
    let r = monics.len();
    let l = f.lc_z();
    let l0 = l.eval(&Rational::zero());
    // partial-fraction inverses over Q: w_i = (lc(0) * prod_{j!=i} h_j)^{-1} mod h_i
    let mut inverses = Vec::with_capacity(r);
    for i in 0..r {
        let mut u = QPoly::constant(l0.clone());
        for (j, h) in monics.iter().enumerate() {
            if j != i {
                u = u.mul(h).divrem(&monics[i]).expect("nonzero modulus").1;
            }
        }
        let (g, s, _) = u.extended_gcd(&monics[i]);
        assert!(g.is_one(), "modular factors are pairwise coprime");
        inverses.push(s);
    }
    let mut lifted: Vec<BiPoly> = monics
        .iter()
        .map(|h| {
            BiPoly::new(
                h.coeffs()
                    .iter()
                    .map(|c| QPoly::constant(c.clone()))
                    .collect(),
            )
        })
        .collect();
    for k in 1..precision {
        // error term: coefficient of t^k in f - lc * prod H_i
        let mut prod = BiPoly::one();
        for h in &lifted {
            prod = prod.mul(h).truncate_t(k + 1);
        }
        prod = prod.mul_t_poly(&l).truncate_t(k + 1);
        let diff = f.truncate_t(k + 1).sub(&prod);
        let err = QPoly::new(
            diff.z_coeffs()
                .iter()
                .map(|c| c.coeff(k))
                .collect(),
        );
        if err.is_zero() {
            continue;
        }
        for i in 0..r {
            let delta = err
                .mul(&inverses[i])
                .divrem(&monics[i])
                .expect("nonzero modulus")
                .1;
            if delta.is_zero() {
                continue;
            }
            // H_i += t^k * delta(z)
            let mut zc = lifted[i].z_coeffs().to_vec();
            for (j, d) in delta.coeffs().iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                if zc.len() <= j {
                    zc.resize(j + 1, QPoly::zero());
                }
                zc[j] = zc[j].add(&QPoly::monomial(d.clone(), k));
            }
            lifted[i] = BiPoly::new(zc);
        }
    }
    lifted
}
