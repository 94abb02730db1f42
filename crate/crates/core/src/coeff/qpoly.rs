use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CoeffError, Rational};

/// Dense univariate polynomial over `Q`. Coefficient `i` multiplies the
/// `i`-th power of the variable; no trailing zeros are stored, the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// The monomial `c * v^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        QPoly::monomial(Rational::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        QPoly::new(coeffs.iter().map(|&n| super::rat_int(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, den: &Self) -> Result<(Self, Self), CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let dd = den.degree().unwrap();
        let lc_inv = den.leading().recip();
        if self.degree().map_or(true, |d| d < dd) {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lc_inv;
            for (j, dc) in den.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let delta = &q * dc;
                rem[idx] -= delta;
            }
            quot[i - dd] = q;
        }
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn divexact(&self, den: &Self) -> Option<Self> {
        let (q, r) = self.divrem(den).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`. Runs a primitive PRS over the integers to
    /// keep coefficient growth polynomial.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return if other.is_zero() {
                QPoly::zero()
            } else {
                other.monic().0
            };
        }
        if other.is_zero() {
            return self.monic().0;
        }
        let mut a = int_primitive(self);
        let mut b = int_primitive(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_prem(&a, &b);
            a = b;
            b = zprimitive_vec(&r);
        }
        QPoly::new(a.iter().map(|c| Rational::from_integer(c.clone())).collect())
            .monic()
            .0
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let ns = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, ns);
            let nt = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, nt);
        }
        if r0.is_zero() {
            (r0, s0, t0)
        } else {
            let lc_inv = Rational::one() / r0.leading();
            (
                r0.mul_scalar(&lc_inv),
                s0.mul_scalar(&lc_inv),
                t0.mul_scalar(&lc_inv),
            )
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Composition with `v + c` (Taylor shift) by Horner evaluation in `QPoly`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = QPoly::new(vec![c.clone(), Rational::one()]);
        let mut acc = QPoly::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&QPoly::constant(a.clone()));
        }
        acc
    }

    /// Composition with `v^e`.
    pub fn stretch(&self, e: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * e] = c.clone();
        }
        QPoly::new(out)
    }

    /// `(monic, leading)` with `self = leading * monic`; zero maps to zero.
    pub fn monic(&self) -> (Self, Rational) {
        if self.is_zero() {
            return (QPoly::zero(), Rational::one());
        }
        let lc = self.leading();
        (self.mul_scalar(&lc.recip()), lc)
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient; returns `(primitive, unit)` with `self = unit * primitive`.
    pub fn primitive_int(&self) -> (Self, Rational) {
        if self.is_zero() {
            return (QPoly::zero(), Rational::one());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &den_lcm / c.denom())
            .collect();
        let mut content = nums
            .iter()
            .fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if nums.last().expect("nonzero").is_negative() {
            content = -content;
        }
        let prim = QPoly::new(
            nums.iter()
                .map(|n| Rational::from_integer(n / &content))
                .collect(),
        );
        let unit = Rational::new(content, den_lcm);
        (prim, unit)
    }

    /// Integer coefficients, if all denominators are 1.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn format_with_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{}", i));
                }
            }
        }
        out
    }
}

/// Integer-primitive coefficient vector of a nonzero rational polynomial.
fn int_primitive(p: &QPoly) -> Vec<BigInt> {
    let (prim, _) = p.primitive_int();
    prim.coeffs().iter().map(|c| c.numer().clone()).collect()
}

fn zprimitive_vec(v: &[BigInt]) -> Vec<BigInt> {
    let mut out = v.to_vec();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    if out.is_empty() {
        return out;
    }
    let mut g = out.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if out.last().expect("nonzero").is_negative() {
        g = -g;
    }
    for c in &mut out {
        *c = &*c / &g;
    }
    out
}

/// Pseudo-remainder of integer polynomials: `lc(b)^(da-db+1) * a mod b`.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = b.last().expect("nonzero divisor").clone();
    let mut rem = a.to_vec();
    while rem.len() > db {
        let lead = rem.last().expect("nonzero").clone();
        if lead.is_zero() {
            rem.pop();
            continue;
        }
        let k = rem.len() - 1 - db;
        for c in rem.iter_mut() {
            *c = &*c * &lc;
        }
        for (j, bc) in b.iter().enumerate() {
            let delta = &lead * bc;
            rem[k + j] -= delta;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    rem
}

impl std::fmt::Debug for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.format_with_var("v"))
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.format_with_var("v"))
    }
}
