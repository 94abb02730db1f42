use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{CoeffError, QPoly, Rational};

/// Euler's totient.
pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `n`-th cyclotomic polynomial, computed by dividing `x^n - 1` by the
/// lower-order cyclotomics. Results are cached per order; the cache supports
/// concurrent readers.
pub fn cyclotomic_poly(n: u32) -> Arc<QPoly> {
    assert!(n >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<QPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let value = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().entry(n).or_insert(value).clone()
}

fn compute_cyclotomic(n: u32) -> QPoly {
    // x^n - 1
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = -Rational::one();
    coeffs[n as usize] = Rational::one();
    let mut rem = QPoly::new(coeffs);
    for d in 1..n {
        if n % d == 0 {
            rem = rem
                .divexact(&cyclotomic_poly(d))
                .expect("lower cyclotomic divides x^n - 1");
        }
    }
    rem
}

/// Element of `Q[w] / Phi_N(w)`, the cyclotomic field of order `N`, stored by
/// its coordinates in the power basis `1, w, ..., w^(phi(N)-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    order: u32,
    coords: Vec<Rational>,
}

impl CycNum {
    /// Builds an element from polynomial coordinates, reducing modulo `Phi_N`.
    pub fn new(order: u32, coords: Vec<Rational>) -> Self {
        assert!(order >= 1);
        Self::reduce(order, QPoly::new(coords))
    }

    fn reduce(order: u32, poly: QPoly) -> Self {
        let phi = cyclotomic_poly(order);
        let (_, rem) = poly.divrem(&phi).expect("Phi_N is nonzero");
        let len = euler_phi(order) as usize;
        let mut coords: Vec<Rational> = rem.coeffs().to_vec();
        coords.resize(len, Rational::zero());
        CycNum { order, coords }
    }

    pub fn from_rational(order: u32, value: Rational) -> Self {
        Self::reduce(order, QPoly::constant(value))
    }

    pub fn zero(order: u32) -> Self {
        Self::from_rational(order, Rational::zero())
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    /// The primitive root power `w^k` at order `N`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        Self::reduce(order, QPoly::monomial(Rational::one(), k))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    fn as_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    /// The rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Embeds into the cyclotomic field of order `m` (requires `order | m`)
    /// via `w_N = w_m^(m/N)`.
    pub fn embed(&self, m: u32) -> Result<Self, CoeffError> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m % self.order != 0 {
            return Err(CoeffError::BadEmbedding(m, self.order));
        }
        let stretched = self.as_poly().stretch((m / self.order) as usize);
        Ok(Self::reduce(m, stretched))
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_order(other)?;
        Ok(CycNum {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_order(other)?;
        Ok(CycNum {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Product reduced modulo `Phi_N`. Orders must match; embed into the lcm
    /// order first when they do not.
    pub fn mul(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_order(other)?;
        Ok(Self::reduce(self.order, self.as_poly().mul(&other.as_poly())))
    }

    pub fn neg(&self) -> Self {
        CycNum {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse via the extended gcd with `Phi_N`.
    pub fn inverse(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroInverse);
        }
        let phi = cyclotomic_poly(self.order);
        let (g, s, _) = self.as_poly().extended_gcd(&phi);
        debug_assert!(g.is_one(), "Phi_N is irreducible, nonzero elements invert");
        Ok(Self::reduce(self.order, s))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycNum::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    fn same_order(&self, other: &Self) -> Result<(), CoeffError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(CoeffError::OrderMismatch(self.order, other.order))
        }
    }

    /// Complex floating-point value at `w = exp(2*pi*i/N)`; used by tests to
    /// cross-check the exact arithmetic.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            let cf = rational_to_f64(c);
            re += cf * (theta * k as f64).cos();
            im += cf * (theta * k as f64).sin();
        }
        (re, im)
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    let num: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}

impl std::fmt::Debug for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{}", self.as_poly().format_with_var("w"), self.order)
    }
}
