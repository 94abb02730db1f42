//! Exact coefficient arithmetic.
//!
//! Three scalar kinds are supported: arbitrary-precision rationals,
//! univariate rational functions in a designated field variable, and
//! cyclotomic numbers represented modulo the `N`-th cyclotomic polynomial.
//! The ground field is `Q` (and `Q(zeta_N)` where torsion actions demand it);
//! every statement about factorization elsewhere in this crate means
//! "over `Q`".

mod cyclotomic;
mod qpoly;
mod ratfun;

pub use cyclotomic::{cyclotomic_poly, euler_phi, CycNum};
pub use qpoly::QPoly;
pub use ratfun::{ratfun_normalize, RatFun};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar. `num_rational` maintains the invariants this crate
/// relies on: reduced form, positive denominator, zero stored as `0/1`.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("mismatched cyclotomic orders {0} and {1}; embed into the lcm order first")]
    OrderMismatch(u32, u32),
    #[error("incompatible scalar kinds: {0} and {1}")]
    IncompatibleScalars(&'static str, &'static str),
    #[error("{0} is not an embedding order for {1}")]
    BadEmbedding(u32, u32),
}

/// Tagged exact scalar: the coefficient domain of [`crate::laurent::LaurentPoly`].
///
/// Rationals coerce into the other two kinds; rational functions and
/// cyclotomic numbers do not mix. Cyclotomic numbers of different orders are
/// embedded into the lcm order before combining.
#[derive(Debug, Clone)]
pub enum Coefficient {
    Rat(Rational),
    Fun(RatFun),
    Cyc(CycNum),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Coefficient::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coefficient::Rat(rat_int(n))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rat(r) => r.is_zero(),
            Coefficient::Fun(f) => f.is_zero(),
            Coefficient::Cyc(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rat(r) => r.is_one(),
            Coefficient::Fun(f) => f.is_one(),
            Coefficient::Cyc(c) => c.is_one(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Coefficient::Rat(_) => "rational",
            Coefficient::Fun(_) => "rational function",
            Coefficient::Cyc(_) => "cyclotomic number",
        }
    }

    /// Demote to the simplest representation: cyclotomic numbers whose value
    /// is rational become `Rat`, as do constant rational functions. Keeps
    /// equality structural across mixed-origin computations.
    pub fn normalized(self) -> Self {
        match self {
            Coefficient::Cyc(c) => match c.to_rational() {
                Some(r) => Coefficient::Rat(r),
                None => Coefficient::Cyc(c),
            },
            Coefficient::Fun(f) => match f.to_rational() {
                Some(r) => Coefficient::Rat(r),
                None => Coefficient::Fun(f),
            },
            other => other,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.combine(other, |a, b| a + b, RatFun::add, CycNum::add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.combine(other, |a, b| a - b, RatFun::sub, CycNum::sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CoeffError> {
        self.combine(other, |a, b| a * b, RatFun::mul, |a, b| a.mul(b))
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Rat(r) => Coefficient::Rat(-r),
            Coefficient::Fun(f) => Coefficient::Fun(f.neg()),
            Coefficient::Cyc(c) => Coefficient::Cyc(c.neg()),
        }
    }

    pub fn try_inv(&self) -> Result<Self, CoeffError> {
        match self {
            Coefficient::Rat(r) => {
                if r.is_zero() {
                    Err(CoeffError::ZeroInverse)
                } else {
                    Ok(Coefficient::Rat(r.recip()))
                }
            }
            Coefficient::Fun(f) => Ok(Coefficient::Fun(f.inv()?)),
            Coefficient::Cyc(c) => Ok(Coefficient::Cyc(c.inverse()?)),
        }
    }

    fn combine(
        &self,
        other: &Self,
        on_rat: impl Fn(&Rational, &Rational) -> Rational,
        on_fun: impl Fn(&RatFun, &RatFun) -> RatFun,
        on_cyc: impl Fn(&CycNum, &CycNum) -> Result<CycNum, CoeffError>,
    ) -> Result<Self, CoeffError> {
        use Coefficient::*;
        let out = match (self, other) {
            (Rat(a), Rat(b)) => Rat(on_rat(a, b)),
            (Fun(a), Fun(b)) => Fun(on_fun(a, b)),
            (Rat(a), Fun(b)) => Fun(on_fun(&RatFun::from_rational(a.clone()), b)),
            (Fun(a), Rat(b)) => Fun(on_fun(a, &RatFun::from_rational(b.clone()))),
            (Cyc(a), Cyc(b)) => {
                let order = num_integer::lcm(a.order(), b.order());
                Cyc(on_cyc(&a.embed(order)?, &b.embed(order)?)?)
            }
            (Rat(a), Cyc(b)) => Cyc(on_cyc(&CycNum::from_rational(b.order(), a.clone()), b)?),
            (Cyc(a), Rat(b)) => Cyc(on_cyc(a, &CycNum::from_rational(a.order(), b.clone()))?),
            (a, b) => return Err(CoeffError::IncompatibleScalars(a.kind(), b.kind())),
        };
        Ok(out.normalized())
    }

    /// The rational value, if this coefficient is (or reduces to) one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Coefficient::Rat(r) => Some(r.clone()),
            Coefficient::Fun(f) => f.to_rational(),
            Coefficient::Cyc(c) => c.to_rational(),
        }
    }
}

impl PartialEq for Coefficient {
    fn eq(&self, other: &Self) -> bool {
        use Coefficient::*;
        match (self, other) {
            (Rat(a), Rat(b)) => a == b,
            (Fun(a), Fun(b)) => a == b,
            (Cyc(a), Cyc(b)) => {
                let order = num_integer::lcm(a.order(), b.order());
                match (a.embed(order), b.embed(order)) {
                    (Ok(x), Ok(y)) => x == y,
                    _ => false,
                }
            }
            (Rat(a), Fun(b)) | (Fun(b), Rat(a)) => b.to_rational().as_ref() == Some(a),
            (Rat(a), Cyc(b)) | (Cyc(b), Rat(a)) => b.to_rational().as_ref() == Some(a),
            _ => false,
        }
    }
}

impl Eq for Coefficient {}

impl std::fmt::Display for Coefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficient::Rat(r) => write!(f, "{}", r),
            Coefficient::Fun(r) => write!(f, "{}", r),
            Coefficient::Cyc(c) => write!(f, "{}", c),
        }
    }
}

impl From<Rational> for Coefficient {
    fn from(r: Rational) -> Self {
        Coefficient::Rat(r)
    }
}

#[cfg(test)]
mod tests;
