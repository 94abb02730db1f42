use num_traits::Zero;

use super::{CoeffError, QPoly, Rational};

/// Univariate rational function over `Q` in the designated field variable.
/// Invariants: `gcd(num, den) = 1`, denominator monic, zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: QPoly,
    den: QPoly,
}

/// Reduced form with monic denominator; errors on a zero denominator.
pub fn ratfun_normalize(num: QPoly, den: QPoly) -> Result<RatFun, CoeffError> {
    if den.is_zero() {
        return Err(CoeffError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RatFun {
            num: QPoly::zero(),
            den: QPoly::one(),
        });
    }
    let g = num.gcd(&den);
    let num = num.divexact(&g).expect("gcd divides");
    let den = den.divexact(&g).expect("gcd divides");
    let (den, lc) = den.monic();
    let num = num.mul_scalar(&lc.recip());
    Ok(RatFun { num, den })
}

impl RatFun {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, CoeffError> {
        ratfun_normalize(num, den)
    }

    pub fn from_poly(num: QPoly) -> Self {
        RatFun {
            num,
            den: QPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(QPoly::constant(r))
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some` when the value is a constant.
    pub fn to_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// `Some` when the denominator is 1.
    pub fn to_poly(&self) -> Option<QPoly> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        ratfun_normalize(num, den).expect("denominators nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ratfun_normalize(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominators nonzero")
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::ZeroInverse);
        }
        ratfun_normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }
}

impl std::fmt::Debug for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
