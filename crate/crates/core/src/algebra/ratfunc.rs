use num_traits::{One, Zero};
use std::fmt;

use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Canonical quotient of Laurent polynomials.
///
/// Canonical form: `den` is an ordinary monic polynomial with nonzero
/// constant term, and `num·q^s` (with `q^s` clearing the negative exponents
/// of `num`) is coprime to `den`. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        normalize(num, den)
    }

    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// A Laurent polynomial is already canonical with denominator 1.
    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(p)` when the value is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return normalize(&self.num + &other.num, self.den.clone()).expect("nonzero den");
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        normalize(num, &self.den * &other.den).expect("nonzero den")
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        normalize(&self.num * &other.num, &self.den * &other.den).expect("nonzero den")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        normalize(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, point: &Rational) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at {point}")));
        }
        Ok(self.num.eval(point)? / d)
    }
}

/// Brings `num/den` to canonical form.
pub fn normalize(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RatFunc::zero());
    }
    // move the monomial part of den into num
    let (sd, den) = den.split_monomial();
    let num = num.shift(-sd);
    let (sn, num_ord) = num.split_monomial();
    let g = num_ord.gcd(&den)?;
    let (num_ord, den) = if g.is_one() {
        (num_ord, den)
    } else {
        (num_ord.div_exact(&g)?, den.div_exact(&g)?)
    };
    let lc = den.leading_coeff().expect("den nonzero").clone();
    let (num_ord, den) = if lc.is_one() {
        (num_ord, den)
    } else {
        let inv = lc.recip();
        (num_ord.scale(&inv), den.scale(&inv))
    };
    Ok(RatFunc {
        num: num_ord.shift(sn),
        den,
    })
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
