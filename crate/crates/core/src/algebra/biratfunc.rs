use num_traits::{One, Signed, Zero};
use std::fmt;

use super::{BiLaurent, LaurentPoly, RatFunc, Rational};
use crate::error::{Error, Result};

/// Quotient of two-variable Laurent polynomials.
///
/// Normalization is deliberately weak: the denominator's monomial part is
/// moved into the numerator (so `den` has minimal `a`- and `q`-exponent 0),
/// and the denominator is scaled to a primitive integer polynomial whose
/// leading coefficient is positive. No bivariate gcd is taken, so equality
/// is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct BiRatFunc {
    num: BiLaurent,
    den: BiLaurent,
}

impl BiRatFunc {
    pub fn new(num: BiLaurent, den: BiLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (ma, mq) = den.min_exps().unwrap();
        let (num, den) = (num.shift(-ma, -mq), den.shift(-ma, -mq));
        // content of den as a rational, signed by its leading coefficient
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in den.terms() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        for (_, c) in den.terms() {
            g = num_integer::Integer::gcd(&g, &(c.numer() * (&l / c.denom())));
        }
        let mut content = Rational::new(g, l);
        if den.leading_term().unwrap().1.is_negative() {
            content = -content;
        }
        if content.is_one() {
            return Ok(BiRatFunc { num, den });
        }
        let inv = content.recip();
        Ok(BiRatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        BiRatFunc {
            num: BiLaurent::zero(),
            den: BiLaurent::one(),
        }
    }

    pub fn one() -> Self {
        BiRatFunc {
            num: BiLaurent::one(),
            den: BiLaurent::one(),
        }
    }

    pub fn from_poly(p: BiLaurent) -> Self {
        BiRatFunc {
            num: p,
            den: BiLaurent::one(),
        }
    }

    pub fn num(&self) -> &BiLaurent {
        &self.num
    }

    pub fn den(&self) -> &BiLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        BiRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Substitutes `a -> q^m`; fails if the denominator vanishes there.
    pub fn subst_a(&self, m: i64) -> Result<RatFunc> {
        let den = self.den.subst_a(m);
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!(
                "denominator vanishes at a = q^{m}"
            )));
        }
        RatFunc::new(self.num.subst_a(m), den)
    }

    /// Converts an `a`-free value to a canonical univariate function.
    pub fn to_univariate(&self) -> Option<RatFunc> {
        let num = self.num.to_univariate()?;
        let den = self.den.to_univariate()?;
        RatFunc::new(num, den).ok()
    }

    pub fn eval(&self, a: &Rational, q: &Rational) -> Result<Rational> {
        let d = self
            .den
            .eval(a, q)
            .ok_or_else(|| Error::Pole("negative exponent at 0".into()))?;
        if d.is_zero() {
            return Err(Error::Pole("denominator vanishes".into()));
        }
        let n = self
            .num
            .eval(a, q)
            .ok_or_else(|| Error::Pole("negative exponent at 0".into()))?;
        Ok(n / d)
    }
}

impl From<RatFunc> for BiRatFunc {
    fn from(x: RatFunc) -> Self {
        BiRatFunc::new(BiLaurent::from(x.num()), BiLaurent::from(x.den())).unwrap()
    }
}

impl From<&LaurentPoly> for BiRatFunc {
    fn from(p: &LaurentPoly) -> Self {
        BiRatFunc::from_poly(BiLaurent::from(p))
    }
}

impl fmt::Display for BiRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(c: i64) -> Rational {
        Rational::from_integer(c.into())
    }

    #[test]
    fn normalization_clears_negative_den_exponents() {
        let den = BiLaurent::from_terms([((-1, 0), int(-2)), ((0, 3), int(4))]);
        let x = BiRatFunc::new(BiLaurent::one(), den).unwrap();
        assert!(!x.den().has_negative_exponents());
        assert_eq!(x.den().min_exps(), Some((0, 0)));
        assert!(x.den().leading_term().unwrap().1.is_positive());
    }

    #[test]
    fn cross_multiplication_equality() {
        let x = BiRatFunc::new(BiLaurent::one_minus(1, 1), BiLaurent::one_minus(-1, 2)).unwrap();
        let y = BiRatFunc::new(
            &BiLaurent::one_minus(1, 1) * &BiLaurent::one_minus(0, 7),
            &BiLaurent::one_minus(-1, 2) * &BiLaurent::one_minus(0, 7),
        )
        .unwrap();
        assert!(x.equals(&y));
        assert!(x.sub(&y).is_zero());
        assert!(!x.equals(&BiRatFunc::one()));
    }

    #[test]
    fn substitution_hits_pole() {
        let x = BiRatFunc::new(BiLaurent::one(), BiLaurent::one_minus(1, 2)).unwrap();
        assert!(matches!(x.subst_a(-2), Err(Error::ZeroDenominator(_))));
        let v = x.subst_a(1).unwrap();
        assert_eq!(v.den(), &LaurentPoly::from_coeffs(0, &[-1, 0, 0, 1]));
    }
}
