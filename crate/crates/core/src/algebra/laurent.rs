use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dense::{gcd_ordinary, pow_rational, ZLaurent};
use super::Rational;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `q` with rational coefficients.
///
/// No stored coefficient is zero, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// Collects `(exponent, coefficient)` pairs, combining repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in iter {
            let slot = terms.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    /// Integer coefficients listed from exponent `offset` upward.
    pub fn from_coeffs(offset: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (offset + i as i64, Rational::from_integer(c.into()))),
        )
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when there are no negative exponents.
    pub fn is_ordinary(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Degree of an ordinary polynomial; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.max_exp()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_scaled(&self, other: &Self, sign: bool) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(*e).or_insert_with(Rational::zero);
            if sign {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }

    fn mul_sparse(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // dense integer kernel when both operands are wide and integral
        let dense_ok = self.terms.len() * other.terms.len() > 4096
            && self
                .terms
                .values()
                .chain(other.terms.values())
                .all(|c| c.is_integer());
        if dense_ok {
            let (a, _) = ZLaurent::from_laurent(self);
            let (b, _) = ZLaurent::from_laurent(other);
            return a.mul(&b).to_laurent();
        }
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let slot = terms.entry(e1 + e2).or_insert_with(Rational::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &Rational) -> Result<Rational> {
        if point.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::Pole("negative exponent evaluated at 0".into()));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(point, *e);
        }
        Ok(acc)
    }

    /// Quotient and remainder of ordinary polynomials, `self = quot·divisor + rem`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.is_ordinary() || !divisor.is_ordinary() {
            return Err(Error::Domain("divrem needs ordinary polynomials".into()));
        }
        let dd = divisor.degree().unwrap() as usize;
        let lc_inv = divisor.leading_coeff().unwrap().recip();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let sd = sd as usize;
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = vec![Rational::zero(); sd + 1];
        for (e, c) in &self.terms {
            rem[*e as usize] = c.clone();
        }
        let div: Vec<(usize, &Rational)> = divisor
            .terms
            .iter()
            .filter(|(e, _)| (**e as usize) < dd)
            .map(|(e, c)| (*e as usize, c))
            .collect();
        let mut quot = BTreeMap::new();
        for i in (0..=sd - dd).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let c = top * &lc_inv;
            for (j, d) in &div {
                rem[i + j] -= &c * *d;
            }
            quot.insert(i as i64, c);
        }
        let rem = Self::from_terms(
            rem.into_iter()
                .enumerate()
                .take(dd)
                .map(|(i, c)| (i as i64, c)),
        );
        Ok((LaurentPoly { terms: quot }, rem))
    }

    /// Splits off the monomial shift: returns `(s, p)` with `self = q^s · p`
    /// and `p` ordinary with nonzero constant term.
    pub fn split_monomial(&self) -> (i64, Self) {
        match self.min_exp() {
            None => (0, Self::zero()),
            Some(s) => (s, self.shift(-s)),
        }
    }

    /// Monic gcd of the ordinary parts after clearing negative exponents by
    /// the minimal monomial shift. `gcd(x, 0) = monic(x)`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::Undefined("gcd(0, 0)".into()));
        }
        let clear = |p: &Self| match p.min_exp() {
            Some(s) if s < 0 => p.shift(-s),
            _ => p.clone(),
        };
        let (a, b) = (clear(self), clear(other));
        if a.is_zero() {
            return Ok(b.monic());
        }
        if b.is_zero() {
            return Ok(a.monic());
        }
        let (za, _) = ZLaurent::from_laurent(&a);
        let (zb, _) = ZLaurent::from_laurent(&b);
        Ok(gcd_ordinary(&za, &zb).to_laurent().monic())
    }

    /// Exact quotient, failing if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (s1, a) = self.split_monomial();
        let (s2, b) = divisor.split_monomial();
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = a.divrem(&b)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision("LaurentPoly::div_exact".into()));
        }
        Ok(q.shift(s1 - s2))
    }

    /// Substitutes `q -> q^k`.
    pub fn dilate(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, true)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_scaled(rhs, false)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_sparse(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}
