use num_traits::Zero;
use std::fmt;

use super::CycloCache;
use crate::algebra::{LaurentPoly, RatFunc, Rational};
use crate::error::{Error, Result};

/// An element of `Q[q]/Φ_n(q)^e`, stored as its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    n: u64,
    e: u32,
    modulus: LaurentPoly,
    rep: LaurentPoly,
}

impl Residue {
    /// The residue of an ordinary or Laurent polynomial.
    pub fn from_poly(p: &LaurentPoly, n: u64, e: u32, cache: &CycloCache) -> Result<Self> {
        if e == 0 {
            return Err(Error::Domain("residue exponent must be >= 1".into()));
        }
        let modulus = cache.phi(n)?.pow(e);
        let zero = Residue {
            n,
            e,
            modulus,
            rep: LaurentPoly::zero(),
        };
        let (s, ord) = p.split_monomial();
        let base = zero.with_rep(ord)?;
        if s >= 0 {
            base.mul(&zero.with_rep(LaurentPoly::q_pow(s))?)
        } else {
            // q is a unit because Φ_n(0) != 0
            base.mul(&zero.with_rep(LaurentPoly::q_pow(-s))?.inv()?)
        }
    }

    /// Image of `x` in the quotient ring. Fails with a non-unit error when
    /// `Φ_n` divides the denominator.
    pub fn from_rf(x: &RatFunc, n: u64, e: u32, cache: &CycloCache) -> Result<Self> {
        let num = Self::from_poly(x.num(), n, e, cache)?;
        let den = Self::from_poly(x.den(), n, e, cache)?;
        let inv = den.inv().map_err(|_| Error::NonUnit {
            n,
            detail: format!("Phi_{n} divides the denominator {}", x.den()),
        })?;
        num.mul(&inv)
    }

    fn with_rep(&self, p: LaurentPoly) -> Result<Self> {
        let (_, rep) = p.divrem(&self.modulus)?;
        Ok(Residue {
            n: self.n,
            e: self.e,
            modulus: self.modulus.clone(),
            rep,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn rep(&self) -> &LaurentPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.e != other.e {
            return Err(Error::Domain(format!(
                "residues mod Phi_{}^{} and Phi_{}^{} cannot be combined",
                self.n, self.e, other.n, other.e
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Residue {
            rep: &self.rep + &other.rep,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Residue {
            rep: &self.rep - &other.rep,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        Residue {
            rep: -&self.rep,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.with_rep(&self.rep * &other.rep)
    }

    /// Inverse via the extended Euclidean algorithm against `Φ_n^e`.
    pub fn inv(&self) -> Result<Self> {
        let non_unit = || Error::NonUnit {
            n: self.n,
            detail: format!("{} is not a unit", self.rep),
        };
        if self.rep.is_zero() {
            return Err(non_unit());
        }
        // invariant: r_i ≡ s_i · rep (mod modulus)
        let (mut r0, mut r1) = (self.modulus.clone(), self.rep.clone());
        let (mut s0, mut s1) = (LaurentPoly::zero(), LaurentPoly::one());
        while !r1.is_zero() {
            let (quot, rem) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&quot * &s1);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.degree() != Some(0) {
            return Err(non_unit());
        }
        let c: Rational = r0.coeff(0);
        debug_assert!(!c.is_zero());
        self.with_rep(s0.scale(&c.recip()))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Phi_{}^{}", self.rep, self.n, self.e)
    }
}
