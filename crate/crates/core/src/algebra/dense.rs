//! Dense integer-coefficient Laurent polynomials.
//!
//! These back the heavy summation paths, where every quantity is a product
//! of binomials `1 - q^m` with integer coefficients and rational arithmetic
//! would only add gcd overhead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::{LaurentPoly, Rational};

/// `Σ coeffs[i] q^(offset + i)`; empty `coeffs` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZLaurent {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        ZLaurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    /// Builds `Σ coeffs[i] q^(offset+i)` and trims zero ends.
    pub fn from_coeffs(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = ZLaurent { offset, coeffs };
        p.trim();
        p
    }

    /// `1 - q^m`.
    pub fn one_minus(m: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let mut p = Self::one();
        p = p.sub(&Self::monomial(BigInt::one(), m));
        p
    }

    fn trim(&mut self) {
        let hi = self.coeffs.iter().rposition(|c| !c.is_zero());
        match hi {
            None => {
                self.coeffs.clear();
                self.offset = 0;
            }
            Some(hi) => {
                self.coeffs.truncate(hi + 1);
                let lo = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
                if lo > 0 {
                    self.coeffs.drain(..lo);
                    self.offset += lo as i64;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.offset;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        ZLaurent {
            offset: self.offset + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn shift_in_place(&mut self, e: i64) {
        if !self.is_zero() {
            self.offset += e;
        }
    }

    pub fn neg(&self) -> Self {
        ZLaurent {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZLaurent {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `self + c·q^shift·other`, the workhorse behind add/sub/binomial products.
    pub fn add_scaled_shifted(&self, other: &Self, c: &BigInt, shift: i64) -> Self {
        if other.is_zero() || c.is_zero() {
            return self.clone();
        }
        let o_off = other.offset + shift;
        if self.is_zero() {
            return ZLaurent {
                offset: o_off,
                coeffs: other.coeffs.iter().map(|x| x * c).collect(),
            };
        }
        let lo = self.offset.min(o_off);
        let hi = self
            .max_exp()
            .unwrap()
            .max(o_off + other.coeffs.len() as i64 - 1);
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        let s = (self.offset - lo) as usize;
        for (i, x) in self.coeffs.iter().enumerate() {
            out[s + i] = x.clone();
        }
        let s = (o_off - lo) as usize;
        let unit = c.is_one();
        let neg_unit = !unit && (-c).is_one();
        for (i, x) in other.coeffs.iter().enumerate() {
            if unit {
                out[s + i] += x;
            } else if neg_unit {
                out[s + i] -= x;
            } else {
                out[s + i] += x * c;
            }
        }
        Self::from_coeffs(lo, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled_shifted(other, &BigInt::one(), 0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled_shifted(other, &-BigInt::one(), 0)
    }

    /// `self · (1 - q^m)`; `m = 0` gives zero.
    pub fn mul_one_minus(&self, m: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        self.add_scaled_shifted(self, &-BigInt::one(), m)
    }

    /// Exact quotient `self / (1 - q^m)`, or `None` when the division leaves
    /// a remainder.
    pub fn div_one_minus(&self, m: i64) -> Option<Self> {
        if m == 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if m < 0 {
            // 1 - q^m = -q^m (1 - q^-m)
            let q = self.div_one_minus(-m)?;
            return Some(q.neg().shift(-m));
        }
        let m = m as usize;
        let len = self.coeffs.len();
        if len <= m {
            return None;
        }
        let qlen = len - m;
        let mut quot: Vec<BigInt> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let mut v = self.coeffs[i].clone();
            if i >= m {
                v += &quot[i - m];
            }
            quot.push(v);
        }
        for i in qlen..len {
            // x[i] = Q[i] - Q[i-m] with Q[i] = 0 here
            let expect = if i >= m {
                -&quot[i - m]
            } else {
                BigInt::zero()
            };
            if self.coeffs[i] != expect {
                return None;
            }
        }
        Some(Self::from_coeffs(self.offset, quot))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        if a.len() >= KARATSUBA_CUTOFF && b.len() >= KARATSUBA_CUTOFF {
            karatsuba(a, b, &mut out);
        } else {
            schoolbook(a, b, &mut out);
        }
        Self::from_coeffs(self.offset + other.offset, out)
    }

    /// Bit length of the largest coefficient.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Content (gcd of coefficients), positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        ZLaurent {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    /// Division by a monic ordinary polynomial. `self` must be ordinary
    /// (no negative exponents); returns `(quotient, remainder)`.
    pub fn divrem_monic(&self, divisor: &ZLaurent) -> (ZLaurent, ZLaurent) {
        assert!(divisor.offset == 0 && divisor.coeffs.last().is_some_and(|c| c.is_one()));
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        assert!(
            self.offset >= 0,
            "divrem_monic needs an ordinary polynomial"
        );
        let dlen = divisor.coeffs.len();
        let mut r: Vec<BigInt> = vec![BigInt::zero(); self.offset as usize];
        r.extend(self.coeffs.iter().cloned());
        if r.len() < dlen {
            return (Self::zero(), Self::from_coeffs(0, r));
        }
        let qlen = r.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = std::mem::take(&mut r[i + dlen - 1]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dlen - 1 {
                let d = &divisor.coeffs[j];
                if !d.is_zero() {
                    r[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        r.truncate(dlen - 1);
        (Self::from_coeffs(0, quot), Self::from_coeffs(0, r))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        if self.offset != 0 {
            acc *= pow_rational(x, self.offset);
        }
        acc
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.offset + i as i64, Rational::from_integer(c.clone()))),
        )
    }

    /// Integer form of a rational Laurent polynomial: returns `(p, den)`
    /// with `x = p / den` and `den > 0` the lcm of coefficient denominators.
    pub fn from_laurent(x: &LaurentPoly) -> (ZLaurent, BigInt) {
        let mut den = BigInt::one();
        for (_, c) in x.terms() {
            den = den.lcm(c.denom());
        }
        let (lo, hi) = match (x.min_exp(), x.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return (Self::zero(), den),
        };
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in x.terms() {
            coeffs[(e - lo) as usize] = c.numer() * (&den / c.denom());
        }
        (Self::from_coeffs(lo, coeffs), den)
    }
}

pub(crate) fn pow_rational(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

const KARATSUBA_CUTOFF: usize = 48;

fn schoolbook(a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
}

/// Adds `a·b` into `out` (length ≥ a.len()+b.len()-1).
fn karatsuba(a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        schoolbook(a, b, out);
        return;
    }
    if a.len() != b.len() {
        // split the longer operand into chunks of the shorter length
        let (long, short) = if a.len() > b.len() { (a, b) } else { (b, a) };
        let mut start = 0;
        while start < long.len() {
            let end = (start + short.len()).min(long.len());
            karatsuba(&long[start..end], short, &mut out[start..]);
            start = end;
        }
        return;
    }
    let n = a.len();
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let mut z0 = vec![BigInt::zero(); 2 * h - 1];
    karatsuba(a0, b0, &mut z0);
    let mut z2 = vec![BigInt::zero(); a1.len() + b1.len() - 1];
    karatsuba(a1, b1, &mut z2);
    let sa: Vec<BigInt> = (0..a1.len())
        .map(|i| {
            if i < h {
                &a0[i] + &a1[i]
            } else {
                a1[i].clone()
            }
        })
        .collect();
    let sb: Vec<BigInt> = (0..b1.len())
        .map(|i| {
            if i < h {
                &b0[i] + &b1[i]
            } else {
                b1[i].clone()
            }
        })
        .collect();
    let mut z1 = vec![BigInt::zero(); sa.len() + sb.len() - 1];
    karatsuba(&sa, &sb, &mut z1);
    for (i, v) in z0.iter().enumerate() {
        z1[i] -= v;
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] -= v;
    }
    for (i, v) in z0.into_iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in z1.into_iter().enumerate() {
        out[i + h] += v;
    }
    for (i, v) in z2.into_iter().enumerate() {
        out[i + 2 * h] += v;
    }
}

impl fmt::Display for ZLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(p: &ZLaurent) -> ZLaurent {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = p.content();
    if p.coeffs.last().unwrap().is_negative() {
        g = -g;
    }
    p.div_exact_scalar(&g)
}

/// Pseudo-remainder of ordinary polynomials `a` by `b` (both offset 0).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let blen = b.len();
    let lead = b.last().unwrap();
    while r.len() >= blen && !r.is_empty() {
        let c = r.last().unwrap().clone();
        let shift = r.len() - blen;
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        // keep coefficients small
        let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in r.iter_mut() {
                *x /= &g;
            }
        }
    }
    r
}

/// Primitive gcd of two ordinary integer polynomials (offset 0), positive
/// leading coefficient. Content is discarded.
pub(crate) fn gcd_ordinary(a: &ZLaurent, b: &ZLaurent) -> ZLaurent {
    let mut x = primitive(a);
    let mut y = primitive(b);
    if x.is_zero() {
        return y;
    }
    if y.is_zero() {
        return x;
    }
    if x.len() + (x.offset as usize) < y.len() + (y.offset as usize) {
        std::mem::swap(&mut x, &mut y);
    }
    let dense = |p: &ZLaurent| {
        let mut v = vec![BigInt::zero(); p.offset as usize];
        v.extend(p.coeffs.iter().cloned());
        v
    };
    let mut xa = dense(&x);
    let mut ya = dense(&y);
    loop {
        let r = pseudo_rem(&xa, &ya);
        if r.is_empty() {
            return primitive(&ZLaurent::from_coeffs(0, ya));
        }
        xa = ya;
        ya = primitive(&ZLaurent::from_coeffs(0, r)).coeffs_dense();
    }
}

impl ZLaurent {
    fn coeffs_dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.offset.max(0) as usize];
        v.extend(self.coeffs.iter().cloned());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(offset: i64, c: &[i64]) -> ZLaurent {
        ZLaurent::from_coeffs(offset, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn trims_both_ends() {
        let p = z(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(p.offset(), 0);
        assert_eq!(p.len(), 2);
        assert!(z(3, &[0, 0]).is_zero());
    }

    #[test]
    fn binomial_product_and_quotient() {
        let p = z(0, &[1, 1, 1]);
        let m = p.mul_one_minus(3);
        assert_eq!(m, z(0, &[1, 1, 1, -1, -1, -1]));
        assert_eq!(m.div_one_minus(3).unwrap(), p);
        // 1 - q^-3 = -q^-3 (1 - q^3)
        assert_eq!(m.div_one_minus(-3).unwrap(), p.neg().shift(3));
        assert!(p.div_one_minus(2).is_none());
        // (1 - q^-1) / (1 - q^-1)
        let one = ZLaurent::one_minus(-1).div_one_minus(-1).unwrap();
        assert_eq!(one, ZLaurent::one());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..131)
            .map(|i| BigInt::from((i * 7919 % 23) as i64 - 11))
            .collect();
        let b: Vec<BigInt> = (0..97)
            .map(|i| BigInt::from((i * 104729 % 31) as i64 - 15))
            .collect();
        let mut s = vec![BigInt::zero(); a.len() + b.len() - 1];
        schoolbook(&a, &b, &mut s);
        let mut k = vec![BigInt::zero(); a.len() + b.len() - 1];
        karatsuba(&a, &b, &mut k);
        assert_eq!(s, k);
    }

    #[test]
    fn monic_division() {
        // (q^3 + 1) / (q + 1)
        let (qq, r) = z(0, &[1, 0, 0, 1]).divrem_monic(&z(0, &[1, 1]));
        assert_eq!(qq, z(0, &[1, -1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn integer_gcd() {
        let a = z(0, &[-1, 0, 1]); // q^2 - 1
        let b = z(0, &[-1, 0, 0, 1]); // q^3 - 1
        assert_eq!(gcd_ordinary(&a, &b), z(0, &[-1, 1]));
    }
}
