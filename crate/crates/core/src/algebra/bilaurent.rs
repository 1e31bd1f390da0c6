use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dense::{pow_rational, ZLaurent};
use super::{LaurentPoly, Rational};

/// Sparse Laurent polynomial in `a` and `q` with rational coefficients,
/// keyed by `(a-exponent, q-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    /// `c · a^i q^j`.
    pub fn monomial(c: Rational, i: i64, j: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiLaurent { terms }
    }

    /// `1 - a^i q^j`.
    pub fn one_minus(i: i64, j: i64) -> Self {
        &Self::one() - &Self::monomial(Rational::one(), i, j)
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        for (k, c) in iter {
            *terms.entry(k).or_insert_with(Rational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        BiLaurent { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// Minimal exponents of `a` and of `q` separately.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let ma = self.terms.keys().map(|k| k.0).min().unwrap();
        let mq = self.terms.keys().map(|k| k.1).min().unwrap();
        Some((ma, mq))
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.min_exps().is_some_and(|(a, q)| a < 0 || q < 0)
    }

    pub fn is_a_free(&self) -> bool {
        self.terms.keys().all(|k| k.0 == 0)
    }

    /// The largest key in `(a, q)` lexicographic order and its coefficient.
    pub fn leading_term(&self) -> Option<((i64, i64), &Rational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn shift(&self, da: i64, dq: i64) -> Self {
        BiLaurent {
            terms: self
                .terms
                .iter()
                .map(|((a, q), c)| ((a + da, q + dq), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiLaurent {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn add_signed(&self, other: &Self, plus: bool) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let slot = terms.entry(*k).or_insert_with(Rational::zero);
            if plus {
                *slot += c;
            } else {
                *slot -= c;
            }
            if slot.is_zero() {
                terms.remove(k);
            }
        }
        BiLaurent { terms }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() * other.terms.len() > 4096 && self.is_integral() && other.is_integral()
        {
            let (x, _) = ZBiLaurent::from_bilaurent(self);
            let (y, _) = ZBiLaurent::from_bilaurent(other);
            return x.mul(&y).to_bilaurent();
        }
        let mut terms: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        for ((a1, q1), c1) in &self.terms {
            for ((a2, q2), c2) in &other.terms {
                *terms
                    .entry((a1 + a2, q1 + q2))
                    .or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        BiLaurent { terms }
    }

    fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Substitutes `a -> q^m`.
    pub fn subst_a(&self, m: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|((a, q), c)| (m * a + q, c.clone())))
    }

    /// `a`-adic decomposition `Σ a^i c_i(q)`, ordered by increasing `i`.
    pub fn coeffs_in_a(&self) -> Vec<(i64, LaurentPoly)> {
        let mut rows: BTreeMap<i64, Vec<(i64, Rational)>> = BTreeMap::new();
        for ((a, q), c) in &self.terms {
            rows.entry(*a).or_default().push((*q, c.clone()));
        }
        rows.into_iter()
            .map(|(a, t)| (a, LaurentPoly::from_terms(t)))
            .collect()
    }

    /// Inverse of [`coeffs_in_a`](Self::coeffs_in_a).
    pub fn from_coeffs_in_a<'a, I: IntoIterator<Item = (i64, &'a LaurentPoly)>>(rows: I) -> Self {
        Self::from_terms(rows.into_iter().flat_map(|(a, p)| {
            p.terms()
                .map(move |(q, c)| ((a, q), c.clone()))
                .collect::<Vec<_>>()
        }))
    }

    /// `Some(p)` when no term involves `a`.
    pub fn to_univariate(&self) -> Option<LaurentPoly> {
        self.is_a_free().then(|| self.subst_a(0))
    }

    pub fn eval(&self, a: &Rational, q: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for ((i, j), c) in &self.terms {
            if (a.is_zero() && *i < 0) || (q.is_zero() && *j < 0) {
                return None;
            }
            acc += c * pow_rational(a, *i) * pow_rational(q, *j);
        }
        Some(acc)
    }
}

impl From<&LaurentPoly> for BiLaurent {
    fn from(p: &LaurentPoly) -> Self {
        BiLaurent {
            terms: p.terms().map(|(e, c)| ((0, e), c.clone())).collect(),
        }
    }
}

impl Add for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        self.add_signed(rhs, true)
    }
}

impl Sub for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self.add_signed(rhs, false)
    }
}

impl Mul for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        self.mul_impl(rhs)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, ((a, q), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if *a != 0 {
                write!(f, "*a^{a}")?;
            }
            if *q != 0 {
                write!(f, "*q^{q}")?;
            }
        }
        Ok(())
    }
}

/// Integer-coefficient two-variable Laurent polynomial stored as dense rows
/// in `q`, one per `a`-exponent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZBiLaurent {
    rows: BTreeMap<i64, ZLaurent>,
}

impl ZBiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_row(0, ZLaurent::one())
    }

    pub fn from_row(a: i64, row: ZLaurent) -> Self {
        let mut rows = BTreeMap::new();
        if !row.is_zero() {
            rows.insert(a, row);
        }
        ZBiLaurent { rows }
    }

    pub fn from_univariate(p: ZLaurent) -> Self {
        Self::from_row(0, p)
    }

    pub fn rows(&self) -> impl Iterator<Item = (i64, &ZLaurent)> + '_ {
        self.rows.iter().map(|(a, r)| (*a, r))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.rows
            .values()
            .map(|r| r.coeffs().iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    fn insert_add(
        rows: &mut BTreeMap<i64, ZLaurent>,
        a: i64,
        row: &ZLaurent,
        c: &BigInt,
        shift: i64,
    ) {
        let cur = rows.remove(&a).unwrap_or_default();
        let next = cur.add_scaled_shifted(row, c, shift);
        if !next.is_zero() {
            rows.insert(a, next);
        }
    }

    /// `self + c · a^da q^dq · other`.
    pub fn add_scaled_shifted(&self, other: &Self, c: &BigInt, da: i64, dq: i64) -> Self {
        let mut rows = self.rows.clone();
        for (a, row) in &other.rows {
            Self::insert_add(&mut rows, a + da, row, c, dq);
        }
        ZBiLaurent { rows }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled_shifted(other, &BigInt::one(), 0, 0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled_shifted(other, &-BigInt::one(), 0, 0)
    }

    pub fn shift(&self, da: i64, dq: i64) -> Self {
        ZBiLaurent {
            rows: self
                .rows
                .iter()
                .map(|(a, r)| (a + da, r.shift(dq)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZBiLaurent {
            rows: self.rows.iter().map(|(a, r)| (*a, r.scale(c))).collect(),
        }
    }

    /// `self · (1 - a^i q^j)`.
    pub fn mul_one_minus(&self, i: i64, j: i64) -> Self {
        if i == 0 {
            let rows: BTreeMap<i64, ZLaurent> = self
                .rows
                .iter()
                .map(|(a, r)| (*a, r.mul_one_minus(j)))
                .filter(|(_, r)| !r.is_zero())
                .collect();
            return ZBiLaurent { rows };
        }
        self.add_scaled_shifted(self, &-BigInt::one(), i, j)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut rows: BTreeMap<i64, ZLaurent> = BTreeMap::new();
        for (a1, r1) in &self.rows {
            for (a2, r2) in &other.rows {
                let prod = r1.mul(r2);
                let cur = rows.remove(&(a1 + a2)).unwrap_or_default();
                let next = cur.add(&prod);
                if !next.is_zero() {
                    rows.insert(a1 + a2, next);
                }
            }
        }
        ZBiLaurent { rows }
    }

    /// Substitutes `a -> q^m`.
    pub fn subst_a(&self, m: i64) -> ZLaurent {
        let mut acc = ZLaurent::zero();
        for (a, row) in &self.rows {
            acc = acc.add_scaled_shifted(row, &BigInt::one(), m * a);
        }
        acc
    }

    pub fn to_bilaurent(&self) -> BiLaurent {
        let mut terms = BTreeMap::new();
        for (a, row) in &self.rows {
            for (i, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(
                        (*a, row.offset() + i as i64),
                        Rational::from_integer(c.clone()),
                    );
                }
            }
        }
        BiLaurent { terms }
    }

    /// Integer form `(p, den)` with `x = p / den`.
    pub fn from_bilaurent(x: &BiLaurent) -> (ZBiLaurent, BigInt) {
        let mut den = BigInt::one();
        for (_, c) in x.terms() {
            den = den.lcm(c.denom());
        }
        let mut rows: BTreeMap<i64, Vec<(i64, BigInt)>> = BTreeMap::new();
        for ((a, q), c) in x.terms() {
            rows.entry(a)
                .or_default()
                .push((q, c.numer() * (&den / c.denom())));
        }
        let rows = rows
            .into_iter()
            .map(|(a, t)| {
                let lo = t.first().unwrap().0;
                let hi = t.last().unwrap().0;
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (q, c) in t {
                    v[(q - lo) as usize] = c;
                }
                (a, ZLaurent::from_coeffs(lo, v))
            })
            .collect();
        (ZBiLaurent { rows }, den)
    }

    /// Content with the sign of the leading row's leading coefficient.
    pub fn signed_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for r in self.rows.values() {
            g = g.gcd(&r.content());
        }
        if let Some(r) = self.rows.values().next_back() {
            if r.coeffs().last().unwrap().is_negative() {
                g = -g;
            }
        }
        g
    }
}
