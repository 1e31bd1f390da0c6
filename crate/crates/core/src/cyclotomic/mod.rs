//! Cyclotomic polynomials, `Φ_n`-adic valuations, and the quotient rings
//! `Q[q]/Φ_n(q)^e`.

mod cache;
mod local;
mod residue;

use std::fmt;

pub use cache::{format_entry, parse_entry, CycloCache, CACHE_FILE};
pub use local::{LocalRing, LocalSeries, SparseSeries};
pub use residue::Residue;

use crate::algebra::{LaurentPoly, RatFunc, ZLaurent};
use crate::error::{Error, Result};

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Φ_n(q)`.
pub fn phi(n: u64, cache: &CycloCache) -> Result<LaurentPoly> {
    cache.phi(n)
}

/// The q-integer `[m] = (1 - q^m)/(1 - q)`, for any integer `m`.
///
/// For `m >= 0` this is `1 + q + ... + q^(m-1)`; for `m < 0` it is
/// `-(q^m + ... + q^-1)`.
pub fn qint_poly(m: i64) -> LaurentPoly {
    qint_z(m).to_laurent()
}

pub(crate) fn qint_z(m: i64) -> ZLaurent {
    use num_bigint::BigInt;
    if m >= 0 {
        ZLaurent::from_coeffs(0, vec![BigInt::from(1); m as usize])
    } else {
        ZLaurent::from_coeffs(m, vec![BigInt::from(-1); (-m) as usize])
    }
}

/// A `Φ_n`-adic valuation; zero has infinite valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, e: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= e,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Number of times `Φ_n` divides an integer Laurent polynomial, by repeated
/// exact division. `q` is a unit at every `Φ_n`, so the monomial part is
/// dropped first.
pub fn val_phi_z(p: &ZLaurent, n: u64, cache: &CycloCache) -> Result<Valuation> {
    if p.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let f = cache.phi_z(n)?;
    let mut cur = p.shift(-p.offset());
    let mut v = 0;
    loop {
        let (quot, rem) = cur.divrem_monic(&f);
        if !rem.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        v += 1;
        cur = quot;
    }
}

pub fn val_phi_poly(p: &LaurentPoly, n: u64, cache: &CycloCache) -> Result<Valuation> {
    let (z, _) = ZLaurent::from_laurent(p);
    val_phi_z(&z, n, cache)
}

/// `v(num) - v(den)` for the `Φ_n`-adic valuation `v`.
pub fn val_phi(x: &RatFunc, n: u64, cache: &CycloCache) -> Result<Valuation> {
    if n < 2 {
        return Err(Error::Domain("valuation index must be >= 2".into()));
    }
    match val_phi_poly(x.num(), n, cache)? {
        Valuation::Infinite => Ok(Valuation::Infinite),
        Valuation::Finite(vn) => {
            let vd = val_phi_poly(x.den(), n, cache)?
                .finite()
                .expect("den nonzero");
            Ok(Valuation::Finite(vn - vd))
        }
    }
}

/// Per-divisor outcome of an `[n]^2` divisibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QIntSquare {
    pub holds: bool,
    /// `(d, v_d)` for every divisor `d > 1` of `n`.
    pub per_divisor: Vec<(u64, Valuation)>,
    pub denominator_coprime: bool,
}

impl QIntSquare {
    /// Smallest valuation across divisors; `Infinite` for `n = 1`.
    pub fn min_valuation(&self) -> Valuation {
        self.per_divisor
            .iter()
            .map(|(_, v)| *v)
            .min()
            .unwrap_or(Valuation::Infinite)
    }
}

/// Tests `x ≡ 0 (mod [n]^2)` through `[n] = Π_{d|n, d>1} Φ_d`.
pub fn val_qint_square(x: &RatFunc, n: u64, cache: &CycloCache) -> Result<QIntSquare> {
    let mut per_divisor = Vec::new();
    let mut coprime = true;
    for d in divisors(n).into_iter().filter(|&d| d > 1) {
        let v = val_phi(x, d, cache)?;
        let vd = val_phi_poly(x.den(), d, cache)?;
        if vd != Valuation::Finite(0) {
            coprime = false;
        }
        per_divisor.push((d, v));
    }
    let holds = coprime && per_divisor.iter().all(|(_, v)| v.at_least(2));
    Ok(QIntSquare {
        holds,
        per_divisor,
        denominator_coprime: coprime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn lp(offset: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(offset, c)
    }

    #[test]
    fn phi_examples() {
        let cache = CycloCache::new();
        assert_eq!(phi(1, &cache).unwrap(), lp(0, &[-1, 1]));
        assert_eq!(phi(2, &cache).unwrap(), lp(0, &[1, 1]));
        assert_eq!(phi(6, &cache).unwrap(), lp(0, &[1, -1, 1]));
        assert!(matches!(phi(0, &cache), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_6_by_division_oracle() {
        // q^6 - 1 divided by Φ1 Φ2 Φ3, each step through the rational divrem
        let mut acc = lp(0, &[-1, 0, 0, 0, 0, 0, 1]);
        for f in [lp(0, &[-1, 1]), lp(0, &[1, 1]), lp(0, &[1, 1, 1])] {
            let (q, r) = acc.divrem(&f).unwrap();
            assert!(r.is_zero());
            acc = q;
        }
        assert_eq!(acc, phi(6, &CycloCache::new()).unwrap());
    }

    #[test]
    fn product_over_divisors_is_q_n_minus_one() {
        let cache = CycloCache::new();
        for n in 1..=60u64 {
            let mut prod = LaurentPoly::one();
            for d in divisors(n) {
                prod = &prod * &phi(d, &cache).unwrap();
            }
            assert_eq!(
                prod,
                &LaurentPoly::q_pow(n as i64) - &LaurentPoly::one(),
                "n = {n}"
            );
            assert_eq!(phi(n, &cache).unwrap().degree(), Some(totient(n) as i64));
        }
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint_poly(3), lp(0, &[1, 1, 1]));
        assert!(qint_poly(0).is_zero());
        assert_eq!(qint_poly(-1), lp(-1, &[-1]));
        assert_eq!(qint_poly(-3), lp(-3, &[-1, -1, -1]));
        // (1 - q^m)/(1 - q) for negative m
        let m = -4;
        let lhs = &qint_poly(m) * &lp(0, &[1, -1]);
        assert_eq!(lhs, &LaurentPoly::one() - &LaurentPoly::q_pow(m));
    }

    #[test]
    fn qint_is_product_of_nontrivial_cyclotomics() {
        let cache = CycloCache::new();
        for n in 1..=40u64 {
            let mut prod = LaurentPoly::one();
            for d in divisors(n).into_iter().filter(|&d| d > 1) {
                prod = &prod * &phi(d, &cache).unwrap();
            }
            assert_eq!(prod, qint_poly(n as i64));
        }
    }

    #[test]
    fn valuation_examples() {
        let cache = CycloCache::new();
        let p4 = phi(4, &cache).unwrap();
        let x = RatFunc::new(&(&p4 * &p4) * &lp(0, &[1, 1]), lp(0, &[1, 1, 1])).unwrap();
        assert_eq!(val_phi(&x, 4, &cache).unwrap(), Valuation::Finite(2));
        let one_minus_q4 = lp(0, &[1, 0, 0, 0, -1]);
        let x = RatFunc::new(&one_minus_q4 * &one_minus_q4, lp(0, &[1, 0, -1])).unwrap();
        assert_eq!(val_phi(&x, 4, &cache).unwrap(), Valuation::Finite(2));
        let x = RatFunc::new(LaurentPoly::one(), phi(3, &cache).unwrap()).unwrap();
        assert_eq!(val_phi(&x, 3, &cache).unwrap(), Valuation::Finite(-1));
        assert_eq!(
            val_phi(&RatFunc::zero(), 3, &cache).unwrap(),
            Valuation::Infinite
        );
    }

    #[test]
    fn qint_square_examples() {
        let cache = CycloCache::new();
        let p3 = phi(3, &cache).unwrap();
        let sq = RatFunc::from_poly(&p3 * &p3);
        assert!(val_qint_square(&sq, 3, &cache).unwrap().holds);
        assert!(
            !val_qint_square(&RatFunc::from_poly(p3.clone()), 3, &cache)
                .unwrap()
                .holds
        );
        // Φ_3^2 over Φ_9: valuation fine at 3 but the denominator meets [9]
        let x = RatFunc::new(
            &(&p3 * &p3) * &(&phi(9, &cache).unwrap() * &phi(9, &cache).unwrap()),
            p3.clone(),
        )
        .unwrap();
        let r = val_qint_square(&x, 9, &cache).unwrap();
        assert!(!r.holds);
        assert_eq!(
            r.per_divisor,
            vec![(3, Valuation::Finite(1)), (9, Valuation::Finite(2))]
        );
        assert_eq!(x.eval(&rat(2, 1)).unwrap(), x.eval(&rat(2, 1)).unwrap());
    }

    #[test]
    fn divisor_and_totient_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(totient(36), 12);
        assert_eq!(totient(1), 1);
    }
}
