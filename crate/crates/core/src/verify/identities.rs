use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rings::{ARows, CycloPolyA};
use crate::algebra::{Rational, ZLaurent};
use crate::catalog::{
    andrews_candidates, andrews_side, cf_ind_with, closed_form_exact, partial_sum_exact, validate,
    AndrewsInstance, CfIndBracket, FactoredSum, FamilyId, FamilyParams, Side, SumRing,
};
use crate::cyclotomic::CycloCache;
use crate::error::{Error, Result};
use crate::qkit::{q_binom_z, q_catalan_divides_upto, MonomialArg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `(aq; q^d)` against `(q^d/a; q^d)` for `2n ≡ -1 (mod d)`.
    L22,
    /// `(aq^-1; q^d)` against `(q^d/a; q^d)` for `2n ≡ 1 (mod d)`.
    L32,
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "L22" => Ok(Lemma::L22),
            "L32" => Ok(Lemma::L32),
            _ => Err(Error::Parse(format!("unknown lemma {s:?}"))),
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma::L22 => "L22",
            Lemma::L32 => "L32",
        })
    }
}

impl Lemma {
    /// The upper end `K` of the admissible `k`, or an error if `(d, n)` is
    /// outside the lemma's hypotheses.
    pub fn k_max(self, d: i64, n: i64) -> Result<i64> {
        if d < 1 || d % 2 == 0 || n < 1 {
            return Err(Error::Precondition(
                "d must be a positive odd integer and n >= 1".into(),
            ));
        }
        let (class, top) = match self {
            Lemma::L22 => (-1, d * n - 2 * n - 1),
            Lemma::L32 => (1, d * n - 2 * n + 1),
        };
        if self == Lemma::L22 && d < 3 {
            return Err(Error::Precondition("d >= 3 required".into()));
        }
        if (2 * n - class).rem_euclid(d) != 0 {
            return Err(Error::Precondition(format!(
                "2n = {class} mod {d} required"
            )));
        }
        Ok(top / d)
    }
}

/// Both sides of the lemma cross-multiplied, reduced at `ζ_n`; true iff the
/// difference vanishes.
pub fn check_lemma(lemma: Lemma, d: i64, n: i64, k: i64, cache: &CycloCache) -> Result<bool> {
    let big_k = lemma.k_max(d, n)?;
    if k < 0 || k > big_k {
        return Err(Error::Precondition(format!("k must lie in 0..={big_k}")));
    }
    let (q0, slope, top) = match lemma {
        Lemma::L22 => (1, d - 1, d * n - 2 * n - d + 1),
        Lemma::L32 => (-1, d + 1, d * n - 2 * n - d - 1),
    };
    let twice = top * big_k;
    if twice % 2 != 0 {
        return Err(Error::Precondition("q-exponent is not an integer".into()));
    }
    let e = twice / 2 + slope * k;
    let ring = CycloPolyA::new(n as u64, cache)?;
    let poch = |arg: MonomialArg, len: i64| -> ARows {
        (0..len).fold(ring.one(), |acc, j| {
            ring.mul_binomial(&acc, arg.a_exp, arg.q_exp + j * d)
                .expect("infallible")
        })
    };
    let aq = MonomialArg::new(1, q0);
    let qa = MonomialArg::new(-1, d);
    let lhs = ring.mul(&poch(aq, big_k - k), &poch(qa, k));
    let sign = if (big_k - 2 * k).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    let rhs = ring.mul(
        &ring.monomial(sign, big_k - 2 * k, e),
        &ring.mul(&poch(aq, k), &poch(qa, big_k - k)),
    );
    let mut diff = ring.sub(&lhs, &rhs);
    ring.tidy(&mut diff);
    Ok(ring.is_zero(&diff))
}

/// `Σ_{k=0}^{n} (-1)^k [n choose k] q^(C(n-k,2) + jk) = 0`.
pub fn check_qbino(n: i64, j: i64) -> Result<bool> {
    if n < 1 || j < 0 || j > n - 1 {
        return Err(Error::Precondition("need 0 <= j <= n-1".into()));
    }
    let mut total = ZLaurent::zero();
    for k in 0..=n {
        let c = q_binom_z(n, k, 1)?;
        let sign = if k % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let m = n - k;
        total = total.add_scaled_shifted(&c, &sign, m * (m - 1) / 2 + j * k);
    }
    Ok(total.is_zero())
}

pub fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
}

/// Modulus `m` and residue of the primes covered by a prime-case corollary.
pub fn prime_case_modulus(family: FamilyId, d: i64) -> Result<(i64, i64)> {
    match family {
        FamilyId::C123 => Ok((d * (d + 1) / 2, -1)),
        FamilyId::CN123 => Ok((d * (d + 1) / 2, 1)),
        FamilyId::C135 => Ok((d * d, -1)),
        FamilyId::CN135 => Ok((d * d, 1)),
        other => Err(Error::Precondition(format!(
            "{other} has no prime-case corollary"
        ))),
    }
}

/// `Σ_{k<p} Π_i (x_i)_k / k!^d ≡ 0 (mod p^2)` with classical Pochhammers;
/// true iff `p^2` divides the numerator and `p` does not divide the
/// denominator.
pub fn check_prime_case(family: FamilyId, d: i64, p: i64) -> Result<bool> {
    validate(family, &FamilyParams::new(d, None, 0))?;
    let (m, class) = prime_case_modulus(family, d)?;
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if (p - class).rem_euclid(m) != 0 {
        return Err(Error::Precondition(format!("p = {class} mod {m} required")));
    }
    let sign = if class == 1 { -1 } else { 1 };
    let xs: Vec<Rational> = match family {
        FamilyId::C123 | FamilyId::CN123 => (1..=d)
            .map(|i| Rational::new((sign * i).into(), m.into()))
            .collect(),
        _ => (1..=d)
            .map(|i| Rational::new((sign * (2 * i - 1)).into(), m.into()))
            .collect(),
    };
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for k in 0..p {
        if k > 0 {
            for x in &xs {
                term *= x + Rational::from_integer((k - 1).into());
            }
            term /= Rational::from_integer(BigInt::from(k).pow(d as u32));
        }
        sum += &term;
    }
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    Ok(sum.numer().abs().is_multiple_of(&p2) && !sum.denom().is_multiple_of(&pb))
}

/// The T_MAIN3 closed form with the given bracket against the partial sum.
pub fn cf_ind_matches(big_n: i64, bracket: CfIndBracket) -> Result<bool> {
    let sum = partial_sum_exact(
        FamilyId::TMain3,
        &FamilyParams::new(2, None, big_n),
        (big_n - 1) as u64,
    )?;
    Ok(sum.equals(&cf_ind_with(big_n, bracket)))
}

/// Finds the bracket offset `o` in `2[2N-o] + q^(2N-2)` that matches the
/// partial sums for every `N` in `2..=max_n`.
pub fn resolve_cf_ind_bracket(max_n: i64) -> Result<CfIndBracket> {
    let mut found = Vec::new();
    for offset in 0..=6 {
        let b = CfIndBracket { offset };
        let mut ok = true;
        for big_n in 2..=max_n {
            if !cf_ind_matches(big_n, b)? {
                ok = false;
                break;
            }
        }
        if ok {
            found.push(b);
        }
    }
    match found.as_slice() {
        [b] => Ok(*b),
        [] => Err(Error::Precondition(
            "no bracket offset matches the partial sums".into(),
        )),
        _ => Err(Error::Precondition(
            "bracket offset is not determined".into(),
        )),
    }
}

/// A closed form against the partial sum it evaluates.
pub fn check_closed_form(family: FamilyId, n: i64) -> Result<bool> {
    let (sum_family, d) = family
        .closed_form_sum()
        .ok_or_else(|| Error::Precondition(format!("{family} is not a closed form")))?;
    let params = FamilyParams::new(d, None, n);
    let sum: FactoredSum = partial_sum_exact(sum_family, &params, (n - 1) as u64)?;
    Ok(sum.equals(&closed_form_exact(family, &params)?))
}

/// Both sides of one Andrews instance. Degenerate instances are errors.
pub fn check_andrews(instance: &AndrewsInstance) -> Result<bool> {
    Ok(andrews_side(instance, Side::Left)? == andrews_side(instance, Side::Right)?)
}

/// Counts over the deterministic candidate assignments for one `(m, N)`:
/// instances where both sides agree, where they differ, and degenerate ones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AndrewsTally {
    pub equal: usize,
    pub unequal: usize,
    pub degenerate: usize,
}

pub fn andrews_grid(m: usize, big_n: u64) -> Result<AndrewsTally> {
    let mut tally = AndrewsTally::default();
    for (a, b, c) in andrews_candidates(m) {
        let instance = AndrewsInstance {
            m,
            big_n,
            a: MonomialArg::q(a),
            b: b.into_iter().map(MonomialArg::q).collect(),
            c: c.into_iter().map(MonomialArg::q).collect(),
            base_exp: 1 + (m as i64 % 2),
        };
        match check_andrews(&instance) {
            Ok(true) => tally.equal += 1,
            Ok(false) => tally.unequal += 1,
            Err(Error::Degenerate(_)) => tally.degenerate += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(tally)
}

/// Whether `[N]` divides the central q-binomial, for every `N <= max`.
pub fn check_catalan(max: u64) -> Result<Vec<bool>> {
    q_catalan_divides_upto(max)
}
