//! q-shifted factorials, q-binomial coefficients and q-Catalan divisibility.

use std::fmt;

use crate::algebra::{BiLaurent, LaurentPoly, ZBiLaurent, ZLaurent};
use crate::error::{Error, Result};

/// The monomial `a^a_exp q^q_exp`, always with coefficient +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialArg {
    pub a_exp: i64,
    pub q_exp: i64,
}

impl MonomialArg {
    pub fn new(a_exp: i64, q_exp: i64) -> Self {
        MonomialArg { a_exp, q_exp }
    }

    /// `q^q_exp`.
    pub fn q(q_exp: i64) -> Self {
        MonomialArg { a_exp: 0, q_exp }
    }

    pub fn is_univariate(&self) -> bool {
        self.a_exp == 0
    }

    /// The argument times `q^by`.
    pub fn shifted(&self, by: i64) -> Self {
        MonomialArg {
            a_exp: self.a_exp,
            q_exp: self.q_exp + by,
        }
    }

    /// The argument after `a -> q^m`.
    pub fn at_a(&self, m: i64) -> Self {
        MonomialArg::q(self.q_exp + m * self.a_exp)
    }
}

impl fmt::Display for MonomialArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a_exp, self.q_exp) {
            (0, 0) => write!(f, "1"),
            (0, j) => write!(f, "q^{j}"),
            (i, 0) => write!(f, "a^{i}"),
            (i, j) => write!(f, "a^{i}*q^{j}"),
        }
    }
}

/// `(arg; q^base_exp)_k = Π_{j<k} (1 - a^i q^(j0 + j·base_exp))`.
pub fn q_poch(arg: MonomialArg, base_exp: i64, k: u64) -> BiLaurent {
    q_poch_z(arg, base_exp, k).to_bilaurent()
}

pub(crate) fn q_poch_z(arg: MonomialArg, base_exp: i64, k: u64) -> ZBiLaurent {
    let mut acc = ZBiLaurent::one();
    for j in 0..k as i64 {
        acc = acc.mul_one_minus(arg.a_exp, arg.q_exp + j * base_exp);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Univariate projection of [`q_poch`]; `None` if the argument involves `a`.
pub fn q_poch_uni(arg: MonomialArg, base_exp: i64, k: u64) -> Option<LaurentPoly> {
    arg.is_univariate()
        .then(|| q_poch_uni_z(arg.q_exp, base_exp, k).to_laurent())
}

pub(crate) fn q_poch_uni_z(q_exp: i64, base_exp: i64, k: u64) -> ZLaurent {
    let mut acc = ZLaurent::one();
    for j in 0..k as i64 {
        acc = acc.mul_one_minus(q_exp + j * base_exp);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Gaussian binomial `[n choose k]` in base `q^base_exp`; zero outside
/// `0 <= k <= n`.
pub fn q_binom(n: i64, k: i64, base_exp: i64) -> Result<LaurentPoly> {
    Ok(q_binom_z(n, k, base_exp)?.to_laurent())
}

pub(crate) fn q_binom_z(n: i64, k: i64, base_exp: i64) -> Result<ZLaurent> {
    if base_exp < 1 {
        return Err(Error::Domain(
            "q-binomial base exponent must be >= 1".into(),
        ));
    }
    if n < 0 || k < 0 || k > n {
        return Ok(ZLaurent::zero());
    }
    let k = k.min(n - k);
    // each partial product is itself a q-binomial, so every division is exact
    let mut acc = ZLaurent::one();
    for i in 1..=k {
        acc = acc.mul_one_minus(base_exp * (n - k + i));
        acc = acc
            .div_one_minus(base_exp * i)
            .ok_or_else(|| Error::InexactDivision(format!("q-binomial ({n}, {k}) at step {i}")))?;
    }
    Ok(acc)
}

/// Whether `[N]` divides the central q-binomial `[2N-2 choose N-1]`.
pub fn q_catalan_divides(big_n: u64) -> Result<bool> {
    if big_n < 1 {
        return Err(Error::Domain("q-Catalan index must be >= 1".into()));
    }
    let c = q_binom_z(2 * big_n as i64 - 2, big_n as i64 - 1, 1)?;
    Ok(divisible_by_qint(&c, big_n as i64))
}

/// [`q_catalan_divides`] for every `N` in `1..=max`, walking the central
/// binomials incrementally.
pub fn q_catalan_divides_upto(max: u64) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(max as usize);
    let mut central = ZLaurent::one(); // [2N-2 choose N-1] at N = 1
    for big_n in 1..=max as i64 {
        out.push(divisible_by_qint(&central, big_n));
        // [2N choose N] = [2N-2 choose N-1] (1-q^(2N-1)) (1-q^(2N)) / (1-q^N)^2
        let step = |p: ZLaurent, m: i64| {
            p.div_one_minus(big_n)
                .ok_or_else(|| Error::InexactDivision(format!("central binomial at {m}")))
        };
        central = step(central.mul_one_minus(2 * big_n - 1), 2 * big_n - 1)?;
        central = step(central.mul_one_minus(2 * big_n), 2 * big_n)?;
    }
    Ok(out)
}

fn divisible_by_qint(p: &ZLaurent, m: i64) -> bool {
    // [m] = (1 - q^m)/(1 - q)
    p.mul_one_minus(1).div_one_minus(m).is_some()
}
