//! Andrews' multiseries extension of Watson's transformation, for monomial
//! parameters `a = q^α`, `b_i = q^(β_i)`, `c_i = q^(γ_i)` and base `p = q^s`.
//!
//! The left side's `(q√a, -q√a; q)_k / (√a, -√a; q)_k` is evaluated as
//! `(1 - a q^(2k)) / (1 - a)`, which keeps everything in `Q(q)`.

use crate::algebra::{RatFunc, ZLaurent};
use crate::error::{Error, Result};
use crate::qkit::MonomialArg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndrewsInstance {
    pub m: usize,
    pub big_n: u64,
    pub a: MonomialArg,
    pub b: Vec<MonomialArg>,
    pub c: Vec<MonomialArg>,
    pub base_exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A product of binomials `1 - q^e` over another, times `q^mono`.
#[derive(Default)]
struct Term {
    num: Vec<i64>,
    den: Vec<i64>,
    mono: i64,
}

impl Term {
    /// `(q^x; p)_k` into the numerator or denominator.
    fn poch(&mut self, x: i64, p: i64, k: u64, upstairs: bool) {
        let list = if upstairs {
            &mut self.num
        } else {
            &mut self.den
        };
        list.extend((0..k as i64).map(|j| x + j * p));
    }

    fn value(&self) -> Result<RatFunc> {
        if self.den.contains(&0) {
            return Err(Error::Degenerate("a denominator factor vanishes".into()));
        }
        let prod = |list: &[i64]| {
            list.iter()
                .fold(ZLaurent::one(), |acc, &e| acc.mul_one_minus(e))
                .to_laurent()
        };
        let num = prod(&self.num);
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        RatFunc::new(num.shift(self.mono), prod(&self.den))
    }
}

impl AndrewsInstance {
    fn check(&self) -> Result<()> {
        if self.m < 1 || self.b.len() != self.m || self.c.len() != self.m {
            return Err(Error::Precondition(
                "need m >= 1 and m values for each of b, c".into(),
            ));
        }
        if self.base_exp < 1 {
            return Err(Error::Precondition("base exponent must be >= 1".into()));
        }
        let all = std::iter::once(&self.a).chain(&self.b).chain(&self.c);
        if all.clone().any(|x| !x.is_univariate()) {
            return Err(Error::Precondition("arguments must be powers of q".into()));
        }
        Ok(())
    }

    fn left(&self) -> Result<RatFunc> {
        let p = self.base_exp;
        let (al, n) = (self.a.q_exp, self.big_n);
        let bc: i64 = self.b.iter().chain(&self.c).map(|x| x.q_exp).sum();
        let z = self.m as i64 * al + p * (self.m as i64 + n as i64) - bc;
        let mut total = RatFunc::zero();
        for k in 0..=n {
            let mut t = Term::default();
            t.poch(al, p, k, true);
            if k > 0 {
                t.num.push(al + 2 * p * k as i64);
                t.den.push(al);
            }
            for (b, c) in self.b.iter().zip(&self.c) {
                t.poch(b.q_exp, p, k, true);
                t.poch(c.q_exp, p, k, true);
                t.poch(al + p - b.q_exp, p, k, false);
                t.poch(al + p - c.q_exp, p, k, false);
            }
            t.poch(-p * n as i64, p, k, true);
            t.poch(p, p, k, false);
            t.poch(al + p * (n as i64 + 1), p, k, false);
            t.mono = z * k as i64;
            total = total.add(&t.value()?);
        }
        Ok(total)
    }

    fn right(&self) -> Result<RatFunc> {
        let p = self.base_exp;
        let (al, n, m) = (self.a.q_exp, self.big_n, self.m);
        let b: Vec<i64> = self.b.iter().map(|x| x.q_exp).collect();
        let c: Vec<i64> = self.c.iter().map(|x| x.q_exp).collect();
        let mut pre = Term::default();
        pre.poch(al + p, p, n, true);
        pre.poch(al + p - b[m - 1] - c[m - 1], p, n, true);
        pre.poch(al + p - b[m - 1], p, n, false);
        pre.poch(al + p - c[m - 1], p, n, false);
        let prefactor = pre.value()?;

        let mut total = RatFunc::zero();
        let mut l = vec![0u64; m - 1];
        loop {
            // partial sums L_i = l_1 + ... + l_i, with L_0 = 0
            let mut big_l = vec![0u64; m];
            for i in 1..m {
                big_l[i] = big_l[i - 1] + l[i - 1];
            }
            if big_l[m - 1] <= n {
                let mut t = Term::default();
                for i in 0..m - 1 {
                    t.poch(al + p - b[i] - c[i], p, l[i], true);
                    t.poch(p, p, l[i], false);
                }
                for i in 1..m {
                    t.poch(b[i], p, big_l[i], true);
                    t.poch(c[i], p, big_l[i], true);
                }
                for i in 0..m - 1 {
                    t.poch(al + p - b[i], p, big_l[i + 1], false);
                    t.poch(al + p - c[i], p, big_l[i + 1], false);
                }
                let last = big_l[m - 1];
                t.poch(-p * n as i64, p, last, true);
                t.poch(b[m - 1] + c[m - 1] - p * n as i64 - al, p, last, false);
                let mut mono = p * last as i64;
                for i in 1..m.saturating_sub(1) {
                    mono += (al + p - b[i] - c[i]) * big_l[i] as i64;
                }
                t.mono = mono;
                total = total.add(&t.value()?);
            }
            // next multi-index with every coordinate bounded by N
            let mut i = 0;
            while i < l.len() {
                l[i] += 1;
                if l[i] <= n {
                    break;
                }
                l[i] = 0;
                i += 1;
            }
            if i == l.len() {
                break;
            }
        }
        Ok(prefactor.mul(&total))
    }
}

/// One side of the transformation as an exact rational function. Fails
/// with a degenerate-instance error when a denominator factor vanishes.
pub fn andrews_side(instance: &AndrewsInstance, side: Side) -> Result<RatFunc> {
    instance.check()?;
    match side {
        Side::Left => instance.left(),
        Side::Right => instance.right(),
    }
}

/// Deterministic small assignments `(a, b, c)` of exponents for an
/// `m`-fold instance, degenerate ones included.
pub fn andrews_candidates(m: usize) -> Vec<(i64, Vec<i64>, Vec<i64>)> {
    let pool = [3i64, -2, 5, 7, -4, 11, 2, -6, 13, 4, 9, -8, 17];
    (0..40)
        .map(|s| {
            let a = 1 + (s as i64 % 3);
            let b = (0..m)
                .map(|i| pool[(s + 2 * i) % pool.len()] + i as i64)
                .collect();
            let c = (0..m)
                .map(|i| pool[(s + 2 * i + 1) % pool.len()] - 2 * i as i64)
                .collect();
            (a, b, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(m: usize, n: u64, a: i64, b: &[i64], c: &[i64], base: i64) -> AndrewsInstance {
        AndrewsInstance {
            m,
            big_n: n,
            a: MonomialArg::q(a),
            b: b.iter().map(|&e| MonomialArg::q(e)).collect(),
            c: c.iter().map(|&e| MonomialArg::q(e)).collect(),
            base_exp: base,
        }
    }

    #[test]
    fn trivial_instance() {
        let i = inst(1, 0, 1, &[3], &[5], 1);
        assert!(andrews_side(&i, Side::Left).unwrap().is_one());
        assert!(andrews_side(&i, Side::Right).unwrap().is_one());
    }

    #[test]
    fn aq_over_b_equal_one_is_degenerate() {
        // a = q, b = q^2 makes aq/b = 1
        let i = inst(1, 1, 1, &[2], &[3], 1);
        assert!(matches!(
            andrews_side(&i, Side::Left),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn six_phi_five_instance() {
        let i = inst(1, 1, 1, &[3], &[5], 1);
        let l = andrews_side(&i, Side::Left).unwrap();
        assert_eq!(l, andrews_side(&i, Side::Right).unwrap());
        assert!(!l.is_zero());
    }

    #[test]
    fn small_instances_agree() {
        for m in 1..=3 {
            for big_n in 0..=3 {
                let mut good = 0;
                for (a, b, c) in andrews_candidates(m) {
                    let i = inst(m, big_n, a, &b, &c, 1 + (m as i64 % 2));
                    let (Ok(l), Ok(r)) =
                        (andrews_side(&i, Side::Left), andrews_side(&i, Side::Right))
                    else {
                        continue;
                    };
                    assert_eq!(l, r, "{i:?}");
                    good += 1;
                }
                assert!(good >= 5, "m={m} N={big_n}: {good}");
            }
        }
    }
}
