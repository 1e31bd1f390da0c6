//! Truncated sums as sequences of binomial updates.
//!
//! A sum `Σ_{k<=K} t_k` with `t_k = pref_k · A_k / D_k · q^(s·k)`, where
//! `A_k`, `D_k` are products of binomials `1 - a^i q^j`, is accumulated over
//! the common denominator `D_K`:
//!
//! ```text
//! N_0 = t_0,   N_{k+1} = N_k · (D_{k+1}/D_k) + pref_{k+1} · A_{k+1} · q^(s(k+1))
//! ```
//!
//! so only multiplications by binomials and additions are needed. The
//! prefactor `[m] = (1 - q^m)/(1 - q)` contributes `1 - q^m` per term and
//! one global `1 - q` to the denominator.

use num_bigint::BigInt;

use super::{Position, TermRecipe};
use crate::algebra::{BiRatFunc, LaurentPoly, RatFunc, ZBiLaurent, ZLaurent};
use crate::error::{Error, Result};

/// One summation index: binomials entering the running numerator product
/// and the denominator, then the prefactor and monomial of this term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Step {
    pub num: Vec<(i64, i64)>,
    pub den: Vec<(i64, i64)>,
    /// `m` of the prefactor binomial `1 - q^m`.
    pub pref: Option<i64>,
    /// `(i, j)` of the monomial `a^i q^j`.
    pub mono: (i64, i64),
}

/// The steps of a truncated sum. Steps after the first exactly vanishing
/// numerator binomial are dropped, since every later term is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPlan {
    pub steps: Vec<Step>,
    /// Extra denominator binomials shared by all terms.
    pub global_den: Vec<(i64, i64)>,
    /// Number of terms requested (`upto + 1`).
    pub requested: u64,
}

impl SumPlan {
    pub fn new(rec: &TermRecipe, upto: u64) -> Self {
        let mut steps = Vec::new();
        'outer: for k in 0..=upto as i64 {
            let mut step = Step::default();
            if k > 0 {
                for f in &rec.factors {
                    let b = (f.arg.a_exp, f.arg.q_exp + (k - 1) * f.base);
                    let list = match f.position {
                        Position::Numerator => &mut step.num,
                        Position::Denominator => &mut step.den,
                    };
                    for _ in 0..f.power {
                        list.push(b);
                    }
                }
                if step.num.contains(&(0, 0)) {
                    break 'outer;
                }
            }
            step.pref = rec.prefactor.map(|p| p.slope * k + p.offset);
            step.mono = (0, rec.q_slope * k);
            steps.push(step);
        }
        let global_den = if rec.prefactor.is_some() {
            vec![(0, 1)]
        } else {
            Vec::new()
        };
        SumPlan {
            steps,
            global_den,
            requested: upto + 1,
        }
    }

    /// Every denominator binomial, including the global ones.
    pub fn all_den(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.steps
            .iter()
            .flat_map(|s| s.den.iter().copied())
            .chain(self.global_den.iter().copied())
    }

    pub fn is_univariate(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.num.iter().chain(&s.den).all(|b| b.0 == 0) && s.mono.0 == 0)
            && self.global_den.iter().all(|b| b.0 == 0)
    }

    /// Fails on a denominator binomial that is identically zero.
    pub fn check_denominators(&self) -> Result<()> {
        if let Some(k) = self.steps.iter().position(|s| s.den.contains(&(0, 0))) {
            return Err(Error::ZeroDenominator(format!(
                "denominator factor 1 - q^0 at k = {k}"
            )));
        }
        Ok(())
    }
}

/// A commutative ring the accumulation can run in.
pub trait SumRing {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    /// `x · (1 - a^i q^j)`.
    fn mul_binomial(&self, x: &Self::Elem, i: i64, j: i64) -> Result<Self::Elem>;
    /// `x · a^i q^j`.
    fn mul_monomial(&self, x: &Self::Elem, i: i64, j: i64) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// Hook called after each step; rings with representation slack use it
    /// to reduce.
    fn tidy(&self, _x: &mut Self::Elem) {}
    /// A denominator binomial must be a unit or at least nonzero in the ring;
    /// by default only `(0, 0)` is rejected.
    fn check_den(&self, i: i64, j: i64) -> Result<()> {
        if (i, j) == (0, 0) {
            return Err(Error::ZeroDenominator("denominator factor 1 - q^0".into()));
        }
        Ok(())
    }
}

/// Runs `plan` in `ring`, returning the numerator over `Π all_den()`.
pub fn accumulate<R: SumRing>(ring: &R, plan: &SumPlan) -> Result<R::Elem> {
    let mut a = ring.one();
    let mut n = ring.zero();
    for step in &plan.steps {
        for &(i, j) in &step.num {
            a = ring.mul_binomial(&a, i, j)?;
        }
        for &(i, j) in &step.den {
            ring.check_den(i, j)?;
            n = ring.mul_binomial(&n, i, j)?;
        }
        let mut t = match step.pref {
            Some(m) => ring.mul_binomial(&a, 0, m)?,
            None => a.clone(),
        };
        t = ring.mul_monomial(&t, step.mono.0, step.mono.1)?;
        n = ring.add(&n, &t);
        ring.tidy(&mut a);
        ring.tidy(&mut n);
    }
    for &(i, j) in &plan.global_den {
        ring.check_den(i, j)?;
    }
    Ok(n)
}

/// Exact integer arithmetic in `Z[a^±, q^±]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FullRing;

impl SumRing for FullRing {
    type Elem = ZBiLaurent;

    fn one(&self) -> ZBiLaurent {
        ZBiLaurent::one()
    }

    fn zero(&self) -> ZBiLaurent {
        ZBiLaurent::zero()
    }

    fn mul_binomial(&self, x: &ZBiLaurent, i: i64, j: i64) -> Result<ZBiLaurent> {
        Ok(x.mul_one_minus(i, j))
    }

    fn mul_monomial(&self, x: &ZBiLaurent, i: i64, j: i64) -> Result<ZBiLaurent> {
        Ok(x.shift(i, j))
    }

    fn add(&self, x: &ZBiLaurent, y: &ZBiLaurent) -> ZBiLaurent {
        x.add(y)
    }
}

/// An exact value `num / Π (1 - a^i q^j)` over a multiset of binomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredSum {
    pub num: ZBiLaurent,
    pub den: Vec<(i64, i64)>,
}

impl FactoredSum {
    pub fn of_plan(plan: &SumPlan) -> Result<Self> {
        let num = accumulate(&FullRing, plan)?;
        let mut den: Vec<(i64, i64)> = plan.all_den().collect();
        den.sort_unstable();
        Ok(FactoredSum { num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_univariate(&self) -> bool {
        self.num.rows().all(|(a, _)| a == 0) && self.den.iter().all(|b| b.0 == 0)
    }

    /// The numerator as a univariate polynomial; `None` if `a` occurs.
    pub fn num_univariate(&self) -> Option<ZLaurent> {
        if !self.is_univariate() {
            return None;
        }
        Some(
            self.num
                .rows()
                .next()
                .map(|(_, r)| r.clone())
                .unwrap_or_default(),
        )
    }

    /// Exact equality by cross-multiplication after cancelling shared
    /// denominator binomials.
    pub fn equals(&self, other: &Self) -> bool {
        let (mine, theirs) = cancel_common(&self.den, &other.den);
        let mut lhs = self.num.clone();
        for (i, j) in theirs {
            lhs = lhs.mul_one_minus(i, j);
        }
        let mut rhs = other.num.clone();
        for (i, j) in mine {
            rhs = rhs.mul_one_minus(i, j);
        }
        lhs == rhs
    }

    pub fn den_product(&self) -> ZBiLaurent {
        self.den
            .iter()
            .fold(ZBiLaurent::one(), |acc, &(i, j)| acc.mul_one_minus(i, j))
    }

    pub fn to_biratfunc(&self) -> Result<BiRatFunc> {
        BiRatFunc::new(self.num.to_bilaurent(), self.den_product().to_bilaurent())
    }

    /// Canonical univariate form; fails if `a` occurs.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        if !self.is_univariate() {
            return Err(Error::Domain("sum depends on a".into()));
        }
        let to_lp = |p: &ZBiLaurent| -> LaurentPoly {
            p.rows()
                .next()
                .map(|(_, r)| r.to_laurent())
                .unwrap_or_else(LaurentPoly::zero)
        };
        RatFunc::new(to_lp(&self.num), to_lp(&self.den_product()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        FactoredSum {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Product with a polynomial factor.
    pub fn mul_poly(&self, p: &ZBiLaurent) -> Self {
        FactoredSum {
            num: self.num.mul(p),
            den: self.den.clone(),
        }
    }

    pub fn one() -> Self {
        FactoredSum {
            num: ZBiLaurent::one(),
            den: Vec::new(),
        }
    }
}

/// Splits two sorted-or-not multisets into their parts left after removing
/// the common elements.
fn cancel_common(a: &[(i64, i64)], b: &[(i64, i64)]) -> (Vec<(i64, i64)>, Vec<(i64, i64)>) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let (mut i, mut j) = (0, 0);
    let (mut ra, mut rb) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                ra.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                rb.push(b[j]);
                j += 1;
            }
        }
    }
    ra.extend_from_slice(&a[i..]);
    rb.extend_from_slice(&b[j..]);
    (ra, rb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{recipe, FamilyId, FamilyParams};

    #[test]
    fn plan_truncates_at_vanishing_numerator() {
        // (q^(1-(d-1)n); q^d)_k = 0 for k > (dn-n-1)/d: d=5, n=4 gives 3
        let rec = recipe(FamilyId::PA1, &FamilyParams::new(5, None, 4))
            .unwrap()
            .at_a(-4);
        let plan = SumPlan::new(&rec, 3);
        assert_eq!(plan.steps.len(), 4);
        let plan = SumPlan::new(&rec, 10);
        assert_eq!(plan.steps.len(), 4);
        assert_eq!(plan.requested, 11);
    }

    #[test]
    fn cancellation_multiset() {
        let (a, b) = cancel_common(&[(0, 1), (0, 2), (0, 2), (1, 3)], &[(0, 2), (1, 3), (0, 5)]);
        assert_eq!(a, vec![(0, 1), (0, 2)]);
        assert_eq!(b, vec![(0, 5)]);
    }

    #[test]
    fn factored_equality() {
        // (1 - q^2)/(1 - q) == (1 + q)
        let x = FactoredSum {
            num: ZBiLaurent::one().mul_one_minus(0, 2),
            den: vec![(0, 1)],
        };
        let y = FactoredSum {
            num: ZBiLaurent::from_univariate(ZLaurent::from_coeffs(0, vec![1.into(), 1.into()])),
            den: vec![],
        };
        assert!(x.equals(&y));
        assert!(!x.equals(&FactoredSum::one()));
    }
}
