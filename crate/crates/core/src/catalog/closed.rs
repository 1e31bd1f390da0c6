use num_bigint::BigInt;

use super::{validate, FactoredSum, FamilyId, FamilyParams};
use crate::algebra::{BiRatFunc, ZBiLaurent, ZLaurent};
use crate::error::{Error, Result};

/// The bracket `2[2N - offset] + q^(2N-2)` of the T_MAIN3 closed form.
///
/// Expanding the partial sums for small `N` shows the bracket is
/// `2[2N-2] + q^(2N-2)`; the printed text has `2[2N-3]`, which already fails
/// at `N = 2` (the sum there is `1 + 1/(1+q)^2`). Both readings are kept so
/// reports can show the comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CfIndBracket {
    pub offset: i64,
}

impl CfIndBracket {
    pub const DERIVED: CfIndBracket = CfIndBracket { offset: 2 };
    pub const PAPER_TEXT: CfIndBracket = CfIndBracket { offset: 3 };

    pub fn describe(&self) -> String {
        format!("2[2N-{}]+q^(2N-2)", self.offset)
    }
}

/// `2[2N - offset] + q^(2N-2)` over the denominator `1 - q`.
pub fn cf_ind_bracket(big_n: i64, bracket: CfIndBracket) -> FactoredSum {
    // 2(1 - q^m) + q^(2N-2)(1 - q)
    let m = 2 * big_n - bracket.offset;
    let two = ZLaurent::one_minus(m).scale(&BigInt::from(2));
    let tail = ZLaurent::one_minus(1).shift(2 * big_n - 2);
    FactoredSum {
        num: ZBiLaurent::from_univariate(two.add(&tail)),
        den: vec![(0, 1)],
    }
}

fn poch_num(acc: ZBiLaurent, a: i64, q: i64, base: i64, k: i64) -> ZBiLaurent {
    (0..k).fold(acc, |p, j| p.mul_one_minus(a, q + j * base))
}

fn poch_den(den: &mut Vec<(i64, i64)>, a: i64, q: i64, base: i64, k: i64) {
    den.extend((0..k).map(|j| (a, q + j * base)));
}

/// `2 + q^(bn) - q - q^(b-1) - q^(bn-b)` from the T_MAIN4 and `(q^-1,q^-3;q^4)`
/// closed forms, with `b` the base.
fn five_term(b: i64, n: i64) -> ZBiLaurent {
    let mut p = ZLaurent::monomial(2.into(), 0);
    p = p.add(&ZLaurent::monomial(1.into(), b * n));
    p = p.sub(&ZLaurent::monomial(1.into(), 1));
    p = p.sub(&ZLaurent::monomial(1.into(), b - 1));
    p = p.sub(&ZLaurent::monomial(1.into(), b * n - b));
    ZBiLaurent::from_univariate(p)
}

/// The T_MAIN3 closed form at `N` with a chosen bracket.
pub fn cf_ind_with(big_n: i64, bracket: CfIndBracket) -> FactoredSum {
    let b = cf_ind_bracket(big_n, bracket);
    let mut num = b.num;
    let mut den = b.den;
    for _ in 0..2 {
        num = poch_num(num, 0, 1, 2, big_n - 1);
        poch_den(&mut den, 0, 2, 2, big_n - 1);
    }
    den.sort_unstable();
    FactoredSum { num, den }
}

/// Right-hand side of a closed form, in factored form.
pub fn closed_form_exact(family: FamilyId, params: &FamilyParams) -> Result<FactoredSum> {
    let p = validate(family, params)?;
    let n = p.n;
    let mut den = Vec::new();
    let num = match family {
        FamilyId::CfInd => return Ok(cf_ind_with(n, CfIndBracket::DERIVED)),
        FamilyId::CfInd2 => {
            let mut num = five_term(3, n);
            num = poch_num(num, 0, 1, 3, n - 1);
            num = poch_num(num, 0, 2, 3, n - 1);
            den.extend([(0, 1), (0, 2)]);
            poch_den(&mut den, 0, 3, 3, n - 1);
            poch_den(&mut den, 0, 3, 3, n - 1);
            num
        }
        FamilyId::CfQ4 => {
            let mut num = five_term(4, n);
            num = poch_num(num, 0, 1, 4, n - 1);
            num = poch_num(num, 0, 3, 4, n - 1);
            den.extend([(0, 1), (0, 3)]);
            poch_den(&mut den, 0, 4, 4, n - 1);
            poch_den(&mut den, 0, 4, 4, n - 1);
            num
        }
        FamilyId::CfD3a => {
            // [3n-2][3n-4] (aq^2, q^2/a, q^-1; q^3)_{n-1} / (aq^3, q^3/a, q^3; q^3)_{n-1}
            let mut num = ZBiLaurent::one()
                .mul_one_minus(0, 3 * n - 2)
                .mul_one_minus(0, 3 * n - 4);
            den.extend([(0, 1), (0, 1)]);
            num = poch_num(num, 1, 2, 3, n - 1);
            num = poch_num(num, -1, 2, 3, n - 1);
            num = poch_num(num, 0, -1, 3, n - 1);
            poch_den(&mut den, 1, 3, 3, n - 1);
            poch_den(&mut den, -1, 3, 3, n - 1);
            poch_den(&mut den, 0, 3, 3, n - 1);
            num
        }
        other => {
            return Err(Error::InvalidParams {
                family: other.as_str().into(),
                hypothesis: "not a closed form".into(),
            })
        }
    };
    den.sort_unstable();
    Ok(FactoredSum { num, den })
}

/// Right-hand side of a closed form as a rational function.
pub fn closed_form(family: FamilyId, params: &FamilyParams) -> Result<BiRatFunc> {
    closed_form_exact(family, params)?.to_biratfunc()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rational};
    use crate::catalog::{partial_sum_exact, term};

    fn at(x: &FactoredSum, a: i64, q: i64) -> Rational {
        x.to_biratfunc()
            .unwrap()
            .eval(&rat(a, 1), &rat(q, 1))
            .unwrap()
    }

    fn params(n: i64) -> FamilyParams {
        FamilyParams::new(0, None, n)
    }

    #[test]
    fn spec_values_at_q2() {
        assert_eq!(
            at(
                &closed_form_exact(FamilyId::CfInd2, &params(2)).unwrap(),
                1,
                2
            ),
            rat(52, 49)
        );
        assert_eq!(
            at(
                &closed_form_exact(FamilyId::CfQ4, &params(2)).unwrap(),
                1,
                2
            ),
            rat(232, 225)
        );
        assert_eq!(
            at(
                &closed_form_exact(FamilyId::CfD3a, &params(1)).unwrap(),
                3,
                2
            ),
            rat(-1, 2)
        );
        let t0 = term(FamilyId::PB2, &FamilyParams::new(3, None, 1), 0).unwrap();
        assert_eq!(t0.eval(&rat(3, 1), &rat(2, 1)).unwrap(), rat(-1, 2));
    }

    #[test]
    fn closed_forms_match_sums() {
        for n in 1..=6 {
            for f in [FamilyId::CfInd2, FamilyId::CfQ4, FamilyId::CfD3a] {
                let (sum_family, d) = f.closed_form_sum().unwrap();
                let s =
                    partial_sum_exact(sum_family, &FamilyParams::new(d, None, n), (n - 1) as u64)
                        .unwrap();
                assert!(
                    s.equals(&closed_form_exact(f, &params(n)).unwrap()),
                    "{f} n={n}"
                );
            }
        }
    }

    #[test]
    fn ind_bracket_readings() {
        for big_n in 2..=6 {
            let s = partial_sum_exact(
                FamilyId::TMain3,
                &FamilyParams::new(2, None, 0),
                (big_n - 1) as u64,
            )
            .unwrap();
            assert!(
                s.equals(&cf_ind_with(big_n, CfIndBracket::DERIVED)),
                "N={big_n}"
            );
            assert!(
                !s.equals(&cf_ind_with(big_n, CfIndBracket::PAPER_TEXT)),
                "N={big_n}"
            );
        }
        assert!(closed_form_exact(FamilyId::CfInd, &params(1)).is_err());
    }
}
