//! Registry of every sum family, closed form and transformation instance.
//!
//! Each family is a [`TermRecipe`]: Pochhammer factor specs, an optional
//! q-integer prefactor `[s·k + o]`, and a q-exponent linear in `k`. Nothing
//! downstream special-cases a family beyond reading its recipe and claims.

mod andrews;
mod claims;
mod closed;
mod dump;
mod sum;

use std::fmt;
use std::str::FromStr;

pub use andrews::{andrews_candidates, andrews_side, AndrewsInstance, Side};
pub use claims::{claims_for, Claim, ModulusKind, ResidueCondition, Status, Truncation};
pub use closed::{cf_ind_bracket, cf_ind_with, closed_form, closed_form_exact, CfIndBracket};
pub use dump::{dump_catalog, dump_family, sample_params};
pub use sum::{accumulate, FactoredSum, FullRing, Step, SumPlan, SumRing};

use crate::algebra::{BiLaurent, BiRatFunc};
use crate::cyclotomic::qint_poly;
use crate::error::{Error, Result};
use crate::qkit::{q_poch, MonomialArg};

/// One id per displayed sum, closed form or identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    TMain1,
    TMain2,
    TMain3,
    TMain4,
    TGuo5,
    TD1,
    TD2,
    TMore1,
    TMore2,
    TSix5,
    TSix1,
    PA1,
    PA2,
    PB1,
    PB2,
    PM1,
    PM2,
    CRefine1,
    CRefine2,
    C123,
    CN123,
    C135,
    CN135,
    CL1,
    CL2,
    CL3,
    CL4,
    CfInd,
    CfInd2,
    CfD3a,
    CfQ4,
}

use FamilyId::*;

impl FamilyId {
    pub const ALL: [FamilyId; 31] = [
        TMain1, TMain2, TMain3, TMain4, TGuo5, TD1, TD2, TMore1, TMore2, TSix5, TSix1, PA1, PA2,
        PB1, PB2, PM1, PM2, CRefine1, CRefine2, C123, CN123, C135, CN135, CL1, CL2, CL3, CL4,
        CfInd, CfInd2, CfD3a, CfQ4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TMain1 => "T_MAIN1",
            TMain2 => "T_MAIN2",
            TMain3 => "T_MAIN3",
            TMain4 => "T_MAIN4",
            TGuo5 => "T_GUO5",
            TD1 => "T_D1",
            TD2 => "T_D2",
            TMore1 => "T_MORE1",
            TMore2 => "T_MORE2",
            TSix5 => "T_SIX5",
            TSix1 => "T_SIX1",
            PA1 => "P_A1",
            PA2 => "P_A2",
            PB1 => "P_B1",
            PB2 => "P_B2",
            PM1 => "P_M1",
            PM2 => "P_M2",
            CRefine1 => "C_REFINE1",
            CRefine2 => "C_REFINE2",
            C123 => "C_123",
            CN123 => "C_N123",
            C135 => "C_135",
            CN135 => "C_N135",
            CL1 => "C_L1",
            CL2 => "C_L2",
            CL3 => "C_L3",
            CL4 => "C_L4",
            CfInd => "CF_IND",
            CfInd2 => "CF_IND2",
            CfD3a => "CF_D3A",
            CfQ4 => "CF_Q4",
        }
    }

    /// Sums with a live parameter `a`.
    pub fn is_parametric(self) -> bool {
        matches!(self, PA1 | PA2 | PB1 | PB2 | PM1 | PM2)
    }

    pub fn is_closed_form(self) -> bool {
        matches!(self, CfInd | CfInd2 | CfD3a | CfQ4)
    }

    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            CRefine1 | CRefine2 | C123 | CN123 | C135 | CN135 | CL1 | CL2 | CL3 | CL4
        )
    }

    /// Whether the family takes `r`.
    pub fn uses_r(self) -> bool {
        matches!(self, TMore1 | TMore2 | PM1 | PM2 | CL1 | CL2 | CL3 | CL4)
    }

    /// Whether the family takes `d`.
    pub fn uses_d(self) -> bool {
        !matches!(self, TMain3 | TMain4 | TGuo5 | TSix5 | TSix1) && !self.is_closed_form()
    }

    /// The sum whose partial sums a closed form evaluates.
    pub fn closed_form_sum(self) -> Option<(FamilyId, i64)> {
        match self {
            CfInd => Some((TMain3, 2)),
            CfInd2 => Some((TMain4, 3)),
            CfD3a => Some((PB2, 3)),
            CfQ4 => Some((CN135, 2)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Parameters of a family instance. `n` is carried for reports and for the
/// closed forms; term recipes depend only on `d`, `r` and `parametric`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub d: i64,
    pub r: Option<i64>,
    pub n: i64,
    /// Whether `a` stays live; otherwise it is set to 1.
    pub parametric: bool,
}

impl FamilyParams {
    pub fn new(d: i64, r: Option<i64>, n: i64) -> Self {
        FamilyParams {
            d,
            r,
            n,
            parametric: true,
        }
    }

    pub fn with_n(self, n: i64) -> Self {
        FamilyParams { n, ..self }
    }

    pub fn at_a_equal_one(self) -> Self {
        FamilyParams {
            parametric: false,
            ..self
        }
    }
}

fn invalid(family: FamilyId, hypothesis: impl Into<String>) -> Error {
    Error::InvalidParams {
        family: family.as_str().into(),
        hypothesis: hypothesis.into(),
    }
}

/// Checks the family's hypotheses on `d` and `r` and fills in the fixed
/// values of families such as T_GUO5.
pub fn validate(family: FamilyId, params: &FamilyParams) -> Result<FamilyParams> {
    let mut p = *params;
    let need = |ok: bool, hyp: &str| {
        if ok {
            Ok(())
        } else {
            Err(invalid(family, hyp))
        }
    };
    let odd = p.d % 2 != 0;
    match family {
        TMain1 | PA1 | CRefine1 => need(odd && p.d >= 5, "d >= 5 odd")?,
        CRefine2 => need(odd && p.d >= 5, "d >= 5 odd")?,
        TMain2 | PA2 | PB1 | PB2 => need(odd && p.d >= 3, "d >= 3 odd")?,
        TD1 => need(p.d >= 3, "d >= 3")?,
        TD2 => need(p.d >= 2, "d >= 2")?,
        TMore1 | PM1 => {
            let r = p.r.ok_or_else(|| invalid(family, "r required"))?;
            need(p.d >= 3, "d >= 3")?;
            need(r != 0 && r.abs() < p.d, "r != 0 and |r| < d")?;
            need(2 * r != p.d && 2 * r != -p.d, "2r != +-d")?;
        }
        TMore2 | PM2 => {
            let r = p.r.ok_or_else(|| invalid(family, "r required"))?;
            need(p.d >= 3, "d >= 3")?;
            need(0 < r && r < p.d, "0 < r < d")?;
            need(2 * r != p.d, "2r != d")?;
        }
        C123 | C135 => need(p.d >= 3, "d >= 3")?,
        CN123 | CN135 => need(p.d >= 2, "d >= 2")?,
        CL1 | CL3 | CL2 | CL4 => {
            let r = p.r.ok_or_else(|| invalid(family, "r required"))?;
            need(p.d >= 1 && r >= 1, "d, r positive")?;
            if matches!(family, CL1 | CL3) {
                need(p.d * r >= 3, "dr >= 3")?;
            } else {
                need(p.d * r >= 2, "dr >= 2")?;
            }
        }
        TMain3 => p.d = 2,
        TMain4 => p.d = 3,
        TGuo5 => p.d = 5,
        TSix5 | TSix1 => {
            p.d = 6;
            p.r = Some(1);
        }
        CfInd => {
            p.d = 2;
            need(p.n > 1, "N > 1")?;
        }
        CfInd2 => {
            p.d = 3;
            need(p.n >= 1, "n >= 1")?;
        }
        CfD3a => {
            p.d = 3;
            need(p.n >= 1, "n >= 1")?;
        }
        CfQ4 => {
            p.d = 4;
            need(p.n >= 1, "n >= 1")?;
        }
    }
    if !family.uses_r() && !matches!(family, TSix5 | TSix1) {
        p.r = None;
    }
    if !family.is_parametric() {
        p.parametric = false;
    }
    Ok(p)
}

/// Numerator or denominator position of a Pochhammer factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Numerator,
    Denominator,
}

/// `(arg; q^base)_k^power` in the given position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorSpec {
    pub arg: MonomialArg,
    pub base: i64,
    pub power: u32,
    pub position: Position,
}

/// The q-integer `[slope·k + offset]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub slope: i64,
    pub offset: i64,
}

/// `pref(k) · Π factors · q^(q_slope·k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermRecipe {
    pub factors: Vec<FactorSpec>,
    pub prefactor: Option<Prefactor>,
    pub q_slope: i64,
}

impl TermRecipe {
    fn new(prefactor: Option<Prefactor>, q_slope: i64) -> Self {
        TermRecipe {
            factors: Vec::new(),
            prefactor,
            q_slope,
        }
    }

    fn num(mut self, a: i64, q: i64, base: i64, power: u32) -> Self {
        let arg = MonomialArg::new(a, q);
        self.factors.push(FactorSpec {
            arg,
            base,
            power,
            position: Position::Numerator,
        });
        self
    }

    fn den(mut self, a: i64, q: i64, base: i64, power: u32) -> Self {
        let arg = MonomialArg::new(a, q);
        self.factors.push(FactorSpec {
            arg,
            base,
            power,
            position: Position::Denominator,
        });
        self
    }

    /// The recipe after `a -> q^m`.
    pub fn at_a(&self, m: i64) -> Self {
        let factors = self
            .factors
            .iter()
            .map(|f| FactorSpec {
                arg: f.arg.at_a(m),
                ..*f
            })
            .collect();
        TermRecipe {
            factors,
            ..self.clone()
        }
    }

    pub fn is_univariate(&self) -> bool {
        self.factors.iter().all(|f| f.arg.is_univariate())
    }
}

fn half(family: FamilyId, x: i64) -> Result<i64> {
    if x % 2 != 0 {
        return Err(invalid(family, format!("exponent {x}/2 is not an integer")));
    }
    Ok(x / 2)
}

/// Builds the recipe of a sum family. Closed-form ids yield the recipe of
/// the sum they evaluate.
pub fn recipe(family: FamilyId, params: &FamilyParams) -> Result<TermRecipe> {
    let p = validate(family, params)?;
    let (d, r) = (p.d, p.r.unwrap_or(0));
    let mut rec = match family {
        TMain1 | TGuo5 | CRefine1 => TermRecipe::new(
            Some(Prefactor {
                slope: 2 * d,
                offset: 1,
            }),
            half(family, d * (d - 3))?,
        )
        .num(0, 1, d, d as u32)
        .den(0, d, d, d as u32),
        TMain2 | CRefine2 => TermRecipe::new(
            Some(Prefactor {
                slope: 2 * d,
                offset: -1,
            }),
            half(family, d * (d - 1))?,
        )
        .num(0, -1, d, d as u32)
        .den(0, d, d, d as u32),
        TMain3 | CfInd => TermRecipe::new(None, 2).num(0, -1, 2, 2).den(0, 2, 2, 2),
        TMain4 | CfInd2 => TermRecipe::new(None, 3)
            .num(0, -1, 3, 1)
            .num(0, -2, 3, 1)
            .den(0, 3, 3, 2),
        TD1 => TermRecipe::new(None, d)
            .num(0, 1, d, d as u32)
            .den(0, d, d, d as u32),
        TD2 => TermRecipe::new(None, d)
            .num(0, -1, d, d as u32)
            .den(0, d, d, d as u32),
        TMore1 | TSix5 => TermRecipe::new(None, d)
            .num(0, r, d, 2)
            .num(0, d - 2 * r, d, 1)
            .den(0, d, d, 3),
        TMore2 | TSix1 => TermRecipe::new(None, d)
            .num(0, -r, d, 2)
            .num(0, 2 * r - d, d, 1)
            .den(0, d, d, 3),
        PA1 | PA2 | PB1 | PB2 | CfD3a => {
            let (shift, pref, slope) = if matches!(family, PA1 | PA2) {
                (
                    1,
                    Prefactor {
                        slope: 2 * d,
                        offset: 1,
                    },
                    half(family, d * (d - 3))?,
                )
            } else {
                (
                    -1,
                    Prefactor {
                        slope: 2 * d,
                        offset: -1,
                    },
                    half(family, d * (d - 1))?,
                )
            };
            // P_A1/P_B1 use a^(d-1), ..., a^2; P_A2/P_B2 use a^(d-2), ..., a
            let top = if matches!(family, PA1 | PB1) {
                d - 1
            } else {
                d - 2
            };
            let mut rec = TermRecipe::new(Some(pref), slope);
            let mut e = top;
            while e >= 1 {
                rec = rec.num(e, shift, d, 1).num(-e, shift, d, 1);
                e -= 2;
            }
            rec = rec.num(0, shift, d, 1);
            let mut e = d - 2;
            while e >= 1 {
                rec = rec.den(e, d, d, 1).den(-e, d, d, 1);
                e -= 2;
            }
            rec.den(0, d, d, 1)
        }
        PM1 => TermRecipe::new(None, d)
            .num(d - 1, r, d, 1)
            .num(1 - d, r, d, 1)
            .num(0, d - 2 * r, d, 1)
            .den(d - 2, d, d, 1)
            .den(2 - d, d, d, 1)
            .den(0, d, d, 1),
        PM2 => TermRecipe::new(None, d)
            .num(d - 1, -r, d, 1)
            .num(1 - d, -r, d, 1)
            .num(0, 2 * r - d, d, 1)
            .den(d - 2, d, d, 1)
            .den(2 - d, d, d, 1)
            .den(0, d, d, 1),
        C123 | CN123 | CL1 | CL2 => {
            let pow = if matches!(family, CL1 | CL2) { r } else { 1 };
            let m = half(family, d * (d + 1) * pow)?;
            let sign = if matches!(family, C123 | CL1) { 1 } else { -1 };
            let mut rec = TermRecipe::new(None, m);
            for i in 1..=d {
                rec = rec.num(0, sign * i, m, pow as u32);
            }
            rec.den(0, m, m, (d * pow) as u32)
        }
        C135 | CN135 | CL3 | CL4 | CfQ4 => {
            let (d, pow) = match family {
                CfQ4 => (2, 1),
                CL3 | CL4 => (d, r),
                _ => (d, 1),
            };
            let m = d * d * pow;
            let sign = if matches!(family, C135 | CL3) { 1 } else { -1 };
            let mut rec = TermRecipe::new(None, m);
            for i in 1..=d {
                rec = rec.num(0, sign * (2 * i - 1), m, pow as u32);
            }
            rec.den(0, m, m, (d * pow) as u32)
        }
    };
    if family.is_parametric() && !p.parametric {
        rec = rec.at_a(0);
    }
    Ok(rec)
}

/// The `k`-th summand as a two-variable rational function.
pub fn term(family: FamilyId, params: &FamilyParams, k: u64) -> Result<BiRatFunc> {
    let rec = recipe(family, params)?;
    let mut num = BiLaurent::one();
    let mut den = BiLaurent::one();
    for f in &rec.factors {
        let p = q_poch(f.arg, f.base, k).pow(f.power);
        match f.position {
            Position::Numerator => num = &num * &p,
            Position::Denominator => den = &den * &p,
        }
    }
    if let Some(pref) = rec.prefactor {
        num = &num * &BiLaurent::from(&qint_poly(pref.slope * k as i64 + pref.offset));
    }
    num = num.shift(0, rec.q_slope * k as i64);
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("{family} term {k}")));
    }
    BiRatFunc::new(num, den)
}

/// `Σ_{k=0}^{upto} term(k)`, accumulated over a common denominator.
pub fn partial_sum(family: FamilyId, params: &FamilyParams, upto: u64) -> Result<BiRatFunc> {
    partial_sum_exact(family, params, upto)?.to_biratfunc()
}

/// [`partial_sum`] in factored form.
pub fn partial_sum_exact(
    family: FamilyId,
    params: &FamilyParams,
    upto: u64,
) -> Result<FactoredSum> {
    let rec = recipe(family, params)?;
    FactoredSum::of_plan(&SumPlan::new(&rec, upto))
}

/// `Σ_{k=0}^{upto}` of the family's terms with `a = q^m` substituted factor
/// by factor, so that vanishing numerators give exact zeros.
pub fn specialize_a(
    family: FamilyId,
    params: &FamilyParams,
    upto: u64,
    m: i64,
) -> Result<FactoredSum> {
    let rec = recipe(family, params)?.at_a(m);
    FactoredSum::of_plan(&SumPlan::new(&rec, upto))
}

/// The univariate partial sum as a canonical rational function; for small
/// instances and tests.
pub fn partial_sum_univariate(
    family: FamilyId,
    params: &FamilyParams,
    upto: u64,
) -> Result<crate::algebra::RatFunc> {
    let s = partial_sum_exact(family, params, upto)?;
    s.to_ratfunc()
}
