use std::fmt;

use super::{validate, FamilyId, FamilyParams};
use crate::error::Result;

use FamilyId::*;

/// Upper summation index as a function of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Truncation {
    /// `n - 1`
    Full,
    /// `(n + 1)/2`, inclusive
    Half,
}

impl Truncation {
    pub fn upto(self, n: i64) -> u64 {
        match self {
            Truncation::Full => (n - 1).max(0) as u64,
            Truncation::Half => ((n + 1) / 2).max(0) as u64,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truncation::Full => "n-1",
            Truncation::Half => "(n+1)/2",
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModulusKind {
    PhiPower(u32),
    QIntSquare,
    /// `(1 - a q^n)(a - q^n)`
    BivarProduct,
    /// `Φ_n(q)(1 - a q^n)(a - q^n)`
    PhiTimesBivar,
}

impl ModulusKind {
    /// Power of `Φ_n` the modulus carries.
    pub fn phi_exponent(self) -> u32 {
        match self {
            ModulusKind::PhiPower(e) => e,
            ModulusKind::QIntSquare => 2,
            ModulusKind::BivarProduct => 0,
            ModulusKind::PhiTimesBivar => 1,
        }
    }
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusKind::PhiPower(e) => write!(f, "Phi_n^{e}"),
            ModulusKind::QIntSquare => f.write_str("[n]^2"),
            ModulusKind::BivarProduct => f.write_str("(1-aq^n)(a-q^n)"),
            ModulusKind::PhiTimesBivar => f.write_str("Phi_n(1-aq^n)(a-q^n)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Theorem,
    Conjecture,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Theorem => "theorem",
            Status::Conjecture => "conjecture",
        })
    }
}

/// `mult · n ≡ residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueCondition {
    pub mult: i64,
    pub residue: i64,
    pub modulus: i64,
}

impl ResidueCondition {
    pub fn new(mult: i64, residue: i64, modulus: i64) -> Self {
        ResidueCondition {
            mult,
            residue,
            modulus,
        }
    }

    pub fn holds(&self, n: i64) -> bool {
        (self.mult * n - self.residue).rem_euclid(self.modulus) == 0
    }
}

impl fmt::Display for ResidueCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = if self.mult == 1 {
            "n".to_string()
        } else {
            format!("{}n", self.mult)
        };
        write!(f, "{lhs}={} mod {}", self.residue, self.modulus)
    }
}

/// One congruence obligation of a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Claim {
    pub family: FamilyId,
    pub params: FamilyParams,
    pub modulus_kind: ModulusKind,
    pub condition: Option<ResidueCondition>,
    pub min_n: i64,
    /// `gcd(n, c) = 1` is required.
    pub coprime_to: Option<i64>,
    pub odd_only: bool,
    pub truncation: Truncation,
    pub status: Status,
}

impl Claim {
    fn new(family: FamilyId, params: FamilyParams, modulus_kind: ModulusKind) -> Self {
        let status = if family.is_conjecture() {
            Status::Conjecture
        } else {
            Status::Theorem
        };
        Claim {
            family,
            params,
            modulus_kind,
            condition: None,
            min_n: 2,
            coprime_to: None,
            odd_only: false,
            truncation: Truncation::Full,
            status,
        }
    }

    fn when(mut self, mult: i64, residue: i64, modulus: i64) -> Self {
        self.condition = Some(ResidueCondition::new(mult, residue, modulus));
        self
    }

    fn from_n(mut self, min_n: i64) -> Self {
        self.min_n = self.min_n.max(min_n);
        self
    }

    /// Whether the claim covers `n`.
    pub fn applies(&self, n: i64) -> bool {
        n >= self.min_n
            && self.condition.map_or(true, |c| c.holds(n))
            && self
                .coprime_to
                .map_or(true, |c| num_integer::gcd(n, c) == 1)
            && (!self.odd_only || n % 2 != 0)
    }

    /// Required power of `Φ_n`; the bivariate factors are checked separately.
    pub fn required(&self) -> u32 {
        self.modulus_kind.phi_exponent()
    }

    /// The instance parameters for a given `n`.
    pub fn params_at(&self, n: i64) -> FamilyParams {
        self.params.with_n(n)
    }

    pub fn describe_condition(&self) -> String {
        let mut parts = Vec::new();
        if let Some(c) = self.condition {
            parts.push(c.to_string());
        }
        if let Some(c) = self.coprime_to {
            parts.push(format!("gcd(n,{c})=1"));
        }
        if self.odd_only {
            parts.push("n odd".into());
        }
        parts.push(format!("n>={}", self.min_n));
        parts.join(", ")
    }
}

/// Every congruence the paper states for the family at the given `d`, `r`.
/// Closed forms carry none.
pub fn claims_for(family: FamilyId, params: &FamilyParams) -> Result<Vec<Claim>> {
    use ModulusKind::*;
    let p = validate(family, params)?.with_n(0);
    let (d, r) = (p.d, p.r.unwrap_or(0));
    let c = |m| Claim::new(family, p, m);
    let claims = match family {
        TMain1 | TGuo5 => vec![c(PhiPower(2)).when(1, -1, d), c(PhiPower(3)).when(2, -1, d)],
        CRefine1 => vec![c(PhiPower(3)).when(1, -1, d), c(PhiPower(4)).when(2, -1, d)],
        TMain2 => {
            let mut v = vec![c(PhiPower(2)).when(1, 1, d), c(PhiPower(3)).when(2, 1, d)];
            if d == 3 {
                v.push(c(PhiPower(3)).when(1, 1, 3));
            }
            v
        }
        CRefine2 => vec![c(PhiPower(3)).when(1, 1, d), c(PhiPower(4)).when(2, 1, d)],
        TMain3 => [Truncation::Full, Truncation::Half]
            .into_iter()
            .map(|t| Claim {
                odd_only: true,
                truncation: t,
                ..c(QIntSquare).from_n(3)
            })
            .collect(),
        TMain4 => vec![Claim {
            coprime_to: Some(3),
            ..c(PhiPower(2)).from_n(4)
        }],
        TD1 => vec![c(PhiPower(2)).when(1, -1, d)],
        TD2 => vec![c(PhiPower(2)).when(1, 1, d)],
        TMore1 | TSix5 => vec![c(PhiPower(2)).when(1, -r, d).from_n(d - r)],
        TMore2 | TSix1 => vec![c(PhiPower(2)).when(1, r, d).from_n(d + r)],
        PA1 => vec![c(BivarProduct).when(1, -1, d)],
        PA2 => vec![c(PhiTimesBivar).when(2, -1, d)],
        PB1 => vec![c(BivarProduct).when(1, 1, d)],
        PB2 => vec![c(PhiTimesBivar).when(2, 1, d)],
        PM1 => vec![c(BivarProduct).when(1, -r, d).from_n(d - r)],
        PM2 => vec![c(BivarProduct).when(1, r, d).from_n(d + r)],
        C123 => vec![c(PhiPower(2)).when(1, -1, d * (d + 1) / 2)],
        CN123 => vec![c(PhiPower(2)).when(1, 1, d * (d + 1) / 2)],
        C135 => vec![c(PhiPower(2)).when(1, -1, d * d)],
        CN135 => vec![c(PhiPower(2)).when(1, 1, d * d)],
        CL1 => vec![c(PhiPower(2)).when(1, -1, d * (d + 1) * r / 2)],
        CL2 => vec![c(PhiPower(2)).when(1, 1, d * (d + 1) * r / 2)],
        CL3 => vec![c(PhiPower(2)).when(1, -1, d * d * r)],
        CL4 => vec![c(PhiPower(2)).when(1, 1, d * d * r)],
        CfInd | CfInd2 | CfD3a | CfQ4 => Vec::new(),
    };
    Ok(claims)
}
