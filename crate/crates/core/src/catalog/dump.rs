use std::fmt::Write;

use super::{claims_for, recipe, validate, FamilyId, FamilyParams, Position};
use crate::error::Result;

use FamilyId::*;

/// A representative instance used when no `d`, `r` are given.
pub fn sample_params(family: FamilyId) -> FamilyParams {
    let (d, r) = match family {
        TMain1 | PA1 | CRefine1 | CRefine2 => (5, None),
        TMain2 | PA2 | PB1 | PB2 | TD1 | C123 | C135 => (3, None),
        TD2 | CN123 | CN135 => (2, None),
        TMore1 | TMore2 | PM1 | PM2 => (4, Some(1)),
        CL1 | CL3 => (3, Some(1)),
        CL2 | CL4 => (2, Some(1)),
        _ => (0, None),
    };
    let n = if family.is_closed_form() { 2 } else { 0 };
    FamilyParams::new(d, r, n)
}

/// The family table as structured text: one block per family with its
/// factors, prefactor, q-exponent and claims.
pub fn dump_catalog() -> Result<String> {
    let mut out = String::new();
    for family in FamilyId::ALL {
        dump_family(&mut out, family, &sample_params(family))?;
    }
    Ok(out)
}

pub fn dump_family(out: &mut String, family: FamilyId, params: &FamilyParams) -> Result<()> {
    let p = validate(family, params)?;
    let rec = recipe(family, &p)?;
    let _ = write!(out, "[{family}]\nd = {}\n", p.d);
    if let Some(r) = p.r {
        let _ = writeln!(out, "r = {r}");
    }
    let _ = writeln!(out, "parametric = {}", p.parametric);
    if let Some((sum, _)) = family.closed_form_sum() {
        let _ = writeln!(out, "evaluates = {sum}");
    }
    for f in &rec.factors {
        let side = match f.position {
            Position::Numerator => "num",
            Position::Denominator => "den",
        };
        let pow = if f.power == 1 {
            String::new()
        } else {
            format!("^{}", f.power)
        };
        let _ = writeln!(out, "{side} = ({}; q^{})_k{pow}", f.arg, f.base);
    }
    if let Some(pref) = rec.prefactor {
        let _ = writeln!(out, "prefactor = [{}k{:+}]", pref.slope, pref.offset);
    }
    let _ = writeln!(out, "q_exponent = {}k", rec.q_slope);
    for c in claims_for(family, &p)? {
        let _ = writeln!(
            out,
            "claim = {} | {} | truncation {} | {}",
            c.modulus_kind,
            c.describe_condition(),
            c.truncation,
            c.status
        );
    }
    out.push('\n');
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_is_listed() {
        let text = dump_catalog().unwrap();
        for f in FamilyId::ALL {
            assert!(text.contains(&format!("[{f}]")), "{f}");
        }
        assert!(text.contains("num = (q^1; q^5)_k^5"));
        assert!(text.contains("claim = Phi_n^3 | 2n=-1 mod 5, n>=2 | truncation n-1 | theorem"));
    }
}
