use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::catalog::{CfIndBracket, FamilyId};
use crate::error::{Error, Result};
use crate::verify::{
    andrews_grid, cf_ind_matches, check_catalan, check_closed_form, check_qbino,
    resolve_cf_ind_bracket,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    CfInd,
    CfInd2,
    CfD3a,
    CfQ4,
    Qbino,
    Andrews,
    Catalan,
}

impl Which {
    pub const ALL: [Which; 7] = [
        Which::CfInd,
        Which::CfInd2,
        Which::CfD3a,
        Which::CfQ4,
        Which::Qbino,
        Which::Andrews,
        Which::Catalan,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Which::CfInd => "CF_IND",
            Which::CfInd2 => "CF_IND2",
            Which::CfD3a => "CF_D3A",
            Which::CfQ4 => "CF_Q4",
            Which::Qbino => "QBINO",
            Which::Andrews => "ANDREWS",
            Which::Catalan => "CATALAN",
        }
    }

    /// Default upper end of the range (`N` for ANDREWS).
    pub fn default_max(self) -> i64 {
        match self {
            Which::CfInd | Which::CfD3a => 20,
            Which::CfInd2 | Which::CfQ4 | Which::Qbino => 30,
            Which::Andrews => 3,
            Which::Catalan => 200,
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Which::ALL
            .into_iter()
            .find(|w| w.as_str() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "equal"
    } else {
        "unequal"
    }
}

/// Writes one line per instance; returns whether every instance held.
pub fn run_identity(which: Which, max: i64, m_max: usize, out: &mut dyn Write) -> Result<bool> {
    let id = which.as_str();
    let mut all = true;
    let mut emit = |line: String, ok: bool| -> Result<()> {
        all &= ok;
        writeln!(out, "{line}")?;
        Ok(())
    };
    match which {
        Which::CfInd => {
            if max < 2 {
                return Err(Error::Precondition("CF_IND needs N >= 2".into()));
            }
            let derived = resolve_cf_ind_bracket(max.min(10))?;
            let paper_ok = (2..=max.min(10))
                .all(|n| cf_ind_matches(n, CfIndBracket::PAPER_TEXT).unwrap_or(false));
            emit(
                format!(
                    "identity={id} derived_bracket={} paper_text_bracket={} paper_text_matches={paper_ok}",
                    derived.describe(),
                    CfIndBracket::PAPER_TEXT.describe()
                ),
                true,
            )?;
            for n in 2..=max {
                let ok = cf_ind_matches(n, derived)?;
                emit(format!("identity={id} N={n} verdict={}", verdict(ok)), ok)?;
            }
        }
        Which::CfInd2 | Which::CfD3a | Which::CfQ4 => {
            let family: FamilyId = id.parse()?;
            for n in 1..=max {
                let ok = check_closed_form(family, n)?;
                emit(format!("identity={id} n={n} verdict={}", verdict(ok)), ok)?;
            }
        }
        Which::Qbino => {
            for n in 1..=max {
                for j in 0..n {
                    let ok = check_qbino(n, j)?;
                    emit(
                        format!(
                            "identity={id} n={n} j={j} verdict={}",
                            if ok { "zero" } else { "nonzero" }
                        ),
                        ok,
                    )?;
                }
            }
        }
        Which::Andrews => {
            for m in 1..=m_max {
                for big_n in 0..=max.max(0) as u64 {
                    let t = andrews_grid(m, big_n)?;
                    let ok = t.unequal == 0;
                    emit(
                        format!(
                            "identity={id} m={m} N={big_n} equal={} unequal={} degenerate={} verdict={}",
                            t.equal,
                            t.unequal,
                            t.degenerate,
                            verdict(ok)
                        ),
                        ok,
                    )?;
                }
            }
        }
        Which::Catalan => {
            for (i, ok) in check_catalan(max.max(0) as u64)?.into_iter().enumerate() {
                emit(
                    format!(
                        "identity={id} N={} verdict={}",
                        i + 1,
                        if ok { "divides" } else { "no" }
                    ),
                    ok,
                )?;
            }
        }
    }
    Ok(all)
}
