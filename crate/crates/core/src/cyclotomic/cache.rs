use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use super::divisors;
use crate::algebra::{LaurentPoly, ZLaurent};
use crate::error::{Error, Result};

/// Table of cyclotomic polynomials `n -> Φ_n(q)`.
///
/// This is the one piece of shared mutable state in the crate. Reads take a
/// shared lock; a miss computes outside the lock and inserts under the write
/// lock, so concurrent workers may race to compute the same entry but always
/// agree on its value.
#[derive(Debug, Default)]
pub struct CycloCache {
    table: RwLock<HashMap<u64, Arc<ZLaurent>>>,
    disk: Option<PathBuf>,
}

/// Cache file name inside a cache directory.
pub const CACHE_FILE: &str = "phi.txt";

impl CycloCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used when callers do not supply one.
    pub fn global() -> &'static CycloCache {
        static GLOBAL: OnceLock<CycloCache> = OnceLock::new();
        GLOBAL.get_or_init(CycloCache::new)
    }

    /// A cache backed by `dir/phi.txt`; existing entries are loaded lazily
    /// on first lookup miss.
    pub fn with_dir(dir: impl AsRef<Path>) -> Self {
        CycloCache {
            table: RwLock::default(),
            disk: Some(dir.as_ref().join(CACHE_FILE)),
        }
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Φ_n` as a dense integer polynomial (ordinary, monic).
    pub fn phi_z(&self, n: u64) -> Result<Arc<ZLaurent>> {
        if n < 1 {
            return Err(Error::Domain("cyclotomic index must be >= 1".into()));
        }
        if let Some(p) = self.table.read().unwrap().get(&n) {
            return Ok(p.clone());
        }
        if let Some(path) = &self.disk {
            if path.exists() && self.table.read().unwrap().is_empty() {
                let loaded = read_table(path)?;
                let mut t = self.table.write().unwrap();
                for (k, v) in loaded {
                    t.entry(k).or_insert_with(|| Arc::new(v));
                }
                if let Some(p) = t.get(&n) {
                    return Ok(p.clone());
                }
            }
        }
        // q^n - 1 divided by Φ_d for every proper divisor d
        let mut acc = ZLaurent::one_minus(n as i64).neg();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let f = self.phi_z(d)?;
            let (quot, rem) = acc.divrem_monic(&f);
            if !rem.is_zero() {
                return Err(Error::InexactDivision(format!("Phi_{n} by Phi_{d}")));
            }
            acc = quot;
        }
        let arc = Arc::new(acc);
        self.table
            .write()
            .unwrap()
            .entry(n)
            .or_insert_with(|| arc.clone());
        Ok(arc)
    }

    pub fn phi(&self, n: u64) -> Result<LaurentPoly> {
        Ok(self.phi_z(n)?.to_laurent())
    }

    /// Writes every cached entry to the backing file, atomically
    /// (temporary file + rename). No-op without a cache directory.
    pub fn persist(&self) -> Result<()> {
        let Some(path) = &self.disk else {
            return Ok(());
        };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut entries: Vec<(u64, Arc<ZLaurent>)> = self
            .table
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        if path.exists() {
            for (k, v) in read_table(path)? {
                if !entries.iter().any(|(e, _)| *e == k) {
                    entries.push((k, Arc::new(v)));
                }
            }
        }
        entries.sort_by_key(|(k, _)| *k);
        let tmp = path.with_extension("txt.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            for (n, p) in &entries {
                writeln!(f, "{}", format_entry(*n, p))?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// One cache line: `n` followed by the coefficients from the constant term
/// upward, separated by single spaces. `Φ_6` is `6 1 -1 1`.
pub fn format_entry(n: u64, p: &ZLaurent) -> String {
    let mut s = n.to_string();
    let deg = p.max_exp().unwrap_or(0);
    for e in 0..=deg {
        s.push(' ');
        s.push_str(&p.coeff(e).to_string());
    }
    s
}

pub fn parse_entry(line: &str) -> Result<(u64, ZLaurent)> {
    let mut it = line.split_whitespace();
    let n: u64 = it
        .next()
        .ok_or_else(|| Error::Parse("empty cache line".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad index: {e}")))?;
    let coeffs: Vec<BigInt> = it
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
        })
        .collect::<Result<_>>()?;
    if coeffs.last().is_none_or(|c| !c.is_one()) {
        return Err(Error::Parse(format!("Phi_{n} entry is not monic")));
    }
    if coeffs.first().is_some_and(|c| c.is_zero()) {
        return Err(Error::Parse(format!(
            "Phi_{n} entry has zero constant term"
        )));
    }
    Ok((n, ZLaurent::from_coeffs(0, coeffs)))
}

fn read_table(path: &Path) -> Result<Vec<(u64, ZLaurent)>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(parse_entry)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_format_roundtrip() {
        let cache = CycloCache::new();
        let p6 = cache.phi_z(6).unwrap();
        assert_eq!(format_entry(6, &p6), "6 1 -1 1");
        let (n, back) = parse_entry("6 1 -1 1").unwrap();
        assert_eq!((n, back), (6, (*p6).clone()));
        assert!(parse_entry("4 1 0 2").is_err());
        assert!(parse_entry("").is_err());
    }

    #[test]
    fn disk_cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CycloCache::with_dir(dir.path());
        for n in 1..=30 {
            cache.phi_z(n).unwrap();
        }
        cache.persist().unwrap();
        let text = fs::read_to_string(dir.path().join(CACHE_FILE)).unwrap();
        assert_eq!(text.lines().count(), 30);
        assert!(text.lines().any(|l| l == "1 -1 1"));

        let reloaded = CycloCache::with_dir(dir.path());
        assert_eq!(
            reloaded.phi_z(12).unwrap(),
            CycloCache::new().phi_z(12).unwrap()
        );
        assert_eq!(reloaded.len(), 30);
    }
}
