use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::catalog::{FamilyId, Truncation};
use crate::error::{Error, Result};
use crate::verify::BackendPolicy;

/// A resolved campaign. `None` ranges mean "the family's default".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub families: Vec<FamilyId>,
    pub d_range: Option<Vec<i64>>,
    pub r_range: Option<Vec<i64>>,
    pub n_max: i64,
    pub truncations: Option<Vec<Truncation>>,
    pub backend: BackendPolicy,
    pub cross_check: bool,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub timings: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            families: Vec::new(),
            d_range: None,
            r_range: None,
            n_max: 20,
            truncations: None,
            backend: BackendPolicy::Auto,
            cross_check: false,
            out: None,
            jobs: 1,
            cache_dir: None,
            timings: false,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 2 {
            return Err(Error::Parse("n_max must be >= 2".into()));
        }
        if self.jobs < 1 {
            return Err(Error::Parse("jobs must be >= 1".into()));
        }
        let empty = |v: &Option<Vec<i64>>| v.as_ref().is_some_and(|v| v.is_empty());
        if empty(&self.d_range) || empty(&self.r_range) {
            return Err(Error::Parse("ranges must be non-empty".into()));
        }
        if self.truncations.as_ref().is_some_and(|t| t.is_empty()) {
            return Err(Error::Parse("truncation list must be non-empty".into()));
        }
        Ok(())
    }

    pub fn allows(&self, t: Truncation) -> bool {
        self.truncations.as_ref().map_or(true, |ts| ts.contains(&t))
    }
}

/// Integers as `5`, `3..7` (inclusive) or comma-separated mixtures of both.
pub fn parse_int_set(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("bad integer range {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

pub fn parse_families(s: &str) -> Result<Vec<FamilyId>> {
    let mut out: Vec<FamilyId> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let f: FamilyId = part.parse()?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// `n-1`, `(n+1)/2`, their aliases `full` and `half`, or `all`.
pub fn parse_truncations(s: &str) -> Result<Vec<Truncation>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.to_ascii_lowercase().as_str() {
            "n-1" | "full" => out.push(Truncation::Full),
            "(n+1)/2" | "half" => out.push(Truncation::Half),
            "all" | "both" => out.extend([Truncation::Full, Truncation::Half]),
            _ => return Err(Error::Parse(format!("unknown truncation {part:?}"))),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntSpec {
    One(i64),
    List(Vec<i64>),
    Text(String),
}

impl IntSpec {
    fn resolve(self) -> Result<Vec<i64>> {
        match self {
            IntSpec::One(v) => Ok(vec![v]),
            IntSpec::List(mut v) => {
                v.sort_unstable();
                v.dedup();
                Ok(v)
            }
            IntSpec::Text(s) => parse_int_set(&s),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TextSpec {
    List(Vec<String>),
    Text(String),
}

impl TextSpec {
    fn joined(self) -> String {
        match self {
            TextSpec::List(v) => v.join(","),
            TextSpec::Text(s) => s,
        }
    }
}

/// The config file: every key optional, same meaning as the flag.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    families: Option<TextSpec>,
    d: Option<IntSpec>,
    r: Option<IntSpec>,
    n_max: Option<i64>,
    truncation: Option<TextSpec>,
    backend: Option<String>,
    cross_check: Option<bool>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    cache_dir: Option<PathBuf>,
    timings: Option<bool>,
}

/// Flag values as given on the command line, before merging.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub families: Option<String>,
    pub d: Option<String>,
    pub r: Option<String>,
    pub n_max: Option<i64>,
    pub truncation: Option<String>,
    pub backend: Option<String>,
    pub cross_check: Option<bool>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub timings: Option<bool>,
}

fn load_file(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// The config file (if any) with the flags applied on top.
pub fn resolve(config_file: Option<&Path>, flags: Overrides) -> Result<CampaignConfig> {
    let file = match config_file {
        Some(p) => load_file(p)?,
        None => FileConfig::default(),
    };
    let mut cfg = CampaignConfig::default();
    if let Some(f) = file.families {
        cfg.families = parse_families(&f.joined())?;
    }
    if let Some(d) = file.d {
        cfg.d_range = Some(d.resolve()?);
    }
    if let Some(r) = file.r {
        cfg.r_range = Some(r.resolve()?);
    }
    cfg.n_max = file.n_max.unwrap_or(cfg.n_max);
    if let Some(t) = file.truncation {
        cfg.truncations = Some(parse_truncations(&t.joined())?);
    }
    if let Some(b) = file.backend {
        cfg.backend = b.parse()?;
    }
    cfg.cross_check = file.cross_check.unwrap_or(cfg.cross_check);
    cfg.out = file.out.or(cfg.out);
    cfg.jobs = file.jobs.unwrap_or(cfg.jobs);
    cfg.cache_dir = file.cache_dir.or(cfg.cache_dir);
    cfg.timings = file.timings.unwrap_or(cfg.timings);

    if let Some(f) = flags.families {
        cfg.families = parse_families(&f)?;
    }
    if let Some(d) = flags.d {
        cfg.d_range = Some(parse_int_set(&d)?);
    }
    if let Some(r) = flags.r {
        cfg.r_range = Some(parse_int_set(&r)?);
    }
    cfg.n_max = flags.n_max.unwrap_or(cfg.n_max);
    if let Some(t) = flags.truncation {
        cfg.truncations = Some(parse_truncations(&t)?);
    }
    if let Some(b) = flags.backend {
        cfg.backend = b.parse()?;
    }
    cfg.cross_check = flags.cross_check.unwrap_or(cfg.cross_check);
    cfg.out = flags.out.or(cfg.out);
    cfg.jobs = flags.jobs.unwrap_or(cfg.jobs);
    cfg.cache_dir = flags.cache_dir.or(cfg.cache_dir);
    cfg.timings = flags.timings.unwrap_or(cfg.timings);
    cfg.validate()?;
    Ok(cfg)
}
