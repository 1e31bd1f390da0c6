//! The `qcong` command line: verification campaigns over theorem claims,
//! conjecture exploration, identity checks and the catalog dump.
//!
//! Report lines go to `--out` or stdout; notices and summaries go to stderr.
//! Exit status is 0 when nothing failed, 1 on a failing claim or identity,
//! and 2 on a usage or configuration error.

pub mod campaign;
pub mod config;
pub mod identity;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use campaign::{plan, Mode, Plan, Task};
pub use config::{
    parse_families, parse_int_set, parse_truncations, resolve, CampaignConfig, Overrides,
};
pub use identity::{run_identity, Which};

use crate::catalog::{dump_catalog, dump_family, sample_params, FamilyId, FamilyParams};
use crate::cyclotomic::CycloCache;
use crate::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "qcong",
    version,
    about = "Exact checks of q-supercongruences for truncated q-hypergeometric sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every theorem claim in range.
    Verify(CampaignArgs),
    /// Measure valuations of conjecture instances.
    Explore(CampaignArgs),
    /// Check an identity over a range.
    Identity(IdentityArgs),
    /// Print the family table.
    DumpCatalog(DumpArgs),
}

#[derive(Args, Debug, Default)]
struct CampaignArgs {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated family names, e.g. T_MAIN1,P_A2.
    #[arg(long)]
    families: Option<String>,
    /// Values of d: `5`, `3..7` or `3,5,7`.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Values of r, same syntax as --d.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long)]
    n_max: Option<i64>,
    /// `n-1`, `(n+1)/2`, or `all`.
    #[arg(long)]
    truncation: Option<String>,
    /// auto, full, residue or both.
    #[arg(long)]
    backend: Option<String>,
    /// Run both backends on claims with n <= 12.
    #[arg(long, overrides_with = "no_cross_check")]
    cross_check: bool,
    #[arg(long)]
    no_cross_check: bool,
    #[arg(long)]
    jobs: Option<usize>,
    /// Report file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for the persistent cyclotomic table.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Fill the ms field with wall-clock times.
    #[arg(long)]
    timings: bool,
}

impl CampaignArgs {
    fn overrides(self) -> Overrides {
        let cross_check = if self.cross_check {
            Some(true)
        } else if self.no_cross_check {
            Some(false)
        } else {
            None
        };
        Overrides {
            families: self.families,
            d: self.d,
            r: self.r,
            n_max: self.n_max,
            truncation: self.truncation,
            backend: self.backend,
            cross_check,
            out: self.out,
            jobs: self.jobs,
            cache_dir: self.cache_dir,
            timings: self.timings.then_some(true),
        }
    }
}

#[derive(Args, Debug)]
struct IdentityArgs {
    /// CF_IND, CF_IND2, CF_D3A, CF_Q4, QBINO, ANDREWS or CATALAN.
    which: String,
    /// Upper end of the range (n, or N for ANDREWS and CATALAN).
    #[arg(long)]
    n_max: Option<i64>,
    /// Largest m for ANDREWS.
    #[arg(long, default_value_t = 3)]
    m_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DumpArgs {
    #[arg(long)]
    families: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command, writing to the
/// given streams. Returns the exit status.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// Entry point of the binary.
pub fn main_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Verify(a) => campaign_cmd(a, Mode::Verify, stdout, stderr),
        Command::Explore(a) => campaign_cmd(a, Mode::Explore, stdout, stderr),
        Command::Identity(a) => identity_cmd(a, stdout, stderr),
        Command::DumpCatalog(a) => dump_cmd(a, stdout),
    }
}

/// Writes to the file (via a temporary and a rename) or to `stdout`.
fn emit(path: Option<&PathBuf>, text: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => {
            let tmp = p.with_extension("partial");
            fs::write(&tmp, text)?;
            fs::rename(&tmp, p)?;
        }
        None => stdout.write_all(text)?,
    }
    Ok(())
}

fn campaign_cmd(
    args: CampaignArgs,
    mode: Mode,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let config_file = args.config.clone();
    let cfg = resolve(config_file.as_deref(), args.overrides())?;
    let cache = match &cfg.cache_dir {
        Some(dir) => CycloCache::with_dir(dir),
        None => CycloCache::new(),
    };
    let plan = plan(&cfg, mode);
    for note in &plan.notes {
        writeln!(stderr, "note: {note}")?;
    }
    if plan.tasks.is_empty() {
        writeln!(
            stderr,
            "no claims: the ranges and residue classes have no instance in common"
        )?;
        emit(cfg.out.as_ref(), b"", stdout)?;
        return Ok(0);
    }
    let outcome = campaign::run(&cfg, &plan, &cache)?;
    let mut buf = Vec::new();
    campaign::write_reports(&mut buf, &outcome.reports, cfg.timings)?;
    emit(cfg.out.as_ref(), &buf, stdout)?;
    cache.persist()?;

    for (task, e) in &outcome.errors {
        writeln!(stderr, "{}", campaign::task_error_line(task, e))?;
    }
    let failures: Vec<_> = outcome.failures().collect();
    let skipped = outcome
        .reports
        .iter()
        .filter(|r| !r.verdict.is_pass() && !r.verdict.is_fail())
        .count();
    writeln!(
        stderr,
        "{} instances: {} pass, {} fail, {} skipped, {} errors",
        outcome.reports.len() + outcome.errors.len(),
        outcome.reports.len() - failures.len() - skipped,
        failures.len(),
        skipped,
        outcome.errors.len()
    )?;
    if mode == Mode::Explore {
        for line in campaign::min_observed_summary(&outcome.reports) {
            writeln!(stderr, "{line}")?;
        }
        for f in &failures {
            writeln!(stderr, "counterexample candidate: {}", f.to_line(false))?;
            writeln!(stderr, "  reproduce: {}", campaign::reproduction(f, mode))?;
        }
    } else if let Some(first) = failures.first() {
        writeln!(stderr, "first failing claim: {}", first.to_line(false))?;
        writeln!(
            stderr,
            "  reproduce: {}",
            campaign::reproduction(first, mode)
        )?;
    }
    Ok(if outcome.ok() { 0 } else { 1 })
}

fn identity_cmd(args: IdentityArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let which: Which = args.which.parse()?;
    let max = args.n_max.unwrap_or(which.default_max());
    let mut buf = Vec::new();
    let ok = run_identity(which, max, args.m_max, &mut buf)?;
    emit(args.out.as_ref(), &buf, stdout)?;
    if !ok {
        writeln!(stderr, "{which}: at least one instance is unequal")?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn dump_cmd(args: DumpArgs, stdout: &mut dyn Write) -> Result<i32> {
    let text = if args.families.is_none() && args.d.is_none() && args.r.is_none() {
        dump_catalog()?
    } else {
        let families = match &args.families {
            Some(f) => parse_families(f)?,
            None => FamilyId::ALL.to_vec(),
        };
        let ds = args.d.as_deref().map(parse_int_set).transpose()?;
        let rs = args.r.as_deref().map(parse_int_set).transpose()?;
        let mut out = String::new();
        for family in families {
            let sample = sample_params(family);
            let d_list = ds.clone().unwrap_or_else(|| vec![sample.d]);
            let r_list: Vec<Option<i64>> = match (&rs, family.uses_r()) {
                (Some(rs), true) => rs.iter().map(|&r| Some(r)).collect(),
                _ => vec![sample.r],
            };
            for &d in &d_list {
                for &r in &r_list {
                    // ranges span families, so inadmissible pairs are skipped
                    let _ = dump_family(&mut out, family, &FamilyParams::new(d, r, sample.n));
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Precondition(
                "no admissible family parameters in range".into(),
            ));
        }
        out
    };
    emit(args.out.as_ref(), text.as_bytes(), stdout)?;
    Ok(0)
}
