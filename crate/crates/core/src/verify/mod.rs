//! Turns catalog claims into reports with measured valuations.
//!
//! Every sum is `N / Π(1 - a^i q^j)` over the plan's denominator binomials.
//! A binomial `1 - q^j` carries exactly one `Φ_n` when `n | j` and none
//! otherwise, so `v(sum) = v(N) - V` with `V` counted from the plan. In
//! lowest terms the denominator is coprime to `Φ_n` iff `v(sum) >= 0`.

mod identities;
mod rings;

use std::fmt;
use std::time::{Duration, Instant};

pub use identities::{
    andrews_grid, cf_ind_matches, check_andrews, check_catalan, check_closed_form, check_lemma,
    check_prime_case, check_qbino, is_prime, prime_case_modulus, resolve_cf_ind_bracket,
    AndrewsTally, Lemma,
};
pub use rings::{ARows, CycloPolyA, LocalSum};

use crate::catalog::{
    accumulate, claims_for, recipe, specialize_a, Claim, FactoredSum, FamilyId, FamilyParams,
    ModulusKind, Status, SumPlan, Truncation,
};
use crate::cyclotomic::{divisors, val_phi_z, CycloCache, LocalRing, Valuation};
use crate::error::{Error, Result};

/// Full rational arithmetic is used when `d^2 n^2` stays below this.
pub const FULL_THRESHOLD: i64 = 20_000;
/// Claims with `n` up to this are run on both backends when cross-checking.
pub const CROSS_CHECK_MAX_N: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BackendPolicy {
    /// Pick by the size threshold.
    #[default]
    Auto,
    Full,
    Residue,
    Both,
}

impl std::str::FromStr for BackendPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(BackendPolicy::Auto),
            "full" => Ok(BackendPolicy::Full),
            "residue" => Ok(BackendPolicy::Residue),
            "both" => Ok(BackendPolicy::Both),
            _ => Err(Error::Parse(format!("unknown backend {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    FullRational,
    ResidueRing,
    Both,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::FullRational => "full_rational",
            Backend::ResidueRing => "residue_ring",
            Backend::Both => "both",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub backend: BackendPolicy,
    /// Run both backends on claims with `n <= CROSS_CHECK_MAX_N`.
    pub cross_check: bool,
}

/// A measured valuation. `AtLeast` comes from the residue backend, which
/// stops at a cap above the requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Observed {
    Exact(i64),
    AtLeast(i64),
    Infinite,
    /// Bivariate moduli: how many of the roots `a = q^n`, `a = q^-n` make the
    /// sum vanish, and whether the `a`-coefficients vanish at `Φ_n`.
    Roots {
        vanishing: u8,
        phi: Option<bool>,
    },
}

impl Observed {
    pub fn at_least(&self, e: i64) -> bool {
        match *self {
            Observed::Exact(v) => v >= e,
            Observed::AtLeast(v) => v >= e,
            Observed::Infinite => true,
            Observed::Roots { .. } => false,
        }
    }

    /// A lower bound usable for comparisons; `None` for root counts.
    pub fn lower_bound(&self) -> Option<i64> {
        match *self {
            Observed::Exact(v) | Observed::AtLeast(v) => Some(v),
            Observed::Infinite => Some(i64::MAX),
            Observed::Roots { .. } => None,
        }
    }

    /// Whether two measurements of the same quantity agree.
    pub fn consistent_with(&self, other: &Observed) -> bool {
        use Observed::*;
        match (*self, *other) {
            (Exact(a), Exact(b)) => a == b,
            (AtLeast(c), Exact(v)) | (Exact(v), AtLeast(c)) => v >= c,
            (AtLeast(_), AtLeast(_)) | (Infinite, Infinite) => true,
            (AtLeast(_), Infinite) | (Infinite, AtLeast(_)) => true,
            (Exact(_), Infinite) | (Infinite, Exact(_)) => false,
            (a, b) => a == b,
        }
    }
}

impl fmt::Display for Observed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observed::Exact(v) => write!(f, "{v}"),
            Observed::AtLeast(v) => write!(f, ">={v}"),
            Observed::Infinite => f.write_str("inf"),
            Observed::Roots { vanishing, phi } => {
                write!(f, "roots:{vanishing}/2")?;
                match phi {
                    Some(true) => write!(f, ",phi:>=1"),
                    Some(false) => write!(f, ",phi:0"),
                    None => Ok(()),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Skipped(_) => "skipped",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CongruenceReport {
    pub family: FamilyId,
    pub params: FamilyParams,
    pub truncation: Truncation,
    pub modulus: ModulusKind,
    pub status: Status,
    pub required: u32,
    pub observed: Observed,
    pub verdict: Verdict,
    pub backend: Backend,
    pub elapsed: Duration,
}

impl CongruenceReport {
    pub fn n(&self) -> i64 {
        self.params.n
    }

    /// Sort key: family name, then `d`, `r`, `n`, then the claim itself.
    pub fn sort_key(&self) -> (&'static str, i64, Option<i64>, i64, Truncation, ModulusKind) {
        (
            self.family.as_str(),
            self.params.d,
            self.params.r,
            self.params.n,
            self.truncation,
            self.modulus,
        )
    }

    fn required_text(&self) -> String {
        match self.modulus {
            ModulusKind::BivarProduct => "roots:2/2".into(),
            ModulusKind::PhiTimesBivar => "roots:2/2,phi:>=1".into(),
            _ => self.required.to_string(),
        }
    }

    /// One `key=value` record. `ms` is `-` unless timings are requested, so
    /// that reports stay byte-stable.
    pub fn to_line(&self, timings: bool) -> String {
        let r = self.params.r.map_or("-".to_string(), |r| r.to_string());
        let ms = if timings {
            self.elapsed.as_millis().to_string()
        } else {
            "-".into()
        };
        let mut line = format!(
            "family={} d={} r={} n={} truncation={} modulus={} required={} observed={} verdict={} backend={} ms={}",
            self.family,
            self.params.d,
            r,
            self.params.n,
            self.truncation,
            self.modulus,
            self.required_text(),
            self.observed,
            self.verdict,
            self.backend,
            ms
        );
        if let Verdict::Fail(why) | Verdict::Skipped(why) = &self.verdict {
            line.push_str(&format!(" note=\"{}\"", why.replace('"', "'")));
        }
        line
    }
}

/// Largest Pochhammer base of the family, standing in for `d` in the size
/// threshold.
fn effective_d(family: FamilyId, params: &FamilyParams) -> Result<i64> {
    let rec = recipe(family, params)?;
    Ok(rec
        .factors
        .iter()
        .map(|f| f.base)
        .max()
        .unwrap_or(1)
        .max(params.d))
}

fn choose(policy: BackendPolicy, cross_check: bool, d_eff: i64, n: i64) -> Backend {
    match policy {
        BackendPolicy::Full => Backend::FullRational,
        BackendPolicy::Residue => Backend::ResidueRing,
        BackendPolicy::Both => Backend::Both,
        BackendPolicy::Auto if cross_check && n <= CROSS_CHECK_MAX_N => Backend::Both,
        BackendPolicy::Auto if d_eff * d_eff * n * n <= FULL_THRESHOLD => Backend::FullRational,
        BackendPolicy::Auto => Backend::ResidueRing,
    }
}

/// Number of denominator binomials `1 - q^j` with `m | j`.
fn phi_den_count(plan: &SumPlan, m: i64) -> i64 {
    plan.all_den()
        .filter(|&(i, j)| i == 0 && j != 0 && j % m == 0)
        .count() as i64
}

/// `Φ_m`-valuation of the sum through exact arithmetic.
fn valuation_full(
    sum: &FactoredSum,
    plan: &SumPlan,
    m: u64,
    cache: &CycloCache,
) -> Result<Observed> {
    let num = sum
        .num_univariate()
        .ok_or_else(|| Error::Domain("sum depends on a".into()))?;
    Ok(match val_phi_z(&num, m, cache)? {
        Valuation::Finite(v) => Observed::Exact(v - phi_den_count(plan, m as i64)),
        Valuation::Infinite => Observed::Infinite,
    })
}

/// `Φ_m`-valuation through the local ring, capped at `cap`.
fn valuation_residue(plan: &SumPlan, m: u64, cap: i64, cache: &CycloCache) -> Result<Observed> {
    let v_den = phi_den_count(plan, m as i64);
    let e = (v_den + cap).max(1) as usize;
    let ring = LocalSum {
        ring: LocalRing::new(m, e, cache)?,
    };
    let num = accumulate(&ring, plan)?;
    Ok(match ring.ring.valuation(&num) {
        Some(v) => Observed::Exact(v as i64 - v_den),
        None => Observed::AtLeast(e as i64 - v_den),
    })
}

/// Measures one valuation on the selected backend(s). A disagreement between
/// backends is returned as an error message.
fn measure(
    plan: &SumPlan,
    m: u64,
    cap: i64,
    backend: Backend,
    cache: &CycloCache,
) -> Result<std::result::Result<Observed, String>> {
    let full = |cache: &CycloCache| -> Result<Observed> {
        let sum = FactoredSum::of_plan(plan)?;
        valuation_full(&sum, plan, m, cache)
    };
    Ok(Ok(match backend {
        Backend::FullRational => full(cache)?,
        Backend::ResidueRing => valuation_residue(plan, m, cap, cache)?,
        Backend::Both => {
            let a = full(cache)?;
            let b = valuation_residue(plan, m, cap, cache)?;
            if !a.consistent_with(&b) {
                return Ok(Err(format!(
                    "backend mismatch at Phi_{m}: full {a}, residue {b}"
                )));
            }
            a
        }
    }))
}

fn report(
    claim: &Claim,
    n: i64,
    observed: Observed,
    verdict: Verdict,
    backend: Backend,
    t0: Instant,
) -> CongruenceReport {
    CongruenceReport {
        family: claim.family,
        params: claim.params_at(n),
        truncation: claim.truncation,
        modulus: claim.modulus_kind,
        status: claim.status,
        required: claim.required(),
        observed,
        verdict,
        backend,
        elapsed: t0.elapsed(),
    }
}

fn fail_report(
    claim: &Claim,
    n: i64,
    backend: Backend,
    t0: Instant,
    why: String,
) -> CongruenceReport {
    report(
        claim,
        n,
        Observed::Exact(i64::MIN),
        Verdict::Fail(why),
        backend,
        t0,
    )
}

/// `Φ_n^e` claims, including conjectures.
fn run_phi_power(
    claim: &Claim,
    n: i64,
    e: u32,
    opts: &CheckOptions,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    let t0 = Instant::now();
    let p = claim.params_at(n);
    let backend = choose(
        opts.backend,
        opts.cross_check,
        effective_d(claim.family, &p)?,
        n,
    );
    let plan = SumPlan::new(&recipe(claim.family, &p)?, claim.truncation.upto(n));
    if let Err(err) = plan.check_denominators() {
        return Ok(fail_report(claim, n, backend, t0, err.to_string()));
    }
    let cap = e as i64 + 2;
    let observed = match measure(&plan, n as u64, cap, backend, cache)? {
        Ok(o) => o,
        Err(why) => return Ok(fail_report(claim, n, backend, t0, why)),
    };
    let verdict = verdict_for(observed, e as i64);
    Ok(report(claim, n, observed, verdict, backend, t0))
}

fn verdict_for(observed: Observed, e: i64) -> Verdict {
    if observed.at_least(e) {
        Verdict::Pass
    } else if observed.lower_bound().is_some_and(|v| v < 0) {
        Verdict::Fail(format!(
            "denominator not coprime to Phi_n (valuation {observed})"
        ))
    } else {
        Verdict::Fail(format!("valuation {observed} below {e}"))
    }
}

/// `[n]^2` claims: every divisor `m > 1` of `n` needs `Φ_m`-valuation 2.
fn run_qint_square(
    claim: &Claim,
    n: i64,
    opts: &CheckOptions,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    let t0 = Instant::now();
    let p = claim.params_at(n);
    let backend = choose(
        opts.backend,
        opts.cross_check,
        effective_d(claim.family, &p)?,
        n,
    );
    let plan = SumPlan::new(&recipe(claim.family, &p)?, claim.truncation.upto(n));
    if let Err(err) = plan.check_denominators() {
        return Ok(fail_report(claim, n, backend, t0, err.to_string()));
    }
    let full_sum = match backend {
        Backend::FullRational | Backend::Both => Some(FactoredSum::of_plan(&plan)?),
        Backend::ResidueRing => None,
    };
    let mut worst: Option<(u64, Observed)> = None;
    for m in divisors(n as u64).into_iter().filter(|&m| m > 1) {
        let obs = match &full_sum {
            Some(sum) => {
                let a = valuation_full(sum, &plan, m, cache)?;
                if backend == Backend::Both {
                    let b = valuation_residue(&plan, m, 4, cache)?;
                    if !a.consistent_with(&b) {
                        let why = format!("backend mismatch at Phi_{m}: full {a}, residue {b}");
                        return Ok(fail_report(claim, n, backend, t0, why));
                    }
                }
                a
            }
            None => valuation_residue(&plan, m, 4, cache)?,
        };
        let lower = obs.lower_bound().unwrap_or(i64::MIN);
        if worst
            .as_ref()
            .map_or(true, |(_, w)| lower < w.lower_bound().unwrap_or(i64::MIN))
        {
            worst = Some((m, obs));
        }
    }
    let (m, observed) = worst.unwrap_or((1, Observed::Infinite));
    let verdict = match verdict_for(observed, 2) {
        Verdict::Fail(why) => Verdict::Fail(format!("at Phi_{m}: {why}")),
        v => v,
    };
    Ok(report(claim, n, observed, verdict, backend, t0))
}

/// Vanishing of the parametric sum at `a = q^n` and `a = q^-n`.
fn vanishing_roots(
    family: FamilyId,
    p: &FamilyParams,
    n: i64,
) -> Result<std::result::Result<u8, String>> {
    let mut count = 0;
    for m in [n, -n] {
        let plan = SumPlan::new(&recipe(family, p)?.at_a(m), (n - 1) as u64);
        if let Err(err) = plan.check_denominators() {
            return Ok(Err(format!("a=q^{m}: {err}")));
        }
        if specialize_a(family, p, (n - 1) as u64, m)?.is_zero() {
            count += 1;
        }
    }
    Ok(Ok(count))
}

/// Whether the live-`a` sum vanishes modulo `Φ_n` after clearing its
/// denominator.
fn phi_divides_bivariate(
    family: FamilyId,
    p: &FamilyParams,
    n: i64,
    cache: &CycloCache,
) -> Result<bool> {
    let ring = CycloPolyA::new(n as u64, cache)?;
    let plan = SumPlan::new(&recipe(family, p)?, (n - 1) as u64);
    let num = accumulate(&ring, &plan)?;
    Ok(ring.is_zero(&num))
}

fn run_bivariate(claim: &Claim, n: i64, cache: &CycloCache) -> Result<CongruenceReport> {
    let t0 = Instant::now();
    let p = claim.params_at(n);
    let backend = Backend::FullRational;
    let vanishing = match vanishing_roots(claim.family, &p, n)? {
        Ok(v) => v,
        Err(why) => {
            return Ok(report(
                claim,
                n,
                Observed::Roots {
                    vanishing: 0,
                    phi: None,
                },
                Verdict::Fail(why),
                backend,
                t0,
            ))
        }
    };
    let phi = if claim.modulus_kind == ModulusKind::PhiTimesBivar {
        match phi_divides_bivariate(claim.family, &p, n, cache) {
            Ok(b) => Some(b),
            Err(err @ Error::NonUnit { .. }) => {
                let obs = Observed::Roots {
                    vanishing,
                    phi: None,
                };
                return Ok(report(
                    claim,
                    n,
                    obs,
                    Verdict::Fail(err.to_string()),
                    backend,
                    t0,
                ));
            }
            Err(err) => return Err(err),
        }
    } else {
        None
    };
    let observed = Observed::Roots { vanishing, phi };
    let verdict = if vanishing < 2 {
        Verdict::Fail(format!(
            "sum vanishes at {vanishing} of the 2 roots a=q^(+-n)"
        ))
    } else if phi == Some(false) {
        Verdict::Fail("a-coefficients not divisible by Phi_n".into())
    } else {
        Verdict::Pass
    };
    Ok(report(claim, n, observed, verdict, backend, t0))
}

/// Checks one claim at one `n`.
pub fn check_claim(
    claim: &Claim,
    n: i64,
    opts: &CheckOptions,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    if !claim.applies(n) {
        let t0 = Instant::now();
        let why = format!("n={n} outside {}", claim.describe_condition());
        return Ok(report(
            claim,
            n,
            Observed::Infinite,
            Verdict::Skipped(why),
            Backend::FullRational,
            t0,
        ));
    }
    match claim.modulus_kind {
        ModulusKind::PhiPower(e) => run_phi_power(claim, n, e, opts, cache),
        ModulusKind::QIntSquare => run_qint_square(claim, n, opts, cache),
        ModulusKind::BivarProduct | ModulusKind::PhiTimesBivar => run_bivariate(claim, n, cache),
    }
}

fn find_claim(
    family: FamilyId,
    params: &FamilyParams,
    n: i64,
    pred: impl Fn(&Claim) -> bool,
) -> Result<Claim> {
    claims_for(family, params)?
        .into_iter()
        .find(pred)
        .ok_or_else(|| {
            Error::Precondition(format!("no matching claim for {family} at n={n}"))
        })
}

/// `Σ ≡ 0 (mod Φ_n^e)` for a family whose catalog carries that claim at `n`.
pub fn check_phi_power(
    family: FamilyId,
    params: &FamilyParams,
    n: i64,
    e: u32,
    opts: &CheckOptions,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    if n < 2 {
        return Err(Error::Precondition("n >= 2 required".into()));
    }
    let claim = find_claim(family, params, n, |c| {
        c.modulus_kind == ModulusKind::PhiPower(e) && c.applies(n)
    })?;
    check_claim(&claim, n, opts, cache)
}

/// `[n]^2` divisibility of the T_MAIN3 sums.
pub fn check_qint_square(
    n: i64,
    truncation: Truncation,
    opts: &CheckOptions,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Precondition("n must be odd and > 1".into()));
    }
    let claim = find_claim(FamilyId::TMain3, &FamilyParams::new(2, None, n), n, |c| {
        c.truncation == truncation
    })?;
    check_claim(&claim, n, opts, cache)
}

/// Vanishing at both roots `a = q^(±n)`.
pub fn check_bivar_vanish(
    family: FamilyId,
    params: &FamilyParams,
    n: i64,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    if !family.is_parametric() {
        return Err(Error::Precondition(format!("{family} has no parameter a")));
    }
    let claim = find_claim(family, params, n, |c| c.applies(n))?;
    let claim = Claim {
        modulus_kind: ModulusKind::BivarProduct,
        ..claim
    };
    check_claim(&claim, n, &CheckOptions::default(), cache)
}

/// Vanishing at both roots plus `Φ_n` dividing every `a`-coefficient.
pub fn check_bivar_phi(
    family: FamilyId,
    params: &FamilyParams,
    n: i64,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    if !matches!(family, FamilyId::PA2 | FamilyId::PB2) {
        return Err(Error::Precondition(format!(
            "{family} carries no Phi_n-times-bivariate claim"
        )));
    }
    let claim = find_claim(family, params, n, |c| c.applies(n))?;
    check_claim(&claim, n, &CheckOptions::default(), cache)
}

/// Observed valuation of a conjecture instance against the conjectured
/// exponent.
pub fn measure_conjecture(
    family: FamilyId,
    params: &FamilyParams,
    n: i64,
    opts: &CheckOptions,
    cache: &CycloCache,
) -> Result<CongruenceReport> {
    if !family.is_conjecture() {
        return Err(Error::Precondition(format!("{family} is not a conjecture")));
    }
    let claim = find_claim(family, params, n, |c| c.applies(n))?;
    check_claim(&claim, n, opts, cache)
}

/// Every claim of the family with `n` in `2..=n_max`, in report order.
pub fn claim_instances(
    family: FamilyId,
    params: &FamilyParams,
    n_max: i64,
) -> Result<Vec<(Claim, i64)>> {
    let mut out = Vec::new();
    for claim in claims_for(family, params)? {
        for n in 2..=n_max {
            if claim.applies(n) {
                out.push((claim.clone(), n));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cache() -> CycloCache {
        CycloCache::new()
    }

    fn both() -> CheckOptions {
        CheckOptions {
            backend: BackendPolicy::Both,
            cross_check: true,
        }
    }

    #[test]
    fn spec_phi_power_examples() {
        let c = cache();
        let r = check_phi_power(
            FamilyId::TGuo5,
            &FamilyParams::new(5, None, 0),
            4,
            2,
            &both(),
            &c,
        )
        .unwrap();
        assert!(r.verdict.is_pass(), "{}", r.to_line(false));
        let r = check_phi_power(
            FamilyId::TMain1,
            &FamilyParams::new(5, None, 0),
            7,
            3,
            &both(),
            &c,
        )
        .unwrap();
        assert!(r.verdict.is_pass(), "{}", r.to_line(false));
        let r = check_phi_power(
            FamilyId::TMain4,
            &FamilyParams::new(3, None, 0),
            4,
            2,
            &both(),
            &c,
        )
        .unwrap();
        assert!(r.verdict.is_pass(), "{}", r.to_line(false));
    }

    #[test]
    fn qint_square_examples() {
        let c = cache();
        for (n, t) in [
            (3, Truncation::Full),
            (5, Truncation::Half),
            (9, Truncation::Full),
        ] {
            let r = check_qint_square(n, t, &both(), &c).unwrap();
            assert!(r.verdict.is_pass(), "{}", r.to_line(false));
        }
    }

    #[test]
    fn bivariate_examples() {
        let c = cache();
        let r = check_bivar_vanish(FamilyId::PA1, &FamilyParams::new(5, None, 0), 4, &c).unwrap();
        assert!(r.verdict.is_pass(), "{}", r.to_line(false));
        let r =
            check_bivar_vanish(FamilyId::PM1, &FamilyParams::new(4, Some(1), 0), 3, &c).unwrap();
        assert!(r.verdict.is_pass(), "{}", r.to_line(false));
        for (f, d, n) in [
            (FamilyId::PA2, 5, 2),
            (FamilyId::PA2, 7, 3),
            (FamilyId::PB2, 3, 2),
        ] {
            let r = check_bivar_phi(f, &FamilyParams::new(d, None, 0), n, &c).unwrap();
            assert!(r.verdict.is_pass(), "{}", r.to_line(false));
        }
    }

    #[test]
    fn pa2_at_d3_does_not_vanish() {
        // at a = q^(±4) the d = 3 sum is (q^2+1)(q^2+q+1)/q^2, not 0 mod Φ_4
        let r =
            check_bivar_phi(FamilyId::PA2, &FamilyParams::new(3, None, 0), 4, &cache()).unwrap();
        assert!(r.verdict.is_fail());
        assert_eq!(r.observed.to_string(), "roots:0/2,phi:>=1");
    }

    #[test]
    fn a_failing_valuation_is_reported() {
        // T_MAIN1 is false for d = 3; run its sum as a conjecture-style check
        let c = cache();
        let claim = claims_for(FamilyId::TMain1, &FamilyParams::new(5, None, 0))
            .unwrap()
            .remove(0);
        let claim = Claim {
            modulus_kind: ModulusKind::PhiPower(6),
            ..claim
        };
        let r = check_claim(&claim, 9, &both(), &c).unwrap();
        assert!(r.verdict.is_fail());
        assert!(r.to_line(false).contains("note="));
    }

    #[test]
    fn conjecture_examples() {
        let c = cache();
        let opts = CheckOptions::default();
        let r = measure_conjecture(
            FamilyId::CRefine1,
            &FamilyParams::new(5, None, 0),
            4,
            &opts,
            &c,
        )
        .unwrap();
        assert!(r.observed.at_least(3), "{}", r.to_line(false));
        let r = measure_conjecture(
            FamilyId::CN135,
            &FamilyParams::new(2, None, 0),
            5,
            &opts,
            &c,
        )
        .unwrap();
        assert!(r.observed.at_least(2));
        let r = measure_conjecture(
            FamilyId::CL1,
            &FamilyParams::new(2, Some(2), 0),
            5,
            &opts,
            &c,
        )
        .unwrap();
        assert!(r.observed.at_least(2));
    }

    #[test]
    fn report_line_shape() {
        let c = cache();
        let r = check_phi_power(
            FamilyId::TMain1,
            &FamilyParams::new(5, None, 0),
            4,
            2,
            &CheckOptions::default(),
            &c,
        )
        .unwrap();
        assert_eq!(
            r.to_line(false),
            "family=T_MAIN1 d=5 r=- n=4 truncation=n-1 modulus=Phi_n^2 required=2 observed=3 verdict=pass \
             backend=full_rational ms=-"
        );
    }

    #[test]
    fn outside_residue_class_is_skipped() {
        let c = cache();
        let claim = claims_for(FamilyId::TD1, &FamilyParams::new(3, None, 0))
            .unwrap()
            .remove(0);
        let r = check_claim(&claim, 4, &CheckOptions::default(), &c).unwrap();
        assert!(matches!(r.verdict, Verdict::Skipped(_)));
    }
}
