use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rayon::prelude::*;

use super::config::CampaignConfig;
use crate::catalog::{
    claims_for, sample_params, validate, Claim, FamilyId, FamilyParams, ModulusKind, Status,
    Truncation,
};
use crate::cyclotomic::CycloCache;
use crate::error::{Error, Result};
use crate::verify::{check_claim, CheckOptions, CongruenceReport, Observed, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Verify,
    Explore,
}

impl Mode {
    fn status(self) -> Status {
        match self {
            Mode::Verify => Status::Theorem,
            Mode::Explore => Status::Conjecture,
        }
    }

    fn default_families(self) -> Vec<FamilyId> {
        FamilyId::ALL
            .into_iter()
            .filter(|f| !f.is_closed_form() && f.is_conjecture() == (self == Mode::Explore))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Task {
    pub claim: Claim,
    pub n: i64,
}

type TaskKey = (&'static str, i64, Option<i64>, i64, Truncation, ModulusKind);

impl Task {
    fn key(&self) -> TaskKey {
        let p = &self.claim.params;
        (
            self.claim.family.as_str(),
            p.d,
            p.r,
            self.n,
            self.claim.truncation,
            self.claim.modulus_kind,
        )
    }
}

/// The claim instances a campaign covers, in report order, plus notices
/// for the operator.
#[derive(Debug, Default)]
pub struct Plan {
    pub tasks: Vec<Task>,
    pub notes: Vec<String>,
}

fn d_values(cfg: &CampaignConfig, family: FamilyId) -> Vec<i64> {
    match &cfg.d_range {
        Some(ds) if family.uses_d() => ds.clone(),
        _ => vec![sample_params(family).d],
    }
}

fn r_values(cfg: &CampaignConfig, family: FamilyId, d: i64) -> Vec<Option<i64>> {
    if !family.uses_r() {
        return vec![None];
    }
    match &cfg.r_range {
        Some(rs) => rs.iter().map(|&r| Some(r)).collect(),
        None if family.is_conjecture() => vec![sample_params(family).r],
        None => (-d..=d).map(Some).collect(),
    }
}

/// C_L1/C_L3 at `d = 1` are the T_D1 sums with `d = r`, and C_L2/C_L4 the
/// T_D2 sums.
fn d_equal_one_route(family: FamilyId) -> Option<FamilyId> {
    match family {
        FamilyId::CL1 | FamilyId::CL3 => Some(FamilyId::TD1),
        FamilyId::CL2 | FamilyId::CL4 => Some(FamilyId::TD2),
        _ => None,
    }
}

pub fn plan(cfg: &CampaignConfig, mode: Mode) -> Plan {
    let mut out = Plan::default();
    let families = if cfg.families.is_empty() {
        mode.default_families()
    } else {
        cfg.families.clone()
    };
    let mut tasks: BTreeMap<TaskKey, Task> = BTreeMap::new();
    let add = |claims: Vec<Claim>, status: Status, tasks: &mut BTreeMap<TaskKey, Task>| {
        for claim in claims
            .into_iter()
            .filter(|c| c.status == status && cfg.allows(c.truncation))
        {
            for n in 2..=cfg.n_max {
                if claim.applies(n) {
                    let t = Task {
                        claim: claim.clone(),
                        n,
                    };
                    tasks.insert(t.key(), t);
                }
            }
        }
    };
    for family in families {
        if family.is_closed_form() {
            out.notes.push(format!(
                "{family} is a closed form; use the identity command"
            ));
            continue;
        }
        let mut seen = BTreeSet::new();
        for d in d_values(cfg, family) {
            for r in r_values(cfg, family, d) {
                if d == 1 && mode == Mode::Explore {
                    if let (Some(target), Some(r)) = (d_equal_one_route(family), r) {
                        out.notes.push(format!(
                            "{family} with d=1, r={r} is the {target} sum with d={r}, a theorem; checking {target} instead"
                        ));
                        match claims_for(target, &FamilyParams::new(r, None, 0)) {
                            Ok(c) => add(c, Status::Theorem, &mut tasks),
                            Err(e) => out.notes.push(format!("{target} d={r}: {e}")),
                        }
                        continue;
                    }
                }
                let Ok(p) = validate(family, &FamilyParams::new(d, r, 0)) else {
                    continue;
                };
                if !seen.insert(p) {
                    continue;
                }
                if let Ok(c) = claims_for(family, &p) {
                    add(c, mode.status(), &mut tasks);
                }
            }
        }
        if seen.is_empty() && !(mode == Mode::Explore && d_equal_one_route(family).is_some()) {
            out.notes
                .push(format!("{family}: no admissible parameters in range"));
        }
    }
    out.tasks = tasks.into_values().collect();
    out
}

/// Runs every task on a pool of `jobs` workers; results come back in task
/// order whatever the scheduling.
pub fn execute(
    tasks: &[Task],
    opts: &CheckOptions,
    jobs: usize,
    cache: &CycloCache,
) -> Result<Vec<Result<CongruenceReport>>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        tasks
            .par_iter()
            .map(|t| check_claim(&t.claim, t.n, opts, cache))
            .collect()
    }))
}

pub struct Outcome {
    pub reports: Vec<CongruenceReport>,
    pub errors: Vec<(Task, Error)>,
}

impl Outcome {
    pub fn failures(&self) -> impl Iterator<Item = &CongruenceReport> {
        self.reports.iter().filter(|r| r.verdict.is_fail())
    }

    pub fn ok(&self) -> bool {
        self.errors.is_empty() && self.failures().next().is_none()
    }
}

pub fn run(cfg: &CampaignConfig, plan: &Plan, cache: &CycloCache) -> Result<Outcome> {
    let opts = CheckOptions {
        backend: cfg.backend,
        cross_check: cfg.cross_check,
    };
    let results = execute(&plan.tasks, &opts, cfg.jobs, cache)?;
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (task, res) in plan.tasks.iter().zip(results) {
        match res {
            Ok(r) => reports.push(r),
            Err(e) => errors.push((task.clone(), e)),
        }
    }
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(Outcome { reports, errors })
}

pub fn write_reports(
    out: &mut dyn Write,
    reports: &[CongruenceReport],
    timings: bool,
) -> std::io::Result<()> {
    for r in reports {
        writeln!(out, "{}", r.to_line(timings))?;
    }
    Ok(())
}

fn describe_task(t: &Task) -> String {
    let p = &t.claim.params;
    let r = p.r.map_or("-".to_string(), |r| r.to_string());
    format!(
        "family={} d={} r={} n={} truncation={} modulus={}",
        t.claim.family, p.d, r, t.n, t.claim.truncation, t.claim.modulus_kind
    )
}

fn observed_floor(o: &Observed) -> Option<i64> {
    match o {
        Observed::Infinite => None,
        other => other.lower_bound(),
    }
}

/// Per `(family, d, r)`: instance count and the smallest observed
/// valuation, with `>=` when that minimum is only a lower bound.
pub fn min_observed_summary(reports: &[CongruenceReport]) -> Vec<String> {
    let mut groups: BTreeMap<(&'static str, i64, Option<i64>), (usize, Option<Observed>, u32)> =
        BTreeMap::new();
    for rep in reports
        .iter()
        .filter(|r| !matches!(r.verdict, Verdict::Skipped(_)))
    {
        let slot = groups
            .entry((rep.family.as_str(), rep.params.d, rep.params.r))
            .or_insert((0, None, rep.required));
        slot.0 += 1;
        slot.2 = slot.2.min(rep.required);
        let lower = match slot.1 {
            None => true,
            Some(cur) => match (observed_floor(&rep.observed), observed_floor(&cur)) {
                (Some(a), Some(b)) => {
                    a < b || (a == b && matches!(rep.observed, Observed::Exact(_)))
                }
                (Some(_), None) => true,
                _ => false,
            },
        };
        if lower {
            slot.1 = Some(rep.observed);
        }
    }
    groups
        .into_iter()
        .map(|((f, d, r), (count, min, req))| {
            let r = r.map_or("-".to_string(), |r| r.to_string());
            let min = min.map_or("-".to_string(), |m| m.to_string());
            format!("summary family={f} d={d} r={r} instances={count} min_observed={min} conjectured={req}")
        })
        .collect()
}

/// Command line that reruns a single instance.
pub fn reproduction(rep: &CongruenceReport, mode: Mode) -> String {
    let cmd = match mode {
        Mode::Verify => "verify",
        Mode::Explore => "explore",
    };
    let mut s = format!(
        "qcong {cmd} --families {} --n-max {}",
        rep.family, rep.params.n
    );
    if rep.family.uses_d() {
        s.push_str(&format!(" --d {}", rep.params.d));
    }
    if let Some(r) = rep.params.r {
        s.push_str(&format!(" --r {r}"));
    }
    s.push_str(&format!(" --truncation {}", rep.truncation));
    s
}

pub fn task_error_line(t: &Task, e: &Error) -> String {
    format!("error {}: {e}", describe_task(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(families: &[FamilyId], d: Option<Vec<i64>>, n_max: i64) -> CampaignConfig {
        CampaignConfig {
            families: families.to_vec(),
            d_range: d,
            n_max,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn main3_plan_has_two_truncations_per_odd_n() {
        let p = plan(&cfg(&[FamilyId::TMain3], None, 19), Mode::Verify);
        assert_eq!(p.tasks.len(), 18);
    }

    #[test]
    fn main1_plan_follows_residue_classes() {
        let p = plan(&cfg(&[FamilyId::TMain1], Some(vec![5]), 12), Mode::Verify);
        let got: Vec<(u32, i64)> = p.tasks.iter().map(|t| (t.claim.required(), t.n)).collect();
        assert_eq!(got, vec![(3, 2), (2, 4), (3, 7), (2, 9), (3, 12)]);
    }

    #[test]
    fn more_families_default_to_every_admissible_r() {
        let p = plan(&cfg(&[FamilyId::TMore1], Some(vec![4]), 10), Mode::Verify);
        let rs: BTreeSet<i64> = p.tasks.iter().filter_map(|t| t.claim.params.r).collect();
        assert_eq!(rs, BTreeSet::from([-3, -1, 1, 3]));
    }

    #[test]
    fn cl1_at_d1_is_routed() {
        let c = CampaignConfig {
            r_range: Some(vec![3]),
            ..cfg(&[FamilyId::CL1], Some(vec![1]), 8)
        };
        let p = plan(&c, Mode::Explore);
        assert!(p.notes.iter().any(|n| n.contains("T_D1")));
        assert!(p.tasks.iter().all(|t| t.claim.family == FamilyId::TD1));
        assert!(!p.tasks.is_empty());
    }

    #[test]
    fn explore_skips_theorems() {
        let p = plan(&cfg(&[FamilyId::TMain1], Some(vec![5]), 12), Mode::Explore);
        assert!(p.tasks.is_empty());
    }
}
