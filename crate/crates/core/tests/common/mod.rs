//! Checkers shared by the property suite and the acceptance harness. Each
//! returns `Err` with a counterexample description on the first violation.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qcong::algebra::{rat, LaurentPoly, RatFunc};
use qcong::catalog::{FamilyId, FamilyParams, ModulusKind};
use qcong::cyclotomic::{val_phi_poly, CycloCache, Valuation};
use qcong::qkit::{q_binom, q_poch_uni, MonomialArg};
use qcong::verify::{
    check_bivar_vanish, check_claim, check_phi_power, claim_instances, BackendPolicy, CheckOptions,
};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn poly(offset: i64, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(offset, coeffs)
}

/// A nonzero polynomial with a few cyclotomic-rich factors `1 - q^m`, so
/// that valuations are often positive.
fn rich_poly() -> impl Strategy<Value = LaurentPoly> {
    (
        prop::collection::vec(-4i64..=4, 1..5),
        prop::collection::vec(1i64..=12, 0..4),
        -3i64..=3,
    )
        .prop_filter_map("zero", |(coeffs, ms, offset)| {
            let mut p = poly(offset, &coeffs);
            for m in ms {
                p = &p * &(&LaurentPoly::one() - &LaurentPoly::q_pow(m));
            }
            (!p.is_zero()).then_some(p)
        })
}

/// `v(fg) = v(f) + v(g)` for random nonzero `f`, `g` and `n` in `2..=12`.
pub fn valuation_additivity(cases: u32) -> Result<(), String> {
    let cache = CycloCache::new();
    finish(runner(cases).run(&(rich_poly(), rich_poly(), 2u64..=12), |(f, g, n)| {
        let fin = |p: &LaurentPoly| match val_phi_poly(p, n, &cache).unwrap() {
            Valuation::Finite(v) => v,
            Valuation::Infinite => unreachable!("nonzero"),
        };
        let lhs = fin(&(&f * &g));
        prop_assert_eq!(lhs, fin(&f) + fin(&g), "n={} f={} g={}", n, f, g);
        Ok(())
    }))
}

/// `(x; p)_{m+k} = (x; p)_m (x p^m; p)_k`.
pub fn pochhammer_concatenation(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(-6i64..=6, 1i64..=4, 0u64..=6, 0u64..=6), |(x, b, m, k)| {
        let whole = q_poch_uni(MonomialArg::q(x), b, m + k).unwrap();
        let head = q_poch_uni(MonomialArg::q(x), b, m).unwrap();
        let tail = q_poch_uni(MonomialArg::q(x + m as i64 * b), b, k).unwrap();
        prop_assert_eq!(whole, &head * &tail, "x={} b={} m={} k={}", x, b, m, k);
        Ok(())
    }))
}

/// `[n, k] = [n-1, k-1] + q^k [n-1, k]` for every `n <= max_n`.
pub fn pascal_recurrence(max_n: i64) -> Result<(), String> {
    for n in 1..=max_n {
        for k in 0..=n {
            let lhs = q_binom(n, k, 1).map_err(|e| e.to_string())?;
            let a = q_binom(n - 1, k - 1, 1).map_err(|e| e.to_string())?;
            let b = q_binom(n - 1, k, 1).map_err(|e| e.to_string())?.shift(k);
            if lhs != &a + &b {
                return Err(format!("Pascal recurrence fails at n={n}, k={k}"));
            }
        }
    }
    Ok(())
}

/// Normalizing an already normalized rational function changes nothing.
pub fn normalization_idempotence(cases: u32) -> Result<(), String> {
    let coeffs = || prop::collection::vec(-5i64..=5, 1..6);
    finish(runner(cases).run(&(coeffs(), coeffs(), -4i64..=4, -4i64..=4, 1i64..=6), |(nc, dc, no, dof, s)| {
        let den = poly(dof, &dc);
        if den.is_zero() {
            return Ok(());
        }
        // a shared factor makes the first normalization do real work
        let common = poly(0, &[1, -s]);
        let num = &poly(no, &nc) * &common;
        let den = &den * &common;
        let x = RatFunc::new(num, den).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let again = RatFunc::new(x.num().clone(), x.den().clone()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&again, &x);
        let scaled = x.scale(&rat(s, 1));
        let back = scaled.scale(&rat(1, s));
        prop_assert_eq!(back, x);
        Ok(())
    }))
}

/// Families and parameters used for grid-wide checks.
pub fn grid() -> Vec<(FamilyId, FamilyParams)> {
    use FamilyId::*;
    let mut out = Vec::new();
    for (f, ds) in [
        (TMain1, vec![5, 7]),
        (TMain2, vec![3, 5, 7]),
        (TMain3, vec![2]),
        (TMain4, vec![3]),
        (TGuo5, vec![5]),
        (TD1, vec![3, 4, 5]),
        (TD2, vec![2, 3, 4]),
        (CRefine1, vec![5]),
        (CRefine2, vec![5]),
        (C123, vec![3]),
        (CN123, vec![2, 3]),
        (C135, vec![3]),
        (CN135, vec![2, 3]),
    ] {
        for d in ds {
            out.push((f, FamilyParams::new(d, None, 0)));
        }
    }
    for f in [TMore1, TMore2, CL1, CL2, CL3, CL4] {
        for d in 1..=5 {
            for r in -4..=4 {
                let p = FamilyParams::new(d, Some(r), 0);
                if qcong::catalog::validate(f, &p).is_ok() {
                    out.push((f, p));
                }
            }
        }
    }
    out.push((TSix5, FamilyParams::new(6, Some(1), 0)));
    out.push((TSix1, FamilyParams::new(6, Some(1), 0)));
    out
}

/// Full-rational and residue-ring verdicts agree on every univariate claim
/// with `n <= 12`. Returns the number of instances compared.
pub fn backend_cross_check() -> Result<usize, String> {
    let cache = CycloCache::new();
    let full = CheckOptions { backend: BackendPolicy::Full, cross_check: false };
    let residue = CheckOptions { backend: BackendPolicy::Residue, cross_check: false };
    let mut count = 0;
    for (f, p) in grid() {
        for (claim, n) in claim_instances(f, &p, 12).map_err(|e| e.to_string())? {
            if matches!(claim.modulus_kind, ModulusKind::BivarProduct | ModulusKind::PhiTimesBivar) {
                continue;
            }
            let a = check_claim(&claim, n, &full, &cache).map_err(|e| e.to_string())?;
            let b = check_claim(&claim, n, &residue, &cache).map_err(|e| e.to_string())?;
            if a.verdict.is_pass() != b.verdict.is_pass() || !a.observed.consistent_with(&b.observed) {
                return Err(format!("backends disagree: {} vs {}", a.to_line(false), b.to_line(false)));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Wherever the P_A1 bivariate check passes and T_MAIN1 claims `Φ_n^2` at
/// the same `(d, n)`, that claim passes too.
pub fn pa1_implies_main1(n_max: i64) -> Result<usize, String> {
    let cache = CycloCache::new();
    let mut count = 0;
    for d in [5, 7, 9] {
        let p = FamilyParams::new(d, None, 0);
        for (_, n) in claim_instances(FamilyId::PA1, &p, n_max).map_err(|e| e.to_string())? {
            let bivar = check_bivar_vanish(FamilyId::PA1, &p, n, &cache).map_err(|e| e.to_string())?;
            if !bivar.verdict.is_pass() {
                continue;
            }
            let Ok(main) = check_phi_power(FamilyId::TMain1, &p, n, 2, &CheckOptions::default(), &cache) else {
                continue;
            };
            if !main.verdict.is_pass() {
                return Err(format!("P_A1 passes but {}", main.to_line(false)));
            }
            count += 1;
        }
    }
    if count == 0 {
        return Err("no instance where both apply".into());
    }
    Ok(count)
}

/// Runs the CLI in-process, returning the exit code and stdout.
pub fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = qcong::cli::run_with(std::iter::once("qcong").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

/// Report bytes are identical for `--jobs 1` and `--jobs 4`.
pub fn jobs_determinism() -> Result<usize, String> {
    let base = ["verify", "--families", "T_MAIN1,T_MAIN2,T_MORE1,T_MAIN3", "--d", "3..7", "--n-max", "20"];
    let (c1, one) = cli(&[&base[..], &["--jobs", "1"]].concat());
    let (c4, four) = cli(&[&base[..], &["--jobs", "4"]].concat());
    if c1 != c4 || one != four {
        return Err("reports differ between --jobs 1 and --jobs 4".into());
    }
    let explore = ["explore", "--families", "C_L1,C_L2,C_N135", "--d", "1..3", "--r", "1..3", "--n-max", "30"];
    let (e1, one_e) = cli(&[&explore[..], &["--jobs", "1"]].concat());
    let (e4, four_e) = cli(&[&explore[..], &["--jobs", "4"]].concat());
    if e1 != e4 || one_e != four_e {
        return Err("explore reports differ between --jobs 1 and --jobs 4".into());
    }
    Ok(one.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count() + one_e.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count())
}
