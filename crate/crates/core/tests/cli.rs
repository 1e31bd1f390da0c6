mod common;

use std::fs;

#[test]
fn reports_do_not_depend_on_jobs() {
    assert!(common::jobs_determinism().unwrap() > 0);
}

#[test]
fn main3_campaign_has_eighteen_lines() {
    let (code, out) = common::cli(&["verify", "--families", "T_MAIN3", "--n-max", "19"]);
    assert_eq!(code, 0);
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().count(), 18);
    assert!(text.lines().all(|l| l.contains("modulus=[n]^2") && l.contains("verdict=pass")));
}

#[test]
fn failing_claim_exits_nonzero() {
    // the d = 3 instance of the Φ_n(1-aq^n)(a-q^n) claim does not hold
    let (code, out) = common::cli(&["verify", "--families", "P_A2", "--d", "3", "--n-max", "4"]);
    assert_eq!(code, 1);
    assert!(String::from_utf8(out).unwrap().contains("verdict=fail"));
}

#[test]
fn config_file_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("campaign.toml");
    let out = dir.path().join("report.txt");
    let cache = dir.path().join("cache");
    fs::write(
        &cfg,
        format!(
            "families = [\"T_MAIN1\"]\nd = 5\nn_max = 40\nout = {:?}\ncache_dir = {:?}\n",
            out.display().to_string(),
            cache.display().to_string()
        ),
    )
    .unwrap();
    let path = cfg.to_str().unwrap();
    let (code, stdout) = common::cli(&["verify", "--config", path, "--n-max", "12"]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let report = fs::read_to_string(&out).unwrap();
    assert_eq!(report.lines().count(), 5);
    assert!(cache.join("phi.txt").exists());
    // a second run reads the cache and writes the same bytes
    let (code, _) = common::cli(&["verify", "--config", path, "--n-max", "12"]);
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), report);
}

#[test]
fn identity_commands() {
    for (which, lines) in [("CF_IND2", 30), ("QBINO", 465), ("ANDREWS", 12)] {
        let (code, out) = common::cli(&["identity", which]);
        assert_eq!(code, 0, "{which}");
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), lines, "{which}");
    }
}
