mod common;

use std::fs;
use std::thread;

use common::{column, hlslab};
use hlslab::cache::QuotientCache;
use hlslab_core::{Caps, Family};

#[test]
fn quotient_orders() {
    let dir = tempfile::tempdir().unwrap();
    let r = hlslab(dir.path(), &["quotients", "--family", "fd", "--n-max", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(column(&r.report(), "order"), ["1", "4", "36"]);
    let r = hlslab(dir.path(), &["quotients", "--family", "cyclic", "--n-max", "5"]);
    assert_eq!(column(&r.report(), "order"), ["2", "4", "8", "16", "32"]);
    assert!(dir.path().join("fd-3.json").is_file());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(hlslab(p, &["quotients", "--family", "fd", "--n-max", "99"]).code, 3);
    assert_eq!(hlslab(p, &["quotients", "--family", "fd", "--n-max", "3", "--fiber-cap", "10"]).code, 3);
    assert_eq!(hlslab(p, &["gap", "--family", "fd", "--n-max", "2", "--element", r#"[["a", "1", "0"]]"#]).code, 2);
    assert_eq!(hlslab(p, &["tau", "--family", "cyclic"]).code, 2);
    assert_eq!(hlslab(p, &["quotients", "--family", "klein"]).code, 2);
    assert_eq!(hlslab(p, &["quotients", "--colour", "red"]).code, 2);
    assert_eq!(hlslab(p, &["gap", "--element", "missing-file.json", "--n-max", "1"]).code, 2);
    let eta = r#"{"tail": [], "threshold": 2, "overrides": {"1": [["1", "0"]]}}"#;
    let r = hlslab(p, &["amen", "--family", "fd", "--n-max", "1", "--eta", eta, "--k", "1:e"]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("degenerate"));
}

#[test]
fn amenability_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let base = ["amen", "--family", "cyclic", "--n-max", "6", "--element", "interval:64", "--k", "a"];
    let pass = hlslab(p, &[&base[..], &["--epsilon", "0.05"]].concat());
    assert_eq!(pass.code, 0);
    let rep = pass.report();
    assert_eq!(rep.cell(0, "translation"), Some("1/32"));
    assert_eq!(rep.summary_value("folner-round-trip"), Some("exact"));
    assert_eq!(hlslab(p, &[&base[..], &["--epsilon", "0.01"]].concat()).code, 1);

    let fd = hlslab(p, &["amen", "--family", "fd", "--n-max", "3", "--element", "ball:6", "--k", "a", "--epsilon", "0.2"]);
    assert_eq!(fd.code, 1);
    assert_eq!(fd.report().cell(0, "translation"), Some("1458/1457"));

    // Finite arrows: ξ = ½(δ_e + δ_a) on ℤ/8, translated by a.
    let xi = r#"[["e", "1/2", "0"], ["a", "1/2", "0"]]"#;
    let r = hlslab(p, &["amen", "--family", "cyclic", "--n-max", "3", "--element", xi, "--k", "3:a", "--k", "1:a", "--epsilon", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep = r.report();
    assert_eq!(column(&rep, "element"), ["3:a", "1:a"]);
    assert_eq!(column(&rep, "translation"), ["1", "0"]);
}

#[test]
fn gap_rejects_non_self_adjoint_and_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports/gap.csv");
    let r = hlslab(dir.path(), &["gap", "--family", "cyclic", "--n-max", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\n# gap: NO GAP\n"));
    assert!(text.contains("level,order,lower,upper,provenance,wall_ms\n"));
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    fs::write(&cfg, "family = \"cyclic\"\nn-max = 3\n[caps]\nfiber-order = 1000\n").unwrap();
    let c = cfg.to_str().unwrap();
    let r = hlslab(dir.path(), &["quotients", "--config", c]);
    let rep = r.report();
    assert_eq!(rep.header_value("family"), Some("cyclic"));
    assert_eq!(rep.header_value("fiber-cap"), Some("1000"));
    assert_eq!(rep.rows.len(), 3);
    let r = hlslab(dir.path(), &["quotients", "--config", c, "--n-max", "2", "--family", "fd"]);
    assert_eq!(column(&r.report(), "order"), ["1", "4"]);

    fs::write(&cfg, "famly = \"fd\"\n").unwrap();
    assert_eq!(hlslab(dir.path(), &["quotients", "--config", c]).code, 2);
}

#[test]
fn cache_dir_flag_beats_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let r = hlslab(
        env_dir.path(),
        &["quotients", "--family", "cyclic", "--n-max", "2", "--cache-dir", flag_dir.path().to_str().unwrap()],
    );
    assert_eq!(r.code, 0);
    assert!(flag_dir.path().join("cyclic-2.json").is_file());
    assert!(!env_dir.path().join("cyclic-2.json").exists());
}

#[test]
fn cached_quotient_is_identical_to_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let cache = QuotientCache::new(dir.path());
    let caps = Caps::default();
    for (family, n) in [(Family::Fd, 4), (Family::Congruence, 4), (Family::Cyclic, 6)] {
        let fresh = family.quotient(n, &caps).unwrap();
        assert!(cache.load(family, n, &caps).unwrap().is_none());
        cache.store(family, n, &fresh).unwrap();
        let loaded = cache.load(family, n, &caps).unwrap().unwrap();
        assert_eq!(loaded, fresh);
        for g in 0..fresh.order() {
            assert_eq!(loaded.element_word(g), fresh.element_word(g));
        }
    }
    let text = fs::read_to_string(cache.path(Family::Cyclic, 6)).unwrap();
    assert!(text.contains("\"format\":\"hlslab-quotient/1\"") && text.contains("\"order\":\"64\""));
}

#[test]
fn corrupt_cache_entries_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = QuotientCache::new(dir.path());
    let caps = Caps::default();
    let q = Family::Cyclic.quotient(3, &caps).unwrap();
    cache.store(Family::Cyclic, 3, &q).unwrap();
    let path = cache.path(Family::Cyclic, 3);
    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replace("\"order\":\"8\"", "\"order\":\"9\"")).unwrap();
    assert!(cache.load(Family::Cyclic, 3, &caps).is_err());
    fs::write(&path, "{").unwrap();
    assert!(cache.load(Family::Cyclic, 3, &caps).is_err());
}

#[test]
fn concurrent_writers_leave_a_valid_file() {
    let dir = tempfile::tempdir().unwrap();
    let caps = Caps::default();
    let q = Family::Fd.quotient(4, &caps).unwrap();
    thread::scope(|s| {
        for _ in 0..8 {
            s.spawn(|| {
                let cache = QuotientCache::new(dir.path());
                for _ in 0..5 {
                    cache.store(Family::Fd, 4, &q).unwrap();
                    assert_eq!(cache.load(Family::Fd, 4, &caps).unwrap().unwrap(), q);
                }
            });
        }
    });
    let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}

#[test]
fn help_lists_every_flag() {
    let dir = tempfile::tempdir().unwrap();
    let expect: [(&str, &[&str]); 5] = [
        ("quotients", &["--family", "--n-max", "--radius", "--jobs", "--cache-dir", "--out", "--config"]),
        ("gap", &["--element", "--radius", "--margin", "--jobs", "--cache-dir", "--out"]),
        ("amen", &["--element", "--eta", "--k", "--epsilon"]),
        ("tau", &["--update-snapshots", "--n-max", "--family"]),
        ("convolve-check", &["--cases", "--seed", "--max-order"]),
    ];
    for (cmd, flags) in expect {
        let r = hlslab(dir.path(), &[cmd, "--help"]);
        assert_eq!(r.code, 0);
        for f in flags {
            assert!(r.stdout.contains(f), "{cmd} --help lacks {f}");
        }
    }
}

#[test]
fn convolve_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let r = hlslab(dir.path(), &["convolve-check", "--family", "congruence", "--n-max", "3", "--cases", "30"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(column(&r.report(), "failures"), ["0", "0", "0", "0"]);
}
