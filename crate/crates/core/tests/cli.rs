use std::fs;
use std::path::{Path, PathBuf};

use ac_cyclic::cli::run;

fn accyc(args: &[&str]) -> i32 {
    run(std::iter::once("accyc").chain(args.iter().copied()))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn only_file(dir: &Path, prefix: &str) -> PathBuf {
    let mut hits: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_str().unwrap().starts_with(prefix))
        .collect();
    assert_eq!(hits.len(), 1, "{hits:?}");
    hits.pop().unwrap()
}

#[test]
fn reduce_and_usage_errors() {
    assert_eq!(accyc(&["reduce", "aaBBB"]), 0);
    assert_eq!(accyc(&["reduce", "1"]), 0);
    assert_eq!(accyc(&["reduce", "a$"]), 2);
    assert_eq!(accyc(&["frobnicate"]), 2);
    assert_eq!(accyc(&[]), 2);
}

#[test]
fn certify_reproduces_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(accyc(&["certify", "conj4", "--pair", "aaBBB", "abaBAB", "--dir", d]), 0);
    let report = fs::read_to_string(only_file(dir.path(), "certificate-")).unwrap();
    assert!(report.contains("max_common_length = 2"));
    assert!(report.contains("inequality_satisfiable = false"));

    let out = dir.path().join("ccac.toml");
    assert_eq!(accyc(&["certify", "ccac", "--pair", "aaBBB", "abaBAB", "--out", out.to_str().unwrap()]), 0);
    assert!(fs::read_to_string(&out).unwrap().contains("orbit_size = 120"));

    assert_eq!(accyc(&["certify", "conj4", "--pair", "ab", "ab", "--dir", d]), 1);
    assert_eq!(accyc(&["certify", "ccac", "--pair", "ab", "BA", "--dir", d]), 1);
    assert_eq!(accyc(&["certify", "ccac", "--pair", "aA", "b", "--dir", d]), 2);
}

#[test]
fn search_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.toml", "alphabet = [\"a\", \"b\"]\nrelators = [\"ab\", \"b\"]\n");
    let d = dir.path().to_str().unwrap();
    assert_eq!(accyc(&["search", "--input", &p, "--system", "cen", "--max-len", "4", "--dir", d]), 0);
    let t = only_file(dir.path(), "transcript-");
    let t = t.to_str().unwrap();
    assert_eq!(accyc(&["verify", "--input", &p, "--transcript", t, "--expect", "letters"]), 0);
    let bad = write(dir.path(), "bad.txt", "CT1 1\n");
    assert_eq!(accyc(&["verify", "--input", &p, "--transcript", &bad, "--expect", "letters"]), 1);

    let out = dir.path().join("after.toml");
    assert_eq!(accyc(&["apply", "--input", &p, "--transcript", t, "--out", out.to_str().unwrap()]), 0);
    assert!(fs::read_to_string(&out).unwrap().contains("relators = [\"a\", \"b\"]"));
    assert_eq!(accyc(&["verify", "--input", &p, "--transcript", t, "--expect", out.to_str().unwrap()]), 0);
}

#[test]
fn search_exhaustion_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "ce.toml", "alphabet = [\"a\", \"b\"]\nrelators = [\"aaBBB\", \"abaBAB\"]\n");
    let d = dir.path().to_str().unwrap();
    let args = ["search", "--input", &p, "--system", "ccac", "--max-len", "11", "--symmetries", "none", "--dir", d];
    assert_eq!(accyc(&args), 3);
    let report = fs::read_to_string(only_file(dir.path(), "search-report-")).unwrap();
    assert!(report.contains("exhausted_within_caps"));
    assert!(report.contains("visited = 120"));

    let cfg =
        write(dir.path(), "cfg.toml", "system = \"CEN\"\nmax_total_length = 14\nmax_depth = 6\nnode_budget = 3\n");
    assert_eq!(accyc(&["search", "--input", &p, "--config", &cfg, "--out", "/dev/null"]), 3);
}

#[test]
fn scramble_translate_verify_round_trip() {
    for (seed, stabilize, mode) in [("4", false, "cen"), ("4", false, "ccac-stab"), ("9", true, "ccac-stab")] {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let mut args = vec!["scramble", "--depth", "7", "--seed", seed, "--dir", d];
        if stabilize {
            args.push("--stabilize");
        }
        assert_eq!(accyc(&args), 0);
        let p = only_file(dir.path(), "presentation-");
        let t = only_file(dir.path(), "transcript-");
        let (p, t) = (p.to_str().unwrap(), t.to_str().unwrap());
        assert_eq!(accyc(&["verify", "--input", p, "--transcript", t, "--expect", "letters"]), 0);
        let out = dir.path().join("out.txt");
        let o = out.to_str().unwrap();
        assert_eq!(accyc(&["translate", "--input", p, "--transcript", t, "--mode", mode, "--out", o]), 0);
        assert_eq!(accyc(&["verify", "--input", p, "--transcript", o, "--expect", "letters"]), 0);
    }
}

#[test]
fn content_hash_names_are_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert_eq!(accyc(&["scramble", "--depth", "5", "--seed", "17", "--dir", dir.path().to_str().unwrap()]), 0);
    }
    let names = |d: &Path| {
        let mut v: Vec<String> =
            fs::read_dir(d).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
        v.sort();
        v
    };
    assert_eq!(names(a.path()), names(b.path()));
}
