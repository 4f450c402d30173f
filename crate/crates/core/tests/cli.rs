//! The `ptl` command line, driven in-process.

use std::fs;
use std::path::{Path, PathBuf};

use ptl::cli::{main_with_args, EXIT_ERROR, EXIT_FALSE, EXIT_TRUE};
use ptl::suite::SuiteSummary;
use serde_json::Value;
use tempfile::TempDir;

fn ptl(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("ptl").chain(args.iter().copied()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", s(&out)]);
    assert_eq!(ptl(&all), EXIT_TRUE, "gen {args:?}");
    out
}

fn element_count(p: &Path) -> usize {
    read_json(p)["elements"].as_array().unwrap().len()
}

#[test]
fn gen_sizes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let nc = gen(&dir, "nc.json", &["nc", "--type", "A", "--n", "4"]);
    let inj = gen(&dir, "inj.json", &["inj", "--n", "3"]);
    let b3 = gen(&dir, "b3.json", &["boolean", "--n", "3"]);
    assert_eq!(element_count(&nc), 14);
    assert_eq!(element_count(&inj), 16);
    assert_eq!(element_count(&b3), 8);

    for (first, args) in [(&nc, ["nc", "--type", "A", "--n", "4"].as_slice()), (&inj, &["inj", "--n", "3"])] {
        let again = gen(&dir, "again.json", args);
        assert_eq!(fs::read(first).unwrap(), fs::read(&again).unwrap());
    }
}

#[test]
fn gen_products_and_sums_of_files() {
    let dir = tempfile::tempdir().unwrap();
    let inj = gen(&dir, "i2.json", &["inj", "--n", "2"]);
    let chain = dir.path().join("chain.json");
    fs::write(&chain, r#"{"elements":["0","1"],"covers":[[0,1]]}"#).unwrap();
    let prod = gen(&dir, "prod.json", &["product", s(&inj), s(&chain)]);
    assert_eq!(element_count(&prod), 10);
    let sum = gen(&dir, "sum.json", &["osum", s(&chain), s(&chain)]);
    assert_eq!(element_count(&sum), 4);
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let nc = gen(&dir, "nc_a4.json", &["nc", "--type", "A", "--n", "4"]);
    assert_eq!(ptl(&["check", "2cm", s(&nc), "--out", s(&report)]), EXIT_TRUE);
    let r = read_json(&report);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["kind"], "2cm");

    let chain = dir.path().join("chain2.json");
    fs::write(&chain, r#"{"elements":["0","1"],"covers":[[0,1]]}"#).unwrap();
    assert_eq!(ptl(&["check", "2cm", s(&chain), "--out", s(&report)]), EXIT_FALSE);
    assert_eq!(read_json(&report)["verdict"], false);

    assert_eq!(ptl(&["check", "kreweras", "--type", "B", "--n", "3", "--out", s(&report)]), EXIT_TRUE);
    assert_eq!(ptl(&["check", "certificate", "--n", "3", "--out", s(&report)]), EXIT_TRUE);
    assert_eq!(ptl(&["check", "fiber-claim", "--n", "4", "--out", s(&report)]), EXIT_TRUE);
}

#[test]
fn falsified_corollary_exits_false_with_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let args =
        ["check", "cor-bounded", "--builtin", "punctured-word-deletion", "--n", "3", "--x", "1", "--out", s(&report)];
    assert_eq!(ptl(&args), EXIT_FALSE);
    let r = read_json(&report);
    assert_eq!(r["verdict"], false);
    assert_eq!(r["report"]["conclusion_holds"], false);
    assert!(r["report"]["hypotheses"].as_array().unwrap().iter().all(|h| h["holds"] == true));

    let args =
        ["check", "cor-bounded", "--builtin", "punctured-word-deletion", "--n", "3", "--x", "12", "--out", s(&report)];
    assert_eq!(ptl(&args), EXIT_TRUE);
}

#[test]
fn errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    let cyclic = dir.path().join("cyclic.json");
    fs::write(&cyclic, r#"{"elements":["a","b"],"covers":[[0,1],[1,0]]}"#).unwrap();
    assert_eq!(ptl(&["check", "cm", s(&missing)]), EXIT_ERROR);
    assert_eq!(ptl(&["check", "cm", s(&garbage)]), EXIT_ERROR);
    assert_eq!(ptl(&["check", "cm", s(&cyclic)]), EXIT_ERROR);
    assert_eq!(ptl(&["check", "kreweras", "--type", "A"]), EXIT_ERROR);
    assert_eq!(ptl(&["gen", "nc", "--type", "A", "--n", "99"]), EXIT_ERROR);
    assert_eq!(ptl(&["no-such-command"]), EXIT_ERROR);
}

#[test]
fn homology_and_mobius_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let triangle = dir.path().join("triangle.json");
    fs::write(&triangle, r#"{"vertices":3,"facets":[[0,1],[1,2],[0,2]]}"#).unwrap();
    assert_eq!(ptl(&["homology", s(&triangle), "--coefficients", "z", "--out", s(&out)]), EXIT_TRUE);
    assert_eq!(read_json(&out)["betti"]["1"], 1);
    assert_eq!(ptl(&["homology", s(&triangle), "--out", s(&out)]), EXIT_TRUE);
    let both = read_json(&out);
    assert_eq!(both["integers"], both["rationals"]);

    let b3 = gen(&dir, "b3.json", &["boolean", "--n", "3"]);
    assert_eq!(ptl(&["homology", s(&b3), "--out", s(&out)]), EXIT_TRUE);
    assert_eq!(ptl(&["mobius", s(&b3), "--out", s(&out)]), EXIT_TRUE);
    let m = read_json(&out);
    let key = format!("{},{}", m["bottom"], m["top"]);
    assert_eq!(m["values"][key.as_str()], -1);
}

#[test]
fn check_cache_survives_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let b4 = gen(&dir, "b4.json", &["boolean", "--n", "4"]);
    let run = |out: &Path| ptl(&["check", "2cm", s(&b4), "--cache-dir", s(&cache), "--out", s(out)]);

    assert_eq!(run(&first), EXIT_TRUE);
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!entries.is_empty());
    assert_eq!(run(&second), EXIT_TRUE);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());

    for e in &entries {
        fs::write(e, b"\x00garbage").unwrap();
    }
    assert_eq!(run(&second), EXIT_TRUE);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

fn summary(path: &Path) -> SuiteSummary {
    serde_json::from_str::<SuiteSummary>(&fs::read_to_string(path).unwrap()).unwrap().without_timestamp()
}

#[test]
fn suite_with_reduced_config_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"inj_n": 2, "nc_a_n": 4, "nc_b_n": 3, "boolean_n": 4, "random_pairs": 500}"#).unwrap();
    let plain = dir.path().join("plain.json");
    let cached = dir.path().join("cached.json");
    let table = dir.path().join("table.txt");
    let cache = dir.path().join("cache");
    let only = "1,2,3,9";

    let base = ["suite", "--config", s(&config), "--only", only, "--table", s(&table)];
    let mut args = base.to_vec();
    args.extend_from_slice(&["--out", s(&plain)]);
    assert_eq!(ptl(&args), EXIT_TRUE);
    let mut args = base.to_vec();
    args.extend_from_slice(&["--cache-dir", s(&cache), "--out", s(&cached)]);
    assert_eq!(ptl(&args), EXIT_TRUE);
    assert_eq!(ptl(&args), EXIT_TRUE);
    let (a, b) = (summary(&plain), summary(&cached));
    assert_eq!(a.criteria, b.criteria);
    assert_eq!(b.config.cache_dir.as_deref(), Some(cache.as_path()));

    let sum = summary(&plain);
    assert!(sum.passed);
    assert_eq!(sum.criteria.iter().map(|c| c.id).collect::<Vec<_>>(), [1, 2, 3, 9]);
    assert!(fs::read_to_string(&table).unwrap().contains("overall: PASS"));
}

#[test]
fn suite_writes_falsification_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.json");
    let bundles = dir.path().join("bundles");
    let table = dir.path().join("table.txt");
    let code =
        ptl(&["suite", "--small", "--only", "6", "--bundle-dir", s(&bundles), "--table", s(&table), "--out", s(&out)]);
    assert_eq!(code, EXIT_FALSE);
    let sum = summary(&out);
    assert_eq!(sum.falsifications.len(), 2);
    let written: Vec<_> = fs::read_dir(&bundles).unwrap().collect();
    assert_eq!(written.len(), 2);
}

#[test]
fn bad_suite_config_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"inj_n": 2, "no_such_field": 1}"#).unwrap();
    assert_eq!(ptl(&["suite", "--config", s(&config), "--only", "3"]), EXIT_ERROR);
    fs::write(&config, r#"{"nc_a_n": 100}"#).unwrap();
    assert_eq!(ptl(&["suite", "--config", s(&config), "--only", "1"]), EXIT_ERROR);
}
