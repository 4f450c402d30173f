//! The acceptance matrix: theorem-by-theorem verification at configured
//! sizes, with a machine-readable summary and a human-readable table.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cache::ResultCache;
use crate::cm::{CmChecker, CmReport};
use crate::constructible::{certificate_for_in, verify_certificate};
use crate::coxeter::{self, CoxeterType, GroupElement, Permutation};
use crate::fiber::{FiberTheoremReport, FiberVerifier};
use crate::homology::{Coefficients, SimplicialComplex, DEFAULT_DIMENSION_CAP};
use crate::oracle;
use crate::poset::{mobius_hat, Poset, PosetMap, PosetMapJson};
use crate::words::{self, without_minimum_members};

type PosetBuilder = Box<dyn Fn() -> Result<Poset, String> + Sync>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientChoice {
    Q,
    Z,
    #[default]
    Both,
}

impl CoefficientChoice {
    pub fn list(self) -> Vec<Coefficients> {
        match self {
            CoefficientChoice::Q => vec![Coefficients::Rationals],
            CoefficientChoice::Z => vec![Coefficients::Integers],
            CoefficientChoice::Both => vec![Coefficients::Rationals, Coefficients::Integers],
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Sizes and options of a suite run. Every field is echoed in the summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Largest `n` for the type A non-crossing partition lattices.
    pub nc_a_n: usize,
    pub nc_b_n: usize,
    /// Largest `n` for the double Cohen-Macaulayness check of `I_n - {∅}`.
    pub inj_n: usize,
    pub boolean_n: usize,
    pub fixpoint_a_n: usize,
    pub fixpoint_b_n: usize,
    /// Largest `n` for word-deletion maps, certificates and sphere counts.
    pub word_n: usize,
    pub cycle_a_n: usize,
    pub cycle_b_n: usize,
    pub oracle_exhaustive_n: usize,
    pub oracle_random_sizes: Vec<usize>,
    pub random_pairs: u64,
    pub seed: u64,
    pub coefficients: CoefficientChoice,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub dim_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            nc_a_n: 6,
            nc_b_n: 4,
            inj_n: 4,
            boolean_n: 5,
            fixpoint_a_n: 7,
            fixpoint_b_n: 5,
            word_n: 5,
            cycle_a_n: 5,
            cycle_b_n: 4,
            oracle_exhaustive_n: 5,
            oracle_random_sizes: vec![6, 7],
            random_pairs: 100_000,
            seed: 0x5eed,
            coefficients: CoefficientChoice::Both,
            jobs: 0,
            cache_dir: None,
            dim_cap: DEFAULT_DIMENSION_CAP,
        }
    }
}

impl RunConfig {
    /// A configuration small enough for a quick smoke run.
    pub fn small() -> Self {
        RunConfig {
            nc_a_n: 4,
            nc_b_n: 3,
            inj_n: 2,
            boolean_n: 4,
            fixpoint_a_n: 5,
            fixpoint_b_n: 3,
            word_n: 3,
            cycle_a_n: 3,
            cycle_b_n: 2,
            oracle_exhaustive_n: 4,
            oracle_random_sizes: vec![6],
            random_pairs: 1_000,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        let caps = coxeter::Caps::default();
        let checks: [(&str, usize, usize, usize); 11] = [
            ("nc_a_n", self.nc_a_n, 3, caps.nc_a),
            ("nc_b_n", self.nc_b_n, 3, caps.nc_b),
            ("inj_n", self.inj_n, 2, words::DEFAULT_WORD_CAP),
            ("boolean_n", self.boolean_n, 3, 8),
            ("fixpoint_a_n", self.fixpoint_a_n, 1, caps.nc_a),
            ("fixpoint_b_n", self.fixpoint_b_n, 1, caps.nc_b),
            ("word_n", self.word_n, 2, words::DEFAULT_WORD_CAP),
            ("cycle_a_n", self.cycle_a_n, 2, caps.ideal_a),
            ("cycle_b_n", self.cycle_b_n, 2, caps.ideal_b),
            ("oracle_exhaustive_n", self.oracle_exhaustive_n, 1, 6),
            ("dim_cap", self.dim_cap, 1, 64),
        ];
        for (name, v, lo, hi) in checks {
            if v < lo || v > hi {
                return Err(SuiteError::BadConfig(format!("{name} = {v} is outside {lo}..={hi}")));
            }
        }
        if let Some(&n) = self.oracle_random_sizes.iter().find(|&&n| n == 0 || n > 12) {
            return Err(SuiteError::BadConfig(format!("oracle_random_sizes entry {n} is outside 1..=12")));
        }
        Ok(())
    }

    /// The parts of the configuration that change instance results
    /// without appearing in instance names.
    fn result_key(&self) -> impl Serialize {
        (self.coefficients, self.dim_cap, self.seed, self.random_pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub size: usize,
    pub passed: bool,
    pub detail: String,
    /// Set when the instance could not be evaluated.
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub instances: Vec<Instance>,
}

/// A fiber-theorem check whose hypotheses all held but whose conclusion
/// failed, with the map needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Falsification {
    pub criterion: u8,
    pub instance: String,
    pub check: String,
    pub report: FiberTheoremReport,
    pub map: PosetMapJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch; the only field that differs between
    /// identical runs.
    pub generated_at: u64,
    pub config: RunConfig,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
    pub falsifications: Vec<String>,
}

impl SuiteSummary {
    pub fn criterion(&self, id: u8) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }

    /// The summary with the timestamp zeroed, for comparisons.
    pub fn without_timestamp(&self) -> SuiteSummary {
        SuiteSummary { generated_at: 0, ..self.clone() }
    }
}

#[derive(Debug)]
pub struct SuiteRun {
    pub summary: SuiteSummary,
    pub bundles: Vec<Falsification>,
    pub timings: Vec<(u8, Duration)>,
    pub cache_hits: u64,
    pub cache_misses: u64,
}

impl SuiteRun {
    pub fn table(&self) -> String {
        render_table(&self.summary, &self.timings)
    }

    /// Writes one JSON file per falsification into `dir`.
    pub fn write_bundles(&self, dir: &Path) -> Result<Vec<PathBuf>, SuiteError> {
        fs::create_dir_all(dir)?;
        let mut out = Vec::new();
        for (i, b) in self.bundles.iter().enumerate() {
            let path = dir.join(format!("falsification-{:03}.json", i + 1));
            fs::write(&path, to_json_pretty(b)?)?;
            out.push(path);
        }
        Ok(out)
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "NC^A(n), NC^B(n) proper parts doubly CM"),
    (2, "I_n - {∅} doubly CM, deletions keep rank"),
    (3, "Boolean algebra proper parts doubly CM"),
    (4, "Kreweras fixed-point lemma"),
    (5, "Fiber-ideal claim for word deletion"),
    (6, "Interval theorem / bounded corollary soundness"),
    (7, "Product decomposition with a punctured point"),
    (8, "Strong constructibility certificates for I_n"),
    (9, "Sphere counts against derangement and Möbius oracles"),
    (10, "Brady criterion agrees with absolute order"),
    (11, "Γ(Δ,P) and Γ/G(Δ) doubly CM"),
];

/// Runs every criterion.
pub fn run_suite(config: &RunConfig) -> Result<SuiteRun, SuiteError> {
    run_criteria(config, &CRITERIA.map(|(id, _)| id))
}

/// Runs the selected criteria inside a thread pool of `config.jobs` workers.
pub fn run_criteria(config: &RunConfig, ids: &[u8]) -> Result<SuiteRun, SuiteError> {
    config.validate()?;
    let cache = ResultCache::from_option_or_env(config.cache_dir.as_deref())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SuiteError::ThreadPool(e.to_string()))?;
    let suite = Suite { config, cache: &cache };
    let mut criteria = Vec::new();
    let mut bundles = Vec::new();
    let mut timings = Vec::new();
    for &(id, title) in CRITERIA.iter().filter(|(id, _)| ids.contains(id)) {
        let start = Instant::now();
        let outcomes = pool.install(|| suite.criterion(id));
        let mut instances = Vec::new();
        for o in outcomes {
            bundles.extend(o.falsifications);
            instances.push(o.instance);
        }
        let passed = !instances.is_empty() && instances.iter().all(|i| i.passed);
        log::info!("criterion {id}: {}", if passed { "pass" } else { "FAIL" });
        criteria.push(CriterionResult { id, title: title.to_string(), passed, instances });
        timings.push((id, start.elapsed()));
    }
    for b in &bundles {
        log::error!("FALSIFICATION in {} ({}): {}", b.instance, b.check, b.report.theorem);
    }
    let summary = SuiteSummary {
        tool: "ptl".to_string(),
        version: VERSION.to_string(),
        generated_at: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        config: config.clone(),
        passed: criteria.iter().all(|c| c.passed),
        falsifications: bundles.iter().map(|b| format!("{}: {}", b.instance, b.check)).collect(),
        criteria,
    };
    Ok(SuiteRun { summary, bundles, timings, cache_hits: cache.hits(), cache_misses: cache.misses() })
}

pub fn to_json_pretty<T: Serialize>(v: &T) -> Result<String, serde_json::Error> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn render_table(summary: &SuiteSummary, timings: &[(u8, Duration)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>3}  {:<52} {:<6} {:>9} {:>9}", "#", "criterion", "result", "instances", "time");
    for c in &summary.criteria {
        let ok = c.instances.iter().filter(|i| i.passed).count();
        let t = timings
            .iter()
            .find(|(id, _)| *id == c.id)
            .map_or(String::from("-"), |(_, d)| format!("{:.1}s", d.as_secs_f64()));
        let _ = writeln!(
            out,
            "{:>3}  {:<52} {:<6} {:>9} {:>9}",
            c.id,
            c.title,
            if c.passed { "PASS" } else { "FAIL" },
            format!("{ok}/{}", c.instances.len()),
            t
        );
        for i in &c.instances {
            let mark = if i.error.is_some() {
                "ERR "
            } else if i.passed {
                "ok  "
            } else {
                "FAIL"
            };
            let _ = writeln!(
                out,
                "       {mark} {:<44} |P|={:<5} {}",
                i.name,
                i.size,
                i.error.as_deref().unwrap_or(&i.detail)
            );
        }
    }
    let _ = writeln!(out, "overall: {}", if summary.passed { "PASS" } else { "FAIL" });
    if !summary.falsifications.is_empty() {
        let _ = writeln!(out, "falsifications: {}", summary.falsifications.len());
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Outcome {
    instance: Instance,
    falsifications: Vec<Falsification>,
}

impl Outcome {
    fn plain(instance: Instance) -> Self {
        Outcome { instance, falsifications: Vec::new() }
    }
}

fn evaluate(name: String, size: usize, f: impl FnOnce() -> Result<(bool, String), String>) -> Instance {
    match f() {
        Ok((passed, detail)) => Instance { name, size, passed, detail, error: None },
        Err(e) => Instance { name, size, passed: false, detail: String::new(), error: Some(e) },
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn coeff_tag(c: Coefficients) -> &'static str {
    match c {
        Coefficients::Rationals => "Q",
        Coefficients::Integers => "Z",
    }
}

pub fn describe_cm(r: &CmReport) -> String {
    if r.verdict {
        return format!("holds ({} intervals)", r.intervals_checked);
    }
    let mut s = match r.reason {
        Some(reason) => format!("fails: {reason:?}"),
        None => "fails".to_string(),
    };
    if !r.removed.is_empty() {
        let _ = write!(s, " after removing {{{}}}", r.removed.join(", "));
    }
    if let Some(fi) = &r.failing_interval {
        let _ = write!(s, "; interval ({}, {}) has homology in degree {} < {}", fi.x, fi.y, fi.degree, fi.dimension);
    }
    s
}

struct Suite<'a> {
    config: &'a RunConfig,
    cache: &'a ResultCache,
}

enum FiberCheck {
    Quillen,
    Interval { u: usize, v: usize, x: usize },
    Corollary { x: usize },
}

impl Suite<'_> {
    fn coefficients(&self) -> Vec<Coefficients> {
        self.config.coefficients.list()
    }

    fn checker(&self, c: Coefficients) -> CmChecker {
        CmChecker::new(c).with_dimension_cap(self.config.dim_cap)
    }

    fn verifier(&self) -> FiberVerifier {
        FiberVerifier::with_checkers(self.coefficients().into_iter().map(|c| self.checker(c)).collect())
    }

    fn cached(&self, id: u8, name: &str, f: impl FnOnce() -> Outcome) -> Outcome {
        let key = ("ptl-suite", VERSION, id, name, self.config.result_key());
        self.cache.get_or_compute(&key, || Ok::<_, ()>(f())).expect("infallible")
    }

    fn criterion(&self, id: u8) -> Vec<Outcome> {
        match id {
            1 => self.nc_doubly_cm(),
            2 => self.words_doubly_cm(),
            3 => self.boolean_doubly_cm(),
            4 => self.fixpoint(),
            5 => self.fiber_claim(),
            6 => self.soundness(),
            7 => self.martina(),
            8 => self.certificates(),
            9 => self.sphere_counts(),
            10 => self.brady_oracle(),
            11 => self.gamma_doubly_cm(),
            _ => Vec::new(),
        }
    }

    /// One instance per coefficient choice.
    fn doubly_cm(&self, id: u8, name: &str, build: impl Fn() -> Result<Poset, String> + Sync) -> Vec<Outcome> {
        self.coefficients()
            .into_par_iter()
            .map(|c| {
                let label = format!("{name} [{}]", coeff_tag(c));
                self.cached(id, &label, || {
                    let mut size = 0;
                    let inst = evaluate(label.clone(), 0, || {
                        let p = build()?;
                        size = p.len();
                        let r = self.checker(c).is_doubly_cm(&p).map_err(err)?;
                        Ok((r.verdict, describe_cm(&r)))
                    });
                    Outcome::plain(Instance { size, ..inst })
                })
            })
            .collect()
    }

    fn nc_doubly_cm(&self) -> Vec<Outcome> {
        let mut jobs: Vec<(CoxeterType, usize)> = (3..=self.config.nc_a_n).map(|n| (CoxeterType::A, n)).collect();
        jobs.extend((3..=self.config.nc_b_n).map(|n| (CoxeterType::B, n)));
        jobs.into_iter()
            .flat_map(|(ty, n)| {
                self.doubly_cm(1, &format!("proper part of NC^{ty}({n})"), move || {
                    let l = coxeter::nc_lattice(ty, n).map_err(err)?;
                    l.proper_part().ok_or_else(|| "lattice is not bounded".to_string())
                })
            })
            .collect()
    }

    fn words_doubly_cm(&self) -> Vec<Outcome> {
        let mut out = Vec::new();
        for n in 2..=self.config.inj_n {
            out.extend(self.doubly_cm(2, &format!("I_{n} - {{∅}}"), move || punctured_words(n)));
            let name = format!("rank of I_{n} - {{∅,x}} for every x");
            out.push(self.cached(2, &name, || {
                let mut size = 0;
                let inst = evaluate(name.clone(), 0, || {
                    let p = punctured_words(n)?;
                    size = p.len();
                    let rank = p.longest_chain();
                    let bad: Vec<&str> =
                        (0..p.len()).filter(|&x| p.remove(&[x]).longest_chain() != rank).map(|x| p.label(x)).collect();
                    let r = rank.map_or(-1, |r| r as i64);
                    Ok(if bad.is_empty() {
                        (true, format!("all {} deletions keep rank {r} (words of length 1..{n})", p.len()))
                    } else {
                        (false, format!("rank drops after deleting {}", bad.join(", ")))
                    })
                });
                Outcome::plain(Instance { size, ..inst })
            }));
        }
        out
    }

    fn boolean_doubly_cm(&self) -> Vec<Outcome> {
        (3..=self.config.boolean_n)
            .flat_map(|n| {
                self.doubly_cm(3, &format!("proper part of B_{n}"), move || {
                    Poset::boolean_algebra(n).proper_part().ok_or_else(|| "not bounded".to_string())
                })
            })
            .collect()
    }

    fn fixpoint(&self) -> Vec<Outcome> {
        let mut jobs: Vec<(CoxeterType, usize)> = (1..=self.config.fixpoint_a_n).map(|n| (CoxeterType::A, n)).collect();
        jobs.extend((1..=self.config.fixpoint_b_n).map(|n| (CoxeterType::B, n)));
        jobs.into_par_iter()
            .map(|(ty, n)| {
                let name = format!("fixed-point lemma, type {ty}, n = {n}");
                self.cached(4, &name, || {
                    let mut size = 0;
                    let inst = evaluate(name.clone(), 0, || {
                        let r = coxeter::verify_fixpoint_lemma(ty, n).map_err(err)?;
                        size = r.elements;
                        let detail = match &r.witness {
                            Some(w) => format!("counterexample: {w}"),
                            None => format!(
                                "(i), (ii), anti-automorphism and K^2 automorphism hold on {} elements",
                                r.elements
                            ),
                        };
                        Ok((r.passed, detail))
                    });
                    Outcome::plain(Instance { size, ..inst })
                })
            })
            .collect()
    }

    fn fiber_claim(&self) -> Vec<Outcome> {
        (2..=self.config.word_n)
            .into_par_iter()
            .map(|n| {
                let name = format!("word deletion, n = {n}");
                self.cached(5, &name, || {
                    let mut size = 0;
                    let inst = evaluate(name.clone(), 0, || {
                        let r = words::verify_word_deletion_claim(n).map_err(err)?;
                        size = r.targets_checked;
                        let detail = if r.passed {
                            format!("ideal identity and insertion union hold for {} targets", r.targets_checked)
                        } else {
                            format!("failures: {}", r.failures.join("; "))
                        };
                        Ok((r.passed, detail))
                    });
                    Outcome::plain(Instance { size, ..inst })
                })
            })
            .collect()
    }

    /// Runs fiber-theorem checks on one map and tallies falsifications.
    fn fiber_group(&self, name: &str, build: impl FnOnce() -> Result<(PosetMap, Vec<FiberCheck>), String>) -> Outcome {
        self.cached(6, name, || {
            let mut falsifications = Vec::new();
            let mut size = 0;
            let inst = evaluate(name.to_string(), 0, || {
                let (f, checks) = build()?;
                size = f.source().len();
                let verifier = self.verifier();
                let p = f.source();
                let results: Vec<(String, Result<FiberTheoremReport, String>)> = checks
                    .par_iter()
                    .map(|c| {
                        let (label, r) = match *c {
                            FiberCheck::Quillen => ("Quillen".to_string(), verifier.check_quillen(&f)),
                            FiberCheck::Interval { u, v, x } => (
                                format!("interval theorem on [{}, {}] at x = {}", show(p, u), show(p, v), show(p, x)),
                                verifier.check_interval_theorem(&f, u, v, x, f.apply(x)),
                            ),
                            FiberCheck::Corollary { x } => (
                                format!("bounded corollary at x = {}", show(p, x)),
                                verifier.check_corollary_bounded(&f, x, f.apply(x)),
                            ),
                        };
                        (label, r.map_err(err))
                    })
                    .collect();
                let mut hypotheses = 0;
                let mut errors = Vec::new();
                let mut falsified = Vec::new();
                for (label, r) in results {
                    match r {
                        Ok(r) => {
                            if r.hypotheses_hold() {
                                hypotheses += 1;
                            }
                            if r.is_falsification() {
                                falsified.push(label.clone());
                                falsifications.push(Falsification {
                                    criterion: 6,
                                    instance: name.to_string(),
                                    check: label,
                                    report: r,
                                    map: f.to_json(),
                                });
                            }
                        }
                        Err(e) => errors.push(format!("{label}: {e}")),
                    }
                }
                if !errors.is_empty() {
                    return Err(errors.join("; "));
                }
                let mut detail = format!(
                    "{} checks, {hypotheses} with all hypotheses true, {} falsified",
                    checks.len(),
                    falsified.len()
                );
                if !falsified.is_empty() {
                    let _ = write!(detail, ": {}", falsified.join("; "));
                }
                Ok((falsified.is_empty(), detail))
            });
            Outcome { instance: Instance { size, ..inst }, falsifications }
        })
    }

    fn soundness(&self) -> Vec<Outcome> {
        let mut groups: Vec<Box<dyn Fn() -> Outcome + Send + Sync + '_>> = Vec::new();
        for n in 2..=self.config.word_n {
            groups.push(Box::new(move || {
                self.fiber_group(&format!("word deletion I_{n} -> I_{} x 2, Quillen and interval", n - 1), || {
                    let f = words::word_deletion_map(n).map_err(err)?;
                    let p = f.source();
                    let u = p.require("").map_err(err)?;
                    let top: String = (1..=n).map(|a| a.to_string()).collect();
                    let v = p.require(&top).map_err(err)?;
                    let mut checks = vec![FiberCheck::Quillen];
                    checks.extend((0..p.len()).filter(|&x| p.lt(u, x) && p.lt(x, v)).map(|x| FiberCheck::Interval {
                        u,
                        v,
                        x,
                    }));
                    Ok((f, checks))
                })
            }));
            groups.push(Box::new(move || {
                self.fiber_group(&format!("punctured word deletion I_{n} - {{∅}}, corollary"), || {
                    let f = words::word_deletion_map(n).map_err(err)?;
                    let g = f.restrict_to_image(&without_minimum_members(f.source()));
                    let p = g.source();
                    let xs: Vec<usize> = if n <= 4 {
                        (0..p.len()).collect()
                    } else {
                        (1..=n)
                            .map(|k| p.require(&(1..=k).map(|a| a.to_string()).collect::<String>()))
                            .collect::<Result<_, _>>()
                            .map_err(err)?
                    };
                    let mut checks = vec![FiberCheck::Quillen];
                    checks.extend(xs.into_iter().map(|x| FiberCheck::Corollary { x }));
                    Ok((g, checks))
                })
            }));
        }
        let mut cycle: Vec<(CoxeterType, usize)> = (2..=self.config.cycle_a_n).map(|n| (CoxeterType::A, n)).collect();
        cycle.extend((2..=self.config.cycle_b_n).map(|n| (CoxeterType::B, n)));
        for (ty, n) in cycle {
            groups.push(Box::new(move || {
                self.fiber_group(&format!("cycle deletion J_{n} -> J_{} x 2, type {ty}", n - 1), || {
                    let f = coxeter::cycle_deletion_map(ty, n).map_err(err)?;
                    let p = f.source();
                    let c = coxeter::nc_lattice(ty, n).map_err(err)?;
                    let c_label = c.maximum().map(|m| c.label(m).to_string()).ok_or("no Coxeter element")?;
                    let v = p.require(&c_label).map_err(err)?;
                    let u = p.minimum().ok_or("no identity")?;
                    let mut checks = vec![FiberCheck::Quillen];
                    checks.extend((0..p.len()).filter(|&x| p.lt(u, x) && p.lt(x, v)).map(|x| FiberCheck::Interval {
                        u,
                        v,
                        x,
                    }));
                    Ok((f, checks))
                })
            }));
        }
        for (seed_name, delta) in seed_complexes() {
            let n = delta.vertex_count();
            let variants: [(&str, GammaVariant); 3] = [
                ("Γ(Δ)", GammaVariant::Plain),
                ("Γ(Δ,P), P: 1 < 2", GammaVariant::Poset),
                ("Γ/G(Δ), G a path", GammaVariant::Path),
            ];
            for (vname, variant) in variants {
                let delta = delta.clone();
                groups.push(Box::new(move || {
                    self.fiber_group(&format!("content map {vname} -> Δ, Δ = {seed_name}"), || {
                        let gamma = variant.build(&delta, n).map_err(err)?;
                        let f = words::content_map(&gamma, &delta).map_err(err)?;
                        let g = f
                            .restrict(&without_minimum_members(f.source()), &without_minimum_members(f.target()))
                            .map_err(err)?;
                        let mut checks = vec![FiberCheck::Quillen];
                        checks.extend((0..g.source().len()).map(|x| FiberCheck::Corollary { x }));
                        Ok((g, checks))
                    })
                }));
            }
        }
        groups.into_iter().map(|g| g()).collect()
    }

    fn martina(&self) -> Vec<Outcome> {
        let cases: Vec<(&str, PosetBuilder)> = vec![
            ("B_3", Box::new(|| Ok(Poset::boolean_algebra(3)))),
            ("B_4", Box::new(|| Ok(Poset::boolean_algebra(4)))),
            ("I_3", Box::new(|| words::injective_word_poset(3).map_err(err))),
            ("NC^A(4) = <c>", Box::new(|| coxeter::nc_lattice(CoxeterType::A, 4).map_err(err))),
        ];
        cases
            .into_par_iter()
            .map(|(pname, build)| {
                let name = format!("P = {pname}, every x in P minus its extremes");
                self.cached(7, &name, || {
                    let mut size = 0;
                    let inst = evaluate(name.clone(), 0, || {
                        let p = build()?;
                        size = p.len();
                        let lo = p.minimum().ok_or("no minimum")?;
                        let hi = p.maximum();
                        let verifier = self.verifier();
                        let results: Vec<(usize, Result<bool, String>)> = (0..p.len())
                            .into_par_iter()
                            .filter(|&x| x != lo && Some(x) != hi)
                            .map(|x| (x, verifier.verify_martina(&p, x).map(|r| r.passed).map_err(err)))
                            .collect();
                        // failing x grouped by message
                        let mut failures: BTreeMap<String, Vec<&str>> = BTreeMap::new();
                        for (x, r) in &results {
                            match r {
                                Ok(true) => {}
                                Ok(false) => {
                                    failures.entry("conclusion fails".to_string()).or_default().push(p.label(*x))
                                }
                                Err(e) => failures.entry(e.clone()).or_default().push(p.label(*x)),
                            }
                        }
                        let failed: usize = failures.values().map(Vec::len).sum();
                        Ok(if failures.is_empty() {
                            (
                                true,
                                format!(
                                    "identity, piece ranks and CM conclusions hold for {} choices of x",
                                    results.len()
                                ),
                            )
                        } else {
                            let groups: Vec<String> =
                                failures.iter().map(|(msg, xs)| format!("x in {{{}}}: {msg}", xs.join(", "))).collect();
                            (false, format!("{failed} of {} fail; {}", results.len(), groups.join("; ")))
                        })
                    });
                    Outcome::plain(Instance { size, ..inst })
                })
            })
            .collect()
    }

    fn certificates(&self) -> Vec<Outcome> {
        (1..=self.config.word_n)
            .into_par_iter()
            .map(|n| {
                let name = format!("certificate for I_{n}");
                self.cached(8, &name, || {
                    let mut size = 0;
                    let inst = evaluate(name.clone(), 0, || {
                        let (p, cert) = certificate_for_in(n).map_err(err)?;
                        size = p.len();
                        let v = verify_certificate(&p, &cert);
                        if !v.valid {
                            return Ok((false, format!("invalid at {:?}: {}", v.path, v.reason.unwrap_or_default())));
                        }
                        for c in self.coefficients() {
                            let r = self.checker(c).is_cm(&p).map_err(err)?;
                            if !r.verdict {
                                return Ok((
                                    false,
                                    format!(
                                        "verified certificate but not CM over {}: {}",
                                        coeff_tag(c),
                                        describe_cm(&r)
                                    ),
                                ));
                            }
                        }
                        Ok((
                            true,
                            format!(
                                "{} leaves, depth {}, {} nodes checked; CM confirmed",
                                cert.leaf_count(),
                                cert.depth(),
                                v.nodes_checked
                            ),
                        ))
                    });
                    Outcome::plain(Instance { size, ..inst })
                })
            })
            .collect()
    }

    fn sphere_counts(&self) -> Vec<Outcome> {
        let mut jobs: Vec<(bool, usize)> = (3..=self.config.word_n).map(|n| (true, n)).collect();
        jobs.extend((3..=self.config.nc_a_n).map(|n| (false, n)));
        jobs.into_par_iter()
            .map(|(is_words, n)| {
                let name = if is_words {
                    format!("I_{n} - {{∅}} vs derangements")
                } else {
                    format!("proper part of NC^A({n}) vs Möbius")
                };
                self.cached(9, &name, || {
                    let mut size = 0;
                    let inst = evaluate(name.clone(), 0, || {
                        let p = if is_words {
                            punctured_words(n)?
                        } else {
                            coxeter::nc_lattice(CoxeterType::A, n).map_err(err)?.proper_part().ok_or("not bounded")?
                        };
                        size = p.len();
                        let w = self.checker(Coefficients::Integers).wedge_verdict(&p).map_err(err)?;
                        let expected =
                            if is_words { oracle::derangements(n as u64) } else { mobius_hat(&p).unsigned_abs() };
                        let mut ok = w.is_wedge && w.sphere_count == expected;
                        let mut detail = format!(
                            "wedge = {}, {} spheres of dimension {}, oracle {}",
                            w.is_wedge, w.sphere_count, w.dimension, expected
                        );
                        if !is_words {
                            let catalan = oracle::catalan(n as u64 - 1);
                            ok &= expected == catalan;
                            let _ = write!(detail, ", Catalan({}) = {catalan}", n - 1);
                        }
                        Ok((ok, detail))
                    });
                    Outcome::plain(Instance { size, ..inst })
                })
            })
            .collect()
    }

    fn brady_oracle(&self) -> Vec<Outcome> {
        let mut out: Vec<Outcome> = (1..=self.config.oracle_exhaustive_n)
            .into_par_iter()
            .map(|n| {
                let name = format!("all pairs in S_{n}");
                self.cached(10, &name, || {
                    let all = Permutation::all(n);
                    let size = all.len();
                    Outcome::plain(evaluate_with_size(name.clone(), size, || {
                        let mut pairs = 0u64;
                        let mut bad = Vec::new();
                        for u in &all {
                            for v in &all {
                                pairs += 1;
                                if coxeter::brady_leq_type_a(u, v) != coxeter::abs_leq(u, v).map_err(err)? {
                                    bad.push(format!("{u} vs {v}"));
                                }
                            }
                        }
                        Ok(disagreements(pairs, bad))
                    }))
                })
            })
            .collect();
        for &n in &self.config.oracle_random_sizes {
            let name = format!("{} random pairs in S_{n}", self.config.random_pairs);
            let seed = self.config.seed ^ n as u64;
            let pairs = self.config.random_pairs;
            out.push(self.cached(10, &name, || {
                Outcome::plain(evaluate_with_size(name.clone(), pairs as usize, || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let mut images: Vec<u8> = (1..=n as u8).collect();
                    let samples: Vec<(Permutation, Permutation)> = (0..pairs)
                        .map(|_| {
                            images.shuffle(&mut rng);
                            let u = Permutation::new(images.clone());
                            images.shuffle(&mut rng);
                            let v = Permutation::new(images.clone());
                            (u, v)
                        })
                        .map(|(u, v)| Ok::<_, String>((u.map_err(err)?, v.map_err(err)?)))
                        .collect::<Result<_, _>>()?;
                    let bad: Vec<String> = samples
                        .par_iter()
                        .filter(|(u, v)| coxeter::abs_leq(u, v).map_or(true, |a| a != coxeter::brady_leq_type_a(u, v)))
                        .map(|(u, v)| format!("{u} vs {v}"))
                        .collect();
                    Ok(disagreements(pairs, bad))
                }))
            }));
        }
        out
    }

    fn gamma_doubly_cm(&self) -> Vec<Outcome> {
        let delta = boundary_of_simplex(4);
        let mut out = self.doubly_cm(11, "Γ(Δ,P) - {∅}, Δ = ∂(3-simplex), P: 1 < 2, 3 < 4", {
            let delta = delta.clone();
            move || {
                let p = Poset::from_covers(&["1", "2", "3", "4"], &[("1", "2"), ("3", "4")]).map_err(err)?;
                Ok(words::gamma_poset_restricted(&delta, &p).map_err(err)?.without_empty())
            }
        });
        out.extend(self.doubly_cm(11, "Γ/G(Δ) - {∅}, Δ = ∂(3-simplex), G: 1-2-3-4", move || {
            Ok(words::gamma_quotient(&delta, &path_edges(4)).map_err(err)?.without_empty())
        }));
        out
    }
}

fn evaluate_with_size(name: String, size: usize, f: impl FnOnce() -> Result<(bool, String), String>) -> Instance {
    Instance { size, ..evaluate(name, 0, f) }
}

fn disagreements(pairs: u64, bad: Vec<String>) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{pairs} pairs, no disagreement"))
    } else {
        let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
        (false, format!("{} of {pairs} pairs disagree, e.g. {}", bad.len(), shown.join("; ")))
    }
}

fn show(p: &Poset, x: usize) -> String {
    let l = p.label(x);
    if l.is_empty() {
        "∅".to_string()
    } else {
        l.to_string()
    }
}

fn punctured_words(n: usize) -> Result<Poset, String> {
    let p = words::injective_word_poset(n).map_err(err)?;
    Ok(p.induced(&without_minimum_members(&p)))
}

#[derive(Clone, Copy)]
enum GammaVariant {
    Plain,
    Poset,
    Path,
}

impl GammaVariant {
    fn build(self, delta: &SimplicialComplex, n: usize) -> Result<words::CellFacePoset, words::WordsError> {
        match self {
            GammaVariant::Plain => words::gamma_complex(delta),
            GammaVariant::Poset => {
                let labels: Vec<String> = (1..=n).map(|a| a.to_string()).collect();
                let p = Poset::from_index_covers(labels, &[(0, 1)])?;
                words::gamma_poset_restricted(delta, &p)
            }
            GammaVariant::Path => words::gamma_quotient(delta, &path_edges(n)),
        }
    }
}

fn path_edges(n: usize) -> Vec<(u8, u8)> {
    (1..n as u8).map(|a| (a, a + 1)).collect()
}

/// The boundary of the simplex on `n` vertices.
pub fn boundary_of_simplex(n: usize) -> SimplicialComplex {
    let facets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
    SimplicialComplex::new(n, facets).expect("valid complex")
}

/// The four seed complexes of the soundness harness.
pub fn seed_complexes() -> Vec<(&'static str, SimplicialComplex)> {
    let cycle =
        |n: usize| SimplicialComplex::new(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()).expect("valid complex");
    let octahedron = {
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(6, facets).expect("valid complex")
    };
    vec![
        ("hollow triangle", cycle(3)),
        ("4-cycle", cycle(4)),
        ("∂(3-simplex)", boundary_of_simplex(4)),
        ("octahedron boundary", octahedron),
    ]
}

/// Reads a [`RunConfig`] from JSON.
pub fn load_config(path: &Path) -> Result<RunConfig, SuiteError> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}
