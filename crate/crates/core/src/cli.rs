//! The `ptl` command line: `gen`, `check`, `suite`, `homology`, `mobius`.
//!
//! Exit status is 0 when a check's verdict is true, 2 when it is false
//! (including falsified theorem instances) and 1 on errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cache::ResultCache;
use crate::cm::CmChecker;
use crate::constructible::{self, Certificate};
use crate::coxeter::{self, CoxeterType};
use crate::fiber::FiberVerifier;
use crate::homology::{self, Coefficients, HomologyProfile, SimplicialComplex, DEFAULT_DIMENSION_CAP};
use crate::poset::{mobius, Poset, PosetJson, PosetMap, PosetMapJson};
use crate::suite::{self, CoefficientChoice, RunConfig};
use crate::words::{self, without_minimum_members};

#[derive(Debug, Parser)]
#[command(name = "ptl", version, about = "Posets, order complexes and Cohen-Macaulay verification")]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = CoefficientChoice::Both)]
    pub coefficients: CoefficientChoice,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Highest homology degree computed.
    #[arg(long = "cap-dim", global = true, default_value_t = DEFAULT_DIMENSION_CAP)]
    pub cap_dim: usize,
    #[arg(long, global = true, env = "PTL_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a poset and write it as JSON.
    Gen(GenArgs),
    /// Run a verifier; exit 0 on a true verdict, 2 on a false one.
    Check(CheckArgs),
    /// Run the acceptance matrix.
    Suite(SuiteArgs),
    /// Reduced homology of a poset's order complex or of a complex.
    Homology(InputArgs),
    /// Möbius function of a poset (bounded extension if not bounded).
    Mobius(InputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Nc,
    Inj,
    Boolean,
    AbsIdeal,
    Gamma,
    GammaP,
    GammaG,
    Product,
    Osum,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    /// Coxeter type, `A` or `B`
    #[arg(long = "type", value_parser = parse_type)]
    pub ty: Option<CoxeterType>,
    /// Size parameter of the family
    #[arg(long)]
    pub n: Option<usize>,
    /// Simplicial complex JSON for the Γ families.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Vertex poset JSON (labels 1..n) for `gamma-p`.
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Graph edge list JSON (`[[1,2],[2,3]]`) for `gamma-g`.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// Two poset files for `product` and `osum`.
    pub inputs: Vec<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Cm,
    #[value(name = "2cm")]
    #[serde(rename = "2cm")]
    DoublyCm,
    Kcm,
    Wedge,
    Quillen,
    ThmInterval,
    CorBounded,
    KProp,
    Martina,
    Kreweras,
    FiberClaim,
    Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BuiltinMap {
    /// `I_n -> I_{n-1} x 2`.
    WordDeletion,
    /// Word deletion restricted to `I_n - {∅}`.
    PuncturedWordDeletion,
    /// `J_n -> J_{n-1} x 2` for `--type`.
    CycleDeletion,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckArgs {
    pub kind: CheckKind,
    /// Poset JSON, or poset map JSON for the fiber-theorem kinds.
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Element label(s) `x` (repeat for `k-prop`).
    #[arg(long)]
    pub x: Vec<String>,
    /// Target label(s) `q0`; default `f(x)`.
    #[arg(long)]
    pub q: Vec<String>,
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub v: Option<String>,
    /// Coxeter type, `A` or `B`
    #[arg(long = "type", value_parser = parse_type)]
    #[serde(serialize_with = "ser_type")]
    pub ty: Option<CoxeterType>,
    /// Size parameter for built-in maps and sweeps
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub builtin: Option<BuiltinMap>,
    /// Certificate JSON for `certificate`.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    /// For cm, 2cm, kcm and wedge: check the poset as given instead of
    /// removing its minimum and maximum.
    #[arg(long)]
    pub keep_extrema: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// RunConfig JSON; command-line options override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Start from the reduced smoke-test sizes.
    #[arg(long)]
    pub small: bool,
    #[arg(long)]
    pub nc_a_n: Option<usize>,
    #[arg(long)]
    pub nc_b_n: Option<usize>,
    #[arg(long)]
    pub inj_n: Option<usize>,
    #[arg(long)]
    pub word_n: Option<usize>,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
    /// Write the human-readable table here (default: standard error).
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Write one JSON file per falsification into this directory.
    #[arg(long)]
    pub bundle_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub input: PathBuf,
}

fn parse_type(s: &str) -> Result<CoxeterType, String> {
    s.parse().map_err(|e: coxeter::CoxeterError| e.to_string())
}

fn ser_type<S: serde::Serializer>(t: &Option<CoxeterType>, s: S) -> Result<S::Ok, S::Error> {
    t.map(|t| t.to_string()).serialize(s)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Suite(#[from] suite::SuiteError),
    #[error("{0}")]
    Module(String),
}

fn module<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Module(e.to_string())
}

/// Result of `check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub kind: String,
    pub verdict: bool,
    pub report: Value,
}

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FALSE: i32 = 2;

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_TRUE };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build().map_err(module)?;
    pool.install(|| match &cli.command {
        Command::Gen(a) => {
            let json = cmd_gen(a)?;
            emit(cli.out.as_deref(), &json)?;
            Ok(EXIT_TRUE)
        }
        Command::Check(a) => {
            let out = cmd_check(cli, a)?;
            emit(cli.out.as_deref(), &suite::to_json_pretty(&out)?)?;
            Ok(if out.verdict { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Suite(a) => cmd_suite(cli, a),
        Command::Homology(a) => {
            let v = cmd_homology(&a.input, cli.coefficients, cli.cap_dim)?;
            emit(cli.out.as_deref(), &suite::to_json_pretty(&v)?)?;
            Ok(EXIT_TRUE)
        }
        Command::Mobius(a) => {
            let p = read_poset(&a.input)?;
            emit(cli.out.as_deref(), &suite::to_json_pretty(&mobius(&p))?)?;
            Ok(EXIT_TRUE)
        }
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

pub fn read_poset(path: &Path) -> Result<Poset, CliError> {
    Poset::from_json(&read_json::<PosetJson>(path)?).map_err(module)
}

/// Complex JSON as written by hand; normalized through
/// [`SimplicialComplex::new`].
#[derive(Deserialize)]
struct RawComplex {
    vertices: usize,
    facets: Vec<Vec<usize>>,
    #[serde(default)]
    void: bool,
}

impl RawComplex {
    fn build(self) -> Result<SimplicialComplex, CliError> {
        if self.void {
            return Ok(SimplicialComplex::void(self.vertices));
        }
        SimplicialComplex::new(self.vertices, self.facets).map_err(module)
    }
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    read_json::<RawComplex>(path)?.build()
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::BadParams(format!("missing --{flag}")))
}

fn require_path<'a>(v: &'a Option<PathBuf>, what: &str) -> Result<&'a Path, CliError> {
    v.as_deref().ok_or_else(|| CliError::BadParams(format!("missing {what}")))
}

/// Generates the requested poset as pretty JSON with a trailing newline.
/// The output depends only on the inputs.
pub fn cmd_gen(a: &GenArgs) -> Result<String, CliError> {
    let p = match a.family {
        Family::Nc => coxeter::nc_lattice(require(a.ty, "type")?, require(a.n, "n")?).map_err(module)?,
        Family::AbsIdeal => coxeter::coxeter_ideal(require(a.ty, "type")?, require(a.n, "n")?).map_err(module)?,
        Family::Inj => words::injective_word_poset(require(a.n, "n")?).map_err(module)?,
        Family::Boolean => {
            let n = require(a.n, "n")?;
            if n > 16 {
                return Err(CliError::BadParams(format!("boolean algebra of rank {n} is too large")));
            }
            Poset::boolean_algebra(n)
        }
        Family::Gamma => {
            words::gamma_complex(&read_complex(require_path(&a.complex, "--complex")?)?).map_err(module)?.poset
        }
        Family::GammaP => {
            let delta = read_complex(require_path(&a.complex, "--complex")?)?;
            let p = read_poset(require_path(&a.poset, "--poset")?)?;
            words::gamma_poset_restricted(&delta, &p).map_err(module)?.poset
        }
        Family::GammaG => {
            let delta = read_complex(require_path(&a.complex, "--complex")?)?;
            let edges: Vec<(u8, u8)> = read_json(require_path(&a.edges, "--edges")?)?;
            words::gamma_quotient(&delta, &edges).map_err(module)?.poset
        }
        Family::Product | Family::Osum => {
            let [l, r] = a.inputs.as_slice() else {
                return Err(CliError::BadParams("expected two poset files".to_string()));
            };
            let (l, r) = (read_poset(l)?, read_poset(r)?);
            if a.family == Family::Product {
                Poset::product(&l, &r)
            } else {
                Poset::ordinal_sum(&l, &r)
            }
        }
    };
    Ok(suite::to_json_pretty(&p.to_json())?)
}

fn file_digest(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    Ok(ResultCache::key(&bytes))
}

/// Runs a check, consulting the result cache when one is configured.
pub fn cmd_check(cli: &Cli, a: &CheckArgs) -> Result<CheckOutput, CliError> {
    let cache = ResultCache::from_option_or_env(cli.cache_dir.as_deref())?;
    let mut digests = Vec::new();
    for p in [&a.input, &a.cert].into_iter().flatten() {
        digests.push(file_digest(p)?);
    }
    let key = ("ptl-check", suite::VERSION, a, digests, cli.coefficients, cli.cap_dim);
    cache.get_or_compute(&key, || check_uncached(a, cli.coefficients, cli.cap_dim))
}

fn checkers(coefficients: CoefficientChoice, cap_dim: usize) -> Vec<CmChecker> {
    coefficients.list().into_iter().map(|c| CmChecker::new(c).with_dimension_cap(cap_dim)).collect()
}

fn output(kind: CheckKind, verdict: bool, report: impl Serialize) -> Result<CheckOutput, CliError> {
    let kind = serde_json::to_value(kind)?.as_str().unwrap_or_default().to_string();
    Ok(CheckOutput { kind, verdict, report: serde_json::to_value(report)? })
}

fn label_index(p: &Poset, label: &str) -> Result<usize, CliError> {
    p.require(label).map_err(module)
}

pub fn check_uncached(a: &CheckArgs, coefficients: CoefficientChoice, cap_dim: usize) -> Result<CheckOutput, CliError> {
    match a.kind {
        CheckKind::Cm | CheckKind::DoublyCm | CheckKind::Kcm => {
            let (p, stripped) = poset_for_cm(a)?;
            let k = match a.kind {
                CheckKind::Cm => 1,
                CheckKind::DoublyCm => 2,
                _ => require(a.k, "k")?,
            };
            let reports = checkers(coefficients, cap_dim)
                .iter()
                .map(|c| c.is_k_cm(&p, k))
                .collect::<Result<Vec<_>, _>>()
                .map_err(module)?;
            let verdict = reports.iter().all(|r| r.verdict);
            output(a.kind, verdict, CmCheckReport { removed_extrema: stripped, reports })
        }
        CheckKind::Wedge => {
            let (p, stripped) = poset_for_cm(a)?;
            let w =
                CmChecker::new(Coefficients::Integers).with_dimension_cap(cap_dim).wedge_verdict(&p).map_err(module)?;
            output(a.kind, w.is_wedge, WedgeReport { removed_extrema: stripped, wedge: w })
        }
        CheckKind::Quillen | CheckKind::ThmInterval | CheckKind::CorBounded | CheckKind::KProp => {
            let f = load_map(a)?;
            let verifier = FiberVerifier::with_checkers(checkers(coefficients, cap_dim));
            let (p, q) = (f.source(), f.target());
            let xs = a.x.iter().map(|l| label_index(p, l)).collect::<Result<Vec<_>, _>>()?;
            let qs = if a.q.is_empty() {
                xs.iter().map(|&x| f.apply(x)).collect()
            } else {
                a.q.iter().map(|l| label_index(q, l)).collect::<Result<Vec<_>, _>>()?
            };
            let single = |what: &str| -> Result<(usize, usize), CliError> {
                match (xs.as_slice(), qs.as_slice()) {
                    ([x], [q0]) => Ok((*x, *q0)),
                    _ => Err(CliError::BadParams(format!("{what} needs exactly one --x"))),
                }
            };
            let r = match a.kind {
                CheckKind::Quillen => verifier.check_quillen(&f),
                CheckKind::ThmInterval => {
                    let (x, q0) = single("thm-interval")?;
                    let u = label_index(p, a.u.as_deref().ok_or_else(|| CliError::BadParams("missing --u".into()))?)?;
                    let v = label_index(p, a.v.as_deref().ok_or_else(|| CliError::BadParams("missing --v".into()))?)?;
                    verifier.check_interval_theorem(&f, u, v, x, q0)
                }
                CheckKind::CorBounded => {
                    let (x, q0) = single("cor-bounded")?;
                    verifier.check_corollary_bounded(&f, x, q0)
                }
                _ => verifier.check_k_proposition(&f, &xs, &qs),
            }
            .map_err(module)?;
            output(a.kind, r.verdict(), r)
        }
        CheckKind::Martina => {
            let p = read_poset(require_path(&a.input, "poset file")?)?;
            let [x] = a.x.as_slice() else {
                return Err(CliError::BadParams("martina needs exactly one --x".to_string()));
            };
            let verifier = FiberVerifier::with_checkers(checkers(coefficients, cap_dim));
            let r = verifier.verify_martina(&p, label_index(&p, x)?).map_err(module)?;
            output(a.kind, r.passed, r)
        }
        CheckKind::Kreweras => {
            let r = coxeter::verify_fixpoint_lemma(require(a.ty, "type")?, require(a.n, "n")?).map_err(module)?;
            output(a.kind, r.passed, r)
        }
        CheckKind::FiberClaim => {
            let r = words::verify_word_deletion_claim(require(a.n, "n")?).map_err(module)?;
            output(a.kind, r.passed, r)
        }
        CheckKind::Certificate => {
            #[derive(Serialize)]
            struct CertificateReport {
                verification: constructible::Verification,
                certificate: Option<Certificate>,
            }
            let (p, cert, built) = match (&a.input, a.n) {
                (Some(path), _) => {
                    let cert: Certificate = read_json(require_path(&a.cert, "--cert")?)?;
                    (read_poset(path)?, cert, false)
                }
                (None, Some(n)) => {
                    let (p, c) = constructible::certificate_for_in(n).map_err(module)?;
                    (p, c, true)
                }
                (None, None) => return Err(CliError::BadParams("give a poset file with --cert, or --n".to_string())),
            };
            let v = constructible::verify_certificate(&p, &cert);
            let valid = v.valid;
            output(a.kind, valid, CertificateReport { verification: v, certificate: built.then_some(cert) })
        }
    }
}

#[derive(Serialize)]
struct CmCheckReport {
    removed_extrema: Vec<String>,
    reports: Vec<crate::cm::CmReport>,
}

#[derive(Serialize)]
struct WedgeReport {
    removed_extrema: Vec<String>,
    #[serde(flatten)]
    wedge: crate::cm::WedgeVerdict,
}

/// The input poset with its minimum and maximum removed, when it has at
/// least three elements and `--keep-extrema` is not given.
fn poset_for_cm(a: &CheckArgs) -> Result<(Poset, Vec<String>), CliError> {
    let p = read_poset(require_path(&a.input, "poset file")?)?;
    if a.keep_extrema || p.len() < 3 {
        return Ok((p, Vec::new()));
    }
    let extrema: Vec<usize> = p.minimum().into_iter().chain(p.maximum()).collect();
    let labels = extrema.iter().map(|&e| p.label(e).to_string()).collect();
    Ok((p.remove(&extrema), labels))
}

fn load_map(a: &CheckArgs) -> Result<PosetMap, CliError> {
    if let Some(path) = &a.input {
        return PosetMap::from_json(&read_json::<PosetMapJson>(path)?).map_err(module);
    }
    let builtin = require(a.builtin, "builtin (or a map file)")?;
    let n = require(a.n, "n")?;
    match builtin {
        BuiltinMap::WordDeletion => words::word_deletion_map(n).map_err(module),
        BuiltinMap::PuncturedWordDeletion => {
            let f = words::word_deletion_map(n).map_err(module)?;
            Ok(f.restrict_to_image(&without_minimum_members(f.source())))
        }
        BuiltinMap::CycleDeletion => coxeter::cycle_deletion_map(require(a.ty, "type")?, n).map_err(module),
    }
}

/// Homology of a poset's order complex or of a simplicial complex,
/// recognised by the `elements` or `facets` key.
pub fn cmd_homology(path: &Path, coefficients: CoefficientChoice, cap_dim: usize) -> Result<Value, CliError> {
    let value: Value = read_json(path)?;
    let complex = if value.get("elements").is_some() {
        let json: PosetJson = serde_json::from_value(value)?;
        homology::order_complex(&Poset::from_json(&json).map_err(module)?)
    } else {
        serde_json::from_value::<RawComplex>(value)?.build()?
    };
    let mut out: BTreeMap<String, HomologyProfile> = BTreeMap::new();
    for c in coefficients.list() {
        let h = homology::reduced_homology_with_cap(&complex, c, cap_dim).map_err(module)?;
        out.insert(serde_json::to_value(c)?.as_str().unwrap_or_default().to_string(), h);
    }
    if out.len() == 1 {
        return Ok(serde_json::to_value(out.into_values().next())?);
    }
    Ok(serde_json::to_value(out)?)
}

pub fn suite_config(cli: &Cli, a: &SuiteArgs) -> Result<RunConfig, CliError> {
    let mut config = match &a.config {
        Some(path) => suite::load_config(path)?,
        None if a.small => RunConfig::small(),
        None => RunConfig::default(),
    };
    if let Some(n) = a.nc_a_n {
        config.nc_a_n = n;
    }
    if let Some(n) = a.nc_b_n {
        config.nc_b_n = n;
    }
    if let Some(n) = a.inj_n {
        config.inj_n = n;
    }
    if let Some(n) = a.word_n {
        config.word_n = n;
    }
    config.coefficients = cli.coefficients;
    config.jobs = cli.jobs;
    config.dim_cap = cli.cap_dim;
    if cli.cache_dir.is_some() {
        config.cache_dir = cli.cache_dir.clone();
    }
    config.validate()?;
    Ok(config)
}

fn cmd_suite(cli: &Cli, a: &SuiteArgs) -> Result<i32, CliError> {
    let config = suite_config(cli, a)?;
    let ids: Vec<u8> = if a.only.is_empty() { suite::CRITERIA.map(|(id, _)| id).to_vec() } else { a.only.clone() };
    let run = suite::run_criteria(&config, &ids)?;
    emit(cli.out.as_deref(), &suite::to_json_pretty(&run.summary)?)?;
    let table = run.table();
    match &a.table {
        Some(path) => fs::write(path, &table)?,
        None => eprint!("{table}"),
    }
    if let Some(dir) = &a.bundle_dir {
        for path in run.write_bundles(dir)? {
            eprintln!("falsification bundle: {}", path.display());
        }
    }
    Ok(if run.summary.passed { EXIT_TRUE } else { EXIT_FALSE })
}

/// Loads a poset map file, used by examples and tests.
pub fn read_map(path: &Path) -> Result<PosetMap, CliError> {
    PosetMap::from_json(&read_json::<PosetMapJson>(path)?).map_err(module)
}
