//! Hypothesis and conclusion checks for poset fiber theorems.
//!
//! Every report evaluates each hypothesis and the conclusion independently.
//! A report whose hypotheses all hold but whose conclusion fails is a
//! falsification of the theorem it instantiates.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cm::{CmChecker, CmError, CmReport, FailureReason};
use crate::homology::Coefficients;
use crate::poset::{Poset, PosetError, PosetMap, BOTTOM_LABEL, TOP_LABEL};

pub const DISCLAIMER: &str =
    "Cohen-Macaulay conditions are checked homologically; homotopy Cohen-Macaulayness is not decided.";

pub const INTERVAL_RANGE_NOTE: &str = "condition (ii) is checked for q in f(I) with q > q0";

#[derive(Debug, Error)]
pub enum FiberError {
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
    #[error("source poset has a {0}")]
    HasExtremum(&'static str),
    #[error("{xs} elements but {qs} targets")]
    ArityMismatch { xs: usize, qs: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Hypothesis {
    fn new(name: &str, failure: Option<String>) -> Self {
        Hypothesis { name: name.to_string(), holds: failure.is_none(), witness: failure }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberTheoremReport {
    pub theorem: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion_checked: bool,
    pub conclusion_holds: bool,
    pub conclusion_witness: Option<String>,
    /// Whether deleting the elements kept the rank, where the theorem
    /// speaks about it.
    pub rank_preserved: Option<bool>,
    pub coefficients: Vec<Coefficients>,
    pub interpretation: Option<String>,
    pub disclaimer: String,
}

impl FiberTheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    pub fn is_falsification(&self) -> bool {
        self.hypotheses_hold() && self.conclusion_checked && !self.conclusion_holds
    }

    /// True unless the report falsifies its theorem.
    pub fn verdict(&self) -> bool {
        !self.is_falsification()
    }
}

/// Runs Cohen-Macaulay checks over one or more coefficient choices, sharing
/// interval homology caches between calls.
pub struct FiberVerifier {
    checkers: Vec<CmChecker>,
}

impl Default for FiberVerifier {
    fn default() -> Self {
        Self::new(&[Coefficients::Rationals, Coefficients::Integers])
    }
}

impl FiberVerifier {
    pub fn new(coefficients: &[Coefficients]) -> Self {
        assert!(!coefficients.is_empty(), "at least one coefficient choice is required");
        FiberVerifier { checkers: coefficients.iter().map(|&c| CmChecker::new(c)).collect() }
    }

    pub fn with_checkers(checkers: Vec<CmChecker>) -> Self {
        assert!(!checkers.is_empty(), "at least one checker is required");
        FiberVerifier { checkers }
    }

    pub fn checkers(&self) -> &[CmChecker] {
        &self.checkers
    }

    pub fn coefficients(&self) -> Vec<Coefficients> {
        self.checkers.iter().map(|c| c.coefficients()).collect()
    }

    /// `None` if the induced subposet is CM for every coefficient choice,
    /// otherwise a description of the first failure.
    pub fn cm_failure(&self, p: &Poset, members: &FixedBitSet) -> Result<Option<String>, CmError> {
        for c in &self.checkers {
            let r = c.is_cm_members(p, members)?;
            if !r.verdict {
                return Ok(Some(describe(&r)));
            }
        }
        Ok(None)
    }

    fn report(&self, theorem: &str) -> FiberTheoremReport {
        FiberTheoremReport {
            theorem: theorem.to_string(),
            hypotheses: Vec::new(),
            conclusion_checked: false,
            conclusion_holds: false,
            conclusion_witness: None,
            rank_preserved: None,
            coefficients: self.coefficients(),
            interpretation: None,
            disclaimer: DISCLAIMER.to_string(),
        }
    }

    /// First member set (in the given order) that is not CM, tagged.
    fn first_cm_failure(&self, p: &Poset, jobs: Vec<(String, FixedBitSet)>) -> Result<Option<String>, CmError> {
        let results: Vec<Result<Option<String>, CmError>> =
            jobs.par_iter().map(|(_, m)| self.cm_failure(p, m)).collect();
        for ((tag, _), r) in jobs.iter().zip(results) {
            if let Some(w) = r? {
                return Ok(Some(format!("{tag}: {w}")));
            }
        }
        Ok(None)
    }

    fn map_hypotheses(&self, f: &PosetMap, out: &mut Vec<Hypothesis>) {
        out.push(Hypothesis::new("H-poset-map", order_failure(f)));
        out.push(Hypothesis::new("H-surjective", surjectivity_failure(f)));
        out.push(Hypothesis::new("H-rank", rank_failure(f)));
    }

    fn fiber_hypothesis(&self, f: &PosetMap) -> Result<Hypothesis, CmError> {
        let q = f.target();
        let jobs = (0..q.len()).map(|t| (format!("fiber over <{}>", q.label(t)), f.preimage_of_ideal(t))).collect();
        Ok(Hypothesis::new("H-fibers-cm", self.first_cm_failure(f.source(), jobs)?))
    }

    fn target_hypothesis(&self, f: &PosetMap) -> Result<Hypothesis, CmError> {
        let q = f.target();
        Ok(Hypothesis::new("H-target-cm", self.cm_failure(q, &q.all_members())?))
    }

    /// Quillen's fiber theorem: `Q` CM and all fibers `f^{-1}(<q>)` CM imply
    /// `P` CM.
    pub fn check_quillen(&self, f: &PosetMap) -> Result<FiberTheoremReport, FiberError> {
        let mut r = self.report("quillen");
        self.map_hypotheses(f, &mut r.hypotheses);
        r.hypotheses.push(self.fiber_hypothesis(f)?);
        r.hypotheses.push(self.target_hypothesis(f)?);
        let p = f.source();
        let failure = self.cm_failure(p, &p.all_members())?;
        r.conclusion_checked = true;
        r.conclusion_holds = failure.is_none();
        r.conclusion_witness = failure;
        Ok(r)
    }

    /// The fiber theorem for an open interval `I = (u, v)` of `P` with a
    /// deleted element `x` and the target `q0 = f(x)`.
    pub fn check_interval_theorem(
        &self,
        f: &PosetMap,
        u: usize,
        v: usize,
        x: usize,
        q0: usize,
    ) -> Result<FiberTheoremReport, FiberError> {
        let p = f.source();
        let q = f.target();
        for (name, e, len) in [("u", u, p.len()), ("v", v, p.len()), ("x", x, p.len()), ("q0", q0, q.len())] {
            if e >= len {
                return Err(FiberError::BadConfiguration(format!("{name} = {e} out of range")));
            }
        }
        if !(p.lt(u, x) && p.lt(x, v)) {
            return Err(FiberError::BadConfiguration(format!(
                "{} is not in the open interval ({}, {})",
                p.label(x),
                p.label(u),
                p.label(v)
            )));
        }
        if f.apply(x) != q0 {
            return Err(FiberError::BadConfiguration(format!(
                "f({}) = {}, not {}",
                p.label(x),
                q.label(f.apply(x)),
                q.label(q0)
            )));
        }
        let interval = p.interval_members(u, v, true)?;
        let mut punctured = interval.clone();
        punctured.set(x, false);

        let mut r = self.report("interval");
        r.interpretation = Some(INTERVAL_RANGE_NOTE.to_string());
        let graded_failure = if !p.is_graded() {
            Some("source is not graded".to_string())
        } else if !p.induced(&punctured).is_graded() {
            Some(format!("I - {{{}}} is not graded", p.label(x)))
        } else {
            None
        };
        r.hypotheses.push(Hypothesis::new("H-graded", graded_failure));
        self.map_hypotheses(f, &mut r.hypotheses);
        r.hypotheses.push(self.target_hypothesis(f)?);
        r.hypotheses.push(self.fiber_hypothesis(f)?);

        let fiber = f.fiber(q0);
        let singleton = (fiber != [x]).then(|| {
            let labels: Vec<&str> = fiber.iter().map(|&e| p.label(e)).collect();
            format!("fiber over {} is {{{}}}", q.label(q0), labels.join(", "))
        });
        r.hypotheses.push(Hypothesis::new("H-ii-singleton", singleton));

        let mut image = f.image_of(&interval);
        image.set(q0, false);
        let image_failure = self.cm_failure(q, &image)?.map(|w| format!("f(I) - {{{}}}: {w}", q.label(q0)));
        r.hypotheses.push(Hypothesis::new("H-ii-image-cm", image_failure));

        let mut jobs = Vec::new();
        for e in interval.ones() {
            let t = f.apply(e);
            if q.lt(q0, t) {
                let mut m = p.interval_members(u, e, false)?;
                m.set(x, false);
                jobs.push((format!("[{}, {}] - {{{}}}", p.label(u), p.label(e), p.label(x)), m));
            }
        }
        r.hypotheses.push(Hypothesis::new("H-ii-lower-cm", self.first_cm_failure(p, jobs)?));

        let failure = self.cm_failure(p, &punctured)?;
        r.conclusion_checked = true;
        r.conclusion_holds = failure.is_none();
        r.conclusion_witness = failure;
        r.rank_preserved = Some(p.induced(&punctured).longest_chain() == p.induced(&interval).longest_chain());
        Ok(r)
    }

    /// The corollary for posets without minimum and maximum: extends `f` to
    /// `P^ -> Q^` and checks the interval theorem on `(0^, 1^)`, plus the
    /// corollary's own form of condition (ii).
    pub fn check_corollary_bounded(&self, f: &PosetMap, x: usize, q0: usize) -> Result<FiberTheoremReport, FiberError> {
        let p = f.source();
        let q = f.target();
        reject_extrema(p)?;
        if x >= p.len() || q0 >= q.len() || f.apply(x) != q0 {
            return Err(FiberError::BadConfiguration("f(x) must equal q0".to_string()));
        }
        let hat = bounded_extension_map(f)?;
        let (ph, qh) = (hat.source(), hat.target());
        let find = |poset: &Poset, label: &str| poset.index_of(label).expect("extension keeps labels");
        let mut r = self.check_interval_theorem(
            &hat,
            find(ph, BOTTOM_LABEL),
            find(ph, TOP_LABEL),
            find(ph, p.label(x)),
            find(qh, q.label(q0)),
        )?;
        r.theorem = "corollary-bounded".to_string();

        let mut rest = q.all_members();
        rest.set(q0, false);
        let target_failure = self.cm_failure(q, &rest)?.map(|w| format!("Q - {{{}}}: {w}", q.label(q0)));
        r.hypotheses.push(Hypothesis::new("H-cor-target-cm", target_failure));
        let jobs = (0..p.len())
            .filter(|&e| q.lt(q0, f.apply(e)))
            .map(|e| {
                let mut m = p.below(e).clone();
                m.set(x, false);
                (format!("<{}> - {{{}}}", p.label(e), p.label(x)), m)
            })
            .collect();
        r.hypotheses.push(Hypothesis::new("H-cor-lower-cm", self.first_cm_failure(p, jobs)?));
        Ok(r)
    }

    /// The k-fold version: deletes `xs` with `f(xs[i]) = qs[i]`.
    pub fn check_k_proposition(
        &self,
        f: &PosetMap,
        xs: &[usize],
        qs: &[usize],
    ) -> Result<FiberTheoremReport, FiberError> {
        if xs.len() != qs.len() || xs.is_empty() {
            return Err(FiberError::ArityMismatch { xs: xs.len(), qs: qs.len() });
        }
        let p = f.source();
        let q = f.target();
        reject_extrema(p)?;
        if xs.len() >= 63 {
            return Err(FiberError::BadConfiguration("too many deleted elements".to_string()));
        }
        for (&x, &t) in xs.iter().zip(qs) {
            if x >= p.len() || t >= q.len() || f.apply(x) != t {
                return Err(FiberError::BadConfiguration(format!("f(x) != q for x = {x}, q = {t}")));
            }
        }
        let mut distinct = xs.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != xs.len() {
            return Err(FiberError::BadConfiguration("deleted elements repeat".to_string()));
        }
        let subsets: Vec<u64> = (0..1u64 << xs.len()).collect();
        let pick = |mask: u64, from: &[usize]| -> Vec<usize> {
            (0..from.len()).filter(|i| mask & (1 << i) != 0).map(|i| from[i]).collect()
        };

        let mut r = self.report("k-proposition");
        let graded_failure = subsets.iter().find_map(|&mask| {
            let a = pick(mask, xs);
            let mut m = p.all_members();
            for &e in &a {
                m.set(e, false);
            }
            (!p.induced(&m).is_graded()).then(|| {
                let labels: Vec<&str> = a.iter().map(|&e| p.label(e)).collect();
                format!("P - {{{}}} is not graded", labels.join(", "))
            })
        });
        r.hypotheses.push(Hypothesis::new("H-graded", graded_failure));
        self.map_hypotheses(f, &mut r.hypotheses);
        r.hypotheses.push(self.target_hypothesis(f)?);
        r.hypotheses.push(self.fiber_hypothesis(f)?);

        let singleton = xs.iter().zip(qs).find_map(|(&x, &t)| {
            let fiber = f.fiber(t);
            (fiber != [x]).then(|| format!("fiber over {} has {} elements", q.label(t), fiber.len()))
        });
        r.hypotheses.push(Hypothesis::new("H-ii-singleton", singleton));

        let jobs = subsets
            .iter()
            .map(|&mask| {
                let s = pick(mask, qs);
                let mut m = q.all_members();
                for &t in &s {
                    m.set(t, false);
                }
                (format!("Q - {}", label_set(q, &s)), m)
            })
            .collect();
        r.hypotheses.push(Hypothesis::new("H-ii-image-cm", self.first_cm_failure(q, jobs)?));

        let mut jobs = Vec::new();
        for &mask in &subsets {
            let s = pick(mask, qs);
            let mut removed = FixedBitSet::with_capacity(q.len());
            for &t in &s {
                removed.insert(t);
            }
            let removed = f.preimage(&removed);
            for e in 0..p.len() {
                if s.iter().all(|&v| q.lt(v, f.apply(e))) {
                    let mut m = p.below(e).clone();
                    m.difference_with(&removed);
                    jobs.push((format!("<{}> - f^-1({})", p.label(e), label_set(q, &s)), m));
                }
            }
        }
        r.hypotheses.push(Hypothesis::new("H-ii-lower-cm", self.first_cm_failure(p, jobs)?));

        let mut rest = p.all_members();
        for &x in xs {
            rest.set(x, false);
        }
        let failure = self.cm_failure(p, &rest)?;
        r.conclusion_checked = true;
        r.conclusion_holds = failure.is_none();
        r.conclusion_witness = failure;
        r.rank_preserved = Some(p.induced(&rest).longest_chain() == p.longest_chain());
        Ok(r)
    }

    /// Checks the decomposition of `(P x {0,1}) - {(x,0)}` into
    /// `(P - {x}) x {0,1}` and `(P_{<x} x {0,1}) ⊕ {(x,1)} ⊕ (P_{>x} x {1})`,
    /// the Cohen-Macaulayness and ranks of both pieces and their
    /// intersection, and the Cohen-Macaulayness of the punctured product.
    pub fn verify_martina(&self, p: &Poset, x: usize) -> Result<MartinaReport, FiberError> {
        if x >= p.len() {
            return Err(FiberError::PreconditionFailed(format!("no element {x}")));
        }
        let bottom = p.minimum().ok_or_else(|| FiberError::PreconditionFailed("poset has no minimum".to_string()))?;
        if x == bottom {
            return Err(FiberError::PreconditionFailed("x is the minimum".to_string()));
        }
        if p.maximum() == Some(x) {
            return Err(FiberError::PreconditionFailed("x is the maximum".to_string()));
        }
        let n = p.longest_chain().ok_or_else(|| FiberError::PreconditionFailed("poset is empty".to_string()))?;
        let mut tilde = p.all_members();
        tilde.set(bottom, false);
        if let Some(top) = p.maximum() {
            tilde.set(top, false);
        }
        let tilde = p.induced(&tilde);
        for c in &self.checkers {
            let rep = c.is_doubly_cm(&tilde)?;
            if !rep.verdict {
                return Err(FiberError::PreconditionFailed(format!(
                    "the proper part is not doubly CM over {}: {}",
                    c.coefficients(),
                    describe(&rep)
                )));
            }
        }

        let two = Poset::two_chain();
        let prod = Poset::product(p, &two);
        let at = |a: usize, e: &str| prod.require(&format!("({},{e})", p.label(a))).expect("product label");
        let x0 = at(x, "0");
        let x1 = at(x, "1");
        let mut total = prod.all_members();
        total.set(x0, false);

        let mut left = FixedBitSet::with_capacity(prod.len());
        let mut right = FixedBitSet::with_capacity(prod.len());
        let mut meet = FixedBitSet::with_capacity(prod.len());
        for a in 0..p.len() {
            if a != x {
                left.insert(at(a, "0"));
                left.insert(at(a, "1"));
            }
            if p.lt(a, x) {
                for e in ["0", "1"] {
                    right.insert(at(a, e));
                    meet.insert(at(a, e));
                }
            }
            if p.lt(x, a) {
                right.insert(at(a, "1"));
                meet.insert(at(a, "1"));
            }
        }
        right.insert(x1);

        let mut union = left.clone();
        union.union_with(&right);
        let mut intersection = left.clone();
        intersection.intersect_with(&right);
        let identity = union == total && intersection == meet;

        let below = p.induced(&p.strictly_below(x));
        let above = p.induced(&p.strictly_above(x));
        let low = Poset::product(&below, &two);
        let high = Poset::product(&above, &point_poset("1"));
        let point = point_poset(&format!("({},1)", p.label(x)));
        let ordinal = Poset::ordinal_sum(&Poset::ordinal_sum(&low, &point), &high);
        let ordinal_matches = same_order(&prod.induced(&right), &ordinal, ordinal_to_product);
        let chains_covered = prod
            .above(x1)
            .ones()
            .chain(prod.below(x1).ones())
            .filter(|&e| total.contains(e))
            .all(|e| right.contains(e));

        let pieces = [
            ("(P - {x}) x 2", &left, n + 1),
            ("(P_<x x 2) + {(x,1)} + (P_>x x {1})", &right, n + 1),
            ("intersection", &meet, n),
            ("(P x 2) - {(x,0)}", &total, n + 1),
        ];
        let piece_reports = pieces
            .par_iter()
            .map(|&(name, m, expected)| {
                let failure = self.cm_failure(&prod, m)?;
                let rank = prod.induced(m).longest_chain();
                Ok(MartinaPiece {
                    name: name.to_string(),
                    size: m.count_ones(..),
                    rank,
                    expected_rank: expected,
                    cm: failure.is_none(),
                    witness: failure,
                })
            })
            .collect::<Result<Vec<_>, CmError>>()?;
        let conclusion = piece_reports.last().expect("four pieces");
        let conclusion_holds = conclusion.cm && conclusion.rank == Some(n + 1);
        let passed = identity
            && ordinal_matches
            && chains_covered
            && piece_reports.iter().all(|pc| pc.cm && pc.rank == Some(pc.expected_rank));
        Ok(MartinaReport {
            x: p.label(x).to_string(),
            rank: n,
            identity_holds: identity,
            ordinal_sum_matches: ordinal_matches,
            chains_covered,
            pieces: piece_reports,
            conclusion_holds,
            passed,
            coefficients: self.coefficients(),
            disclaimer: DISCLAIMER.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MartinaPiece {
    pub name: String,
    pub size: usize,
    pub rank: Option<usize>,
    pub expected_rank: usize,
    pub cm: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MartinaReport {
    pub x: String,
    pub rank: usize,
    /// The two pieces cover the punctured product and meet in the stated
    /// intersection.
    pub identity_holds: bool,
    /// The second piece, with the order induced from the product, equals
    /// the ordinal sum built independently.
    pub ordinal_sum_matches: bool,
    /// Every element comparable to `(x,1)` lies in the second piece, so each
    /// chain lies in one of the pieces.
    pub chains_covered: bool,
    pub pieces: Vec<MartinaPiece>,
    pub conclusion_holds: bool,
    pub passed: bool,
    pub coefficients: Vec<Coefficients>,
    pub disclaimer: String,
}

pub fn check_quillen(f: &PosetMap) -> Result<FiberTheoremReport, FiberError> {
    FiberVerifier::default().check_quillen(f)
}

pub fn check_interval_theorem(
    f: &PosetMap,
    u: usize,
    v: usize,
    x: usize,
    q0: usize,
) -> Result<FiberTheoremReport, FiberError> {
    FiberVerifier::default().check_interval_theorem(f, u, v, x, q0)
}

pub fn check_corollary_bounded(f: &PosetMap, x: usize, q0: usize) -> Result<FiberTheoremReport, FiberError> {
    FiberVerifier::default().check_corollary_bounded(f, x, q0)
}

pub fn check_k_proposition(f: &PosetMap, xs: &[usize], qs: &[usize]) -> Result<FiberTheoremReport, FiberError> {
    FiberVerifier::default().check_k_proposition(f, xs, qs)
}

pub fn verify_martina(p: &Poset, x: usize) -> Result<MartinaReport, FiberError> {
    FiberVerifier::default().verify_martina(p, x)
}

/// Extends `f: P -> Q` to `P^ -> Q^` by sending `0^` to `0^` and `1^` to `1^`.
pub fn bounded_extension_map(f: &PosetMap) -> Result<PosetMap, PosetError> {
    let (ph, _, _) = f.source().bounded_extension();
    let (qh, _, _) = f.target().bounded_extension();
    let (p, q) = (f.source(), f.target());
    let image = (0..ph.len())
        .map(|e| {
            let l = ph.label(e);
            if l == BOTTOM_LABEL || l == TOP_LABEL {
                qh.require(l)
            } else {
                qh.require(q.label(f.apply(p.require(l)?)))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    PosetMap::new(Arc::new(ph), Arc::new(qh), image)
}

fn reject_extrema(p: &Poset) -> Result<(), FiberError> {
    if p.minimum().is_some() {
        return Err(FiberError::HasExtremum("minimum"));
    }
    if p.maximum().is_some() {
        return Err(FiberError::HasExtremum("maximum"));
    }
    Ok(())
}

fn describe(r: &CmReport) -> String {
    let removed =
        if r.removed.is_empty() { String::new() } else { format!("after deleting {{{}}}, ", r.removed.join(", ")) };
    match (r.reason, &r.failing_interval) {
        (Some(FailureReason::NotGraded), _) => format!("{removed}not graded"),
        (Some(FailureReason::RankChanged), _) => format!("{removed}rank changed"),
        (_, Some(i)) => {
            format!("{removed}interval ({}, {}) has homology in degree {} over {}", i.x, i.y, i.degree, r.coefficients)
        }
        _ => format!("{removed}not Cohen-Macaulay"),
    }
}

fn label_set(p: &Poset, elements: &[usize]) -> String {
    let labels: Vec<&str> = elements.iter().map(|&e| p.label(e)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn order_failure(f: &PosetMap) -> Option<String> {
    let (p, q) = (f.source(), f.target());
    p.covers().find(|&(a, b)| !q.leq(f.apply(a), f.apply(b))).map(|(a, b)| {
        format!(
            "{} < {} but f({}) = {} is not below f({}) = {}",
            p.label(a),
            p.label(b),
            p.label(a),
            q.label(f.apply(a)),
            p.label(b),
            q.label(f.apply(b))
        )
    })
}

fn surjectivity_failure(f: &PosetMap) -> Option<String> {
    let q = f.target();
    let hit = f.image_of(&f.source().all_members());
    (0..q.len()).find(|&t| !hit.contains(t)).map(|t| format!("{} is not in the image", q.label(t)))
}

fn rank_failure(f: &PosetMap) -> Option<String> {
    let (p, q) = (f.source(), f.target());
    if !p.is_graded() {
        return Some("source is not graded".to_string());
    }
    if !q.is_graded() {
        return Some("target is not graded".to_string());
    }
    (0..p.len()).find(|&a| p.height(a) != q.height(f.apply(a))).map(|a| {
        format!("rank({}) = {} but rank({}) = {}", p.label(a), p.height(a), q.label(f.apply(a)), q.height(f.apply(a)))
    })
}

fn point_poset(label: &str) -> Poset {
    Poset::from_covers(&[label], &[]).expect("one element")
}

/// Translates an ordinal-sum label back to the product label it stands for.
fn ordinal_to_product(label: &str) -> String {
    let mut l = label;
    while let Some(rest) = l.strip_prefix("L:").or_else(|| l.strip_prefix("R:")) {
        l = rest;
    }
    l.to_string()
}

/// Whether `b`, after translating labels, is the same poset as `a`.
fn same_order(a: &Poset, b: &Poset, translate: impl Fn(&str) -> String) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let pos: Option<Vec<usize>> = (0..b.len()).map(|i| a.index_of(&translate(b.label(i)))).collect();
    let Some(pos) = pos else { return false };
    (0..b.len()).all(|i| (0..b.len()).all(|j| b.leq(i, j) == a.leq(pos[i], pos[j])))
}
