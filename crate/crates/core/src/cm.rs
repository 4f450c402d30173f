//! Cohen-Macaulayness of graded posets by the open-interval criterion, and
//! its double and k-fold variants by element deletion.
//!
//! All verdicts are homological. A poset that passes is consistent with
//! being homotopy Cohen-Macaulay; it is not a proof of it.

use dashmap::DashMap;
use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{subposet_homology, Coefficients, HomologyError, HomologyProfile, DEFAULT_DIMENSION_CAP};
use crate::poset::{mobius_hat, Poset, BOTTOM_LABEL, TOP_LABEL};

pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CmError {
    #[error("{needed} deletion sets exceed the budget of {budget}")]
    SubsetBudgetExceeded { needed: u64, budget: u64 },
    #[error("k must be at least 1")]
    BadK,
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    NotGraded,
    RankChanged,
    Homology,
}

/// An open interval `(x, y)` of the bounded extension whose order complex
/// has homology below its expected dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingInterval {
    pub x: String,
    pub y: String,
    /// `rank(y) - rank(x) - 2`, the dimension the interval's order complex
    /// would have.
    pub dimension: i32,
    /// Lowest degree with nonvanishing reduced homology.
    pub degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmReport {
    pub verdict: bool,
    pub reason: Option<FailureReason>,
    /// Elements deleted from the poset in the failing case.
    pub removed: Vec<String>,
    pub failing_interval: Option<FailingInterval>,
    pub coefficients: Coefficients,
    pub intervals_checked: u64,
}

impl CmReport {
    fn pass(coefficients: Coefficients, intervals_checked: u64) -> Self {
        CmReport {
            verdict: true,
            reason: None,
            removed: Vec::new(),
            failing_interval: None,
            coefficients,
            intervals_checked,
        }
    }

    fn fail(coefficients: Coefficients, reason: FailureReason, intervals_checked: u64) -> Self {
        CmReport {
            verdict: false,
            reason: Some(reason),
            removed: Vec::new(),
            failing_interval: None,
            coefficients,
            intervals_checked,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeVerdict {
    pub is_wedge: bool,
    pub sphere_count: u64,
    pub dimension: i32,
    /// Reduced Euler characteristic from the Möbius function.
    pub mobius: i64,
    /// `sphere_count == |mobius|` when `is_wedge`.
    pub mobius_agrees: bool,
}

/// Memoizing checker. Interval homology is cached by the parent poset, the
/// member set of the interval and the coefficients, so overlapping
/// intervals of different deletions are computed once.
pub struct CmChecker {
    coefficients: Coefficients,
    dimension_cap: usize,
    subset_budget: u64,
    cache: DashMap<(u64, Coefficients, FixedBitSet), HomologyProfile>,
}

impl CmChecker {
    pub fn new(coefficients: Coefficients) -> Self {
        CmChecker {
            coefficients,
            dimension_cap: DEFAULT_DIMENSION_CAP,
            subset_budget: DEFAULT_SUBSET_BUDGET,
            cache: DashMap::new(),
        }
    }

    pub fn with_subset_budget(mut self, budget: u64) -> Self {
        self.subset_budget = budget;
        self
    }

    pub fn with_dimension_cap(mut self, cap: usize) -> Self {
        self.dimension_cap = cap;
        self
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn homology(&self, p: &Poset, members: &FixedBitSet) -> Result<HomologyProfile, HomologyError> {
        let key = (p.fingerprint(), self.coefficients, members.clone());
        if let Some(h) = self.cache.get(&key) {
            return Ok(h.clone());
        }
        let h = subposet_homology(p, members, self.coefficients, self.dimension_cap)?;
        self.cache.insert(key, h.clone());
        Ok(h)
    }

    pub fn is_cm(&self, p: &Poset) -> Result<CmReport, CmError> {
        self.is_cm_members(p, &p.all_members())
    }

    /// Cohen-Macaulayness of the induced subposet on `members`.
    pub fn is_cm_members(&self, p: &Poset, members: &FixedBitSet) -> Result<CmReport, CmError> {
        let q = p.induced(members);
        if !q.is_graded() {
            return Ok(CmReport::fail(self.coefficients, FailureReason::NotGraded, 0));
        }
        let idx: Vec<usize> = members.ones().collect();
        let n = q.len();
        let top_rank = q.longest_chain().map_or(0, |r| r as i32 + 1) + 1;
        // elements of the extension: None is 0^ (as x) or 1^ (as y)
        let mut xs: Vec<Option<usize>> = vec![None];
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by_key(|&a| (q.height(a), a));
        xs.extend(sorted.iter().map(|&a| Some(a)));
        let rank_hat = |a: Option<usize>, bottom: bool| match a {
            Some(a) => q.height(a) as i32 + 1,
            None if bottom => 0,
            None => top_rank,
        };
        let results: Vec<Result<(u64, Option<FailingInterval>), CmError>> = xs
            .par_iter()
            .map(|&x| {
                let mut checked = 0u64;
                let mut ys: Vec<Option<usize>> =
                    sorted.iter().copied().filter(|&y| x.is_none_or(|x| q.lt(x, y))).map(Some).collect();
                ys.push(None);
                for y in ys {
                    let d = rank_hat(y, false) - rank_hat(x, true) - 2;
                    if d < 0 {
                        continue;
                    }
                    checked += 1;
                    let mut m = FixedBitSet::with_capacity(p.len());
                    for (b, &i) in idx.iter().enumerate().take(n) {
                        let above_x = x.is_none_or(|x| q.lt(x, b));
                        let below_y = y.is_none_or(|y| q.lt(b, y));
                        if above_x && below_y {
                            m.insert(i);
                        }
                    }
                    if let Some(degree) = self.interval_failure(p, &m, d)? {
                        let name = |e: Option<usize>, bottom: bool| match e {
                            Some(e) => q.label(e).to_string(),
                            None if bottom => BOTTOM_LABEL.to_string(),
                            None => TOP_LABEL.to_string(),
                        };
                        return Ok((
                            checked,
                            Some(FailingInterval { x: name(x, true), y: name(y, false), dimension: d, degree }),
                        ));
                    }
                }
                Ok((checked, None))
            })
            .collect();
        let mut total = 0;
        let mut failure = None;
        for r in results {
            let (c, f) = r?;
            total += c;
            if failure.is_none() {
                failure = f;
            }
        }
        Ok(match failure {
            None => CmReport::pass(self.coefficients, total),
            Some(f) => {
                let mut r = CmReport::fail(self.coefficients, FailureReason::Homology, total);
                r.failing_interval = Some(f);
                r
            }
        })
    }

    /// Lowest degree `< d` where the interval on `m` has reduced homology.
    fn interval_failure(&self, p: &Poset, m: &FixedBitSet, d: i32) -> Result<Option<i32>, HomologyError> {
        if m.is_clear() {
            return Ok(Some(-1));
        }
        if d == 0 {
            return Ok(None);
        }
        if has_unique_extreme(p, m) {
            // a cone is acyclic
            return Ok(None);
        }
        if d == 1 {
            return Ok((!is_connected(p, m)).then_some(0));
        }
        let h = self.homology(p, m)?;
        Ok(h.first_nonvanishing_below(d))
    }

    pub fn is_doubly_cm(&self, p: &Poset) -> Result<CmReport, CmError> {
        self.is_k_cm(p, 2)
    }

    /// Checks `p - A` for every `A` with `|A| <= k - 1`, in order of size,
    /// then rank and label of the deleted elements.
    pub fn is_k_cm(&self, p: &Poset, k: usize) -> Result<CmReport, CmError> {
        if k == 0 {
            return Err(CmError::BadK);
        }
        let n = p.len();
        let needed: u64 = (0..k).map(|j| binomial(n as u64, j as u64)).fold(0u64, |a, b| a.saturating_add(b));
        if needed > self.subset_budget {
            return Err(CmError::SubsetBudgetExceeded { needed, budget: self.subset_budget });
        }
        let base = self.is_cm(p)?;
        if !base.verdict {
            return Ok(base);
        }
        let rank = p.longest_chain();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (p.height(a), a));
        let mut total = base.intervals_checked;
        for size in 1..k.min(n + 1) {
            let subsets = combinations(&order, size);
            let results: Vec<Result<CmReport, CmError>> = subsets
                .par_iter()
                .map(|a| {
                    let mut m = p.all_members();
                    for &x in a {
                        m.set(x, false);
                    }
                    let q = p.induced(&m);
                    if !q.is_graded() {
                        return Ok(CmReport::fail(self.coefficients, FailureReason::NotGraded, 0));
                    }
                    if q.longest_chain() != rank {
                        return Ok(CmReport::fail(self.coefficients, FailureReason::RankChanged, 0));
                    }
                    self.is_cm_members(p, &m)
                })
                .collect();
            for (a, r) in subsets.iter().zip(results) {
                let mut r = r?;
                total += r.intervals_checked;
                if !r.verdict {
                    r.removed = a.iter().map(|&x| p.label(x).to_string()).collect();
                    r.intervals_checked = total;
                    return Ok(r);
                }
            }
        }
        Ok(CmReport::pass(self.coefficients, total))
    }

    /// Homological wedge-of-spheres test on the order complex of `p`.
    pub fn wedge_verdict(&self, p: &Poset) -> Result<WedgeVerdict, CmError> {
        let mobius = mobius_hat(p);
        let dimension = p.longest_chain().map_or(-1, |r| r as i32);
        if !p.is_graded() {
            return Ok(WedgeVerdict { is_wedge: false, sphere_count: 0, dimension, mobius, mobius_agrees: false });
        }
        let h = subposet_homology(p, &p.all_members(), Coefficients::Integers, self.dimension_cap)?;
        let is_wedge = !h.has_torsion() && h.first_nonvanishing_below(dimension).is_none();
        let sphere_count = h.betti(dimension);
        Ok(WedgeVerdict {
            is_wedge,
            sphere_count,
            dimension,
            mobius,
            mobius_agrees: is_wedge && sphere_count == mobius.unsigned_abs(),
        })
    }
}

fn has_unique_extreme(p: &Poset, m: &FixedBitSet) -> bool {
    let count = m.count_ones(..);
    m.ones().any(|a| {
        let mut up = p.above(a).clone();
        up.intersect_with(m);
        let mut down = p.below(a).clone();
        down.intersect_with(m);
        up.count_ones(..) == count || down.count_ones(..) == count
    })
}

fn is_connected(p: &Poset, m: &FixedBitSet) -> bool {
    let elems: Vec<usize> = m.ones().collect();
    let Some(&start) = elems.first() else { return false };
    let mut seen = FixedBitSet::with_capacity(p.len());
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        let mut next = p.above(a).clone();
        next.union_with(p.below(a));
        next.intersect_with(m);
        next.difference_with(&seen);
        for b in next.ones().collect::<Vec<_>>() {
            seen.insert(b);
            stack.push(b);
        }
    }
    seen.count_ones(..) == elems.len()
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

pub fn is_cm(p: &Poset, coefficients: Coefficients) -> Result<CmReport, CmError> {
    CmChecker::new(coefficients).is_cm(p)
}

pub fn is_doubly_cm(p: &Poset, coefficients: Coefficients) -> Result<CmReport, CmError> {
    CmChecker::new(coefficients).is_doubly_cm(p)
}

pub fn is_k_cm(p: &Poset, k: usize, coefficients: Coefficients) -> Result<CmReport, CmError> {
    CmChecker::new(coefficients).is_k_cm(p, k)
}

pub fn wedge_verdict(p: &Poset) -> Result<WedgeVerdict, CmError> {
    CmChecker::new(Coefficients::Integers).wedge_verdict(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> Poset {
        Poset::boolean_algebra(3).proper_part().unwrap()
    }

    #[test]
    fn chains_and_hexagon() {
        for k in 0..5 {
            assert!(is_cm(&Poset::chain(k), Coefficients::Integers).unwrap().verdict);
        }
        let r = is_cm(&hexagon(), Coefficients::Integers).unwrap();
        assert!(r.verdict);
        assert!(r.intervals_checked > 0);
    }

    #[test]
    fn disjoint_union_fails() {
        let p = Poset::from_covers(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let r = is_cm(&p, Coefficients::Rationals).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.reason, Some(FailureReason::NotGraded));
        // graded version: two disjoint 2-chains are disconnected
        let p = Poset::from_covers(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
        let r = is_cm(&p, Coefficients::Rationals).unwrap();
        let f = r.failing_interval.unwrap();
        assert_eq!((f.x.as_str(), f.y.as_str(), f.degree), (BOTTOM_LABEL, TOP_LABEL, 0));
    }

    #[test]
    fn deletions() {
        assert!(is_doubly_cm(&hexagon(), Coefficients::Integers).unwrap().verdict);
        let r = is_doubly_cm(&Poset::chain(2), Coefficients::Integers).unwrap();
        assert_eq!(r.reason, Some(FailureReason::RankChanged));
        assert_eq!(r.removed, vec!["0".to_string()]);
        let r = is_k_cm(&hexagon(), 3, Coefficients::Integers).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.removed.len(), 2);
        assert_eq!(
            is_k_cm(&hexagon(), 1, Coefficients::Rationals).unwrap(),
            is_cm(&hexagon(), Coefficients::Rationals).unwrap()
        );
    }

    #[test]
    fn budget() {
        let c = CmChecker::new(Coefficients::Rationals).with_subset_budget(3);
        assert!(matches!(c.is_k_cm(&hexagon(), 2), Err(CmError::SubsetBudgetExceeded { needed: 7, budget: 3 })));
    }

    #[test]
    fn wedges() {
        let w = wedge_verdict(&Poset::antichain(3)).unwrap();
        assert_eq!((w.is_wedge, w.sphere_count, w.dimension), (true, 2, 0));
        assert!(w.mobius_agrees);
        let w = wedge_verdict(&Poset::chain(3)).unwrap();
        assert_eq!((w.is_wedge, w.sphere_count), (true, 0));
    }

    #[test]
    fn report_json_field_order() {
        let r = is_cm(&Poset::chain(1), Coefficients::Integers).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(
            r#"{"verdict":true,"reason":null,"removed":[],"failing_interval":null,"coefficients":"integers""#
        ));
    }
}
