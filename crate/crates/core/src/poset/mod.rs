//! Finite posets stored by their cover relations with a cached order closure.
//!
//! Elements are identified by string labels. Index order always equals the
//! lexicographic order of the labels, so every iteration over a [`Poset`] is
//! deterministic.

mod iso;
mod map;
mod mobius;

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use iso::{find_isomorphism, is_isomorphic};
pub use map::{MapCheck, PosetMap, PosetMapJson};
pub use mobius::{mobius, mobius_hat, MobiusTable};

/// Label given to the added minimum of a bounded extension.
pub const BOTTOM_LABEL: &str = "^0";
/// Label given to the added maximum of a bounded extension.
pub const TOP_LABEL: &str = "^1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relations contain a cycle through `{0}`")]
    CycleDetected(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover ({0}, {1}) is implied by other covers")]
    RedundantCover(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("elements `{0}` and `{1}` are not comparable")]
    NotComparable(String, String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("poset is not graded")]
    NotGraded,
    #[error("map image index {0} is out of range")]
    BadImage(usize),
    #[error("malformed poset description: {0}")]
    Malformed(String),
}

/// A finite partially ordered set.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    // above[a] contains b iff a <= b (reflexive)
    above: Vec<FixedBitSet>,
    // below[b] contains a iff a <= b (reflexive)
    below: Vec<FixedBitSet>,
    height: Vec<usize>,
    graded: bool,
    fingerprint: u64,
}

/// JSON form of a poset: `{ "elements": [...], "covers": [[i, j], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from element labels and cover pairs given by label.
    ///
    /// A declared cover that is implied transitively by the others is
    /// rejected with [`PosetError::RedundantCover`].
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut pos = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if pos.insert(l.as_str(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *pos.get(a.as_ref()).ok_or_else(|| PosetError::UnknownElement(a.as_ref().to_string()))?;
            let ib = *pos.get(b.as_ref()).ok_or_else(|| PosetError::UnknownElement(b.as_ref().to_string()))?;
            pairs.push((ia, ib));
        }
        Self::from_index_covers(labels, &pairs)
    }

    /// Builds a poset from labels and cover pairs referring to positions in
    /// `labels`. Labels are re-sorted; the pairs are remapped accordingly.
    pub fn from_index_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, PosetError> {
        let (labels, remap) = sort_labels(labels)?;
        let n = labels.len();
        let mut up = vec![Vec::new(); n];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(PosetError::Malformed(format!("cover ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(PosetError::CycleDetected(labels[remap[a]].clone()));
            }
            up[remap[a]].push(remap[b]);
        }
        for u in &mut up {
            u.sort_unstable();
            u.dedup();
        }
        let poset = Self::assemble(labels, up)?;
        poset.check_no_redundant_covers()?;
        Ok(poset)
    }

    /// Builds a poset from an arbitrary set of strict relations `a < b`.
    ///
    /// Redundant pairs are allowed; the cover relation is the transitive
    /// reduction of the closure.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self, PosetError> {
        let (labels, remap) = sort_labels(labels)?;
        let n = labels.len();
        let mut up = vec![Vec::new(); n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(PosetError::Malformed(format!("relation ({a}, {b}) out of range")));
            }
            if a == b {
                continue;
            }
            up[remap[a]].push(remap[b]);
        }
        for u in &mut up {
            u.sort_unstable();
            u.dedup();
        }
        let closure = Self::assemble(labels, up)?;
        Ok(closure.reduced())
    }

    fn assemble(labels: Vec<String>, up: Vec<Vec<usize>>) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut down = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (a, ups) in up.iter().enumerate() {
            for &b in ups {
                down[b].push(a);
                indeg[b] += 1;
            }
        }
        for d in &mut down {
            d.sort_unstable();
        }
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(a) = queue.pop_front() {
            order.push(a);
            for &b in &up[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push_back(b);
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(PosetError::CycleDetected(labels[stuck].clone()));
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &a in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(a);
            for &b in &up[a] {
                set.union_with(&above[b]);
            }
            above[a] = set;
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (a, set) in above.iter().enumerate() {
            for b in set.ones() {
                below[b].insert(a);
            }
        }
        let mut height = vec![0usize; n];
        for &b in &order {
            height[b] = down[b].iter().map(|&a| height[a] + 1).max().unwrap_or(0);
        }
        let mut poset = Poset { labels, up, down, above, below, height, graded: false, fingerprint: 0 };
        poset.graded = poset.compute_graded();
        poset.fingerprint = poset.compute_fingerprint();
        Ok(poset)
    }

    fn check_no_redundant_covers(&self) -> Result<(), PosetError> {
        for a in 0..self.len() {
            let ups = &self.up[a];
            for &b in ups {
                for &c in ups {
                    if c != b && self.above[c].contains(b) {
                        return Err(PosetError::RedundantCover(self.labels[a].clone(), self.labels[b].clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces the stored relation by its transitive reduction.
    fn reduced(self) -> Self {
        let n = self.len();
        let up = (0..n).map(|a| self.cover_candidates(a, None)).collect();
        Self::assemble(self.labels, up).expect("reduction of an acyclic relation is acyclic")
    }

    /// Upper covers of `a` within `members` (all elements when `None`),
    /// computed from the order closure.
    fn cover_candidates(&self, a: usize, members: Option<&FixedBitSet>) -> Vec<usize> {
        let mut strict = self.above[a].clone();
        strict.set(a, false);
        if let Some(m) = members {
            strict.intersect_with(m);
        }
        let mut blocked = FixedBitSet::with_capacity(self.len());
        for c in strict.ones() {
            let mut s = self.above[c].clone();
            s.set(c, false);
            blocked.union_with(&s);
        }
        strict.difference_with(&blocked);
        strict.ones().collect()
    }

    fn compute_graded(&self) -> bool {
        for a in 0..self.len() {
            for &b in &self.up[a] {
                if self.height[b] != self.height[a] + 1 {
                    return false;
                }
            }
        }
        let mut tops = (0..self.len()).filter(|&i| self.up[i].is_empty()).map(|i| self.height[i]);
        let first = tops.next().unwrap_or(0);
        tops.all(|h| h == first)
    }

    fn compute_fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.labels.hash(&mut h);
        self.up.hash(&mut h);
        h.finish()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of `label`, by binary search over the sorted labels.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn require(&self, label: &str) -> Result<usize, PosetError> {
        self.index_of(label).ok_or_else(|| PosetError::UnknownElement(label.to_string()))
    }

    /// Hash of labels and covers; equal posets have equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.above[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    /// All cover pairs `(a, b)` with `a -> b`, in index order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Reflexive principal filter of `a` as a bitset.
    pub fn above(&self, a: usize) -> &FixedBitSet {
        &self.above[a]
    }

    /// Reflexive principal ideal of `a` as a bitset.
    pub fn below(&self, a: usize) -> &FixedBitSet {
        &self.below[a]
    }

    /// Length of the longest chain ending at `a`.
    pub fn height(&self, a: usize) -> usize {
        self.height[a]
    }

    /// Length of the longest chain starting at `a`.
    pub fn depth(&self, a: usize) -> usize {
        self.above[a].ones().map(|b| self.height[b] - self.height[a]).max().unwrap_or(0)
    }

    /// True iff all maximal chains have the same length.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Length of the maximal chains of a graded poset.
    pub fn rank(&self) -> Result<usize, PosetError> {
        if self.is_empty() {
            return Err(PosetError::EmptyPoset);
        }
        if !self.graded {
            return Err(PosetError::NotGraded);
        }
        Ok(self.height.iter().copied().max().unwrap_or(0))
    }

    /// Rank of `a` when the poset is graded (longest chain ending at `a`).
    pub fn rank_of(&self, a: usize) -> Option<usize> {
        self.graded.then(|| self.height[a])
    }

    /// Length of the longest chain in the poset, `None` when empty.
    pub fn longest_chain(&self) -> Option<usize> {
        self.height.iter().copied().max()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn maximum(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.minimum().is_some() && self.maximum().is_some()
    }

    pub fn all_members(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn members_of(&self, elements: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        for &e in elements {
            s.insert(e);
        }
        s
    }

    /// Induced subposet on `members`. Labels keep their relative order.
    pub fn induced(&self, members: &FixedBitSet) -> Poset {
        let idx: Vec<usize> = members.ones().collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k;
        }
        let up: Vec<Vec<usize>> = idx
            .iter()
            .map(|&a| self.cover_candidates(a, Some(members)).into_iter().map(|b| pos[b]).collect())
            .collect();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        Self::assemble(labels, up).expect("induced subposet of a poset is acyclic")
    }

    /// Induced subposet on the given element indices.
    pub fn subposet(&self, elements: &[usize]) -> Poset {
        self.induced(&self.members_of(elements))
    }

    /// The poset with the elements in `removed` deleted.
    pub fn remove(&self, removed: &[usize]) -> Poset {
        let mut m = self.all_members();
        for &r in removed {
            m.set(r, false);
        }
        self.induced(&m)
    }

    /// Members of the closed interval `[x, y]` or open interval `(x, y)`.
    pub fn interval_members(&self, x: usize, y: usize, open: bool) -> Result<FixedBitSet, PosetError> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(self.labels[x].clone(), self.labels[y].clone()));
        }
        let mut m = self.above[x].clone();
        m.intersect_with(&self.below[y]);
        if open {
            m.set(x, false);
            m.set(y, false);
        }
        Ok(m)
    }

    pub fn interval(&self, x: usize, y: usize, open: bool) -> Result<Poset, PosetError> {
        Ok(self.induced(&self.interval_members(x, y, open)?))
    }

    /// Members of the order ideal generated by `generators`.
    pub fn ideal_members(&self, generators: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.len());
        for &g in generators {
            m.union_with(&self.below[g]);
        }
        m
    }

    pub fn order_ideal(&self, generators: &[usize]) -> Poset {
        self.induced(&self.ideal_members(generators))
    }

    /// Order ideal generated by elements named by label.
    pub fn order_ideal_by_labels<S: AsRef<str>>(&self, generators: &[S]) -> Result<Poset, PosetError> {
        let idx = generators.iter().map(|g| self.require(g.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Ok(self.order_ideal(&idx))
    }

    pub fn filter_members(&self, generators: &[usize]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.len());
        for &g in generators {
            m.union_with(&self.above[g]);
        }
        m
    }

    /// Strict lower set `P_{<x}`.
    pub fn strictly_below(&self, x: usize) -> FixedBitSet {
        let mut m = self.below[x].clone();
        m.set(x, false);
        m
    }

    /// Strict upper set `P_{>x}`.
    pub fn strictly_above(&self, x: usize) -> FixedBitSet {
        let mut m = self.above[x].clone();
        m.set(x, false);
        m
    }

    /// True iff `members` is downward closed.
    pub fn is_ideal(&self, members: &FixedBitSet) -> bool {
        members.ones().all(|x| self.below[x].is_subset(members))
    }

    /// The poset on the same labels with every relation reversed.
    pub fn dual(&self) -> Poset {
        Self::assemble(self.labels.clone(), self.down.clone()).expect("dual of a poset is acyclic")
    }

    pub fn is_self_dual(&self) -> bool {
        is_isomorphic(self, &self.dual())
    }

    /// Removes the minimum and maximum of a bounded poset.
    pub fn proper_part(&self) -> Option<Poset> {
        let lo = self.minimum()?;
        let hi = self.maximum()?;
        Some(self.remove(&[lo, hi]))
    }

    /// `{0^} ⊕ P ⊕ {1^}` with the new elements labelled [`BOTTOM_LABEL`] and
    /// [`TOP_LABEL`]. Returns the extension and the indices of the new
    /// bottom and top.
    pub fn bounded_extension(&self) -> (Poset, usize, usize) {
        assert!(
            self.index_of(BOTTOM_LABEL).is_none() && self.index_of(TOP_LABEL).is_none(),
            "bounded extension labels collide with existing elements"
        );
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(BOTTOM_LABEL.to_string());
        labels.push(TOP_LABEL.to_string());
        let mut covers: Vec<(usize, usize)> = self.covers().collect();
        for m in self.minimal_elements() {
            covers.push((n, m));
        }
        for m in self.maximal_elements() {
            covers.push((m, n + 1));
        }
        if n == 0 {
            covers.push((0, 1));
        }
        let ext = Self::from_index_covers(labels, &covers).expect("bounded extension is valid");
        let lo = ext.index_of(BOTTOM_LABEL).unwrap();
        let hi = ext.index_of(TOP_LABEL).unwrap();
        (ext, lo, hi)
    }

    /// Chain `0 < 1 < ... < k-1` with decimal labels.
    pub fn chain(k: usize) -> Poset {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let covers: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_index_covers(labels, &covers).expect("chain is valid")
    }

    /// The two-element chain `{0^ < 1^}` with labels "0" and "1".
    pub fn two_chain() -> Poset {
        Self::chain(2)
    }

    pub fn antichain(k: usize) -> Poset {
        let labels = (0..k).map(|i| i.to_string()).collect();
        Self::from_index_covers(labels, &[]).expect("antichain is valid")
    }

    /// Boolean algebra of subsets of `{1..n}`, labelled `{}`, `{1}`, `{1,2}`, ...
    pub fn boolean_algebra(n: usize) -> Poset {
        assert!(n < 24, "boolean algebra too large");
        let size = 1usize << n;
        let labels = (0..size).map(|m| subset_label(m as u64, n)).collect();
        let mut covers = Vec::new();
        for m in 0..size {
            for i in 0..n {
                if m & (1 << i) == 0 {
                    covers.push((m, m | (1 << i)));
                }
            }
        }
        Self::from_index_covers(labels, &covers).expect("boolean algebra is valid")
    }

    /// Direct product with componentwise order; elements labelled `(x,y)`.
    pub fn product(p: &Poset, q: &Poset) -> Poset {
        let nq = q.len();
        let labels = (0..p.len())
            .flat_map(|a| (0..nq).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", p.labels[a], q.labels[b]))
            .collect();
        let mut covers = Vec::new();
        for a in 0..p.len() {
            for b in 0..nq {
                let me = a * nq + b;
                for &a2 in &p.up[a] {
                    covers.push((me, a2 * nq + b));
                }
                for &b2 in &q.up[b] {
                    covers.push((me, a * nq + b2));
                }
            }
        }
        Self::from_index_covers(labels, &covers).expect("product labels are distinct")
    }

    /// Ordinal sum: every element of `p` lies below every element of `q`.
    /// Elements are labelled `L:x` and `R:y`.
    pub fn ordinal_sum(p: &Poset, q: &Poset) -> Poset {
        let np = p.len();
        let labels =
            p.labels.iter().map(|l| format!("L:{l}")).chain(q.labels.iter().map(|l| format!("R:{l}"))).collect();
        let mut covers: Vec<(usize, usize)> = p.covers().collect();
        covers.extend(q.covers().map(|(a, b)| (a + np, b + np)));
        for a in p.maximal_elements() {
            for b in q.minimal_elements() {
                covers.push((a, b + np));
            }
        }
        Self::from_index_covers(labels, &covers).expect("ordinal sum labels are distinct")
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson { elements: self.labels.clone(), covers: self.covers().map(|(a, b)| [a, b]).collect() }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset, PosetError> {
        let covers: Vec<(usize, usize)> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        Self::from_index_covers(json.elements.clone(), &covers)
    }

    /// Number of elements of each rank (by height).
    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.longest_chain().map_or(0, |h| h + 1)];
        for &h in &self.height {
            sizes[h] += 1;
        }
        sizes
    }
}

/// Label of a subset of `{1..n}` given as a bitmask.
pub fn subset_label(mask: u64, n: usize) -> String {
    let parts: Vec<String> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn sort_labels(labels: Vec<String>) -> Result<(Vec<String>, Vec<usize>), PosetError> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut remap = vec![0; labels.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let mut labels = labels;
    let mut sorted: Vec<String> = Vec::with_capacity(labels.len());
    for &old in &order {
        sorted.push(std::mem::take(&mut labels[old]));
    }
    Ok((sorted, remap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_and_chain() -> Poset {
        Poset::from_covers(&["a", "b", "c", "d", "e"], &[("a", "c"), ("b", "c"), ("a", "d"), ("d", "e")]).unwrap()
    }

    #[test]
    fn singleton_and_cycles() {
        let p = Poset::from_covers::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.rank(), Ok(0));
        let err = Poset::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::CycleDetected(_)));
        let err = Poset::from_covers(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateLabel("a".into()));
    }

    #[test]
    fn redundant_cover_is_rejected() {
        let err = Poset::from_covers(&["0", "1", "2"], &[("0", "1"), ("1", "2"), ("0", "2")]).unwrap_err();
        assert_eq!(err, PosetError::RedundantCover("0".into(), "2".into()));
        // the same pairs are fine as plain relations
        let p = Poset::from_relations(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.cover_count(), 2);
    }

    #[test]
    fn gradedness() {
        assert_eq!(Poset::chain(2).rank(), Ok(1));
        let p = v_and_chain();
        assert!(!p.is_graded());
        assert_eq!(p.rank(), Err(PosetError::NotGraded));
        assert_eq!(Poset::antichain(0).rank(), Err(PosetError::EmptyPoset));
    }

    #[test]
    fn intervals_and_ideals() {
        let c = Poset::chain(3);
        assert_eq!(c.interval(0, 2, false).unwrap().len(), 3);
        assert!(c.interval(1, 1, true).unwrap().is_empty());
        let p = v_and_chain();
        let (b, d) = (p.require("b").unwrap(), p.require("d").unwrap());
        assert!(matches!(p.interval(b, d, false), Err(PosetError::NotComparable(..))));
        let maxes = p.maximal_elements();
        assert_eq!(p.order_ideal(&maxes).len(), p.len());
        let b3 = Poset::boolean_algebra(3);
        assert_eq!(b3.order_ideal(&[b3.minimum().unwrap()]).len(), 1);
        assert!(matches!(p.order_ideal_by_labels(&["zz"]), Err(PosetError::UnknownElement(_))));
    }

    #[test]
    fn dual_and_self_duality() {
        let v = Poset::from_covers(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let d = v.dual();
        assert_eq!(d.minimal_elements().len(), 2);
        assert!(!v.is_self_dual());
        assert!(Poset::chain(4).is_self_dual());
        assert_eq!(d.dual(), v);
    }

    #[test]
    fn products_and_sums() {
        let diamond = Poset::product(&Poset::two_chain(), &Poset::two_chain());
        assert!(is_isomorphic(&diamond, &Poset::boolean_algebra(2)));
        let s = Poset::ordinal_sum(&Poset::chain(1), &Poset::chain(1));
        assert!(is_isomorphic(&s, &Poset::chain(2)));
        let b2 = Poset::boolean_algebra(2);
        let c3 = Poset::chain(3);
        assert_eq!(Poset::product(&b2, &c3).rank(), Ok(4));
        assert_eq!(Poset::ordinal_sum(&b2, &c3).rank(), Ok(5));
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::boolean_algebra(3);
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back = Poset::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }

    #[test]
    fn bounded_extension_of_antichain() {
        let (ext, lo, hi) = Poset::antichain(3).bounded_extension();
        assert_eq!(ext.len(), 5);
        assert_eq!(ext.minimum(), Some(lo));
        assert_eq!(ext.maximum(), Some(hi));
        let (e0, lo, hi) = Poset::antichain(0).bounded_extension();
        assert!(e0.lt(lo, hi));
    }
}
