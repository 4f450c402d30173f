//! Injective words, the Boolean cell complexes built from them, and the
//! letter-deletion and content maps.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::SimplicialComplex;
use crate::poset::{is_isomorphic, subset_label, Poset, PosetError, PosetMap};

pub const DEFAULT_WORD_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordsError {
    #[error("n = {n} is above the cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("n must be at least {0}")]
    TooSmall(usize),
    #[error("invalid word `{0}`")]
    BadWord(String),
    #[error("vertex poset must be labelled 1..{0}")]
    BadVertexPoset(usize),
    #[error("alphabet of {0} letters is too large")]
    AlphabetTooLarge(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A word with pairwise distinct letters from `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InjectiveWord {
    letters: Vec<u8>,
}

impl InjectiveWord {
    pub fn new(letters: Vec<u8>) -> Result<Self, WordsError> {
        let mut seen = 0u64;
        for &a in &letters {
            if a == 0 || a > 64 || seen & (1 << (a - 1)) != 0 {
                return Err(WordsError::BadWord(format!("{letters:?}")));
            }
            seen |= 1 << (a - 1);
        }
        Ok(InjectiveWord { letters })
    }

    pub fn empty() -> Self {
        InjectiveWord::default()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter set as a bitmask, letter `a` at bit `a - 1`.
    pub fn content(&self) -> u64 {
        self.letters.iter().fold(0, |m, &a| m | (1 << (a - 1)))
    }

    pub fn contains(&self, a: u8) -> bool {
        self.letters.contains(&a)
    }

    pub fn is_subword_of(&self, other: &InjectiveWord) -> bool {
        let mut it = other.letters.iter();
        self.letters.iter().all(|a| it.any(|b| b == a))
    }

    pub fn delete(&self, a: u8) -> InjectiveWord {
        InjectiveWord { letters: self.letters.iter().copied().filter(|&b| b != a).collect() }
    }

    pub fn delete_at(&self, i: usize) -> InjectiveWord {
        let mut letters = self.letters.clone();
        letters.remove(i);
        InjectiveWord { letters }
    }

    pub fn insert_at(&self, i: usize, a: u8) -> Result<InjectiveWord, WordsError> {
        let mut letters = self.letters.clone();
        letters.insert(i, a);
        InjectiveWord::new(letters)
    }

    /// Digits for alphabets up to 9 letters, dot-separated numbers beyond.
    pub fn label(&self, alphabet: usize) -> String {
        let parts: Vec<String> = self.letters.iter().map(|a| a.to_string()).collect();
        if alphabet > 9 {
            parts.join(".")
        } else {
            parts.concat()
        }
    }

    pub fn parse(s: &str) -> Result<InjectiveWord, WordsError> {
        let bad = || WordsError::BadWord(s.to_string());
        let letters: Vec<u8> = if s.contains('.') {
            s.split('.').map(|t| t.parse::<u8>().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        InjectiveWord::new(letters).map_err(|_| bad())
    }
}

impl fmt::Display for InjectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.letters.iter().copied().max().unwrap_or(0) as usize;
        f.write_str(&self.label(max))
    }
}

/// All injective words over `1..=n` whose content satisfies `keep`.
fn words_with_content(n: usize, keep: &dyn Fn(u64) -> bool) -> Vec<InjectiveWord> {
    fn rec(n: usize, cur: &mut Vec<u8>, used: u64, keep: &dyn Fn(u64) -> bool, out: &mut Vec<InjectiveWord>) {
        out.push(InjectiveWord { letters: cur.clone() });
        for a in 1..=n as u8 {
            let bit = 1u64 << (a - 1);
            if used & bit == 0 && keep(used | bit) {
                cur.push(a);
                rec(n, cur, used | bit, keep, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if keep(0) {
        rec(n, &mut Vec::new(), 0, keep, &mut out);
    }
    out
}

pub fn injective_words(n: usize) -> Vec<InjectiveWord> {
    words_with_content(n, &|_| true)
}

/// Poset on words with subword order; covers delete one letter.
fn word_poset(words: &[InjectiveWord], alphabet: usize) -> Result<Poset, WordsError> {
    let index: HashMap<&InjectiveWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut covers = Vec::new();
    for (i, w) in words.iter().enumerate() {
        for k in 0..w.len() {
            if let Some(&j) = index.get(&w.delete_at(k)) {
                covers.push((j, i));
            }
        }
    }
    let labels = words.iter().map(|w| w.label(alphabet)).collect();
    Ok(Poset::from_index_covers(labels, &covers)?)
}

pub fn injective_word_poset(n: usize) -> Result<Poset, WordsError> {
    injective_word_poset_with_cap(n, DEFAULT_WORD_CAP)
}

pub fn injective_word_poset_with_cap(n: usize, cap: usize) -> Result<Poset, WordsError> {
    if n > cap {
        return Err(WordsError::SizeCapExceeded { n, cap });
    }
    word_poset(&injective_words(n), n)
}

/// `π(w)`: delete the letter `n`.
pub fn delete_letter(w: &InjectiveWord, n: u8) -> InjectiveWord {
    w.delete(n)
}

/// `f: I_n -> I_{n-1} × {0 < 1}`, `f(w) = (π(w), 0)` if `n` does not occur
/// in `w` and `(π(w), 1)` otherwise.
pub fn word_deletion_map(n: usize) -> Result<PosetMap, WordsError> {
    if n < 2 {
        return Err(WordsError::TooSmall(2));
    }
    let src = Arc::new(injective_word_poset_with_cap(n, n.max(DEFAULT_WORD_CAP))?);
    let lower = injective_word_poset_with_cap(n - 1, n.max(DEFAULT_WORD_CAP))?;
    let tgt = Arc::new(Poset::product(&lower, &Poset::two_chain()));
    let image = src
        .labels()
        .iter()
        .map(|l| {
            let w = InjectiveWord::parse(l)?;
            let flag = u8::from(w.contains(n as u8));
            Ok(tgt.require(&format!("({},{flag})", w.delete(n as u8).label(n - 1)))?)
        })
        .collect::<Result<Vec<_>, WordsError>>()?;
    Ok(PosetMap::new(src, tgt, image)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberIdealReport {
    pub targets_checked: usize,
    /// `f^{-1}(<q>) = <f^{-1}(q)>` for every target `q`.
    pub ideal_identity: bool,
    /// For the word-deletion map: `f^{-1}(<(w,1)>)` equals the union of the
    /// ideals of the insertions of `n` into `w`.
    pub insertion_union: Option<bool>,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Checks `f^{-1}(<q>) = <f^{-1}(q)>` for every `q` in the target.
pub fn verify_fiber_ideal_claim(f: &PosetMap) -> FiberIdealReport {
    let q = f.target();
    let failures: Vec<String> = (0..q.len())
        .into_par_iter()
        .filter_map(|t| {
            let lhs = f.preimage_of_ideal(t);
            let rhs = f.source().ideal_members(&f.fiber(t));
            (lhs != rhs).then(|| q.label(t).to_string())
        })
        .collect();
    FiberIdealReport {
        targets_checked: q.len(),
        ideal_identity: failures.is_empty(),
        insertion_union: None,
        passed: failures.is_empty(),
        failures,
    }
}

/// The fiber-ideal check on `word_deletion_map(n)` together with the
/// explicit union of insertion ideals for every `q = (w, 1)`.
pub fn verify_word_deletion_claim(n: usize) -> Result<FiberIdealReport, WordsError> {
    let f = word_deletion_map(n)?;
    let mut report = verify_fiber_ideal_claim(&f);
    let src = f.source();
    let tgt = f.target();
    let letter = n as u8;
    let bad: Vec<String> = (0..tgt.len())
        .into_par_iter()
        .filter_map(|t| {
            let label = tgt.label(t);
            let inner = label.strip_prefix('(')?.strip_suffix(",1)")?;
            let w = InjectiveWord::parse(inner).ok()?;
            let gens: Vec<usize> =
                (0..=w.len()).map(|i| src.index_of(&w.insert_at(i, letter).unwrap().label(n)).unwrap()).collect();
            let union = src.ideal_members(&gens);
            (union != f.preimage_of_ideal(t)).then(|| format!("insertion union for {label}"))
        })
        .collect();
    report.insertion_union = Some(bad.is_empty());
    report.passed &= bad.is_empty();
    report.failures.extend(bad);
    Ok(report)
}

/// Face poset of a Boolean cell complex, with the content of every cell.
#[derive(Clone, Debug)]
pub struct CellFacePoset {
    pub poset: Poset,
    /// Vertex set of each element as a bitmask (vertex `i` at bit `i`).
    pub contents: Vec<u64>,
    pub boolean_cell: bool,
}

impl CellFacePoset {
    fn build(poset: Poset, contents: Vec<u64>) -> Self {
        let boolean_cell = all_ideals_boolean(&poset);
        CellFacePoset { poset, contents, boolean_cell }
    }

    /// The poset with its minimum (the empty cell) removed.
    pub fn without_empty(&self) -> Poset {
        match self.poset.minimum() {
            Some(m) => self.poset.remove(&[m]),
            None => self.poset.clone(),
        }
    }
}

/// True iff every closed principal ideal is a Boolean algebra.
pub fn all_ideals_boolean(p: &Poset) -> bool {
    (0..p.len()).into_par_iter().all(|x| {
        let m = p.below(x);
        let k = p.height(x);
        if m.count_ones(..) != 1 << k {
            return false;
        }
        is_isomorphic(&p.induced(m), &Poset::boolean_algebra(k))
    })
}

fn face_masks(delta: &SimplicialComplex) -> Result<BTreeSet<u64>, WordsError> {
    if delta.vertex_count() > 64 {
        return Err(WordsError::AlphabetTooLarge(delta.vertex_count()));
    }
    let mut out = BTreeSet::new();
    if delta.is_void() {
        return Ok(out);
    }
    out.insert(0);
    for f in delta.facets() {
        let m: u64 = f.iter().fold(0, |m, &v| m | (1 << v));
        let mut sub = m;
        loop {
            out.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & m;
        }
    }
    Ok(out)
}

/// The face poset of `delta`, faces labelled `{1,2}` with vertex `i` shown
/// as `i + 1`; includes the empty face unless `delta` is void.
pub fn face_poset(delta: &SimplicialComplex) -> Result<Poset, WordsError> {
    let faces: Vec<u64> = face_masks(delta)?.into_iter().collect();
    let index: HashMap<u64, usize> = faces.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut covers = Vec::new();
    for (i, &m) in faces.iter().enumerate() {
        let mut bits = m;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            covers.push((index[&(m & !b)], i));
            bits &= !b;
        }
    }
    let n = delta.vertex_count();
    let labels = faces.iter().map(|&m| subset_label(m, n)).collect();
    Ok(Poset::from_index_covers(labels, &covers)?)
}

fn gamma_from_words(words: Vec<InjectiveWord>, alphabet: usize) -> Result<CellFacePoset, WordsError> {
    let poset = word_poset(&words, alphabet)?;
    let by_label: HashMap<String, u64> = words.iter().map(|w| (w.label(alphabet), w.content())).collect();
    let contents = poset.labels().iter().map(|l| by_label[l]).collect();
    Ok(CellFacePoset::build(poset, contents))
}

/// `Γ(Δ)`: injective words whose content is a face of `delta`. Letters are
/// vertices shifted by one.
pub fn gamma_complex(delta: &SimplicialComplex) -> Result<CellFacePoset, WordsError> {
    let faces = face_masks(delta)?;
    if faces.is_empty() {
        return Ok(CellFacePoset::build(Poset::antichain(0), Vec::new()));
    }
    let words = words_with_content(delta.vertex_count(), &|m| faces.contains(&m));
    gamma_from_words(words, delta.vertex_count())
}

/// `less[i][j]` for letters `i + 1 < j + 1` in a poset labelled `1..=n`.
fn letter_order(p: &Poset, n: usize) -> Result<Vec<Vec<bool>>, WordsError> {
    if p.len() != n {
        return Err(WordsError::BadVertexPoset(n));
    }
    let idx: Vec<usize> =
        (1..=n).map(|a| p.index_of(&a.to_string()).ok_or(WordsError::BadVertexPoset(n))).collect::<Result<_, _>>()?;
    Ok((0..n).map(|i| (0..n).map(|j| p.lt(idx[i], idx[j])).collect()).collect())
}

/// `Γ(Δ, P)`: words of `Γ(Δ)` listing `P`-comparable letters in `P`-order.
pub fn gamma_poset_restricted(delta: &SimplicialComplex, p: &Poset) -> Result<CellFacePoset, WordsError> {
    let n = delta.vertex_count();
    let less = letter_order(p, n)?;
    let full = gamma_complex(delta)?;
    let mut words: Vec<InjectiveWord> = Vec::new();
    for l in full.poset.labels() {
        let w = InjectiveWord::parse(l)?;
        let ls = w.letters();
        let ok = (0..ls.len()).all(|i| (i + 1..ls.len()).all(|j| !less[ls[j] as usize - 1][ls[i] as usize - 1]));
        if ok {
            words.push(w);
        }
    }
    gamma_from_words(words, n)
}

/// Canonical representative of the commutation class of `w`: the
/// lexicographically least word reachable by swapping adjacent letters
/// that are not joined by an edge.
pub fn commutation_class_rep(w: &InjectiveWord, edge: &dyn Fn(u8, u8) -> bool) -> InjectiveWord {
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len().saturating_sub(1) {
            let (a, b) = (v.letters[i], v.letters[i + 1]);
            if !edge(a, b) {
                let mut u = v.clone();
                u.letters.swap(i, i + 1);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
    }
    seen.into_iter().next().unwrap()
}

/// `Γ/G(Δ)`: commutation classes of words of `Γ(Δ)` where letters not
/// joined by an edge of `G` commute. Edges are pairs of letters (vertex
/// plus one). The order is the transitive closure of "some
/// representatives are comparable"; a cycle is reported as an error.
pub fn gamma_quotient(delta: &SimplicialComplex, edges: &[(u8, u8)]) -> Result<CellFacePoset, WordsError> {
    let n = delta.vertex_count();
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for &(a, b) in edges {
        if a as usize > n || b as usize > n || a == 0 || b == 0 {
            return Err(WordsError::BadWord(format!("edge {a}-{b}")));
        }
        adj[a as usize][b as usize] = true;
        adj[b as usize][a as usize] = true;
    }
    let edge = |a: u8, b: u8| adj[a as usize][b as usize];
    let full = gamma_complex(delta)?;
    let words: Vec<InjectiveWord> =
        full.poset.labels().iter().map(|l| InjectiveWord::parse(l)).collect::<Result<_, _>>()?;
    let reps: Vec<InjectiveWord> = words.par_iter().map(|w| commutation_class_rep(w, &edge)).collect();
    let mut classes: Vec<InjectiveWord> = reps.clone();
    classes.sort();
    classes.dedup();
    let class_of: HashMap<&InjectiveWord, usize> = classes.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let word_class: Vec<usize> = reps.iter().map(|r| class_of[r]).collect();
    let mut rel = BTreeSet::new();
    for i in 0..full.poset.len() {
        for &j in full.poset.lower_covers(i) {
            rel.insert((word_class[j], word_class[i]));
        }
    }
    let rel: Vec<(usize, usize)> = rel.into_iter().collect();
    let labels: Vec<String> = classes.iter().map(|w| format!("[{}]", w.label(n))).collect();
    let poset = Poset::from_relations(labels.clone(), &rel)?;
    let content_by_label: HashMap<&String, u64> = labels.iter().zip(&classes).map(|(l, w)| (l, w.content())).collect();
    let contents = poset.labels().iter().map(|l| content_by_label[l]).collect();
    Ok(CellFacePoset::build(poset, contents))
}

/// The content map `w -> {w_1, ..., w_s}` onto the face poset of `delta`,
/// shifted to vertex numbering (letter `a` is vertex `a - 1`).
pub fn content_map(gamma: &CellFacePoset, delta: &SimplicialComplex) -> Result<PosetMap, WordsError> {
    let faces = Arc::new(face_poset(delta)?);
    let n = delta.vertex_count();
    let image = gamma
        .contents
        .iter()
        .map(|&m| faces.require(&subset_label(m, n)).map_err(WordsError::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PosetMap::new(Arc::new(gamma.poset.clone()), faces, image)?)
}

/// Members of `p` strictly above the minimum, as a bitset.
pub fn without_minimum_members(p: &Poset) -> FixedBitSet {
    let mut m = p.all_members();
    if let Some(lo) = p.minimum() {
        m.set(lo, false);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> InjectiveWord {
        InjectiveWord::parse(s).unwrap()
    }

    #[test]
    fn words_and_order() {
        assert!(w("124").is_subword_of(&w("12345")));
        assert!(!w("12").is_subword_of(&w("23")) && !w("23").is_subword_of(&w("12")));
        let i3 = injective_word_poset(3).unwrap();
        assert_eq!(i3.len(), 16);
        assert_eq!(i3.rank().unwrap(), 3);
        let (a, b) = (i3.index_of("12").unwrap(), i3.index_of("23").unwrap());
        assert!(!i3.comparable(a, b));
        assert!(InjectiveWord::parse("121").is_err());
        assert_eq!(w("1.2.10").letters(), &[1, 2, 10]);
        assert_eq!(w("1.2.10").label(10), "1.2.10");
        assert!(matches!(injective_word_poset(7), Err(WordsError::SizeCapExceeded { .. })));
    }

    #[test]
    fn deletion_map_examples() {
        assert_eq!(delete_letter(&w("12534"), 5), w("1234"));
        assert_eq!(delete_letter(&w("341"), 5), w("341"));
        let f = word_deletion_map(3).unwrap();
        let img = |s: &str| f.target().label(f.apply(f.source().index_of(s).unwrap())).to_string();
        assert_eq!(img("12"), "(12,0)");
        assert_eq!(img("312"), "(12,1)");
        assert!(f.check().all());
    }

    #[test]
    fn fiber_claim() {
        let r = verify_word_deletion_claim(3).unwrap();
        assert!(r.passed);
        let f = word_deletion_map(3).unwrap();
        let q = f.target().index_of("(12,1)").unwrap();
        let fiber: Vec<&str> = f.fiber(q).iter().map(|&x| f.source().label(x)).collect();
        assert_eq!(fiber, vec!["123", "132", "312"]);
        assert_eq!(f.preimage_of_ideal(q).count_ones(..), 12);
    }

    #[test]
    fn gamma_variants() {
        let full3 = SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        let g = gamma_complex(&full3).unwrap();
        assert!(is_isomorphic(&g.poset, &injective_word_poset(3).unwrap()));
        assert!(g.boolean_cell);
        let pts = SimplicialComplex::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(gamma_complex(&pts).unwrap().poset.len(), 4);
        let tri = SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(gamma_complex(&tri).unwrap().poset.len(), 10);

        let anti = Poset::from_covers::<&str>(&["1", "2", "3"], &[]).unwrap();
        let chain = Poset::from_covers(&["1", "2", "3"], &[("1", "2"), ("2", "3")]).unwrap();
        let ga = gamma_poset_restricted(&tri, &anti).unwrap();
        assert_eq!(ga.poset, gamma_complex(&tri).unwrap().poset);
        let gc = gamma_poset_restricted(&tri, &chain).unwrap();
        assert_eq!(gc.poset.len(), 7);
        assert!(is_isomorphic(&gc.poset, &face_poset(&tri).unwrap()));
        let rel = Poset::from_covers(&["1", "2", "3"], &[("1", "2")]).unwrap();
        let gr = gamma_poset_restricted(&full3, &rel).unwrap();
        assert!(gr.poset.index_of("21").is_none() && gr.poset.index_of("213").is_none());
        assert!(gr.poset.index_of("12").is_some());
    }

    #[test]
    fn quotients() {
        let full3 = SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        let complete = gamma_quotient(&full3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_isomorphic(&complete.poset, &gamma_complex(&full3).unwrap().poset));
        let full2 = SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap();
        let free = gamma_quotient(&full2, &[]).unwrap();
        assert_eq!(free.poset.len(), 4);
        assert_eq!(free.poset.maximal_elements().len(), 1);
        assert!(free.boolean_cell);
        let path = gamma_quotient(&full3, &[(1, 2), (2, 3)]).unwrap();
        assert!(path.poset.index_of("[13]").is_some() && path.poset.index_of("[31]").is_none());
        assert!(path.poset.index_of("[12]").is_some() && path.poset.index_of("[21]").is_some());
        assert!(path.boolean_cell);
    }

    #[test]
    fn content_maps() {
        let bd = SimplicialComplex::new(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let p = Poset::from_covers::<&str>(&["1", "2", "3", "4"], &[]).unwrap();
        let g = gamma_poset_restricted(&bd, &p).unwrap();
        let f = content_map(&g, &bd).unwrap();
        assert!(f.check().all());
        let img = |s: &str| f.target().label(f.apply(f.source().index_of(s).unwrap())).to_string();
        assert_eq!(img(""), "{}");
        assert_eq!(img("312"), "{1,2,3}");
    }
}
