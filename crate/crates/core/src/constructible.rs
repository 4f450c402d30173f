//! Strong-constructibility certificates.
//!
//! A certificate is a finite tree. A leaf asserts that its poset is bounded
//! and shellable, either because it is a Boolean algebra or by an explicit
//! shelling of its order complex. A node splits its poset into two proper
//! order ideals of full rank whose intersection has rank at least one less.
//! Builders follow explicit recursions only; they never search for
//! decompositions of arbitrary posets.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Poset, PosetError, PosetMap};
use crate::words::{injective_word_poset_with_cap, word_deletion_map, InjectiveWord, WordsError};

pub const DEFAULT_CERTIFICATE_CAP: usize = 6;

/// Node budget of the shelling search used for product leaves.
pub const SHELLING_SEARCH_BUDGET: u64 = 200_000;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("n = {n} exceeds the cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("invalid input certificate: {0}")]
    InvalidInputCertificate(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("certificate shape unsupported: {0}")]
    CertificateShapeUnsupported(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "facets", rename_all = "snake_case")]
pub enum LeafKind {
    BooleanInterval,
    /// Maximal chains of the order complex, each listed bottom to top.
    ShellingOrder(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Leaf { elements: Vec<String>, leaf: LeafKind },
    Node { elements: Vec<String>, j1: Box<Certificate>, j2: Box<Certificate>, intersection: Box<Certificate> },
}

impl Certificate {
    pub fn elements(&self) -> &[String] {
        match self {
            Certificate::Leaf { elements, .. } | Certificate::Node { elements, .. } => elements,
        }
    }

    fn boolean(p: &Poset, members: &FixedBitSet) -> Self {
        Certificate::Leaf { elements: labels_of(p, members), leaf: LeafKind::BooleanInterval }
    }

    fn node(p: &Poset, members: &FixedBitSet, j1: Certificate, j2: Certificate, intersection: Certificate) -> Self {
        Certificate::Node {
            elements: labels_of(p, members),
            j1: Box::new(j1),
            j2: Box::new(j2),
            intersection: Box::new(intersection),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 1,
            Certificate::Node { j1, j2, intersection, .. } => {
                j1.leaf_count() + j2.leaf_count() + intersection.leaf_count()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Certificate::Leaf { .. } => 0,
            Certificate::Node { j1, j2, intersection, .. } => 1 + j1.depth().max(j2.depth()).max(intersection.depth()),
        }
    }

    /// Renames every element with `rename`.
    pub fn relabeled(&self, rename: &dyn Fn(&str) -> String) -> Certificate {
        let names = |v: &[String]| {
            let mut out: Vec<String> = v.iter().map(|l| rename(l)).collect();
            out.sort();
            out
        };
        match self {
            Certificate::Leaf { elements, leaf } => Certificate::Leaf {
                elements: names(elements),
                leaf: match leaf {
                    LeafKind::BooleanInterval => LeafKind::BooleanInterval,
                    LeafKind::ShellingOrder(fs) => {
                        LeafKind::ShellingOrder(fs.iter().map(|f| f.iter().map(|l| rename(l)).collect()).collect())
                    }
                },
            },
            Certificate::Node { elements, j1, j2, intersection } => Certificate::Node {
                elements: names(elements),
                j1: Box::new(j1.relabeled(rename)),
                j2: Box::new(j2.relabeled(rename)),
                intersection: Box::new(intersection.relabeled(rename)),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    /// Steps (`j1`, `j2`, `intersection`) from the root to the failing
    /// subtree.
    pub path: Vec<String>,
    pub reason: Option<String>,
    pub nodes_checked: usize,
}

type Failure = (Vec<String>, String);

/// Checks a certificate against `p`. The root must list exactly the
/// elements of `p`.
pub fn verify_certificate(p: &Poset, cert: &Certificate) -> Verification {
    let result = members_of_labels(p, cert.elements()).and_then(|m| {
        if m != p.all_members() {
            Err((Vec::new(), "root elements differ from the poset".to_string()))
        } else {
            check(p, cert, &m)
        }
    });
    match result {
        Ok(nodes) => Verification { valid: true, path: Vec::new(), reason: None, nodes_checked: nodes },
        Err((mut path, reason)) => {
            path.reverse();
            Verification { valid: false, path, reason: Some(reason), nodes_checked: 0 }
        }
    }
}

fn members_of_labels(p: &Poset, labels: &[String]) -> Result<FixedBitSet, Failure> {
    let mut m = FixedBitSet::with_capacity(p.len());
    for l in labels {
        let i = p.index_of(l).ok_or_else(|| (Vec::new(), format!("unknown element {l:?}")))?;
        if m.put(i) {
            return Err((Vec::new(), format!("element {l:?} listed twice")));
        }
    }
    Ok(m)
}

fn check(root: &Poset, cert: &Certificate, members: &FixedBitSet) -> Result<usize, Failure> {
    let here = root.induced(members);
    let fail = |msg: String| Err((Vec::new(), msg));
    if here.is_empty() {
        return fail("empty poset".to_string());
    }
    if !here.is_graded() {
        return fail("not graded".to_string());
    }
    if here.minimum().is_none() {
        return fail("no minimum".to_string());
    }
    let n = here.longest_chain().expect("nonempty");
    match cert {
        Certificate::Leaf { leaf, .. } => {
            if here.maximum().is_none() {
                return fail("leaf is not bounded".to_string());
            }
            match leaf {
                LeafKind::BooleanInterval => {
                    if !is_boolean_algebra(&here) {
                        return fail("leaf is not a Boolean algebra".to_string());
                    }
                }
                LeafKind::ShellingOrder(facets) => {
                    let chains = facets
                        .iter()
                        .map(|f| {
                            f.iter()
                                .map(|l| here.index_of(l).ok_or_else(|| format!("unknown element {l:?} in facet")))
                                .collect::<Result<Vec<usize>, String>>()
                        })
                        .collect::<Result<Vec<_>, String>>();
                    let chains = match chains {
                        Ok(c) => c,
                        Err(e) => return fail(e),
                    };
                    let given: BTreeSet<Vec<usize>> = chains
                        .iter()
                        .map(|c| {
                            let mut c = c.clone();
                            c.sort_unstable();
                            c
                        })
                        .collect();
                    let actual: BTreeSet<Vec<usize>> = maximal_chains(&here)
                        .into_iter()
                        .map(|mut c| {
                            c.sort_unstable();
                            c
                        })
                        .collect();
                    if given.len() != facets.len() || given != actual {
                        return fail("facets are not the maximal chains".to_string());
                    }
                    if !is_shelling(&chains) {
                        return fail("facet order is not a shelling".to_string());
                    }
                }
            }
            Ok(1)
        }
        Certificate::Node { j1, j2, intersection, .. } => {
            let m1 = members_of_labels(root, j1.elements())?;
            let m2 = members_of_labels(root, j2.elements())?;
            let m12 = members_of_labels(root, intersection.elements())?;
            for (name, m) in [("j1", &m1), ("j2", &m2)] {
                if !m.is_subset(members) {
                    return fail(format!("{name} is not a subset"));
                }
                if !is_ideal_within(root, members, m) {
                    return fail(format!("{name} is not an order ideal"));
                }
                if m == members {
                    return fail(format!("{name} is not proper"));
                }
                let r = root.induced(m).longest_chain();
                if r != Some(n) {
                    return fail(format!("{name} has rank {r:?}, expected {n}"));
                }
            }
            let mut union = m1.clone();
            union.union_with(&m2);
            if &union != members {
                return fail("j1 and j2 do not cover the poset".to_string());
            }
            let mut meet = m1.clone();
            meet.intersect_with(&m2);
            if meet != m12 {
                return fail("intersection elements differ from j1 ∩ j2".to_string());
            }
            let r12 = root.induced(&m12).longest_chain();
            if r12.is_none_or(|r| r + 1 < n) {
                return fail(format!("intersection has rank {r12:?}, below {}", n as i64 - 1));
            }
            let tag = |r: Result<usize, Failure>, step: &str| {
                r.map_err(|(mut path, msg)| {
                    path.push(step.to_string());
                    (path, msg)
                })
            };
            let (a, (b, c)) = rayon::join(
                || tag(check(root, j1, &m1), "j1"),
                || {
                    rayon::join(
                        || tag(check(root, j2, &m2), "j2"),
                        || tag(check(root, intersection, &m12), "intersection"),
                    )
                },
            );
            Ok(1 + a? + b? + c?)
        }
    }
}

fn is_ideal_within(root: &Poset, within: &FixedBitSet, m: &FixedBitSet) -> bool {
    m.ones().all(|e| root.below(e).ones().all(|b| !within.contains(b) || m.contains(b)))
}

/// Recognizes a Boolean algebra: `2^a` elements for `a` atoms, and the
/// map sending an element to the set of atoms below it is an order
/// isomorphism onto the subsets.
pub fn is_boolean_algebra(p: &Poset) -> bool {
    let Some(bottom) = p.minimum() else { return false };
    let atoms = p.upper_covers(bottom).to_vec();
    let a = atoms.len();
    if a >= 63 || p.len() != 1usize << a {
        return false;
    }
    let code: Vec<u64> = (0..p.len())
        .map(|e| atoms.iter().enumerate().filter(|&(_, &t)| p.leq(t, e)).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    let mut seen = vec![false; p.len()];
    for &c in &code {
        if seen[c as usize] {
            return false;
        }
        seen[c as usize] = true;
    }
    (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == (code[x] & !code[y] == 0)))
}

/// Maximal chains of `p`, bottom to top.
pub fn maximal_chains(p: &Poset) -> Vec<Vec<usize>> {
    fn rec(p: &Poset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().expect("nonempty chain");
        if p.upper_covers(last).is_empty() {
            out.push(cur.clone());
            return;
        }
        for &b in p.upper_covers(last) {
            cur.push(b);
            rec(p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for m in p.minimal_elements() {
        rec(p, &mut vec![m], &mut out);
    }
    out
}

/// Whether the facet order is a shelling of the pure complex the facets
/// generate: each facet meets the union of the earlier ones in a nonempty
/// union of its codimension-one faces.
pub fn is_shelling(facets: &[Vec<usize>]) -> bool {
    let sets: Vec<BTreeSet<usize>> = facets.iter().map(|f| f.iter().copied().collect()).collect();
    if sets.iter().zip(facets).any(|(s, f)| s.len() != f.len()) {
        return false;
    }
    let Some(first) = sets.first() else { return true };
    if sets.iter().any(|s| s.len() != first.len()) {
        return false;
    }
    let distinct: BTreeSet<&BTreeSet<usize>> = sets.iter().collect();
    if distinct.len() != sets.len() {
        return false;
    }
    (1..sets.len()).all(|j| shell_step_ok(&sets[..j], &sets[j]))
}

fn shell_step_ok(earlier: &[BTreeSet<usize>], f: &BTreeSet<usize>) -> bool {
    let meets: Vec<BTreeSet<usize>> = earlier.iter().map(|e| e.intersection(f).copied().collect()).collect();
    let ridges: Vec<&BTreeSet<usize>> = meets.iter().filter(|m| m.len() + 1 == f.len()).collect();
    meets.iter().all(|m| ridges.iter().any(|r| m.is_subset(r)))
}

/// Depth-first search for a shelling order of `facets`. `None` when the
/// budget of search nodes runs out or no shelling exists.
pub fn find_shelling(facets: &[Vec<usize>], budget: u64) -> Option<Vec<usize>> {
    fn rec(sets: &[BTreeSet<usize>], order: &mut Vec<usize>, used: &mut [bool], spent: &mut u64, budget: u64) -> bool {
        if order.len() == sets.len() {
            return true;
        }
        *spent += 1;
        if *spent > budget {
            return false;
        }
        let earlier: Vec<BTreeSet<usize>> = order.iter().map(|&i| sets[i].clone()).collect();
        for i in 0..sets.len() {
            if used[i] || (!order.is_empty() && !shell_step_ok(&earlier, &sets[i])) {
                continue;
            }
            used[i] = true;
            order.push(i);
            if rec(sets, order, used, spent, budget) {
                return true;
            }
            order.pop();
            used[i] = false;
            if *spent > budget {
                return false;
            }
        }
        false
    }
    let sets: Vec<BTreeSet<usize>> = facets.iter().map(|f| f.iter().copied().collect()).collect();
    let mut order = Vec::new();
    let mut used = vec![false; sets.len()];
    let mut spent = 0;
    rec(&sets, &mut order, &mut used, &mut spent, budget).then_some(order)
}

/// A shelling-order leaf for a bounded poset, found by search.
pub fn shelling_leaf(p: &Poset, budget: u64) -> Option<Certificate> {
    let chains = maximal_chains(p);
    let order = find_shelling(&chains, budget)?;
    Some(Certificate::Leaf {
        elements: p.labels().to_vec(),
        leaf: LeafKind::ShellingOrder(
            order.into_iter().map(|i| chains[i].iter().map(|&e| p.label(e).to_string()).collect()).collect(),
        ),
    })
}

/// Certificate for `P x {0,1}` from one for `P`. Nodes become product
/// nodes, Boolean leaves become Boolean leaves of one more atom, and
/// shelling leaves are replaced by a searched shelling of the product. The
/// result is verified before it is returned.
pub fn certificate_product_chain(p: &Poset, cert: &Certificate) -> Result<(Poset, Certificate), ConstructError> {
    let v = verify_certificate(p, cert);
    if !v.valid {
        return Err(ConstructError::InvalidInputCertificate(format!(
            "{} at {:?}",
            v.reason.unwrap_or_default(),
            v.path
        )));
    }
    let two = Poset::two_chain();
    let prod = Poset::product(p, &two);
    let lift = |elements: &[String]| -> Vec<String> {
        let mut out: Vec<String> = elements.iter().flat_map(|l| [format!("({l},0)"), format!("({l},1)")]).collect();
        out.sort();
        out
    };
    fn rec(
        p: &Poset,
        two: &Poset,
        cert: &Certificate,
        lift: &dyn Fn(&[String]) -> Vec<String>,
    ) -> Result<Certificate, ConstructError> {
        Ok(match cert {
            Certificate::Leaf { elements, leaf: LeafKind::BooleanInterval } => {
                Certificate::Leaf { elements: lift(elements), leaf: LeafKind::BooleanInterval }
            }
            Certificate::Leaf { elements, .. } => {
                let idx: Vec<usize> = elements.iter().map(|l| p.require(l)).collect::<Result<_, _>>()?;
                let sub = Poset::product(&p.subposet(&idx), two);
                shelling_leaf(&sub, SHELLING_SEARCH_BUDGET).ok_or_else(|| {
                    ConstructionFailed(format!("no shelling found for a product leaf of {} elements", sub.len()))
                })?
            }
            Certificate::Node { elements, j1, j2, intersection } => Certificate::Node {
                elements: lift(elements),
                j1: Box::new(rec(p, two, j1, lift)?),
                j2: Box::new(rec(p, two, j2, lift)?),
                intersection: Box::new(rec(p, two, intersection, lift)?),
            },
        })
    }
    use ConstructError::ConstructionFailed;
    let out = rec(p, &two, cert, &lift)?;
    let v = verify_certificate(&prod, &out);
    if !v.valid {
        return Err(ConstructionFailed(format!(
            "product certificate invalid: {} at {:?}",
            v.reason.unwrap_or_default(),
            v.path
        )));
    }
    Ok((prod, out))
}

/// Lifts a certificate of the target through `f`, given certificates for
/// every fiber `f^{-1}(<q>)` keyed by the label of `q`. A bounded piece of
/// the target is replaced by the fiber certificate of its maximum; a node
/// `J1 ∪ J2` becomes `f^{-1}(J1) ∪ f^{-1}(J2)`.
pub fn certificate_from_fiber(
    f: &PosetMap,
    cert_q: &Certificate,
    fiber_certs: &HashMap<String, Certificate>,
) -> Result<Certificate, ConstructError> {
    use ConstructError::InvalidInputCertificate as Invalid;
    let (p, q) = (f.source(), f.target());
    let mc = f.check();
    if !mc.all() {
        return Err(Invalid(format!("map check failed: {mc:?}")));
    }
    let v = verify_certificate(q, cert_q);
    if !v.valid {
        return Err(Invalid(format!("target: {} at {:?}", v.reason.unwrap_or_default(), v.path)));
    }
    if let Some(bottom) = q.minimum() {
        let fiber = f.fiber(bottom);
        if fiber.len() != 1 {
            return Err(Invalid(format!(
                "the fiber over the minimum {} has {} elements",
                q.label(bottom),
                fiber.len()
            )));
        }
    }
    let mut fibers: HashMap<usize, (FixedBitSet, &Certificate)> = HashMap::new();
    for t in 0..q.len() {
        let cert =
            fiber_certs.get(q.label(t)).ok_or_else(|| Invalid(format!("no fiber certificate for {}", q.label(t))))?;
        let members = f.preimage_of_ideal(t);
        let sub = p.induced(&members);
        let v = verify_certificate(&sub, cert);
        if !v.valid {
            return Err(Invalid(format!(
                "fiber over <{}>: {} at {:?}",
                q.label(t),
                v.reason.unwrap_or_default(),
                v.path
            )));
        }
        fibers.insert(t, (members, cert));
    }
    fn rec(
        f: &PosetMap,
        cert: &Certificate,
        fibers: &HashMap<usize, (FixedBitSet, &Certificate)>,
    ) -> Result<Certificate, ConstructError> {
        let (p, q) = (f.source(), f.target());
        let mut qm = FixedBitSet::with_capacity(q.len());
        for l in cert.elements() {
            qm.insert(q.require(l)?);
        }
        match cert {
            Certificate::Leaf { .. } => {
                let top = q
                    .induced(&qm)
                    .maximum()
                    .map(|i| q.require(q.induced(&qm).label(i)))
                    .transpose()?
                    .ok_or_else(|| ConstructError::InvalidInputCertificate("unbounded leaf".to_string()))?;
                Ok(fibers[&top].1.clone())
            }
            Certificate::Node { j1, j2, intersection, .. } => Ok(Certificate::node(
                p,
                &f.preimage(&qm),
                rec(f, j1, fibers)?,
                rec(f, j2, fibers)?,
                rec(f, intersection, fibers)?,
            )),
        }
    }
    let out = rec(f, cert_q, &fibers)?;
    let v = verify_certificate(p, &out);
    if !v.valid {
        return Err(ConstructError::ConstructionFailed(format!(
            "lifted certificate invalid: {} at {:?}",
            v.reason.unwrap_or_default(),
            v.path
        )));
    }
    Ok(out)
}

/// Certificate for the ideal `<f^{-1}((w,1))>` of `I_n`: the union of the
/// ideals `S_i` of the words obtained by inserting `n` into `w` after `i`
/// letters, added one at a time.
fn insertion_union_certificate(p: &Poset, w: &InjectiveWord, n: u8) -> Result<Certificate, ConstructError> {
    let alphabet = n as usize;
    let ideal = |word: &InjectiveWord| -> Result<FixedBitSet, ConstructError> {
        let i = p.require(&word.label(alphabet))?;
        Ok(p.below(i).clone())
    };
    let k = w.len();
    let inserted = |i: usize| w.insert_at(i, n);
    let mut union = ideal(&inserted(0)?)?;
    let mut cert = Certificate::boolean(p, &union);
    for j in 1..=k {
        let s_j = ideal(&inserted(j)?)?;
        // S_j ∩ (S_0 ∪ ... ∪ S_{j-1}) = <w> ∪ <w with its j-th letter replaced by n>
        let replaced = w.delete_at(j - 1).insert_at(j - 1, n)?;
        let a = ideal(w)?;
        let b = ideal(&replaced)?;
        let ab = ideal(&w.delete_at(j - 1))?;
        let mut meet = a.clone();
        meet.union_with(&b);
        let meet_cert = Certificate::node(
            p,
            &meet,
            Certificate::boolean(p, &a),
            Certificate::boolean(p, &b),
            Certificate::boolean(p, &ab),
        );
        let mut next = union.clone();
        next.union_with(&s_j);
        cert = Certificate::node(p, &next, cert, Certificate::boolean(p, &s_j), meet_cert);
        union = next;
    }
    Ok(cert)
}

/// Certificate for the poset of injective words `I_n`, built by induction:
/// the product certificate for `I_{n-1} x {0,1}` is lifted along the
/// letter-deletion map with Boolean fibers over `(w,0)` and insertion
/// unions over `(w,1)`.
pub fn certificate_for_in(n: usize) -> Result<(Poset, Certificate), ConstructError> {
    certificate_for_in_with_cap(n, DEFAULT_CERTIFICATE_CAP)
}

pub fn certificate_for_in_with_cap(n: usize, cap: usize) -> Result<(Poset, Certificate), ConstructError> {
    if n > cap {
        return Err(ConstructError::SizeCapExceeded { n, cap });
    }
    let p = injective_word_poset_with_cap(n, cap)?;
    if n <= 1 {
        let cert = Certificate::boolean(&p, &p.all_members());
        return Ok((p, cert));
    }
    let (prev, prev_cert) = certificate_for_in_with_cap(n - 1, cap)?;
    let (_, cert_q) = certificate_product_chain(&prev, &prev_cert)?;
    let f = word_deletion_map(n)?;
    let q = f.target();
    let mut fiber_certs = HashMap::new();
    for t in 0..q.len() {
        let label = q.label(t);
        let (word, flag) = split_pair(label)
            .ok_or_else(|| ConstructError::ConstructionFailed(format!("unexpected target label {label}")))?;
        let w = InjectiveWord::parse(word)?;
        let fiber_cert = if flag == "0" {
            let i = p.require(&w.label(n))?;
            Certificate::boolean(&p, p.below(i))
        } else {
            insertion_union_certificate(&p, &w, n as u8)?
        };
        fiber_certs.insert(label.to_string(), fiber_cert);
    }
    let cert = certificate_from_fiber(&f, &cert_q, &fiber_certs)?;
    Ok((p, cert))
}

/// Splits a product label `(a,b)` at its last comma.
fn split_pair(label: &str) -> Option<(&str, &str)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    inner.rsplit_once(',')
}

/// Certificate for `P - {x}` with `x` maximal. Each subtree is cut down to
/// the ideal generated by its surviving maximal elements of top rank;
/// elements that only lay below removed elements must be covered by the
/// sibling ideal. When the side containing `x` shrinks into the other
/// side, the split is dropped and the other side is kept.
pub fn remove_maximal(p: &Poset, cert: &Certificate, x: usize) -> Result<Certificate, ConstructError> {
    use ConstructError::PreconditionFailed as Pre;
    if x >= p.len() {
        return Err(Pre(format!("no element {x}")));
    }
    if !p.upper_covers(x).is_empty() {
        return Err(Pre(format!("{} is not maximal", p.label(x))));
    }
    if p.maximum() == Some(x) {
        return Err(Pre(format!("{} is the maximum", p.label(x))));
    }
    let v = verify_certificate(p, cert);
    if !v.valid {
        return Err(ConstructError::InvalidInputCertificate(v.reason.unwrap_or_default()));
    }
    let mut rest = p.all_members();
    rest.set(x, false);
    let smaller = p.induced(&rest);
    if !smaller.is_graded() || smaller.longest_chain() != p.longest_chain() {
        return Err(Pre(format!("P - {{{}}} is not graded of the same rank", p.label(x))));
    }
    let out = shrink(p, cert, &rest)?;
    let v = verify_certificate(&smaller, &out);
    if !v.valid {
        return Err(ConstructError::CertificateShapeUnsupported(format!(
            "result invalid: {} at {:?}",
            v.reason.unwrap_or_default(),
            v.path
        )));
    }
    Ok(out)
}

/// Leaf certificate for a principal ideal given by its members.
fn principal_leaf(p: &Poset, members: &FixedBitSet) -> Result<Certificate, ConstructError> {
    let sub = p.induced(members);
    if is_boolean_algebra(&sub) {
        return Ok(Certificate::boolean(p, members));
    }
    let leaf = shelling_leaf(&sub, SHELLING_SEARCH_BUDGET).ok_or_else(|| {
        ConstructError::CertificateShapeUnsupported("no shelling found for a reduced leaf".to_string())
    })?;
    Ok(leaf)
}

/// Certificate for an ideal generated by elements of equal height: the
/// principal ideals of the generators are added one at a time in index
/// order, and each intersection with the union so far is handled the same
/// way.
fn principal_union(p: &Poset, keep: &FixedBitSet) -> Result<Certificate, ConstructError> {
    use ConstructError::CertificateShapeUnsupported as Unsupported;
    if &top_generated(p, keep) != keep {
        return Err(Unsupported("an ideal is not generated by its top rank".to_string()));
    }
    let top = keep.ones().map(|e| p.height(e)).max().expect("nonempty");
    let gens: Vec<usize> = keep.ones().filter(|&e| p.height(e) == top).collect();
    let ideal = |g: usize| {
        let mut m = p.below(g).clone();
        m.intersect_with(keep);
        m
    };
    let mut union = ideal(gens[0]);
    let mut cert = principal_leaf(p, &union)?;
    for &g in &gens[1..] {
        let next_ideal = ideal(g);
        let mut meet = union.clone();
        meet.intersect_with(&next_ideal);
        if meet.is_clear() {
            return Err(Unsupported("two generators have no common lower bound".to_string()));
        }
        let meet_cert = principal_union(p, &meet)?;
        let mut next = union.clone();
        next.union_with(&next_ideal);
        cert = Certificate::node(p, &next, cert, principal_leaf(p, &next_ideal)?, meet_cert);
        union = next;
    }
    Ok(cert)
}

/// Ideal generated by the elements of `m` that have the largest height in
/// `m`.
fn top_generated(p: &Poset, m: &FixedBitSet) -> FixedBitSet {
    let top = m.ones().map(|e| p.height(e)).max();
    let mut out = FixedBitSet::with_capacity(p.len());
    for e in m.ones().filter(|&e| Some(p.height(e)) == top) {
        out.union_with(p.below(e));
    }
    out.intersect_with(m);
    out
}

/// Certificate for the ideal `keep` of the subtree `cert`.
fn shrink(p: &Poset, cert: &Certificate, keep: &FixedBitSet) -> Result<Certificate, ConstructError> {
    use ConstructError::CertificateShapeUnsupported as Unsupported;
    let members = |c: &Certificate| -> Result<FixedBitSet, ConstructError> {
        let mut m = FixedBitSet::with_capacity(p.len());
        for l in c.elements() {
            m.insert(p.require(l)?);
        }
        Ok(m)
    };
    let own = members(cert)?;
    if &own == keep {
        return Ok(cert.clone());
    }
    if keep.is_clear() {
        return Err(Unsupported("a piece became empty".to_string()));
    }
    match cert {
        Certificate::Leaf { .. } => principal_union(p, keep),
        Certificate::Node { j1, j2, intersection, .. } => {
            let (m1, m2) = (members(j1)?, members(j2)?);
            let mut k1 = m1.clone();
            k1.intersect_with(keep);
            let mut k2 = m2.clone();
            k2.intersect_with(keep);
            let t1 = top_generated(p, &k1);
            let t2 = top_generated(p, &k2);
            let mut union = t1.clone();
            union.union_with(&t2);
            if &union != keep {
                return Err(Unsupported("an element is stranded below removed elements".to_string()));
            }
            if t1.is_subset(&t2) {
                return shrink(p, j2, &t2);
            }
            if t2.is_subset(&t1) {
                return shrink(p, j1, &t1);
            }
            let mut t12 = t1.clone();
            t12.intersect_with(&t2);
            let split = || -> Result<Certificate, ConstructError> {
                if top_generated(p, &t12) != t12 {
                    return Err(Unsupported("the reduced intersection is not graded".to_string()));
                }
                Ok(Certificate::node(p, keep, shrink(p, j1, &t1)?, shrink(p, j2, &t2)?, shrink(p, intersection, &t12)?))
            };
            match split() {
                Err(ConstructError::CertificateShapeUnsupported(_)) => principal_union(p, keep),
                other => other,
            }
        }
    }
}

fn labels_of(p: &Poset, members: &FixedBitSet) -> Vec<String> {
    members.ones().map(|i| p.label(i).to_string()).collect()
}
