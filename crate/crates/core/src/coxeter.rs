//! Permutations and signed permutations under absolute order, with the
//! non-crossing partition lattices of types A and B.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Poset, PosetError, PosetMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("elements of different groups ({0} and {1} letters)")]
    GroupMismatch(usize, usize),
    #[error("type {ty} with n = {n} is above the cap {cap}")]
    SizeCapExceeded { ty: CoxeterType, n: usize, cap: usize },
    #[error("{0} is not below {1} in absolute order")]
    NotBelowMu(String, String),
    #[error("cannot parse group element `{0}`")]
    Parse(String),
    #[error("n must be at least {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterType {
    A,
    B,
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoxeterType::A => "A",
            CoxeterType::B => "B",
        })
    }
}

impl FromStr for CoxeterType {
    type Err = CoxeterError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(CoxeterType::A),
            "B" | "b" => Ok(CoxeterType::B),
            _ => Err(CoxeterError::Parse(s.to_string())),
        }
    }
}

/// Feasibility caps on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub nc_a: usize,
    pub nc_b: usize,
    pub ideal_a: usize,
    pub ideal_b: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { nc_a: 8, nc_b: 6, ideal_a: 7, ideal_b: 5 }
    }
}

/// An element of `S_n` or `B_n`.
///
/// Products compose right to left: `u.compose(v)` is `i -> u(v(i))`.
pub trait GroupElement:
    Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display + FromStr<Err = CoxeterError> + Send + Sync
{
    const TYPE: CoxeterType;

    fn n(&self) -> usize;
    fn identity(n: usize) -> Self;
    fn compose(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn abs_length(&self) -> usize;
    /// Some `i` in `1..=n` with `w(i) = i`.
    fn has_fixed_point(&self) -> bool;
    fn fixes_last(&self) -> bool;
    /// Deletes `n` from the cycle decomposition.
    fn delete_last(&self) -> Self;
    fn all(n: usize) -> Vec<Self>;
    fn reflections(n: usize) -> Vec<Self>;
    /// `(1 2 ... n)` or `[1, 2, ..., n]`.
    fn standard_coxeter(n: usize) -> Self;
    fn is_coxeter_element(&self) -> bool;
    fn max_length(n: usize) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// From one-line notation with values `1..=n`.
    pub fn new(images: Vec<u8>) -> Result<Self, CoxeterError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(CoxeterError::Parse(format!("{images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// From cycles over `1..=n`; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<u8>]) -> Result<Self, CoxeterError> {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        let mut seen = vec![false; n + 1];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let a_us = a as usize;
                if a_us == 0 || a_us > n || seen[a_us] {
                    return Err(CoxeterError::Parse(format!("{cycles:?}")));
                }
                seen[a_us] = true;
                images[a_us - 1] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    /// Cycles sorted by minimum, each starting at its minimum, fixed points
    /// included.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i as u8);
                i = self.apply(i);
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("c")?;
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

fn parse_groups(body: &str, open: char, close: char) -> Option<Vec<Vec<i32>>> {
    let mut out = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        rest = rest.strip_prefix(open)?;
        let end = rest.find(close)?;
        let inner = &rest[..end];
        let nums = inner.split(',').map(|t| t.trim().parse::<i32>().ok()).collect::<Option<Vec<_>>>()?;
        out.push(nums);
        rest = &rest[end + 1..];
    }
    Some(out)
}

impl FromStr for Permutation {
    type Err = CoxeterError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoxeterError::Parse(s.to_string());
        let body = s.strip_prefix('c').ok_or_else(bad)?;
        let groups = parse_groups(body, '(', ')').ok_or_else(bad)?;
        let n: usize = groups.iter().map(|g| g.len()).sum();
        let cycles: Vec<Vec<u8>> = groups
            .into_iter()
            .map(|g| g.into_iter().map(|v| u8::try_from(v).map_err(|_| bad())).collect())
            .collect::<Result<_, _>>()?;
        let p = Permutation::from_cycles(n, &cycles).map_err(|_| bad())?;
        Ok(p)
    }
}

impl GroupElement for Permutation {
    const TYPE: CoxeterType = CoxeterType::A;

    fn n(&self) -> usize {
        self.images.len()
    }

    fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u8).collect() }
    }

    fn compose(&self, rhs: &Self) -> Self {
        Permutation { images: rhs.images.iter().map(|&v| self.images[v as usize - 1]).collect() }
    }

    fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    fn abs_length(&self) -> usize {
        self.n() - self.cycles().len()
    }

    fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &v)| v as usize == i + 1)
    }

    fn fixes_last(&self) -> bool {
        self.images.last().is_none_or(|&v| v as usize == self.n())
    }

    fn delete_last(&self) -> Self {
        let n = self.n();
        let wn = self.images[n - 1];
        let images = self.images[..n - 1].iter().map(|&v| if v as usize == n { wn } else { v }).collect();
        Permutation { images }
    }

    fn all(n: usize) -> Vec<Self> {
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { images: cur.clone() });
        }
        out
    }

    fn reflections(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                out.push(Permutation::from_cycles(n, &[vec![i, j]]).unwrap());
            }
        }
        out
    }

    fn standard_coxeter(n: usize) -> Self {
        Permutation::from_cycles(n, &[(1..=n as u8).collect()]).unwrap()
    }

    fn is_coxeter_element(&self) -> bool {
        self.cycles().len() == 1
    }

    fn max_length(n: usize) -> usize {
        n.saturating_sub(1)
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// A signed permutation: a permutation `τ` of `±[n]` with `τ(-i) = -τ(i)`,
/// stored by `τ(1), ..., τ(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedCycle {
    /// `((a_1, ..., a_k))`: the cycle and its negative.
    Paired(Vec<i8>),
    /// `[a_1, ..., a_k]`: the cycle `(a_1 ... a_k -a_1 ... -a_k)`.
    Balanced(Vec<i8>),
}

impl SignedPermutation {
    pub fn new(images: Vec<i8>) -> Result<Self, CoxeterError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(CoxeterError::Parse(format!("{images:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn from_cycles(n: usize, cycles: &[SignedCycle]) -> Result<Self, CoxeterError> {
        let mut images: Vec<i8> = (1..=n as i8).collect();
        let mut seen = vec![false; n + 1];
        let bad = || CoxeterError::Parse(format!("{cycles:?}"));
        let set = |a: i8, b: i8, images: &mut Vec<i8>| {
            if a > 0 {
                images[a as usize - 1] = b;
            } else {
                images[(-a) as usize - 1] = -b;
            }
        };
        for c in cycles {
            let (elems, balanced) = match c {
                SignedCycle::Paired(e) => (e, false),
                SignedCycle::Balanced(e) => (e, true),
            };
            for &a in elems {
                let u = a.unsigned_abs() as usize;
                if u == 0 || u > n || seen[u] {
                    return Err(bad());
                }
                seen[u] = true;
            }
            let k = elems.len();
            for i in 0..k {
                let next = if i + 1 < k {
                    elems[i + 1]
                } else if balanced {
                    -elems[0]
                } else {
                    elems[0]
                };
                set(elems[i], next, &mut images);
            }
        }
        Ok(SignedPermutation { images })
    }

    pub fn images(&self) -> &[i8] {
        &self.images
    }

    /// `τ(i)` for `i` in `±[n]`.
    pub fn apply(&self, i: i32) -> i32 {
        if i > 0 {
            self.images[i as usize - 1] as i32
        } else {
            -(self.images[(-i) as usize - 1] as i32)
        }
    }

    /// Paired cycles first, then balanced, each group sorted by the
    /// smallest absolute value, each cycle starting at that value.
    pub fn cycles(&self) -> Vec<SignedCycle> {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut paired = Vec::new();
        let mut balanced = Vec::new();
        for m in 1..=n {
            if seen[m] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut i = m as i32;
            loop {
                orbit.push(i as i8);
                seen[i.unsigned_abs() as usize] = true;
                i = self.apply(i);
                if i == m as i32 {
                    break;
                }
            }
            if orbit.contains(&-(m as i8)) {
                let k = orbit.len() / 2;
                orbit.truncate(k);
                balanced.push(SignedCycle::Balanced(orbit));
            } else {
                paired.push(SignedCycle::Paired(orbit));
            }
        }
        paired.extend(balanced);
        paired
    }

    fn paired_count(&self) -> usize {
        self.cycles().iter().filter(|c| matches!(c, SignedCycle::Paired(_))).count()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let (tag, open, close, e) = match &c {
                SignedCycle::Paired(e) => ("p", '(', ')', e),
                SignedCycle::Balanced(e) => ("b", '[', ']', e),
            };
            let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            write!(f, "{tag}{open}{}{close}", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SignedPermutation {
    type Err = CoxeterError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CoxeterError::Parse(s.to_string());
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let (balanced, body) = if let Some(r) = rest.strip_prefix('p') {
                (false, r)
            } else if let Some(r) = rest.strip_prefix('b') {
                (true, r)
            } else {
                return Err(bad());
            };
            let close = if balanced { ']' } else { ')' };
            let end = body.find(close).ok_or_else(bad)?;
            let groups = parse_groups(&body[..=end], if balanced { '[' } else { '(' }, close).ok_or_else(bad)?;
            let elems: Vec<i8> =
                groups[0].iter().map(|&v| i8::try_from(v).map_err(|_| bad())).collect::<Result<_, _>>()?;
            cycles.push(if balanced { SignedCycle::Balanced(elems) } else { SignedCycle::Paired(elems) });
            rest = &body[end + 1..];
        }
        let n = cycles
            .iter()
            .map(|c| match c {
                SignedCycle::Paired(e) | SignedCycle::Balanced(e) => e.len(),
            })
            .sum();
        SignedPermutation::from_cycles(n, &cycles).map_err(|_| bad())
    }
}

impl GroupElement for SignedPermutation {
    const TYPE: CoxeterType = CoxeterType::B;

    fn n(&self) -> usize {
        self.images.len()
    }

    fn identity(n: usize) -> Self {
        SignedPermutation { images: (1..=n as i8).collect() }
    }

    fn compose(&self, rhs: &Self) -> Self {
        SignedPermutation { images: rhs.images.iter().map(|&v| self.apply(v as i32) as i8).collect() }
    }

    fn inverse(&self) -> Self {
        let mut images = vec![0i8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            let i = i as i8 + 1;
            if v > 0 {
                images[v as usize - 1] = i;
            } else {
                images[(-v) as usize - 1] = -i;
            }
        }
        SignedPermutation { images }
    }

    fn abs_length(&self) -> usize {
        self.n() - self.paired_count()
    }

    fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(i, &v)| v as i32 == i as i32 + 1)
    }

    fn fixes_last(&self) -> bool {
        self.images.last().is_none_or(|&v| v as usize == self.n())
    }

    fn delete_last(&self) -> Self {
        let n = self.n() as i8;
        let wn = self.images[n as usize - 1];
        let images = self.images[..n as usize - 1]
            .iter()
            .map(|&v| {
                if v == n {
                    wn
                } else if v == -n {
                    -wn
                } else {
                    v
                }
            })
            .collect();
        SignedPermutation { images }
    }

    fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity((1 << n) * (1..=n).product::<usize>());
        for p in Permutation::all(n) {
            for signs in 0u32..(1 << n) {
                let images = p
                    .images
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if signs & (1 << i) != 0 { -(v as i8) } else { v as i8 })
                    .collect();
                out.push(SignedPermutation { images });
            }
        }
        out
    }

    fn reflections(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for i in 1..=n as i8 {
            out.push(SignedPermutation::from_cycles(n, &[SignedCycle::Balanced(vec![i])]).unwrap());
        }
        for i in 1..=n as i8 {
            for j in i + 1..=n as i8 {
                for s in [j, -j] {
                    out.push(SignedPermutation::from_cycles(n, &[SignedCycle::Paired(vec![i, s])]).unwrap());
                }
            }
        }
        out
    }

    fn standard_coxeter(n: usize) -> Self {
        SignedPermutation::from_cycles(n, &[SignedCycle::Balanced((1..=n as i8).collect())]).unwrap()
    }

    fn is_coxeter_element(&self) -> bool {
        matches!(self.cycles().as_slice(), [SignedCycle::Balanced(e)] if e.len() == self.n())
    }

    fn max_length(n: usize) -> usize {
        n
    }
}

pub fn abs_length<W: GroupElement>(w: &W) -> usize {
    w.abs_length()
}

/// `u <= v` iff `l(u) + l(u^{-1} v) = l(v)`.
pub fn abs_leq<W: GroupElement>(u: &W, v: &W) -> Result<bool, CoxeterError> {
    if u.n() != v.n() {
        return Err(CoxeterError::GroupMismatch(u.n(), v.n()));
    }
    Ok(u.abs_length() + u.inverse().compose(v).abs_length() == v.abs_length())
}

/// Brady's description of absolute order in type A: every cycle of `u` is
/// a cycle of `v` with elements deleted, and cycles of `u` inside the same
/// cycle of `v` do not cross.
pub fn brady_leq_type_a(u: &Permutation, v: &Permutation) -> bool {
    if u.n() != v.n() {
        return false;
    }
    let n = u.n();
    let mut owner = vec![0usize; n + 1];
    let mut pos = vec![0usize; n + 1];
    let vc = v.cycles();
    for (k, c) in vc.iter().enumerate() {
        for (p, &a) in c.iter().enumerate() {
            owner[a as usize] = k;
            pos[a as usize] = p;
        }
    }
    let uc: Vec<Vec<u8>> = u.cycles().into_iter().filter(|c| c.len() > 1).collect();
    for c in &uc {
        let k = owner[c[0] as usize];
        if c.iter().any(|&a| owner[a as usize] != k) {
            return false;
        }
        // cyclic order inside the v-cycle must be preserved
        let len = vc[k].len();
        let start = pos[c[0] as usize];
        let offs: Vec<usize> = c.iter().map(|&a| (pos[a as usize] + len - start) % len).collect();
        if offs.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
    }
    for (i, a) in uc.iter().enumerate() {
        for b in &uc[i + 1..] {
            let k = owner[a[0] as usize];
            if owner[b[0] as usize] != k {
                continue;
            }
            let mut tags: Vec<(usize, bool)> =
                a.iter().map(|&x| (pos[x as usize], true)).chain(b.iter().map(|&x| (pos[x as usize], false))).collect();
            tags.sort_unstable();
            let runs = 1 + tags.windows(2).filter(|w| w[0].1 != w[1].1).count();
            if runs >= 4 {
                return false;
            }
        }
    }
    true
}

/// `K^μ(w) = w^{-1} μ`.
pub fn kreweras<W: GroupElement>(w: &W, mu: &W) -> Result<W, CoxeterError> {
    if !abs_leq(w, mu)? {
        return Err(CoxeterError::NotBelowMu(w.to_string(), mu.to_string()));
    }
    Ok(w.inverse().compose(mu))
}

fn check_cap(ty: CoxeterType, n: usize, cap: usize) -> Result<(), CoxeterError> {
    if n > cap {
        return Err(CoxeterError::SizeCapExceeded { ty, n, cap });
    }
    if n == 0 {
        return Err(CoxeterError::TooSmall(1));
    }
    Ok(())
}

/// Elements of `[e, c]` for the standard Coxeter element, by a sweep of the
/// whole group.
pub fn nc_elements<W: GroupElement>(n: usize) -> Vec<W> {
    let c = W::standard_coxeter(n);
    let mut v: Vec<W> = W::all(n).into_par_iter().filter(|w| abs_leq(w, &c).unwrap()).collect();
    v.sort();
    v
}

/// Poset on a set of group elements closed under the covers `w -> wt`.
pub fn abs_poset<W: GroupElement>(elements: &[W]) -> Result<Poset, CoxeterError> {
    let Some(first) = elements.first() else {
        return Ok(Poset::antichain(0));
    };
    let n = first.n();
    let refl = W::reflections(n);
    let index: std::collections::HashMap<&W, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let covers: Vec<(usize, usize)> = elements
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, w)| {
            let l = w.abs_length();
            refl.iter()
                .filter_map(|t| {
                    let wt = w.compose(t);
                    (wt.abs_length() == l + 1).then(|| index.get(&wt).map(|&j| (i, j))).flatten()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let labels = elements.iter().map(|w| w.to_string()).collect();
    Ok(Poset::from_index_covers(labels, &covers)?)
}

pub fn nc_lattice_of<W: GroupElement>(n: usize, caps: &Caps) -> Result<Poset, CoxeterError> {
    let cap = match W::TYPE {
        CoxeterType::A => caps.nc_a,
        CoxeterType::B => caps.nc_b,
    };
    check_cap(W::TYPE, n, cap)?;
    abs_poset(&nc_elements::<W>(n))
}

pub fn nc_lattice(ty: CoxeterType, n: usize) -> Result<Poset, CoxeterError> {
    nc_lattice_with(ty, n, &Caps::default())
}

pub fn nc_lattice_with(ty: CoxeterType, n: usize, caps: &Caps) -> Result<Poset, CoxeterError> {
    match ty {
        CoxeterType::A => nc_lattice_of::<Permutation>(n, caps),
        CoxeterType::B => nc_lattice_of::<SignedPermutation>(n, caps),
    }
}

/// Elements below some Coxeter element, by a downward search from all
/// Coxeter elements.
pub fn coxeter_ideal_elements<W: GroupElement>(n: usize) -> Vec<W> {
    let refl = W::reflections(n);
    let mut seen: HashSet<W> = W::all(n).into_iter().filter(|w| w.is_coxeter_element()).collect();
    let mut queue: VecDeque<W> = seen.iter().cloned().collect();
    while let Some(w) = queue.pop_front() {
        let l = w.abs_length();
        for t in &refl {
            let wt = w.compose(t);
            if wt.abs_length() + 1 == l && seen.insert(wt.clone()) {
                queue.push_back(wt);
            }
        }
    }
    let mut v: Vec<W> = seen.into_iter().collect();
    v.sort();
    v
}

pub fn coxeter_ideal_of<W: GroupElement>(n: usize, caps: &Caps) -> Result<Poset, CoxeterError> {
    let cap = match W::TYPE {
        CoxeterType::A => caps.ideal_a,
        CoxeterType::B => caps.ideal_b,
    };
    check_cap(W::TYPE, n, cap)?;
    abs_poset(&coxeter_ideal_elements::<W>(n))
}

pub fn coxeter_ideal(ty: CoxeterType, n: usize) -> Result<Poset, CoxeterError> {
    coxeter_ideal_with(ty, n, &Caps::default())
}

pub fn coxeter_ideal_with(ty: CoxeterType, n: usize, caps: &Caps) -> Result<Poset, CoxeterError> {
    match ty {
        CoxeterType::A => coxeter_ideal_of::<Permutation>(n, caps),
        CoxeterType::B => coxeter_ideal_of::<SignedPermutation>(n, caps),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixpointReport {
    pub coxeter_type: CoxeterType,
    pub n: usize,
    pub elements: usize,
    /// Every `w` with `2 rank(w) < n` has a fixed point.
    pub small_rank_has_fixed_point: bool,
    /// Every fixed-point-free `w` has `K(w)` with a fixed point.
    pub complement_has_fixed_point: bool,
    /// `u <= v` iff `K(v) <= K(u)`, and `K` is a bijection of `[e, c]`.
    pub anti_automorphism: bool,
    pub square_is_automorphism: bool,
    pub witness: Option<String>,
    pub passed: bool,
}

pub fn verify_fixpoint_lemma_of<W: GroupElement>(n: usize, caps: &Caps) -> Result<FixpointReport, CoxeterError> {
    let cap = match W::TYPE {
        CoxeterType::A => caps.nc_a,
        CoxeterType::B => caps.nc_b,
    };
    check_cap(W::TYPE, n, cap)?;
    let c = W::standard_coxeter(n);
    let elems = nc_elements::<W>(n);
    let idx: std::collections::HashMap<&W, usize> = elems.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let k: Vec<W> = elems.iter().map(|w| kreweras(w, &c)).collect::<Result<_, _>>()?;
    let mut witness = None;
    let small = elems.iter().all(|w| {
        let ok = 2 * w.abs_length() >= n || w.has_fixed_point();
        if !ok && witness.is_none() {
            witness = Some(format!("{w} has rank below n/2 and no fixed point"));
        }
        ok
    });
    let comp = elems.iter().zip(&k).all(|(w, kw)| {
        let ok = w.has_fixed_point() || kw.has_fixed_point();
        if !ok && witness.is_none() {
            witness = Some(format!("{w} and K({w}) = {kw} are both fixed-point free"));
        }
        ok
    });
    let kidx: Option<Vec<usize>> = k.iter().map(|w| idx.get(w).copied()).collect();
    let bijective = kidx.as_ref().is_some_and(|ki| {
        let mut seen = vec![false; ki.len()];
        ki.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    });
    let (anti, square) = if bijective {
        let leq: Vec<Vec<bool>> =
            elems.par_iter().map(|u| elems.iter().map(|v| abs_leq(u, v).unwrap()).collect()).collect();
        let ki = kidx.unwrap();
        let m = elems.len();
        let anti = (0..m).all(|u| (0..m).all(|v| leq[u][v] == leq[ki[v]][ki[u]]));
        let square = (0..m).all(|u| (0..m).all(|v| leq[u][v] == leq[ki[ki[u]]][ki[ki[v]]]));
        (anti, square)
    } else {
        (false, false)
    };
    if !anti && witness.is_none() {
        witness = Some("Kreweras complement is not an anti-automorphism".to_string());
    }
    Ok(FixpointReport {
        coxeter_type: W::TYPE,
        n,
        elements: elems.len(),
        small_rank_has_fixed_point: small,
        complement_has_fixed_point: comp,
        anti_automorphism: anti,
        square_is_automorphism: square,
        witness,
        passed: small && comp && anti && square,
    })
}

pub fn verify_fixpoint_lemma(ty: CoxeterType, n: usize) -> Result<FixpointReport, CoxeterError> {
    match ty {
        CoxeterType::A => verify_fixpoint_lemma_of::<Permutation>(n, &Caps::default()),
        CoxeterType::B => verify_fixpoint_lemma_of::<SignedPermutation>(n, &Caps::default()),
    }
}

/// `g(w) = (π(w), 0^)` if `w(n) = n`, else `(π(w), 1^)`, where `π` deletes
/// `n` from the cycle decomposition. The target is `J_{n-1} × {0 < 1}`
/// with second coordinates labelled `0` and `1`.
pub fn cycle_deletion_map_of<W: GroupElement>(n: usize, caps: &Caps) -> Result<PosetMap, CoxeterError> {
    if n < 2 {
        return Err(CoxeterError::TooSmall(2));
    }
    let src = Arc::new(coxeter_ideal_of::<W>(n, caps)?);
    let lower = coxeter_ideal_of::<W>(n - 1, caps)?;
    let tgt = Arc::new(Poset::product(&lower, &Poset::two_chain()));
    let image = src
        .labels()
        .iter()
        .map(|l| {
            let w: W = l.parse()?;
            Ok(tgt.require(&cycle_deletion_label(&w))?)
        })
        .collect::<Result<Vec<_>, CoxeterError>>()?;
    Ok(PosetMap::new(src, tgt, image)?)
}

/// Label of `g(w)` in the product poset.
pub fn cycle_deletion_label<W: GroupElement>(w: &W) -> String {
    let flag = if w.fixes_last() { 0 } else { 1 };
    format!("({},{flag})", w.delete_last())
}

pub fn cycle_deletion_map(ty: CoxeterType, n: usize) -> Result<PosetMap, CoxeterError> {
    match ty {
        CoxeterType::A => cycle_deletion_map_of::<Permutation>(n, &Caps::default()),
        CoxeterType::B => cycle_deletion_map_of::<SignedPermutation>(n, &Caps::default()),
    }
}
