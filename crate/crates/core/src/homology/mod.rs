//! Simplicial complexes, order complexes and exact reduced homology.

pub mod snf;

use std::collections::{BTreeMap, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::Poset;
use snf::{Field, SparseMatrix};

pub const DEFAULT_DIMENSION_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("complex has dimension {dim}, above the cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("invariant factor {0} does not fit in 64 bits")]
    TorsionOverflow(String),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Rationals,
    Integers,
}

impl Coefficients {
    fn field(self) -> Field {
        match self {
            Coefficients::Rationals => Field::Rationals,
            Coefficients::Integers => Field::Integers,
        }
    }
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Coefficients::Rationals => "q",
            Coefficients::Integers => "z",
        })
    }
}

/// A finite simplicial complex on vertices `0..vertex_count`, stored by its
/// facets. With no facets it is the complex `{∅}` unless `void` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    #[serde(rename = "vertices")]
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    void: bool,
}

impl SimplicialComplex {
    /// Normalizes the facet list: vertices sorted, duplicates and
    /// non-maximal faces dropped, facets sorted.
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        let mut fs: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(HomologyError::VertexOutOfRange { vertex: v, count: vertex_count });
            }
            if !f.is_empty() {
                fs.push(f);
            }
        }
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for f in fs {
            if !kept.iter().any(|g| is_sorted_subset(&f, g)) {
                kept.push(f);
            }
        }
        kept.sort();
        Ok(SimplicialComplex { vertex_count, facets: kept, void: false })
    }

    /// The complex with no faces at all, not even `∅`.
    pub fn void(vertex_count: usize) -> Self {
        SimplicialComplex { vertex_count, facets: Vec::new(), void: true }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    /// `None` for the void complex, `Some(-1)` for `{∅}`.
    pub fn dimension(&self) -> Option<i32> {
        if self.void {
            return None;
        }
        Some(self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All faces with `dim + 1` vertices, sorted.
    pub fn faces(&self, dim: usize) -> Vec<Vec<usize>> {
        let k = dim + 1;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for f in &self.facets {
            if f.len() >= k {
                for_each_subset(f, k, &mut |s| {
                    seen.insert(s.to_vec());
                });
            }
        }
        let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Face numbers `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<u64> {
        match self.dimension() {
            None => Vec::new(),
            Some(d) => {
                let mut v = vec![1u64];
                for i in 0..=d.max(-1) {
                    v.push(self.faces(i as usize).len() as u64);
                }
                v
            }
        }
    }

    /// Deterministic copy with facets and vertex names permuted, used to
    /// check that homology does not depend on enumeration order.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, HomologyError> {
        if self.void {
            return Ok(Self::void(self.vertex_count));
        }
        let facets = self.facets.iter().rev().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        Self::new(self.vertex_count, facets)
    }
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn for_each_subset(set: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(set: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=set.len().saturating_sub(need) {
            if set.len() - i < need {
                break;
            }
            cur.push(set[i]);
            rec(set, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(set, k, 0, &mut cur, f);
}

/// Reduced homology by dimension, from `-1` up to the dimension of the
/// complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct HomologyProfile {
    #[serde(with = "dim_keys")]
    pub betti: BTreeMap<i32, u64>,
    #[serde(with = "dim_keys")]
    pub torsion: BTreeMap<i32, Vec<u64>>,
}

mod dim_keys {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<V: Serialize, S: Serializer>(m: &BTreeMap<i32, V>, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, &V> = m.iter().map(|(k, v)| (k.to_string(), v)).collect();
        // string keys sort lexicographically, so keep numeric order explicitly
        use serde::ser::SerializeMap;
        let mut keys: Vec<(&String, &&V)> = m.iter().collect();
        keys.sort_by_key(|(k, _)| k.parse::<i32>().unwrap());
        let mut out = s.serialize_map(Some(keys.len()))?;
        for (k, v) in keys {
            out.serialize_entry(k, v)?;
        }
        out.end()
    }

    pub fn deserialize<'de, V: Deserialize<'de>, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i32, V>, D::Error> {
        let raw: BTreeMap<String, V> = BTreeMap::deserialize(d)?;
        raw.into_iter().map(|(k, v)| k.parse::<i32>().map(|k| (k, v)).map_err(serde::de::Error::custom)).collect()
    }
}

impl HomologyProfile {
    pub fn betti(&self, dim: i32) -> u64 {
        self.betti.get(&dim).copied().unwrap_or(0)
    }

    pub fn torsion(&self, dim: i32) -> &[u64] {
        self.torsion.get(&dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn top_dimension(&self) -> Option<i32> {
        self.betti.keys().next_back().copied()
    }

    /// Alternating sum of Betti numbers.
    pub fn euler(&self) -> i64 {
        self.betti.iter().map(|(&d, &b)| if d.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Lowest degree `< below` with nonzero Betti number or torsion.
    pub fn first_nonvanishing_below(&self, below: i32) -> Option<i32> {
        self.betti.keys().copied().filter(|&d| d < below).find(|&d| self.betti(d) != 0 || !self.torsion(d).is_empty())
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.values().all(|&b| b == 0) && self.torsion.values().all(|t| t.is_empty())
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.values().any(|t| !t.is_empty())
    }

    fn void() -> Self {
        HomologyProfile::default()
    }
}

/// Source of faces for the chain complex.
trait Faces {
    /// `None` for the void complex, `Some(-1)` for `{∅}`.
    fn dimension(&self) -> Option<i32>;
    /// Faces with `dim + 1` vertices; each list must be in a fixed vertex
    /// order so that boundary signs are consistent.
    fn faces(&self, dim: usize) -> Vec<Vec<u32>>;
}

impl Faces for SimplicialComplex {
    fn dimension(&self) -> Option<i32> {
        SimplicialComplex::dimension(self)
    }

    fn faces(&self, dim: usize) -> Vec<Vec<u32>> {
        SimplicialComplex::faces(self, dim).into_iter().map(|f| f.into_iter().map(|v| v as u32).collect()).collect()
    }
}

/// Chains of a subset of a poset, listed bottom to top.
struct ChainFaces<'a> {
    members: Vec<u32>,
    up: Vec<Vec<u32>>,
    dim: i32,
    _p: &'a Poset,
}

impl<'a> ChainFaces<'a> {
    fn new(p: &'a Poset, members: &FixedBitSet) -> Self {
        let ms: Vec<u32> = members.ones().map(|x| x as u32).collect();
        let mut up = vec![Vec::new(); p.len()];
        for &a in &ms {
            up[a as usize] = ms.iter().copied().filter(|&b| b != a && p.leq(a as usize, b as usize)).collect();
        }
        // longest chain inside the subset
        let mut order = ms.clone();
        order.sort_by_key(|&a| std::cmp::Reverse(p.height(a as usize)));
        let mut longest = vec![0i32; p.len()];
        for &a in &order {
            longest[a as usize] = 1 + up[a as usize].iter().map(|&b| longest[b as usize]).max().unwrap_or(0);
        }
        let dim = ms.iter().map(|&a| longest[a as usize]).max().unwrap_or(0) - 1;
        ChainFaces { members: ms, up, dim, _p: p }
    }
}

impl Faces for ChainFaces<'_> {
    fn dimension(&self) -> Option<i32> {
        Some(self.dim)
    }

    fn faces(&self, dim: usize) -> Vec<Vec<u32>> {
        fn rec(up: &[Vec<u32>], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            let last = *cur.last().unwrap();
            for &b in &up[last as usize] {
                cur.push(b);
                rec(up, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(dim + 1);
        for &a in &self.members {
            cur.push(a);
            rec(&self.up, dim + 1, &mut cur, &mut out);
            cur.pop();
        }
        out
    }
}

fn homology_of(src: &dyn Faces, coeff: Coefficients, cap: usize) -> Result<HomologyProfile, HomologyError> {
    let Some(top) = src.dimension() else {
        return Ok(HomologyProfile::void());
    };
    if top >= 0 && top as usize > cap {
        return Err(HomologyError::DimensionCapExceeded { dim: top as usize, cap });
    }
    // counts[i + 1] = f_i, ranks[i + 1] = rank of the boundary C_i -> C_{i-1}
    let mut counts = vec![1usize];
    let mut ranks = vec![0usize];
    let mut torsion_of_boundary: Vec<Vec<u64>> = vec![Vec::new()];
    if top >= 0 {
        let mut prev = src.faces(0);
        counts.push(prev.len());
        ranks.push(usize::from(!prev.is_empty()));
        torsion_of_boundary.push(Vec::new());
        for k in 1..=top as usize {
            let cur = src.faces(k);
            let index: HashMap<&[u32], u32> = prev.iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();
            let mut cols = Vec::with_capacity(cur.len());
            let mut buf = Vec::with_capacity(k);
            for f in &cur {
                let mut col: Vec<(u32, i64)> = Vec::with_capacity(k + 1);
                for i in 0..=k {
                    buf.clear();
                    buf.extend(f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                    let row = index[buf.as_slice()];
                    col.push((row, if i % 2 == 0 { 1 } else { -1 }));
                }
                col.sort_unstable_by_key(|e| e.0);
                cols.push(col);
            }
            let red = snf::reduce(&SparseMatrix { rows: prev.len(), cols }, coeff.field());
            let tors = red
                .torsion
                .iter()
                .map(|t| t.to_u64().ok_or_else(|| HomologyError::TorsionOverflow(t.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            counts.push(cur.len());
            ranks.push(red.rank);
            torsion_of_boundary.push(tors);
            prev = cur;
        }
    }
    let mut profile = HomologyProfile::default();
    for d in -1..=top {
        let i = (d + 1) as usize;
        let next_rank = ranks.get(i + 1).copied().unwrap_or(0);
        let b = counts[i] - ranks[i] - next_rank;
        profile.betti.insert(d, b as u64);
        let t = torsion_of_boundary.get(i + 1).cloned().unwrap_or_default();
        profile.torsion.insert(d, t);
    }
    Ok(profile)
}

/// The order complex: vertices are the elements of `p`, facets its maximal
/// chains.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let mut facets = Vec::new();
    let mut cur = Vec::new();
    fn rec(p: &Poset, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().unwrap();
        let ups = p.upper_covers(last);
        if ups.is_empty() {
            out.push(cur.clone());
            return;
        }
        for &b in ups {
            cur.push(b);
            rec(p, cur, out);
            cur.pop();
        }
    }
    for m in p.minimal_elements() {
        cur.push(m);
        rec(p, &mut cur, &mut facets);
        cur.pop();
    }
    SimplicialComplex::new(p.len(), facets).expect("chain vertices are poset elements")
}

pub fn reduced_homology(k: &SimplicialComplex, coeff: Coefficients) -> Result<HomologyProfile, HomologyError> {
    reduced_homology_with_cap(k, coeff, DEFAULT_DIMENSION_CAP)
}

pub fn reduced_homology_with_cap(
    k: &SimplicialComplex,
    coeff: Coefficients,
    cap: usize,
) -> Result<HomologyProfile, HomologyError> {
    homology_of(k, coeff, cap)
}

/// Reduced homology of the order complex of `p`, without materializing
/// the facet list.
pub fn poset_homology(p: &Poset, coeff: Coefficients) -> Result<HomologyProfile, HomologyError> {
    subposet_homology(p, &p.all_members(), coeff, DEFAULT_DIMENSION_CAP)
}

/// Reduced homology of the order complex of the induced subposet on
/// `members`.
pub fn subposet_homology(
    p: &Poset,
    members: &FixedBitSet,
    coeff: Coefficients,
    cap: usize,
) -> Result<HomologyProfile, HomologyError> {
    homology_of(&ChainFaces::new(p, members), coeff, cap)
}

/// `Σ (-1)^i f_i` over all faces including `∅`; zero for the void complex.
pub fn reduced_euler(k: &SimplicialComplex) -> i64 {
    k.f_vector().iter().enumerate().map(|(i, &f)| if i % 2 == 0 { -(f as i64) } else { f as i64 }).sum()
}

/// Reduced Euler characteristic of the order complex of `p` by counting
/// chains with a dynamic program.
pub fn reduced_euler_poset(p: &Poset) -> i64 {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&a| (p.height(a), a));
    // signed count of chains ending at a: sum over chains of (-1)^{dim}
    let mut s = vec![0i64; p.len()];
    for &a in &order {
        let below: i64 = p.below(a).ones().filter(|&b| b != a).map(|b| s[b]).sum();
        s[a] = 1 - below;
    }
    -1 + s.iter().sum::<i64>()
}

/// True iff reduced rational homology vanishes in every degree `<= i`.
/// Degree `-1` vanishes exactly when the complex is nonempty.
pub fn homological_connectivity(k: &SimplicialComplex, i: i32) -> Result<bool, HomologyError> {
    let h = reduced_homology(k, Coefficients::Rationals)?;
    if k.is_void() {
        return Ok(false);
    }
    Ok(h.betti.iter().filter(|(&d, _)| d <= i).all(|(_, &b)| b == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        let t = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 2],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 2],
            [5, 6, 3],
            [6, 2, 4],
        ];
        SimplicialComplex::new(6, t.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect()).unwrap()
    }

    #[test]
    fn normalization_drops_non_maximal_faces() {
        let k = SimplicialComplex::new(3, vec![vec![0], vec![2, 1, 0], vec![1, 2]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
        assert!(SimplicialComplex::new(2, vec![vec![3]]).is_err());
    }

    #[test]
    fn circle_and_projective_plane() {
        let h = reduced_homology(&hollow_triangle(), Coefficients::Integers).unwrap();
        assert_eq!(h.betti.values().copied().collect::<Vec<_>>(), vec![0, 0, 1]);
        let z = reduced_homology(&rp2(), Coefficients::Integers).unwrap();
        assert_eq!(z.torsion(1), &[2]);
        assert_eq!(z.betti(1), 0);
        assert_eq!(z.betti(2), 0);
        let q = reduced_homology(&rp2(), Coefficients::Rationals).unwrap();
        assert!(q.is_acyclic());
    }

    #[test]
    fn empty_and_void() {
        let empty = SimplicialComplex::new(0, vec![]).unwrap();
        let h = reduced_homology(&empty, Coefficients::Integers).unwrap();
        assert_eq!(h.betti(-1), 1);
        assert_eq!(reduced_euler(&empty), -1);
        let void = SimplicialComplex::void(0);
        assert!(reduced_homology(&void, Coefficients::Integers).unwrap().betti.is_empty());
        assert_eq!(reduced_euler(&void), 0);
        let h = poset_homology(&Poset::antichain(0), Coefficients::Rationals).unwrap();
        assert_eq!(h.betti(-1), 1);
    }

    #[test]
    fn order_complexes() {
        assert_eq!(order_complex(&Poset::antichain(3)).facets().len(), 3);
        assert_eq!(order_complex(&Poset::chain(3)).facets(), &[vec![0, 1, 2]]);
        let hex = order_complex(&Poset::boolean_algebra(3).proper_part().unwrap());
        assert_eq!(hex.vertex_count(), 6);
        assert_eq!(hex.facets().len(), 6);
        assert_eq!(reduced_euler(&hex), -1);
        assert!(homological_connectivity(&hex, 0).unwrap());
        assert!(!homological_connectivity(&hex, 1).unwrap());
        let two = SimplicialComplex::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(!homological_connectivity(&two, 0).unwrap());
    }

    #[test]
    fn chain_enumeration_matches_facets() {
        let p = Poset::boolean_algebra(4).proper_part().unwrap();
        let a = reduced_homology(&order_complex(&p), Coefficients::Integers).unwrap();
        let b = poset_homology(&p, Coefficients::Integers).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.betti(2), 1);
        assert_eq!(reduced_euler_poset(&p), 1);
    }

    #[test]
    fn dimension_cap() {
        let simplex = SimplicialComplex::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(
            reduced_homology_with_cap(&simplex, Coefficients::Rationals, 2),
            Err(HomologyError::DimensionCapExceeded { dim: 3, cap: 2 })
        );
    }

    #[test]
    fn profile_json_shape() {
        let h = reduced_homology(&rp2(), Coefficients::Integers).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"betti":{"-1":0,"0":0,"1":0,"2":0},"torsion":{"-1":[],"0":[],"1":[2],"2":[]}}"#);
        let back: HomologyProfile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        let k: SimplicialComplex = serde_json::from_str(r#"{"vertices":2,"facets":[[0,1]]}"#).unwrap();
        assert_eq!(k.dimension(), Some(1));
    }
}
