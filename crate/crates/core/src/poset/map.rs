use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Poset, PosetError, PosetJson};

/// A map between the elements of two posets. Whether it is order
/// preserving is a property checked by [`PosetMap::check`].
#[derive(Clone, Debug)]
pub struct PosetMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    image: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapCheck {
    pub order_preserving: bool,
    /// `None` when source or target is not graded.
    pub rank_preserving: Option<bool>,
    pub surjective: bool,
}

impl MapCheck {
    pub fn rank_preserving(&self) -> Result<bool, PosetError> {
        self.rank_preserving.ok_or(PosetError::NotGraded)
    }

    pub fn all(&self) -> bool {
        self.order_preserving && self.rank_preserving == Some(true) && self.surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetMapJson {
    pub source: PosetJson,
    pub target: PosetJson,
    pub image: Vec<usize>,
}

impl PosetMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, image: Vec<usize>) -> Result<Self, PosetError> {
        if image.len() != source.len() {
            return Err(PosetError::Malformed(format!(
                "image has {} entries for {} source elements",
                image.len(),
                source.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&i| i >= target.len()) {
            return Err(PosetError::BadImage(bad));
        }
        Ok(PosetMap { source, target, image })
    }

    /// Builds a map from a function on labels.
    pub fn from_labels<F>(source: Arc<Poset>, target: Arc<Poset>, f: F) -> Result<Self, PosetError>
    where
        F: Fn(&str) -> String,
    {
        let image = source.labels().iter().map(|l| target.require(&f(l))).collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, image)
    }

    pub fn identity(p: Arc<Poset>) -> Self {
        let image = (0..p.len()).collect();
        PosetMap { source: p.clone(), target: p, image }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Order-preservation, rank-preservation and surjectivity, computed
    /// independently of one another.
    pub fn check(&self) -> MapCheck {
        let (p, q) = (&*self.source, &*self.target);
        let order_preserving = (0..p.len()).all(|a| p.above(a).ones().all(|b| q.leq(self.image[a], self.image[b])));
        let rank_preserving =
            (p.is_graded() && q.is_graded()).then(|| (0..p.len()).all(|a| p.height(a) == q.height(self.image[a])));
        let mut hit = vec![false; q.len()];
        for &i in &self.image {
            hit[i] = true;
        }
        MapCheck { order_preserving, rank_preserving, surjective: hit.into_iter().all(|h| h) }
    }

    /// Source elements mapped to `q`.
    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| self.image[x] == q).collect()
    }

    /// Members of `f^{-1}(S)` for a set `S` of target elements.
    pub fn preimage(&self, targets: &FixedBitSet) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.source.len());
        for x in 0..self.source.len() {
            if targets.contains(self.image[x]) {
                m.insert(x);
            }
        }
        m
    }

    /// Members of `f^{-1}(<q>)`.
    pub fn preimage_of_ideal(&self, q: usize) -> FixedBitSet {
        self.preimage(self.target.below(q))
    }

    /// Image of a set of source elements.
    pub fn image_of(&self, members: &FixedBitSet) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.target.len());
        for x in members.ones() {
            m.insert(self.image[x]);
        }
        m
    }

    /// Restriction to `source_members`, landing in `target_members`
    /// (which must contain the image).
    pub fn restrict(&self, source_members: &FixedBitSet, target_members: &FixedBitSet) -> Result<PosetMap, PosetError> {
        let src = self.source.induced(source_members);
        let tgt = self.target.induced(target_members);
        let mut pos = vec![usize::MAX; self.target.len()];
        for (k, t) in target_members.ones().enumerate() {
            pos[t] = k;
        }
        let image = source_members
            .ones()
            .map(|x| {
                let t = pos[self.image[x]];
                if t == usize::MAX {
                    Err(PosetError::BadImage(self.image[x]))
                } else {
                    Ok(t)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        PosetMap::new(Arc::new(src), Arc::new(tgt), image)
    }

    /// Restriction to `source_members` with target the image of that set.
    pub fn restrict_to_image(&self, source_members: &FixedBitSet) -> PosetMap {
        let img = self.image_of(source_members);
        self.restrict(source_members, &img).expect("image contains every mapped element")
    }

    /// The restriction `P_{>=p} -> Q_{>=f(p)}` used when an argument passes
    /// to an upper interval.
    pub fn restrict_above(&self, p: usize) -> PosetMap {
        let src = self.source.above(p).clone();
        let tgt = self.target.above(self.image[p]).clone();
        self.restrict(&src, &tgt).expect("order-preserving map sends P_{>=p} into Q_{>=f(p)}")
    }

    pub fn to_json(&self) -> PosetMapJson {
        PosetMapJson { source: self.source.to_json(), target: self.target.to_json(), image: self.image.clone() }
    }

    pub fn from_json(json: &PosetMapJson) -> Result<Self, PosetError> {
        let source = Poset::from_json(&json.source)?;
        let target = Poset::from_json(&json.target)?;
        Self::new(Arc::new(source), Arc::new(target), json.image.clone())
    }
}
