use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Poset;

/// Möbius function values `mu(x, y)` for all `x <= y`.
///
/// For a bounded poset the table is over the poset itself; otherwise it is
/// over the bounded extension `{0^} ⊕ P ⊕ {1^}`, whose labels are listed in
/// `elements`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    pub elements: Vec<String>,
    pub values: BTreeMap<(usize, usize), i64>,
    pub bottom: usize,
    pub top: usize,
}

impl MobiusTable {
    pub fn get(&self, x: usize, y: usize) -> Option<i64> {
        self.values.get(&(x, y)).copied()
    }

    /// `mu` between the bottom and top of the (extended) poset.
    pub fn bottom_top(&self) -> i64 {
        self.values[&(self.bottom, self.top)]
    }
}

/// Full Möbius table by the defining recursion.
pub fn mobius(p: &Poset) -> MobiusTable {
    let ext;
    let (q, bottom, top) = if p.is_bounded() {
        (p, p.minimum().unwrap(), p.maximum().unwrap())
    } else {
        let (e, lo, hi) = p.bounded_extension();
        ext = e;
        (&ext, lo, hi)
    };
    let n = q.len();
    // process pairs with y in a linear extension order (by height)
    let mut by_height: Vec<usize> = (0..n).collect();
    by_height.sort_by_key(|&i| (q.height(i), i));
    let mut values = BTreeMap::new();
    for x in 0..n {
        let mut row = vec![0i64; n];
        for &y in &by_height {
            if !q.leq(x, y) {
                continue;
            }
            if x == y {
                row[y] = 1;
            } else {
                let s: i64 = q.below(y).ones().filter(|&z| z != y && q.leq(x, z)).map(|z| row[z]).sum();
                row[y] = -s;
            }
            values.insert((x, y), row[y]);
        }
    }
    MobiusTable { elements: q.labels().to_vec(), values, bottom, top }
}

/// `mu(0^, 1^)` of `{0^} ⊕ P ⊕ {1^}`, which equals the reduced Euler
/// characteristic of the order complex of `p`.
pub fn mobius_hat(p: &Poset) -> i64 {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (p.height(i), i));
    // mu(0^, y) for y in P; mu(0^, 0^) = 1
    let mut mu = vec![0i64; n];
    for &y in &order {
        let s: i64 = p.below(y).ones().filter(|&z| z != y).map(|z| mu[z]).sum();
        mu[y] = -(1 + s);
    }
    -(1 + mu.iter().sum::<i64>())
}

impl Serialize for MobiusTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            elements: &'a [String],
            bottom: usize,
            top: usize,
            values: Values<'a>,
        }
        struct Values<'a>(&'a BTreeMap<(usize, usize), i64>);
        impl Serialize for Values<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(self.0.len()))?;
                for ((i, j), v) in self.0 {
                    m.serialize_entry(&format!("{i},{j}"), v)?;
                }
                m.end()
            }
        }
        Repr { elements: &self.elements, bottom: self.bottom, top: self.top, values: Values(&self.values) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MobiusTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            elements: Vec<String>,
            bottom: usize,
            top: usize,
            values: BTreeMap<String, i64>,
        }
        let r = Repr::deserialize(d)?;
        let mut values = BTreeMap::new();
        for (k, v) in r.values {
            let (i, j) = k.split_once(',').ok_or_else(|| serde::de::Error::custom(format!("bad key `{k}`")))?;
            let i = i.parse().map_err(serde::de::Error::custom)?;
            let j = j.parse().map_err(serde::de::Error::custom)?;
            values.insert((i, j), v);
        }
        Ok(MobiusTable { elements: r.elements, values, bottom: r.bottom, top: r.top })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains() {
        let c2 = Poset::chain(2);
        assert_eq!(mobius(&c2).bottom_top(), -1);
        assert_eq!(mobius(&Poset::chain(3)).bottom_top(), 0);
        assert_eq!(mobius_hat(&Poset::chain(1)), 0);
    }

    #[test]
    fn table_satisfies_recursion() {
        let p = Poset::boolean_algebra(3);
        let t = mobius(&p);
        for x in 0..p.len() {
            assert_eq!(t.get(x, x), Some(1));
            for y in 0..p.len() {
                if p.lt(x, y) {
                    let s: i64 =
                        (0..p.len()).filter(|&z| p.leq(x, z) && p.leq(z, y)).map(|z| t.get(x, z).unwrap()).sum();
                    assert_eq!(s, 0);
                }
            }
        }
        // mu of a Boolean algebra is (-1)^n
        assert_eq!(t.bottom_top(), -1);
    }

    #[test]
    fn antichain_extension() {
        // three points: 1 - 3 + ... by hand: mu(0,a) = -1, mu(0,1) = -(1 - 3) = 2
        assert_eq!(mobius(&Poset::antichain(3)).bottom_top(), 2);
        assert_eq!(mobius_hat(&Poset::antichain(3)), 2);
    }

    #[test]
    fn json_keys() {
        let t = mobius(&Poset::chain(2));
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"0,1\":-1"));
        let back: MobiusTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
