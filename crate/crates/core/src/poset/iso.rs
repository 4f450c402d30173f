use std::collections::BTreeMap;

use super::Poset;

/// True iff the two posets are isomorphic.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}

/// Searches for an order isomorphism `p -> q`.
///
/// Elements are first colored by structural invariants (height, depth,
/// cover degrees, sizes of principal ideals and filters) and the coloring is
/// refined by the colors of cover neighbours until stable. The backtracking
/// search only pairs elements of equal color. Returns the image of every
/// element of `p` on success.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.cover_count() != q.cover_count() {
        return None;
    }
    let n = p.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let (cp, cq) = refined_colors(p, q);
    let mut hist_p = BTreeMap::new();
    let mut hist_q = BTreeMap::new();
    for &c in &cp {
        *hist_p.entry(c).or_insert(0usize) += 1;
    }
    for &c in &cq {
        *hist_q.entry(c).or_insert(0usize) += 1;
    }
    if hist_p != hist_q {
        return None;
    }
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (y, &c) in cq.iter().enumerate() {
        by_color.entry(c).or_default().push(y);
    }
    let order = search_order(p, &cp, &hist_p);
    let mut search =
        Search { p, q, order: &order, cp: &cp, by_color: &by_color, image: vec![usize::MAX; n], used: vec![false; n] };
    if search.extend(0) {
        Some(search.image)
    } else {
        None
    }
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    order: &'a [usize],
    cp: &'a [usize],
    by_color: &'a BTreeMap<usize, Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let candidates = &self.by_color[&self.cp[x]];
        for &y in candidates {
            if self.used[y] || !self.consistent(depth, x, y) {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[y] = false;
            self.image[x] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, x: usize, y: usize) -> bool {
        self.order[..depth].iter().all(|&a| {
            let fa = self.image[a];
            self.p.leq(a, x) == self.q.leq(fa, y) && self.p.leq(x, a) == self.q.leq(y, fa)
        })
    }
}

/// Joint color refinement of both posets so that colors are comparable.
fn refined_colors(p: &Poset, q: &Poset) -> (Vec<usize>, Vec<usize>) {
    let base = |s: &Poset, x: usize| {
        vec![
            s.height(x),
            s.depth(x),
            s.upper_covers(x).len(),
            s.lower_covers(x).len(),
            s.below(x).count_ones(..),
            s.above(x).count_ones(..),
        ]
    };
    let keys_p: Vec<Vec<usize>> = (0..p.len()).map(|x| base(p, x)).collect();
    let keys_q: Vec<Vec<usize>> = (0..q.len()).map(|x| base(q, x)).collect();
    let (mut cp, mut cq, mut classes) = renumber(&keys_p, &keys_q);
    loop {
        let step = |s: &Poset, c: &[usize], x: usize| {
            let mut ups: Vec<usize> = s.upper_covers(x).iter().map(|&b| c[b]).collect();
            let mut downs: Vec<usize> = s.lower_covers(x).iter().map(|&b| c[b]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut key = vec![c[x], usize::MAX];
            key.extend(ups);
            key.push(usize::MAX);
            key.extend(downs);
            key
        };
        let kp: Vec<Vec<usize>> = (0..p.len()).map(|x| step(p, &cp, x)).collect();
        let kq: Vec<Vec<usize>> = (0..q.len()).map(|x| step(q, &cq, x)).collect();
        let (np, nq, count) = renumber(&kp, &kq);
        cp = np;
        cq = nq;
        if count == classes {
            break;
        }
        classes = count;
    }
    (cp, cq)
}

fn renumber(kp: &[Vec<usize>], kq: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>, usize) {
    let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for k in kp.iter().chain(kq) {
        ids.entry(k).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let cp = kp.iter().map(|k| ids[k]).collect();
    let cq = kq.iter().map(|k| ids[k]).collect();
    (cp, cq, ids.len())
}

/// Breadth-first order over the Hasse diagram, seeded at rare colors, so
/// each new element is constrained by already placed neighbours.
fn search_order(p: &Poset, colors: &[usize], hist: &BTreeMap<usize, usize>) -> Vec<usize> {
    let n = p.len();
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.sort_by_key(|&x| (hist[&colors[x]], p.height(x), x));
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &s in &seeds {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            let mut next: Vec<usize> =
                p.upper_covers(x).iter().chain(p.lower_covers(x)).copied().filter(|&y| !seen[y]).collect();
            next.sort_by_key(|&y| (hist[&colors[y]], y));
            for y in next {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}
