use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexSubset};

pub const MAX_PATTERN: usize = 16;

/// Vertex sets `S` of `g` with `g[S]` isomorphic to `h`, in lexicographic
/// order, truncated to the first `limit`.
///
/// Searches embeddings of `h` anchored at each host vertex `v` in turn,
/// using only vertices `>= v`, so the sets found for `v` are exactly those
/// with minimum `v` and the output is complete up to `limit`.
pub fn find_induced_occurrences(g: &LabeledGraph, h: &LabeledGraph, limit: usize) -> Result<Vec<VertexSubset>> {
    let k = h.n();
    if k > MAX_PATTERN {
        return Err(Error::LimitExceeded {
            what: "pattern vertex count for occurrence search",
            value: k as u128,
            limit: MAX_PATTERN as u128,
        });
    }
    if limit == 0 || k > g.n() {
        return Ok(Vec::new());
    }
    if k == 0 {
        return Ok(vec![VertexSubset::full(0)]);
    }
    let plans: Vec<Plan> = (1..=k).map(|root| Plan::new(h, root)).collect();
    let mut out = Vec::new();
    for v in 1..=g.n() {
        let mut found = BTreeSet::new();
        for plan in &plans {
            if g.degree(v) < h.degree(plan.order[0]) {
                continue;
            }
            let mut m = Matcher {
                g,
                h,
                plan,
                min: v,
                map: vec![0; k],
                used: vec![false; g.n() + 1],
                found: &mut found,
            };
            m.map[0] = v;
            m.used[v] = true;
            m.extend(1);
        }
        out.extend(found);
        if out.len() >= limit {
            out.truncate(limit);
            break;
        }
    }
    Ok(out)
}

pub fn contains_induced(g: &LabeledGraph, h: &LabeledGraph) -> Result<bool> {
    Ok(!find_induced_occurrences(g, h, 1)?.is_empty())
}

/// Pattern vertex order: breadth-first from `root`, restarting at the
/// smallest unvisited vertex. `anchor[i]` is an earlier position adjacent
/// to `order[i]`, when there is one.
struct Plan {
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
}

impl Plan {
    fn new(h: &LabeledGraph, root: usize) -> Self {
        let k = h.n();
        let mut pos = vec![usize::MAX; k + 1];
        let mut order = Vec::with_capacity(k);
        let mut anchor = Vec::with_capacity(k);
        let starts = std::iter::once(root).chain(1..=k);
        for s in starts {
            if pos[s] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([(s, None)]);
            pos[s] = usize::MAX - 1;
            while let Some((u, a)) = queue.pop_front() {
                pos[u] = order.len();
                order.push(u);
                anchor.push(a);
                for &w in h.neighbors(u) {
                    if pos[w] == usize::MAX {
                        pos[w] = usize::MAX - 1;
                        queue.push_back((w, Some(pos[u])));
                    }
                }
            }
        }
        Self { order, anchor }
    }
}

struct Matcher<'a> {
    g: &'a LabeledGraph,
    h: &'a LabeledGraph,
    plan: &'a Plan,
    min: usize,
    map: Vec<usize>,
    used: Vec<bool>,
    found: &'a mut BTreeSet<VertexSubset>,
}

impl Matcher<'_> {
    fn extend(&mut self, i: usize) {
        if i == self.plan.order.len() {
            let set = VertexSubset::from_unsorted(self.map.clone()).expect("distinct host vertices");
            self.found.insert(set);
            return;
        }
        let u = self.plan.order[i];
        let candidates: Vec<usize> = match self.plan.anchor[i] {
            Some(a) => self.g.neighbors(self.map[a]).to_vec(),
            None => (self.min + 1..=self.g.n()).collect(),
        };
        for x in candidates {
            if x <= self.min || self.used[x] || self.g.degree(x) < self.h.degree(u) {
                continue;
            }
            let consistent = (0..i).all(|j| self.g.has_edge(x, self.map[j]) == self.h.has_edge(u, self.plan.order[j]));
            if !consistent {
                continue;
            }
            self.map[i] = x;
            self.used[x] = true;
            self.extend(i + 1);
            self.used[x] = false;
        }
    }
}
