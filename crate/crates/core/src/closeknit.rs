//! Close-knit ratios of vertex groups.
//!
//! For a group `S` the ratio is the minimum, over nonempty `S' ⊆ S`, of
//! `d(S', S) / Σ_{i ∈ S'} d_i`, where `d(S', S)` counts edges with one end
//! in `S'` and the other in `S` (edges inside `S'` once) and `d_i` is the
//! degree in the whole graph. All arithmetic is exact.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexSubset};
use crate::sierpinski;

pub type Rational = Ratio<u64>;

/// Largest group for which `min_ratio` enumerates all `2^|S| - 1` subsets.
pub const MAX_GROUP: usize = 20;
pub const DEFAULT_CANDIDATE_CAP: usize = 2_000_000;

/// Formats a ratio as `"p/q"`, always with an explicit denominator.
pub fn fmt_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

/// Parses `"p/q"` or an integer.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let bad = |e: std::num::ParseIntError| Error::Parse(format!("bad ratio {text:?}: {e}"));
    let (p, q) = match text.trim().split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(bad)?, q.trim().parse().map_err(bad)?),
        None => (text.trim().parse().map_err(bad)?, 1),
    };
    if q == 0 {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(p, q))
}

/// `d(S', S)`: edges `{i, j}` with `i ∈ S'` and `j ∈ S`, each counted once.
pub fn internal_degree(g: &LabeledGraph, sub: &VertexSubset, group: &VertexSubset) -> Result<usize> {
    group.check_within(g.n())?;
    if sub.is_empty() {
        return Err(Error::InvalidArgument("S' must be nonempty".into()));
    }
    if !sub.is_subset_of(group) {
        return Err(Error::NotSubset(sub.to_string(), group.to_string()));
    }
    let mut count = 0;
    for &i in sub.members() {
        for &j in g.neighbors(i) {
            // an edge inside S' is seen from both ends; keep the i < j view
            if group.contains(j) && (!sub.contains(j) || i < j) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub group: VertexSubset,
    #[serde(serialize_with = "ser_ratio")]
    pub min_ratio: Rational,
    pub argmin: VertexSubset,
}

/// `true` iff the sorted member list of `a` precedes that of `b`
/// lexicographically; bit `t` stands for the `t`-th smallest group member.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff & diff.wrapping_neg();
    let above = !(low | (low - 1));
    if a & low != 0 {
        // a has the element; b either ends here (prefix, smaller) or continues higher
        b & above != 0
    } else {
        a & above == 0
    }
}

/// Exact close-knit ratio of `group`, with the lexicographically smallest
/// minimizing `S'`.
pub fn min_ratio(g: &LabeledGraph, group: &VertexSubset) -> Result<GroupReport> {
    group.check_within(g.n())?;
    let k = group.len();
    if k == 0 {
        return Err(Error::InvalidArgument("group must be nonempty".into()));
    }
    if k > MAX_GROUP {
        return Err(Error::LimitExceeded {
            what: "group size for exhaustive subset enumeration",
            value: k as u128,
            limit: MAX_GROUP as u128,
        });
    }
    let members = group.members();
    if let Some(&v) = members.iter().find(|&&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let adj: Vec<u32> = members
        .iter()
        .map(|&u| {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &w)| g.has_edge(u, w))
                .fold(0u32, |m, (b, _)| m | 1 << b)
        })
        .collect();

    // per-subset sums built from the subset minus its lowest member
    let size = 1usize << k;
    let mut numer = vec![0u32; size];
    let mut denom = vec![0u32; size];
    let mut best: Option<(u32, u32, u32)> = None;
    for mask in 1..size as u32 {
        let a = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        // adding a: its edges into S, minus edges to rest that are already counted
        numer[mask as usize] =
            numer[rest as usize] + adj[a].count_ones() - (adj[a] & rest).count_ones();
        denom[mask as usize] = denom[rest as usize] + g.degree(members[a]) as u32;
        let (p, q) = (numer[mask as usize], denom[mask as usize]);
        best = match best {
            None => Some((p, q, mask)),
            Some((bp, bq, bm)) => {
                let lhs = p as u64 * bq as u64;
                let rhs = bp as u64 * q as u64;
                if lhs < rhs || (lhs == rhs && lex_less(mask, bm)) {
                    Some((p, q, mask))
                } else {
                    Some((bp, bq, bm))
                }
            }
        };
    }
    let (p, q, mask) = best.expect("group is nonempty");
    let argmin = VertexSubset::new(
        (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| members[b]).collect(),
    )?;
    Ok(GroupReport {
        group: group.clone(),
        min_ratio: Rational::new(p as u64, q as u64),
        argmin,
    })
}

/// Every vertex mapped to a group of size at most `k` with ratio at least `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CloseKnitCertificate {
    #[serde(serialize_with = "ser_ratio")]
    pub r: Rational,
    pub k: usize,
    /// `witness[v - 1]` is the qualifying group of vertex `v`.
    pub witness: Vec<GroupReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CloseKnitOutcome {
    Certified(CloseKnitCertificate),
    /// `vertex` has no qualifying candidate group; `best` is its candidate
    /// with the largest ratio, if any candidate exists.
    Failed {
        vertex: usize,
        best: Option<GroupReport>,
    },
}

impl CloseKnitOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, Self::Certified(_))
    }
}

/// Connected vertex sets with `2..=k` members, ordered by size and then
/// lexicographically.
///
/// Groups are required to have at least two members: a singleton has no
/// internal link and would satisfy the `r = 0` condition vacuously.
pub fn connected_groups(g: &LabeledGraph, k: usize, cap: usize) -> Result<Vec<VertexSubset>> {
    let mut out = Vec::new();
    let mut layer: BTreeSet<Vec<usize>> = (1..=g.n()).map(|v| vec![v]).collect();
    for _ in 2..=k {
        let mut next = BTreeSet::new();
        for set in &layer {
            for &v in set {
                for &u in g.neighbors(v) {
                    if set.binary_search(&u).is_err() {
                        let mut grown = set.clone();
                        let pos = grown.binary_search(&u).unwrap_err();
                        grown.insert(pos, u);
                        next.insert(grown);
                    }
                }
            }
            if out.len() + next.len() > cap {
                return Err(Error::LimitExceeded {
                    what: "candidate group count",
                    value: (out.len() + next.len()) as u128,
                    limit: cap as u128,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().map(|s| VertexSubset::new(s.clone()).expect("sorted")));
        layer = next;
    }
    Ok(out)
}

struct GroupSearch<'a> {
    g: &'a LabeledGraph,
    candidates: Vec<VertexSubset>,
    by_vertex: Vec<Vec<usize>>,
    reports: HashMap<usize, GroupReport>,
}

impl<'a> GroupSearch<'a> {
    fn new(g: &'a LabeledGraph, k: usize, cap: usize) -> Result<Self> {
        if k > MAX_GROUP {
            return Err(Error::LimitExceeded {
                what: "group size bound k",
                value: k as u128,
                limit: MAX_GROUP as u128,
            });
        }
        if let Some(v) = g.isolated_vertices().next() {
            return Err(Error::IsolatedVertex(v));
        }
        let candidates = connected_groups(g, k, cap)?;
        let mut by_vertex = vec![Vec::new(); g.n()];
        for (idx, c) in candidates.iter().enumerate() {
            for &v in c.members() {
                by_vertex[v - 1].push(idx);
            }
        }
        Ok(Self {
            g,
            candidates,
            by_vertex,
            reports: HashMap::new(),
        })
    }

    fn report(&mut self, idx: usize) -> &GroupReport {
        let (g, candidates) = (self.g, &self.candidates);
        self.reports
            .entry(idx)
            .or_insert_with(|| min_ratio(g, &candidates[idx]).expect("candidates are valid groups"))
    }

    /// First qualifying group of `v` in (size, lex) order.
    fn witness(&mut self, v: usize, r: Rational) -> Option<GroupReport> {
        for pos in 0..self.by_vertex[v - 1].len() {
            let idx = self.by_vertex[v - 1][pos];
            if self.report(idx).min_ratio >= r {
                return Some(self.report(idx).clone());
            }
        }
        None
    }

    fn best(&mut self, v: usize) -> Option<GroupReport> {
        let mut best: Option<GroupReport> = None;
        for pos in 0..self.by_vertex[v - 1].len() {
            let idx = self.by_vertex[v - 1][pos];
            let rep = self.report(idx);
            if best.as_ref().is_none_or(|b| rep.min_ratio > b.min_ratio) {
                best = Some(rep.clone());
            }
        }
        best
    }
}

/// Checks whether `g` is `(r, k)`-close-knit by searching connected groups
/// of size `2..=k` around every vertex.
pub fn is_rk_closeknit(g: &LabeledGraph, r: Rational, k: usize) -> Result<CloseKnitOutcome> {
    is_rk_closeknit_capped(g, r, k, DEFAULT_CANDIDATE_CAP)
}

pub fn is_rk_closeknit_capped(g: &LabeledGraph, r: Rational, k: usize, cap: usize) -> Result<CloseKnitOutcome> {
    let mut search = GroupSearch::new(g, k, cap)?;
    let mut witness = Vec::with_capacity(g.n());
    for v in 1..=g.n() {
        match search.witness(v, r) {
            Some(rep) => witness.push(rep),
            None => {
                return Ok(CloseKnitOutcome::Failed {
                    vertex: v,
                    best: search.best(v),
                })
            }
        }
    }
    Ok(CloseKnitOutcome::Certified(CloseKnitCertificate { r, k, witness }))
}

/// Smallest `k <= k_cap` for which `g` is `(r, k)`-close-knit, if any.
pub fn minimal_k(g: &LabeledGraph, r: Rational, k_cap: usize) -> Result<Option<usize>> {
    let mut search = GroupSearch::new(g, k_cap, DEFAULT_CANDIDATE_CAP)?;
    let mut needed = 0;
    for v in 1..=g.n() {
        match search.witness(v, r) {
            Some(rep) => needed = needed.max(rep.group.len()),
            None => return Ok(None),
        }
    }
    Ok(Some(needed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub level: u32,
    /// `None` when no `k <= k_cap` works.
    pub min_k: Option<usize>,
}

/// Minimal `k` for `S_1, …, S_l_max` at threshold `r`.
pub fn family_scan(l_max: u32, r: Rational, k_cap: usize) -> Result<Vec<ScanRow>> {
    (1..=l_max)
        .map(|level| {
            let s = sierpinski::build(level)?;
            Ok(ScanRow {
                level,
                min_k: minimal_k(s.graph(), r, k_cap)?,
            })
        })
        .collect()
}
