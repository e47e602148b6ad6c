//! Labelled simple graphs on the vertex set `{1, …, n}`.
//!
//! Vertices are 1-based everywhere in the public API. The canonical edge
//! bit string lists the `n(n-1)/2` unordered pairs in lexicographic order
//! `(1,2), (1,3), …, (1,n), (2,3), …, (n-1,n)`; see [`pair_index`].

mod coloring;
pub mod io;
mod iso;
mod sample;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coloring::{Color, TwoColoring};
pub use iso::{find_isomorphism, is_isomorphic};
pub use sample::{derive_seed, gnp_sample, gnp_sample_where};

/// `C(n, 2)` as a `usize`.
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// 0-based position of the pair `{i, j}` in the canonical bit string.
///
/// For `1 <= i < j <= n` the 1-based position is
/// `sum_{t=1}^{i-1} (n - t) + (j - i)`; this returns that value minus one.
/// The order of `i` and `j` does not matter.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(1 <= i && i < j && j <= n);
    // sum_{t=1}^{i-1} (n - t) = (i-1) n - (i-1) i / 2
    (i - 1) * n - (i - 1) * i / 2 + (j - i) - 1
}

/// Inverse of [`pair_index`].
pub fn pair_at(n: usize, mut pos: usize) -> (usize, usize) {
    let mut i = 1;
    while pos >= n - i {
        pos -= n - i;
        i += 1;
    }
    (i, i + 1 + pos)
}

/// A simple undirected graph whose vertices are labelled `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    // neighbours of vertex v live at adj[v - 1], sorted ascending, 1-based
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (1..=n)
            .map(|v| (1..=n).filter(|&u| u != v).collect())
            .collect();
        Self {
            adj,
            edges: choose2(n),
        }
    }

    /// Path `1 - 2 - … - n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Cycle `1 - 2 - … - n - 1`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Self::from_edges(n, &edges)
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            sets[i - 1].insert(j);
            sets[j - 1].insert(i);
        }
        Ok(Self::from_sets(sets))
    }

    fn from_sets(sets: Vec<BTreeSet<usize>>) -> Self {
        let adj: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Self { adj, edges }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Adjacency test; `false` for out-of-range or equal endpoints.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == 0 || i > self.n() || j == 0 || j > self.n() {
            return false;
        }
        self.adj[i - 1].binary_search(&j).is_ok()
    }

    /// Sorted neighbour labels of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges `(i, j)` with `i < j`, in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(v, nbrs)| {
            let i = v + 1;
            nbrs.iter().copied().filter(move |&j| j > i).map(move |j| (i, j))
        })
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(|&v| self.adj[v - 1].is_empty())
    }

    /// Neighbourhood bitmasks (bit `u - 1` set in `masks[v - 1]` iff `u ~ v`),
    /// available for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|nbrs| nbrs.iter().fold(0u64, |m, &u| m | 1 << (u - 1)))
                .collect(),
        )
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        debug_assert!(i != j);
        let (a, b) = (&mut self.adj[i - 1], j);
        match (a.binary_search(&b), present) {
            (Err(pos), true) => {
                a.insert(pos, b);
                let pos = self.adj[j - 1].binary_search(&i).unwrap_err();
                self.adj[j - 1].insert(pos, i);
                self.edges += 1;
            }
            (Ok(pos), false) => {
                a.remove(pos);
                let pos = self.adj[j - 1].binary_search(&i).unwrap();
                self.adj[j - 1].remove(pos);
                self.edges -= 1;
            }
            _ => {}
        }
    }

    /// Canonical `C(n,2)`-bit encoding.
    pub fn encode(&self) -> EdgeBitString {
        let n = self.n();
        let mut bits = vec![false; choose2(n)];
        for (i, j) in self.edges() {
            bits[pair_index(n, i, j)] = true;
        }
        EdgeBitString { n, bits }
    }

    pub fn decode(bits: &EdgeBitString) -> Self {
        let n = bits.n;
        let mut sets = vec![BTreeSet::new(); n];
        let mut pos = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if bits.bits[pos] {
                    sets[i - 1].insert(j);
                    sets[j - 1].insert(i);
                }
                pos += 1;
            }
        }
        Self::from_sets(sets)
    }

    /// Subgraph induced by `s`, relabelled `1..=|s|` by rank in `s`.
    pub fn induced_subgraph(&self, s: &VertexSubset) -> Result<Self> {
        s.check_within(self.n())?;
        let members = s.members();
        let mut sets = vec![BTreeSet::new(); members.len()];
        for (a, &u) in members.iter().enumerate() {
            for (b, &v) in members.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    sets[a].insert(b + 1);
                    sets[b].insert(a + 1);
                }
            }
        }
        Ok(Self::from_sets(sets))
    }

    /// Whether `s` is an ordered labelled occurrence of `h`: the induced
    /// subgraph on `s`, relabelled by rank, equals `h` exactly.
    pub fn is_ordered_occurrence(&self, s: &VertexSubset, h: &LabeledGraph) -> Result<bool> {
        if s.len() != h.n() {
            return Err(Error::SizeMismatch {
                what: "occurrence size vs pattern vertex count",
                expected: h.n(),
                actual: s.len(),
            });
        }
        Ok(self.induced_subgraph(s)? == *h)
    }

    /// Connected components via iterative depth-first search. Members are
    /// sorted and components are ordered by their smallest member.
    pub fn connected_components(&self) -> ComponentPartition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            seen[start - 1] = true;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u - 1] {
                        seen[u - 1] = true;
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            components.push(VertexSubset(members));
        }
        ComponentPartition { components }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().components.len() <= 1
    }

    /// `self` on labels `1..=n1` followed by `other` shifted to
    /// `n1+1..=n1+n2`, with no edges between the two parts.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> LabeledGraph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nbrs| nbrs.iter().map(|&u| u + shift).collect()),
        );
        LabeledGraph {
            adj,
            edges: self.edges + other.edges,
        }
    }

    /// Copy of `self` with the vertices relabelled by `perm`, where vertex
    /// `v` becomes `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<LabeledGraph> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::SizeMismatch {
                what: "permutation length",
                expected: n,
                actual: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation of 1..={n}"
                )));
            }
            seen[p - 1] = true;
        }
        let edges: Vec<_> = self.edges().map(|(i, j)| (perm[i - 1], perm[j - 1])).collect();
        Self::from_edges(n, &edges)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, edges={:?})", self.n(), self.edge_list())
    }
}

/// Canonical bit-string encoding of a labelled graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EdgeBitString {
    n: usize,
    bits: Vec<bool>,
}

impl EdgeBitString {
    /// Wraps raw bits, rejecting anything whose length is not `C(n,2)`.
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        let expected = choose2(n);
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                n,
                expected,
                actual: bits.len(),
            });
        }
        Ok(Self { n, bits })
    }

    /// Parses ASCII `'0'`/`'1'` text; surrounding whitespace is ignored.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, bits)
    }

    /// Parses text and infers `n` from the length, which must be a
    /// triangular number.
    pub fn parse_infer(text: &str) -> Result<Self> {
        let len = text.trim().len();
        let mut n = 0;
        while choose2(n) < len {
            n += 1;
        }
        if choose2(n) != len {
            return Err(Error::Parse(format!(
                "bit string length {len} is not C(n,2) for any n"
            )));
        }
        Self::parse(text, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[pair_index(self.n, i, j)]
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn decode(&self) -> LabeledGraph {
        LabeledGraph::decode(self)
    }
}

impl fmt::Display for EdgeBitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

/// Decodes raw bits for an `n`-vertex graph.
pub fn decode_bits(bits: &[bool], n: usize) -> Result<LabeledGraph> {
    EdgeBitString::new(n, bits.to_vec()).map(|b| b.decode())
}

/// A strictly increasing list of 1-based vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSubset(Vec<usize>);

impl VertexSubset {
    pub fn new(members: Vec<usize>) -> Result<Self> {
        let ok = members.first().is_none_or(|&v| v >= 1) && members.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self(members))
        } else {
            Err(Error::MalformedSubset(members))
        }
    }

    /// Sorts and deduplicates; rejects label 0.
    pub fn from_unsorted(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        Self::new(members)
    }

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// `{lo, …, hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1);
        Self((lo..=hi).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSubset) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v > n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Parses `"1,2,3"` (whitespace tolerated, order free).
    pub fn parse(text: &str) -> Result<Self> {
        let members = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad vertex label {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_unsorted(members)
    }
}

impl TryFrom<Vec<usize>> for VertexSubset {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<VertexSubset> for Vec<usize> {
    fn from(s: VertexSubset) -> Self {
        s.0
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Disjoint vertex subsets covering `V`, one per connected component.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ComponentPartition {
    pub components: Vec<VertexSubset>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> LabeledGraph {
        LabeledGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn encode_small_graphs() {
        assert_eq!(LabeledGraph::complete(3).encode().to_string(), "111");
        assert_eq!(LabeledGraph::empty(3).encode().to_string(), "000");
        assert_eq!(path3().encode().to_string(), "101");
    }

    #[test]
    fn decode_small_graphs() {
        let k3 = EdgeBitString::parse("111", 3).unwrap().decode();
        assert_eq!(k3, LabeledGraph::complete(3));
        assert_eq!(EdgeBitString::parse("000", 3).unwrap().decode(), LabeledGraph::empty(3));
        assert_eq!(EdgeBitString::parse("101", 3).unwrap().decode(), path3());
    }

    #[test]
    fn decode_rejects_wrong_length() {
        let err = decode_bits(&[true, false], 3).unwrap_err();
        assert_eq!(
            err,
            Error::LengthMismatch {
                n: 3,
                expected: 3,
                actual: 2
            }
        );
        assert!(EdgeBitString::parse("1111", 3).is_err());
    }

    #[test]
    fn pair_index_matches_formula_and_is_bijective() {
        for n in 2..12 {
            let mut seen = vec![false; choose2(n)];
            for i in 1..=n {
                for j in i + 1..=n {
                    let one_based: usize = (1..i).map(|t| n - t).sum::<usize>() + (j - i);
                    let p = pair_index(n, i, j);
                    assert_eq!(p + 1, one_based);
                    assert_eq!(pair_at(n, p), (i, j));
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = LabeledGraph::complete(4);
        let s = VertexSubset::new(vec![1, 2, 3]).unwrap();
        assert_eq!(k4.induced_subgraph(&s).unwrap(), LabeledGraph::complete(3));
        let ends = VertexSubset::new(vec![1, 3]).unwrap();
        let sub = path3().induced_subgraph(&ends).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.edge_count(), 0);
        let bad = VertexSubset::new(vec![1, 5]).unwrap();
        assert_eq!(
            path3().induced_subgraph(&bad).unwrap_err(),
            Error::VertexOutOfRange { vertex: 5, n: 3 }
        );
    }

    #[test]
    fn ordered_occurrence_examples() {
        let k4 = LabeledGraph::complete(4);
        let s = VertexSubset::full(3);
        assert!(k4.is_ordered_occurrence(&s, &LabeledGraph::complete(3)).unwrap());
        assert!(!path3().is_ordered_occurrence(&s, &LabeledGraph::complete(3)).unwrap());
        assert!(matches!(
            k4.is_ordered_occurrence(&VertexSubset::full(2), &LabeledGraph::complete(3)),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn components_examples() {
        let g = LabeledGraph::complete(3).disjoint_union(&LabeledGraph::complete(2));
        let parts = g.connected_components();
        assert_eq!(
            parts.components,
            vec![VertexSubset::full(3), VertexSubset::range(4, 5)]
        );
        assert_eq!(LabeledGraph::complete(6).connected_components().len(), 1);
        let singles = LabeledGraph::empty(4).connected_components();
        assert_eq!(singles.len(), 4);
        assert!(singles.components.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn union_examples() {
        let g = LabeledGraph::complete(3).disjoint_union(&LabeledGraph::complete(2));
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_list(), vec![(1, 2), (1, 3), (2, 3), (4, 5)]);
        let e = LabeledGraph::empty(2).disjoint_union(&LabeledGraph::empty(2));
        assert_eq!(e, LabeledGraph::empty(4));
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            LabeledGraph::from_edges(3, &[(1, 1)]).unwrap_err(),
            Error::SelfLoop(1)
        );
        assert!(LabeledGraph::from_edges(3, &[(0, 1)]).is_err());
        let dup = LabeledGraph::from_edges(3, &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn set_edge_keeps_symmetry() {
        let mut g = LabeledGraph::empty(4);
        g.set_edge(3, 1, true);
        g.set_edge(1, 3, true);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 3) && g.has_edge(3, 1));
        g.set_edge(1, 3, false);
        assert_eq!(g, LabeledGraph::empty(4));
    }

    #[test]
    fn subset_validation() {
        assert!(VertexSubset::new(vec![2, 1]).is_err());
        assert!(VertexSubset::new(vec![0, 1]).is_err());
        assert!(VertexSubset::new(vec![1, 1]).is_err());
        assert_eq!(
            VertexSubset::parse(" 3, 1,2 ").unwrap(),
            VertexSubset::full(3)
        );
        let json = serde_json::to_string(&VertexSubset::full(2)).unwrap();
        assert_eq!(json, "[1,2]");
        assert!(serde_json::from_str::<VertexSubset>("[2,1]").is_err());
    }
}
