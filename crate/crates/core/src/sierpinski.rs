//! Sierpinski gasket graphs `S_l`.
//!
//! Vertices live on a triangular lattice with integer `(row, col)`
//! coordinates, `0 <= col <= row <= 2^(l-1)`. `S_1` is the triangle
//! `(0,0), (1,0), (1,1)`; `S_l` is three copies of `S_(l-1)` shifted by
//! `(0,0)`, `(R',0)` and `(R',R')` with `R' = 2^(l-2)`. Copies share corner
//! coordinates, which is exactly where they are glued. Labels are assigned
//! by sorting coordinates by `(row, col)`: top to bottom, left to right.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexSubset};

pub const DEFAULT_MAX_LEVEL: u32 = 12;

pub type Coord = (u64, u64);

#[derive(Clone, Debug)]
pub struct SierpinskiGraph {
    level: u32,
    graph: LabeledGraph,
    // coords[v - 1] is the lattice position of vertex v
    coords: Vec<Coord>,
    index: BTreeMap<Coord, usize>,
}

/// `n_l = (3/2)(3^(l-1) + 1)`.
pub fn vertex_count(l: u32) -> u64 {
    3 * (3u64.pow(l - 1) + 1) / 2
}

/// `m_l = 3^l`.
pub fn edge_count(l: u32) -> u64 {
    3u64.pow(l)
}

/// Top-left offsets of the `3^(m-1)` level-1 cells of a level-`m` gasket,
/// in units of one cell row.
fn cell_offsets(m: u32) -> Vec<Coord> {
    let mut offsets = vec![(0, 0)];
    for step in 2..=m {
        let shift = 1u64 << (step - 2);
        let prev = std::mem::take(&mut offsets);
        for &(dr, dc) in &[(0, 0), (shift, 0), (shift, shift)] {
            offsets.extend(prev.iter().map(|&(r, c)| (r + dr, c + dc)));
        }
    }
    offsets
}

/// Lattice coordinates of a level-`l` gasket anchored at the origin,
/// sorted by `(row, col)`.
fn gasket_coords(l: u32) -> BTreeSet<Coord> {
    cell_offsets(l)
        .into_iter()
        .flat_map(|(r, c)| [(r, c), (r + 1, c), (r + 1, c + 1)])
        .collect()
}

pub fn build(level: u32) -> Result<SierpinskiGraph> {
    build_with_max(level, DEFAULT_MAX_LEVEL)
}

/// Builds `S_level`, refusing levels above `max_level`.
pub fn build_with_max(level: u32, max_level: u32) -> Result<SierpinskiGraph> {
    if level < 1 {
        return Err(Error::InvalidArgument("Sierpinski level must be at least 1".into()));
    }
    if level > max_level {
        return Err(Error::LimitExceeded {
            what: "Sierpinski level (vertex count grows as 3^l; raise the configured maximum to allow it)",
            value: level as u128,
            limit: max_level as u128,
        });
    }
    let coords: Vec<Coord> = gasket_coords(level).into_iter().collect();
    let index: BTreeMap<Coord, usize> = coords.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();
    let edges: Vec<(usize, usize)> = cell_offsets(level)
        .into_iter()
        .flat_map(|(r, c)| {
            let a = index[&(r, c)];
            let b = index[&(r + 1, c)];
            let d = index[&(r + 1, c + 1)];
            [(a, b), (a, d), (b, d)]
        })
        .collect();
    let graph = LabeledGraph::from_edges(coords.len(), &edges)?;
    Ok(SierpinskiGraph {
        level,
        graph,
        coords,
        index,
    })
}

impl SierpinskiGraph {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    pub fn coord(&self, v: usize) -> Coord {
        self.coords[v - 1]
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn label_of(&self, c: Coord) -> Option<usize> {
        self.index.get(&c).copied()
    }

    /// Row span `R = 2^(l-1)`.
    pub fn rows(&self) -> u64 {
        1 << (self.level - 1)
    }

    /// Labels at `(0,0)`, `(R,0)` and `(R,R)`.
    pub fn corners(&self) -> [usize; 3] {
        let r = self.rows();
        [(0, 0), (r, 0), (r, r)].map(|c| self.index[&c])
    }

    /// Vertex sets of the `3^(l-j)` level-`j` sub-gaskets, each sorted, in
    /// lexicographic order.
    pub fn subgaskets(&self, j: u32) -> Result<Vec<VertexSubset>> {
        if j < 1 || j > self.level {
            return Err(Error::InvalidArgument(format!(
                "sub-gasket level must lie in 1..={}, got {j}",
                self.level
            )));
        }
        let unit = 1u64 << (j - 1);
        let local = gasket_coords(j);
        let mut out: Vec<VertexSubset> = cell_offsets(self.level - j + 1)
            .into_iter()
            .map(|(r, c)| {
                let labels = local
                    .iter()
                    .map(|&(lr, lc)| self.index[&(r * unit + lr, c * unit + lc)])
                    .collect();
                VertexSubset::from_unsorted(labels).expect("labels are positive")
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Coordinates as JSON-ready records.
    pub fn coords_json(&self) -> Vec<CoordRecord> {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, &(row, col))| CoordRecord { vertex: i + 1, row, col })
            .collect()
    }
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordRecord {
    pub vertex: usize,
    pub row: u64,
    pub col: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    fn degree_histogram(g: &LabeledGraph) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for d in g.degrees() {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn closed_forms() {
        assert_eq!((vertex_count(1), edge_count(1)), (3, 3));
        assert_eq!((vertex_count(2), edge_count(2)), (6, 9));
        assert_eq!((vertex_count(7), edge_count(7)), (1095, 2187));
    }

    #[test]
    fn small_levels() {
        let s1 = build(1).unwrap();
        assert_eq!(*s1.graph(), LabeledGraph::complete(3));
        let s3 = build(3).unwrap();
        assert_eq!((s3.graph().n(), s3.graph().edge_count()), (15, 27));
        let s4 = build(4).unwrap();
        assert_eq!((s4.graph().n(), s4.graph().edge_count()), (42, 81));
        assert_eq!(degree_histogram(s4.graph()), BTreeMap::from([(2, 3), (4, 39)]));
    }

    #[test]
    fn canonical_labels_of_s2() {
        let s2 = build(2).unwrap();
        assert_eq!(
            s2.coords(),
            &[(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
        );
        assert_eq!(
            s2.graph().edge_list(),
            vec![(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 5), (3, 6), (4, 5), (5, 6)]
        );
    }

    #[test]
    fn corners_have_degree_two() {
        assert_eq!(build(1).unwrap().corners(), [1, 2, 3]);
        assert_eq!(build(2).unwrap().corners(), [1, 4, 6]);
        for l in 2..=5 {
            let s = build(l).unwrap();
            let mut deg2: Vec<usize> = (1..=s.graph().n()).filter(|&v| s.graph().degree(v) == 2).collect();
            deg2.sort_unstable();
            let mut corners = s.corners().to_vec();
            corners.sort_unstable();
            assert_eq!(deg2, corners, "level {l}");
        }
    }

    #[test]
    fn subgaskets_induce_smaller_gaskets() {
        let s2 = build(2).unwrap();
        let tri = s2.subgaskets(1).unwrap();
        assert_eq!(tri.len(), 3);
        assert!(tri.iter().all(|t| t.len() == 3));
        assert_eq!(tri[0].members(), &[1, 2, 3]);

        let s3 = build(3).unwrap();
        let pieces = s3.subgaskets(2).unwrap();
        assert_eq!(pieces.len(), 3);
        let target = build(2).unwrap().into_graph();
        for p in &pieces {
            assert_eq!(p.len(), 6);
            assert!(is_isomorphic(&s3.graph().induced_subgraph(p).unwrap(), &target));
        }
        assert_eq!(s3.subgaskets(3).unwrap(), vec![VertexSubset::full(15)]);
        assert!(s3.subgaskets(0).is_err());
        assert!(s3.subgaskets(4).is_err());
    }

    #[test]
    fn level_guards() {
        assert!(matches!(build(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(build(13), Err(Error::LimitExceeded { .. })));
        assert!(build_with_max(5, 4).is_err());
    }
}
