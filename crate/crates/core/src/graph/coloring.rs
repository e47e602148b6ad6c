use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LabeledGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Edge 2-coloring, keyed by `(i, j)` with `i < j`.
///
/// Serialized as a JSON list of `[i, j, "red" | "blue"]` triples in
/// canonical edge order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwoColoring(BTreeMap<(usize, usize), Color>);

impl TwoColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every edge of `g` gets `color`.
    pub fn uniform(g: &LabeledGraph, color: Color) -> Self {
        Self(g.edges().map(|e| (e, color)).collect())
    }

    /// Bit `t` of `mask` colours the `t`-th canonical edge of `g` red.
    pub fn from_mask(g: &LabeledGraph, mask: u64) -> Self {
        Self(
            g.edges()
                .enumerate()
                .map(|(t, e)| (e, if mask >> t & 1 == 1 { Color::Red } else { Color::Blue }))
                .collect(),
        )
    }

    pub fn set(&mut self, i: usize, j: usize, color: Color) {
        let key = if i < j { (i, j) } else { (j, i) };
        self.0.insert(key, color);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Color> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.0.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Color)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn count(&self, color: Color) -> usize {
        self.0.values().filter(|&&c| c == color).count()
    }

    /// Checks that exactly the edges of `g` are coloured.
    pub fn check_total(&self, g: &LabeledGraph) -> Result<()> {
        if let Some(e) = g.edges().find(|&(i, j)| self.get(i, j).is_none()) {
            return Err(Error::PartialColoring(format!("edge {e:?} has no colour")));
        }
        if let Some((&e, _)) = self.0.iter().find(|(&(i, j), _)| !g.has_edge(i, j)) {
            return Err(Error::PartialColoring(format!("{e:?} is coloured but is not an edge")));
        }
        Ok(())
    }

    /// Inverse of [`TwoColoring::from_mask`]; requires a total colouring.
    pub fn to_mask(&self, g: &LabeledGraph) -> Result<u64> {
        self.check_total(g)?;
        if g.edge_count() > 64 {
            return Err(Error::LimitExceeded {
                what: "edge count for a mask",
                value: g.edge_count() as u128,
                limit: 64,
            });
        }
        Ok(g.edges()
            .enumerate()
            .filter(|&(_, (i, j))| self.get(i, j) == Some(Color::Red))
            .fold(0, |m, (t, _)| m | 1 << t))
    }
}

impl Serialize for TwoColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(usize, usize, Color)> = self.iter().map(|((i, j), c)| (i, j, c)).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwoColoring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(usize, usize, Color)>::deserialize(d)?;
        let mut col = TwoColoring::new();
        for (i, j, c) in triples {
            if i == j {
                return Err(serde::de::Error::custom(format!("self-loop ({i},{j}) in colouring")));
            }
            col.set(i, j, c);
        }
        Ok(col)
    }
}
