use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::host::{find_mono_coloring, MAX_HOST_EDGES};
use super::occurrences::contains_induced;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexSubset};

/// A disjoint union `G1 ⊔ G2` with the roles of its two parts recorded:
/// `G1` is meant to be free of the pattern and `G2` to be a host for it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnionConstruction {
    pub graph: LabeledGraph,
    pub g1: VertexSubset,
    pub g2: VertexSubset,
}

pub fn construct_union(g1: &LabeledGraph, g2: &LabeledGraph) -> UnionConstruction {
    let n1 = g1.n();
    UnionConstruction {
        graph: g1.disjoint_union(g2),
        g1: VertexSubset::range(1, n1),
        g2: VertexSubset::range(n1 + 1, n1 + g2.n()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitMode {
    /// Enumerate 2-colourings of each component until one has a
    /// monochromatic induced copy.
    ProofFaithful,
    /// Search each component for an induced copy directly.
    Fast,
}

impl FromStr for SplitMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proof-faithful" => Ok(Self::ProofFaithful),
            "fast" => Ok(Self::Fast),
            other => Err(Error::Parse(format!("unknown split mode {other:?} (expected proof-faithful or fast)"))),
        }
    }
}

impl fmt::Display for SplitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ProofFaithful => "proof-faithful",
            Self::Fast => "fast",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SplitResult {
    pub g1_vertices: VertexSubset,
    pub g2_vertices: VertexSubset,
    pub mode: SplitMode,
}

/// Assigns each connected component of `g` to `G2` if it can carry a
/// monochromatic induced copy of `h`, and to `G1` otherwise. Assumes `h`
/// is connected, so every copy lies inside one component.
///
/// The two modes agree: colouring every edge of a component one colour
/// makes each induced copy in it monochromatic, and a monochromatic copy
/// is in particular a copy.
pub fn split_union(g: &LabeledGraph, h: &LabeledGraph, mode: SplitMode) -> Result<SplitResult> {
    let mut g1 = Vec::new();
    let mut g2 = Vec::new();
    for comp in g.connected_components().components {
        let sub = g.induced_subgraph(&comp)?;
        let in_g2 = match mode {
            SplitMode::Fast => contains_induced(&sub, h)?,
            SplitMode::ProofFaithful => {
                if sub.edge_count() > MAX_HOST_EDGES {
                    return Err(Error::LimitExceeded {
                        what: "component edge count for proof-faithful split (use fast mode)",
                        value: sub.edge_count() as u128,
                        limit: MAX_HOST_EDGES as u128,
                    });
                }
                find_mono_coloring(&sub, h)?.is_some()
            }
        };
        if in_g2 { &mut g2 } else { &mut g1 }.extend_from_slice(comp.members());
    }
    Ok(SplitResult {
        g1_vertices: VertexSubset::from_unsorted(g1)?,
        g2_vertices: VertexSubset::from_unsorted(g2)?,
        mode,
    })
}
