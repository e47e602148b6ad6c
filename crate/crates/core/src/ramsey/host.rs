use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::occurrences::find_induced_occurrences;
use crate::error::{Error, Result};
use crate::graph::io::to_graph6;
use crate::graph::{pair_index, Color, LabeledGraph, TwoColoring};

/// Largest host edge count for exhaustive coloring enumeration.
pub const MAX_HOST_EDGES: usize = 28;

/// The high edge bits fixed per work chunk. Fixed, so results and counts do
/// not depend on the number of workers.
const CHUNK_BITS: usize = 6;

/// Whether some induced copy of `h` in `g` has all its edges one colour.
pub fn has_mono_induced(g: &LabeledGraph, col: &TwoColoring, h: &LabeledGraph) -> Result<bool> {
    col.check_total(g)?;
    for s in find_induced_occurrences(g, h, usize::MAX)? {
        let m = s.members();
        let mut colors = (0..m.len())
            .flat_map(|a| (a + 1..m.len()).map(move |b| (m[a], m[b])))
            .filter(|&(u, v)| g.has_edge(u, v))
            .map(|(u, v)| col.get(u, v).expect("total coloring"));
        let first = colors.next();
        if colors.all(|c| Some(c) == first) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HostCertificate {
    pub host: LabeledGraph,
    pub pattern: LabeledGraph,
    /// Every 2-colouring of the host's edges has a monochromatic induced
    /// copy of the pattern.
    pub verified: bool,
    /// Colourings examined in the fixed enumeration order, up to and
    /// including the witness. Equals `2^|E(host)|` when verified.
    pub colorings_checked: u64,
    pub witness: Option<TwoColoring>,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    host: String,
    pattern: String,
    host_vertices: usize,
    host_edges: usize,
    verified: bool,
    colorings_checked: u64,
    total_colorings: u64,
    witness: Option<&'a TwoColoring>,
}

impl Serialize for HostCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            host: to_graph6(&self.host),
            pattern: to_graph6(&self.pattern),
            host_vertices: self.host.n(),
            host_edges: self.host.edge_count(),
            verified: self.verified,
            colorings_checked: self.colorings_checked,
            total_colorings: 1u64 << self.host.edge_count(),
            witness: self.witness.as_ref(),
        }
        .serialize(s)
    }
}

/// Per-copy bookkeeping for Gray-code enumeration of edge colourings.
struct CopyIndex {
    m: usize,
    /// Edges per copy (`|E(h)|`).
    width: u32,
    copies: usize,
    /// `by_edge[e]`: copies containing canonical edge `e`.
    by_edge: Vec<Vec<u32>>,
    /// `edges_of[c]`: canonical edge indices of copy `c`.
    edges_of: Vec<Vec<u32>>,
}

impl CopyIndex {
    fn new(g: &LabeledGraph, h: &LabeledGraph) -> Result<Self> {
        let m = g.edge_count();
        if m > MAX_HOST_EDGES {
            return Err(Error::LimitExceeded {
                what: "host edge count for exhaustive 2-colouring (2^|E| colourings)",
                value: m as u128,
                limit: MAX_HOST_EDGES as u128,
            });
        }
        let n = g.n();
        let mut edge_id = vec![u32::MAX; n * n.saturating_sub(1) / 2];
        for (t, (i, j)) in g.edges().enumerate() {
            edge_id[pair_index(n, i, j)] = t as u32;
        }
        let mut by_edge = vec![Vec::new(); m];
        let mut edges_of = Vec::new();
        for (c, s) in find_induced_occurrences(g, h, usize::MAX)?.iter().enumerate() {
            let mm = s.members();
            let ids: Vec<u32> = (0..mm.len())
                .flat_map(|a| (a + 1..mm.len()).map(move |b| (mm[a], mm[b])))
                .filter(|&(u, v)| g.has_edge(u, v))
                .map(|(u, v)| edge_id[pair_index(n, u, v)])
                .collect();
            for &e in &ids {
                by_edge[e as usize].push(c as u32);
            }
            edges_of.push(ids);
        }
        Ok(Self {
            m,
            width: h.edge_count() as u32,
            copies: edges_of.len(),
            by_edge,
            edges_of,
        })
    }

    fn chunk_bits(&self) -> usize {
        self.m.min(CHUNK_BITS)
    }

    /// Walks chunk `chunk` in Gray order and returns `(index, mask)` of the
    /// first colouring whose monochromatic-copy count is zero (`want_mono =
    /// false`) or positive (`want_mono = true`). Gives up early once a
    /// lower chunk has reported.
    fn scan_chunk(&self, chunk: usize, want_mono: bool, best: &AtomicUsize) -> Option<(u64, u64)> {
        let low = self.m - self.chunk_bits();
        let mut mask = (chunk as u64) << low;
        let mut red = vec![0u32; self.copies];
        let mut mono = 0usize;
        let is_mono = |r: u32| r == 0 || r == self.width;
        for (c, ids) in self.edges_of.iter().enumerate() {
            red[c] = ids.iter().filter(|&&e| mask >> e & 1 == 1).count() as u32;
            mono += usize::from(is_mono(red[c]));
        }
        let hit = |mono: usize| (mono > 0) == want_mono;
        if hit(mono) {
            return Some((0, mask));
        }
        for i in 1..1u64 << low {
            if i & 0xfff == 0 && best.load(Ordering::Relaxed) < chunk {
                return None;
            }
            let e = i.trailing_zeros() as usize;
            mask ^= 1 << e;
            let now_red = mask >> e & 1 == 1;
            for &c in &self.by_edge[e] {
                let c = c as usize;
                let before = is_mono(red[c]);
                if now_red {
                    red[c] += 1;
                } else {
                    red[c] -= 1;
                }
                let after = is_mono(red[c]);
                if before != after {
                    if after {
                        mono += 1;
                    } else {
                        mono -= 1;
                    }
                }
            }
            if hit(mono) {
                return Some((i, mask));
            }
        }
        None
    }

    /// First hit over all chunks in (chunk, Gray index) order, plus the
    /// number of colourings up to and including it.
    fn first_hit(&self, want_mono: bool, jobs: usize) -> Result<Option<(u64, u64)>> {
        let chunks = 1usize << self.chunk_bits();
        let per_chunk = 1u64 << (self.m - self.chunk_bits());
        let best = AtomicUsize::new(usize::MAX);
        let run = || {
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let r = self.scan_chunk(c, want_mono, &best);
                    if r.is_some() {
                        best.fetch_min(c, Ordering::Relaxed);
                    }
                    r
                })
                .collect::<Vec<_>>()
        };
        let results = with_jobs(jobs, run)?;
        Ok(results
            .into_iter()
            .enumerate()
            .find_map(|(c, r)| r.map(|(i, mask)| (c as u64 * per_chunk + i + 1, mask))))
    }
}

/// Runs `f` on a dedicated pool of `jobs` workers, or on the global pool
/// when `jobs == 0`.
pub(crate) fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Exhaustive check that every 2-colouring of `g`'s edges contains a
/// monochromatic induced copy of `h`. On failure the first colouring
/// without one (in enumeration order) is returned as a witness.
pub fn is_host(g: &LabeledGraph, h: &LabeledGraph) -> Result<HostCertificate> {
    is_host_with_jobs(g, h, 0)
}

pub fn is_host_with_jobs(g: &LabeledGraph, h: &LabeledGraph, jobs: usize) -> Result<HostCertificate> {
    let index = CopyIndex::new(g, h)?;
    let hit = index.first_hit(false, jobs)?;
    Ok(HostCertificate {
        host: g.clone(),
        pattern: h.clone(),
        verified: hit.is_none(),
        colorings_checked: hit.map_or(1u64 << index.m, |(count, _)| count),
        witness: hit.map(|(_, mask)| TwoColoring::from_mask(g, mask)),
    })
}

/// Some 2-colouring of `g` has a monochromatic induced copy of `h`; the
/// colouring found first in enumeration order is returned.
pub fn find_mono_coloring(g: &LabeledGraph, h: &LabeledGraph) -> Result<Option<TwoColoring>> {
    let index = CopyIndex::new(g, h)?;
    Ok(index.first_hit(true, 1)?.map(|(_, mask)| TwoColoring::from_mask(g, mask)))
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    /// Number of candidate hosts; the minimum is over this list only.
    pub candidates: usize,
    /// Position of the first verified host in the candidate list.
    pub index: usize,
    pub host: HostCertificate,
    pub failures: Vec<HostCertificate>,
}

/// First candidate host (in the given order) verified by [`is_host`].
pub fn induced_ramsey_oracle(h: &LabeledGraph, hosts: &[LabeledGraph], jobs: usize) -> Result<OracleReport> {
    if let Some(g) = hosts.iter().find(|g| g.edge_count() > MAX_HOST_EDGES) {
        return Err(Error::LimitExceeded {
            what: "candidate host edge count for exhaustive 2-colouring",
            value: g.edge_count() as u128,
            limit: MAX_HOST_EDGES as u128,
        });
    }
    let mut failures = Vec::new();
    for (index, g) in hosts.iter().enumerate() {
        let cert = is_host_with_jobs(g, h, jobs)?;
        if cert.verified {
            return Ok(OracleReport {
                candidates: hosts.len(),
                index,
                host: cert,
                failures,
            });
        }
        failures.push(cert);
    }
    Err(Error::NotFound(format!(
        "no verified host among {} candidates (the oracle only searches the given list)",
        hosts.len()
    )))
}

/// Red/blue counts of a colouring.
pub fn color_counts(col: &TwoColoring) -> (usize, usize) {
    (col.count(Color::Red), col.count(Color::Blue))
}
