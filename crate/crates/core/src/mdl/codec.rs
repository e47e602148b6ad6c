//! Two-part encoding of a graph that contains a known induced pattern.
//!
//! The canonical encoding spends `C(n,2)` bits. When the pattern `H` on `k`
//! vertices sits inside `G` as an induced subgraph, the `C(k,2)` bits inside
//! the occurrence are redundant given a generator for `H`, so they are
//! replaced by the address of the occurrence:
//!
//! | field         | width                          |
//! |---------------|--------------------------------|
//! | `subset_rank` | `ceil(log2 C(n,k))` bits       |
//! | `perm_rank`   | `ceil(log2 k!)` bits (ordered) |
//! | `residual`    | `C(n,2) - C(k,2)` bits         |
//!
//! `n`, `k` and the generator are side information and are not counted.
//!
//! # Byte layout
//!
//! [`AltEncoding::to_bytes`] writes, in order: `n` as u32 big-endian, `k`
//! as u32 big-endian, the generator id as a u32 big-endian byte length
//! followed by UTF-8 bytes, one `ordered` byte (0 or 1), then a single
//! MSB-first bit stream holding `subset_rank`, `perm_rank` (absent when
//! unordered) and the residual bits, zero-padded to a whole byte. Field
//! widths are implied by the header.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::rank::{binomial, ceil_log2, factorial, rank_permutation, rank_subset, unrank_permutation, unrank_subset};
use crate::error::{Error, Result};
use crate::graph::{choose2, pair_index, EdgeBitString, LabeledGraph, VertexSubset};
use crate::sierpinski;

/// A size-constructible family member, rebuilt from its parameters alone.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    Sierpinski(u32),
    Complete(usize),
    Empty(usize),
    Path(usize),
    Cycle(usize),
}

impl Generator {
    pub fn generate(&self) -> Result<LabeledGraph> {
        match *self {
            Generator::Sierpinski(l) => sierpinski::build(l).map(|s| s.into_graph()),
            Generator::Complete(k) => Ok(LabeledGraph::complete(k)),
            Generator::Empty(k) => Ok(LabeledGraph::empty(k)),
            Generator::Path(k) => Ok(LabeledGraph::path(k)),
            Generator::Cycle(k) => LabeledGraph::cycle(k),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Generator::Sierpinski(l) => sierpinski::vertex_count(l) as usize,
            Generator::Complete(k) | Generator::Empty(k) | Generator::Path(k) | Generator::Cycle(k) => k,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sierpinski(l) => write!(f, "sierpinski:{l}"),
            Generator::Complete(k) => write!(f, "complete:{k}"),
            Generator::Empty(k) => write!(f, "empty:{k}"),
            Generator::Path(k) => write!(f, "path:{k}"),
            Generator::Cycle(k) => write!(f, "cycle:{k}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("generator id {s:?} must look like kind:param")))?;
        let num: usize = arg
            .parse()
            .map_err(|e| Error::Parse(format!("generator parameter in {s:?}: {e}")))?;
        match kind {
            "sierpinski" if num >= 1 => Ok(Generator::Sierpinski(num as u32)),
            "complete" => Ok(Generator::Complete(num)),
            "empty" => Ok(Generator::Empty(num)),
            "path" => Ok(Generator::Path(num)),
            "cycle" if num >= 3 => Ok(Generator::Cycle(num)),
            _ => Err(Error::Parse(format!("unknown generator id {s:?}"))),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SideInfo {
    pub n: usize,
    pub k: usize,
    pub generator: Generator,
    /// Whether the generator needs the vertex ordering of the occurrence.
    pub ordered: bool,
}

impl SideInfo {
    pub fn new(n: usize, generator: Generator, ordered: bool) -> Self {
        Self {
            n,
            k: generator.vertex_count(),
            generator,
            ordered,
        }
    }

    fn validate(&self) -> Result<()> {
        let expected = self.generator.vertex_count();
        if self.k != expected {
            return Err(Error::SizeMismatch {
                what: "k vs generator vertex count",
                expected,
                actual: self.k,
            });
        }
        if self.k > self.n {
            return Err(Error::InvalidArgument(format!(
                "pattern size k = {} exceeds host size n = {}",
                self.k, self.n
            )));
        }
        if self.n > u32::MAX as usize {
            return Err(Error::LimitExceeded {
                what: "host size for the 32-bit header",
                value: self.n as u128,
                limit: u32::MAX as u128,
            });
        }
        Ok(())
    }

    pub fn subset_bits(&self) -> u64 {
        ceil_log2(&binomial(self.n as u64, self.k as u64))
    }

    pub fn perm_bits(&self) -> u64 {
        if self.ordered {
            ceil_log2(&factorial(self.k as u64))
        } else {
            0
        }
    }

    pub fn residual_bits(&self) -> usize {
        choose2(self.n) - choose2(self.k)
    }
}

/// Host vertices assigned to pattern roles: `roles[j]` plays pattern vertex
/// `j + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Occurrence {
    roles: Vec<usize>,
}

impl Occurrence {
    /// Rank-ordered occurrence: the `j`-th smallest member plays vertex `j`.
    pub fn ordered(subset: &VertexSubset) -> Self {
        Self {
            roles: subset.members().to_vec(),
        }
    }

    pub fn from_roles(roles: Vec<usize>) -> Result<Self> {
        let mut sorted = roles.clone();
        sorted.sort_unstable();
        VertexSubset::new(sorted).map_err(|_| Error::MalformedSubset(roles.clone()))?;
        Ok(Self { roles })
    }

    pub fn roles(&self) -> &[usize] {
        &self.roles
    }

    pub fn subset(&self) -> VertexSubset {
        VertexSubset::from_unsorted(self.roles.clone()).expect("validated on construction")
    }

    /// `sigma[j]` = position of `roles[j]` in the sorted vertex set.
    fn permutation(&self) -> Vec<usize> {
        let sorted = self.subset();
        self.roles
            .iter()
            .map(|v| sorted.members().binary_search(v).expect("member"))
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AltEncoding {
    pub side: SideInfo,
    pub subset_rank: BigUint,
    /// Present iff `side.ordered`.
    pub perm_rank: Option<BigUint>,
    pub residual: Vec<bool>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct LengthReport {
    pub canonical: u64,
    pub alt: u64,
    pub gain: i64,
}

impl AltEncoding {
    /// Measured description length in bits, side information excluded.
    pub fn bit_len(&self) -> u64 {
        self.side.subset_bits() + self.side.perm_bits() + self.residual.len() as u64
    }

    pub fn length_report(&self) -> LengthReport {
        let canonical = choose2(self.side.n) as u64;
        let alt = self.bit_len();
        LengthReport {
            canonical,
            alt,
            gain: canonical as i64 - alt as i64,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let id = self.side.generator.to_string();
        let mut out = Vec::new();
        out.extend_from_slice(&(self.side.n as u32).to_be_bytes());
        out.extend_from_slice(&(self.side.k as u32).to_be_bytes());
        out.extend_from_slice(&(id.len() as u32).to_be_bytes());
        out.extend_from_slice(id.as_bytes());
        out.push(u8::from(self.side.ordered));
        let mut w = BitWriter::default();
        w.push_uint(&self.subset_rank, self.side.subset_bits());
        if let Some(p) = &self.perm_rank {
            w.push_uint(p, self.side.perm_bits());
        }
        for &b in &self.residual {
            w.push(b);
        }
        out.extend(w.finish());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = bytes;
        let mut take = |len: usize| -> Result<&[u8]> {
            if cur.len() < len {
                return Err(Error::Parse("alt encoding: truncated header".into()));
            }
            let (head, tail) = cur.split_at(len);
            cur = tail;
            Ok(head)
        };
        let u32_at = |b: &[u8]| u32::from_be_bytes(b.try_into().expect("4 bytes")) as usize;
        let n = u32_at(take(4)?);
        let k = u32_at(take(4)?);
        let id_len = u32_at(take(4)?);
        let id = std::str::from_utf8(take(id_len)?)
            .map_err(|e| Error::Parse(format!("alt encoding: generator id is not UTF-8: {e}")))?
            .to_owned();
        let ordered = match take(1)?[0] {
            0 => false,
            1 => true,
            b => return Err(Error::Parse(format!("alt encoding: ordered flag must be 0 or 1, got {b}"))),
        };
        let side = SideInfo {
            n,
            k,
            generator: id.parse()?,
            ordered,
        };
        side.validate()?;
        let body = cur;
        let total = side.subset_bits() + side.perm_bits() + side.residual_bits() as u64;
        if body.len() as u64 != total.div_ceil(8) {
            return Err(Error::Parse(format!(
                "alt encoding: expected {} body bytes for {total} bits, got {}",
                total.div_ceil(8),
                body.len()
            )));
        }
        let mut r = BitReader { bytes: body, pos: 0 };
        let subset_rank = r.read_uint(side.subset_bits());
        let perm_rank = ordered.then(|| r.read_uint(side.perm_bits()));
        let residual = (0..side.residual_bits()).map(|_| r.read()).collect();
        if (r.pos..body.len() as u64 * 8).any(|_| r.read()) {
            return Err(Error::Parse("alt encoding: nonzero padding bits".into()));
        }
        Ok(Self {
            side,
            subset_rank,
            perm_rank,
            residual,
        })
    }
}

#[derive(Default)]
struct BitWriter {
    bytes: Vec<u8>,
    used: u32,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        if self.used % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().expect("pushed") |= 0x80 >> (self.used % 8);
        }
        self.used = (self.used + 1) % 8;
    }

    fn push_uint(&mut self, x: &BigUint, width: u64) {
        debug_assert!(x.bits() <= width);
        for i in (0..width).rev() {
            self.push(x.bit(i));
        }
    }

    fn finish(self) -> Vec<u8> {
        self.bytes
    }
}

struct BitReader<'a> {
    bytes: &'a [u8],
    pos: u64,
}

impl BitReader<'_> {
    fn read(&mut self) -> bool {
        let byte = self.bytes[(self.pos / 8) as usize];
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        bit
    }

    fn read_uint(&mut self, width: u64) -> BigUint {
        let mut x = BigUint::zero();
        for _ in 0..width {
            x <<= 1u32;
            if self.read() {
                x += 1u32;
            }
        }
        x
    }
}

/// Replaces the occurrence's internal bits by its address.
///
/// Rejects anything that is not an induced occurrence of the generator's
/// graph under the given role assignment; an unordered generator also
/// requires the rank-ordered assignment.
pub fn encode_alt(bits: &EdgeBitString, occ: &Occurrence, side: &SideInfo) -> Result<AltEncoding> {
    side.validate()?;
    if bits.n() != side.n {
        return Err(Error::SizeMismatch {
            what: "bit string vertex count vs side-information n",
            expected: side.n,
            actual: bits.n(),
        });
    }
    let roles = occ.roles();
    if roles.len() != side.k {
        return Err(Error::SizeMismatch {
            what: "occurrence size vs pattern size k",
            expected: side.k,
            actual: roles.len(),
        });
    }
    let subset = occ.subset();
    subset.check_within(side.n)?;
    let pattern = side.generator.generate()?;
    for a in 1..=side.k {
        for b in a + 1..=side.k {
            if bits.get(roles[a - 1], roles[b - 1]) != pattern.has_edge(a, b) {
                return Err(Error::NotAnOccurrence(format!(
                    "pair ({}, {}) disagrees with pattern pair ({a}, {b}) of {}",
                    roles[a - 1],
                    roles[b - 1],
                    side.generator
                )));
            }
        }
    }
    let sigma = occ.permutation();
    let identity = sigma.iter().enumerate().all(|(i, &s)| i == s);
    if !side.ordered && !identity {
        return Err(Error::NotAnOccurrence(
            "an unordered generator needs the rank-ordered occurrence (no permutation is stored)".into(),
        ));
    }
    let residual = residual_positions(side.n, &subset)
        .map(|p| bits.bits()[p])
        .collect();
    Ok(AltEncoding {
        side: side.clone(),
        subset_rank: rank_subset(subset.members()),
        perm_rank: side.ordered.then(|| rank_permutation(&sigma)),
        residual,
    })
}

/// Canonical positions of pairs not entirely inside `subset`, ascending.
fn residual_positions(n: usize, subset: &VertexSubset) -> impl Iterator<Item = usize> + '_ {
    (1..=n).flat_map(move |i| {
        let inside_i = subset.contains(i);
        (i + 1..=n).filter_map(move |j| (!(inside_i && subset.contains(j))).then(|| pair_index(n, i, j)))
    })
}

/// Reconstructs the canonical bit string.
pub fn decode_alt(alt: &AltEncoding) -> Result<EdgeBitString> {
    let side = &alt.side;
    side.validate()?;
    let subsets = binomial(side.n as u64, side.k as u64);
    if alt.subset_rank >= subsets {
        return Err(Error::RankOutOfRange {
            field: "subset_rank",
            value: alt.subset_rank.to_string(),
            bound: subsets.to_string(),
        });
    }
    let sigma = match (&alt.perm_rank, side.ordered) {
        (Some(p), true) => {
            let perms = factorial(side.k as u64);
            if *p >= perms {
                return Err(Error::RankOutOfRange {
                    field: "perm_rank",
                    value: p.to_string(),
                    bound: perms.to_string(),
                });
            }
            unrank_permutation(side.k, p)
        }
        (None, false) => (0..side.k).collect(),
        _ => {
            return Err(Error::InvalidArgument(
                "perm_rank must be present exactly when the encoding is ordered".into(),
            ))
        }
    };
    if alt.residual.len() != side.residual_bits() {
        return Err(Error::SizeMismatch {
            what: "residual bit count",
            expected: side.residual_bits(),
            actual: alt.residual.len(),
        });
    }
    let members = unrank_subset(side.n, side.k, &alt.subset_rank);
    let subset = VertexSubset::new(members.clone())?;
    let roles: Vec<usize> = sigma.iter().map(|&s| members[s]).collect();
    let pattern = side.generator.generate()?;

    let mut bits = vec![false; choose2(side.n)];
    for (p, &b) in residual_positions(side.n, &subset).zip(&alt.residual) {
        bits[p] = b;
    }
    for (a, b) in pattern.edges() {
        bits[pair_index(side.n, roles[a - 1], roles[b - 1])] = true;
    }
    EdgeBitString::new(side.n, bits)
}
