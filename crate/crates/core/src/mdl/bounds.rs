//! Closed-form description-length accounting and the asymptotic thresholds
//! it is compared against.

use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::rank::{binomial, ceil_log2, factorial};
use crate::graph::{choose2, EdgeBitString};

/// `C(k,2) - ceil(log2 C(n,k)) - [ordered] ceil(log2 k!)`: bits saved by the
/// two-part encoding of an `n`-vertex graph around a `k`-vertex occurrence.
pub fn gain(n: usize, k: usize, ordered: bool) -> i64 {
    let subset = ceil_log2(&binomial(n as u64, k as u64)) as i64;
    let perm = if ordered { ceil_log2(&factorial(k as u64)) as i64 } else { 0 };
    choose2(k) as i64 - subset - perm
}

/// Largest `n >= k` with `gain(n, k, ordered) > 0`, or `None` when even
/// `n = k` saves nothing.
///
/// `gain` is non-increasing in `n`, so an exponential probe followed by a
/// bisection finds the boundary.
pub fn threshold_exact(k: usize, ordered: bool) -> Option<usize> {
    if gain(k, k, ordered) <= 0 {
        return None;
    }
    let mut lo = k; // gain(lo) > 0
    let mut hi = k.max(1) * 2; // gain(hi) <= 0 after probing
    while gain(hi, k, ordered) > 0 {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if gain(mid, k, ordered) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// A bound of the form `coefficient * 2^exponent`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct Pow2Bound {
    pub coefficient: f64,
    #[serde(serialize_with = "ser_exponent")]
    pub exponent: Ratio<u64>,
    /// Leading-order only; lower-order terms are dropped.
    pub asymptotic: bool,
}

fn ser_exponent<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

impl Pow2Bound {
    pub fn value(&self) -> f64 {
        self.coefficient * self.exponent.to_f64().expect("finite").exp2()
    }

    /// Whether `n` is at least the bound. Exact for unit coefficients:
    /// `n >= 2^(p/q)` iff `n^q >= 2^p`.
    pub fn is_at_most(&self, n: usize) -> bool {
        if self.coefficient == 1.0 {
            let (p, q) = (*self.exponent.numer(), *self.exponent.denom());
            BigUint::from(n).pow(q as u32) >= BigUint::one() << p
        } else {
            n as f64 >= self.value()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct AsymptoticBounds {
    pub k: usize,
    /// `2^((k-1)/2)`: ordered occurrence in an incompressible graph.
    pub ordered: Pow2Bound,
    /// `2^(k(k-1)/(2(k+1)))`: ordered occurrence with `log n` slack.
    pub ordered_slack: Pow2Bound,
    /// `k 2^(k/2) / (e sqrt 2)`: unordered occurrence.
    pub unordered: Pow2Bound,
}

pub fn asymptotic_bounds(k: usize) -> AsymptoticBounds {
    let k64 = k as u64;
    AsymptoticBounds {
        k,
        ordered: Pow2Bound {
            coefficient: 1.0,
            exponent: Ratio::new(k64 - 1, 2),
            asymptotic: false,
        },
        ordered_slack: Pow2Bound {
            coefficient: 1.0,
            exponent: Ratio::new(k64 * (k64 - 1), 2 * (k64 + 1)),
            asymptotic: false,
        },
        unordered: Pow2Bound {
            coefficient: k as f64 / (std::f64::consts::E * std::f64::consts::SQRT_2),
            exponent: Ratio::new(k64, 2),
            asymptotic: true,
        },
    }
}

/// Deflate-compressed length of the packed bit string, in bits. An upper
/// bound on description length for reporting only.
pub fn compressor_proxy(bits: &EdgeBitString) -> u64 {
    let mut packed = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.bits().iter().enumerate() {
        if b {
            packed[i / 8] |= 0x80 >> (i % 8);
        }
    }
    let mut enc = DeflateEncoder::new(Vec::new(), Compression::best());
    enc.write_all(&packed).expect("in-memory write");
    8 * enc.finish().expect("in-memory write").len() as u64
}
