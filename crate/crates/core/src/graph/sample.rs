use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{choose2, EdgeBitString, LabeledGraph};
use crate::error::{Error, Result};

const TWO_POW_53: f64 = (1u64 << 53) as f64;

/// Samples `G(n, p)`.
///
/// The mapping from `(n, p, seed)` to a graph is fixed: a ChaCha8 stream is
/// seeded with `ChaCha8Rng::seed_from_u64(seed)`, one `next_u64` is drawn
/// per vertex pair in canonical bit-string order, and the pair is an edge
/// iff the top 53 bits of that draw, read as an integer `x`, satisfy
/// `x < p * 2^53`. `p = 0` gives the empty graph and `p = 1` the complete
/// graph for every seed.
pub fn gnp_sample(n: usize, p: f64, seed: u64) -> Result<LabeledGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cut = p * TWO_POW_53;
    let bits: Vec<bool> = (0..choose2(n))
        .map(|_| ((rng.next_u64() >> 11) as f64) < cut)
        .collect();
    Ok(EdgeBitString::new(n, bits)?.decode())
}

/// Rejection sampling of `G(n, p)` conditioned on `accept`.
///
/// Attempt `t` uses seed `derive_seed(seed, t)`. Gives up with
/// [`Error::LimitExceeded`] after `max_attempts` rejections.
pub fn gnp_sample_where<F>(n: usize, p: f64, seed: u64, max_attempts: usize, accept: F) -> Result<LabeledGraph>
where
    F: Fn(&LabeledGraph) -> bool,
{
    for attempt in 0..max_attempts {
        let g = gnp_sample(n, p, derive_seed(seed, attempt as u64))?;
        if accept(&g) {
            return Ok(g);
        }
    }
    Err(Error::LimitExceeded {
        what: "rejection-sampling attempts",
        value: max_attempts as u128 + 1,
        limit: max_attempts as u128,
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-cell seed derivation: `splitmix64(master ^ splitmix64(index))`.
///
/// Every trial, sweep cell or rejection attempt draws its own seed from the
/// master seed and its index, so any cell can be rerun in isolation.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}
