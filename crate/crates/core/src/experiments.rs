//! Sampling experiments over `G(n, 1/2)`: occurrence counts against their
//! expectations, codec gains against the closed-form thresholds, and
//! close-knit structure against diffusion times.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::closeknit::{self, fmt_ratio, Rational};
use crate::diffusion::{self, CoordinationGame, DiffusionConfig};
use crate::error::{Error, Result};
use crate::graph::{choose2, derive_seed, gnp_sample, LabeledGraph, VertexSubset};
use crate::mdl::{self, rank::binomial};
use crate::ramsey::{contains_induced, find_induced_occurrences, with_jobs};
use crate::sierpinski;

pub const MAX_AUT_VERTICES: usize = 10;

/// Order of the automorphism group, by exhaustive search over vertex maps
/// that preserve adjacency with the already mapped prefix.
pub fn aut_count(h: &LabeledGraph) -> Result<u64> {
    let k = h.n();
    if k > MAX_AUT_VERTICES {
        return Err(Error::LimitExceeded {
            what: "pattern vertex count for automorphism counting",
            value: k as u128,
            limit: MAX_AUT_VERTICES as u128,
        });
    }
    fn count(h: &LabeledGraph, v: usize, map: &mut Vec<usize>, used: &mut [bool]) -> u64 {
        if v > h.n() {
            return 1;
        }
        let mut total = 0;
        for w in 1..=h.n() {
            if used[w] || h.degree(w) != h.degree(v) {
                continue;
            }
            if (1..v).all(|u| h.has_edge(u, v) == h.has_edge(map[u - 1], w)) {
                used[w] = true;
                map.push(w);
                total += count(h, v + 1, map, used);
                map.pop();
                used[w] = false;
            }
        }
        total
    }
    Ok(count(h, 1, &mut Vec::with_capacity(k), &mut vec![false; k + 1]))
}

fn ser_big_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Expected occurrence counts in `G(n, 1/2)`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct MomentReport {
    pub n: usize,
    pub k: usize,
    pub aut_count: u64,
    /// `C(n,k) 2^-C(k,2)`: subsets whose rank-relabelled induced subgraph
    /// equals `H` exactly.
    #[serde(serialize_with = "ser_big_ratio")]
    pub expected_labelled: BigRational,
    /// `C(n,k) (k!/|Aut H|) 2^-C(k,2)`: subsets inducing a copy of `H`.
    #[serde(serialize_with = "ser_big_ratio")]
    pub expected_isomorphic: BigRational,
    pub expected_isomorphic_f64: f64,
}

pub fn expected_occurrences(n: usize, h: &LabeledGraph) -> Result<MomentReport> {
    let k = h.n();
    let aut = aut_count(h)?;
    let subsets = BigInt::from(binomial(n as u64, k as u64));
    let denom = BigInt::from(BigUint::one() << choose2(k));
    let labelled = BigRational::new(subsets, denom);
    let labellings = BigRational::new(
        BigInt::from(mdl::rank::factorial(k as u64)),
        BigInt::from(aut),
    );
    let iso = &labelled * labellings;
    Ok(MomentReport {
        n,
        k,
        aut_count: aut,
        expected_isomorphic_f64: ratio_f64(&iso),
        expected_labelled: labelled,
        expected_isomorphic: iso,
    })
}

/// Overwrites the pairs inside `s` so that `s` becomes an ordered
/// occurrence of `h`: the `j`-th smallest member of `s` plays vertex `j`.
pub fn plant_occurrence(g: &LabeledGraph, h: &LabeledGraph, s: &VertexSubset) -> Result<LabeledGraph> {
    if s.len() != h.n() {
        return Err(Error::SizeMismatch {
            what: "planting subset size vs pattern vertex count",
            expected: h.n(),
            actual: s.len(),
        });
    }
    s.check_within(g.n())?;
    let mut out = g.clone();
    let m = s.members();
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            out.set_edge(m[a], m[b], h.has_edge(a + 1, b + 1));
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ContainmentReport {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// Sample mean of the number of vertex sets inducing a copy of `H`.
    pub mean: f64,
    /// Unbiased sample variance of the same counts.
    pub variance: f64,
    /// Fraction of samples with at least one copy.
    pub frequency: f64,
    pub expected: f64,
}

/// Counts induced copies of `h` in `trials` samples of `G(n, 1/2)`, sample
/// `i` drawn with seed `derive_seed(seed, i)`.
pub fn containment_experiment(n: usize, h: &LabeledGraph, trials: usize, seed: u64, jobs: usize) -> Result<ContainmentReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let expected = expected_occurrences(n, h)?.expected_isomorphic_f64;
    let counts = with_jobs(jobs, || {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let g = gnp_sample(n, 0.5, derive_seed(seed, i as u64))?;
                Ok(find_induced_occurrences(&g, h, usize::MAX)?.len() as f64)
            })
            .collect::<Result<Vec<f64>>>()
    })??;
    let mean = counts.iter().sum::<f64>() / trials as f64;
    let variance = if trials > 1 {
        counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    Ok(ContainmentReport {
        n,
        k: h.n(),
        trials,
        seed,
        mean,
        variance,
        frequency: counts.iter().filter(|&&c| c > 0.0).count() as f64 / trials as f64,
        expected,
    })
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SweepRow {
    pub level: u32,
    pub k: usize,
    pub n: usize,
    pub gain: i64,
    pub ordered_bound: f64,
    pub slack_bound: f64,
    /// Fraction of samples containing an induced copy of `S_level`;
    /// `None` when the cell was over the sampling budget.
    pub containment: Option<f64>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SweepParams {
    pub levels: Vec<u32>,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Cells with `C(n, k)` above this are not sampled.
    pub sample_budget: u64,
}

/// Seed of sweep cell `(level, n)`, independent of the other cells.
pub fn cell_seed(master: u64, level: u32, n: usize) -> u64 {
    derive_seed(derive_seed(master, level as u64), n as u64)
}

pub fn threshold_sweep(params: &SweepParams, jobs: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &level in &params.levels {
        let h = sierpinski::build(level)?.into_graph();
        let k = h.n();
        let bounds = mdl::asymptotic_bounds(k);
        for &n in &params.n_values {
            let containment = if n < k {
                Some(0.0)
            } else if binomial(n as u64, k as u64) > BigUint::from(params.sample_budget) || params.trials == 0 {
                None
            } else {
                let seed = cell_seed(params.seed, level, n);
                let hits = with_jobs(jobs, || {
                    (0..params.trials)
                        .into_par_iter()
                        .map(|i| contains_induced(&gnp_sample(n, 0.5, derive_seed(seed, i as u64))?, &h))
                        .collect::<Result<Vec<bool>>>()
                })??;
                Some(hits.iter().filter(|&&b| b).count() as f64 / params.trials as f64)
            };
            rows.push(SweepRow {
                level,
                k,
                n,
                gain: if n >= k { mdl::gain(n, k, true) } else { 0 },
                ordered_bound: bounds.ordered.value(),
                slack_bound: bounds.ordered_slack.value(),
                containment,
            });
        }
    }
    Ok(rows)
}

/// SHA-256 of the canonical JSON form of `config`, hex encoded.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let json = serde_json::to_vec(config).expect("config serializes");
    hex::encode(Sha256::digest(json))
}

/// `# key: value` metadata lines for CSV output.
pub fn csv_metadata<T: Serialize>(kind: &str, config: &T, seed: u64) -> String {
    format!(
        "# kind: {kind}\n# config_sha256: {}\n# master_seed: {seed}\n# version: {} {}\n",
        config_hash(config),
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION")
    )
}

pub fn sweep_csv(params: &SweepParams, rows: &[SweepRow]) -> String {
    let mut out = csv_metadata("threshold_sweep", params, params.seed);
    out.push_str("level,k,n,gain,ordered_bound,slack_bound,containment\n");
    for r in rows {
        let c = r.containment.map_or_else(String::new, |c| format!("{c}"));
        let _ = writeln!(out, "{},{},{},{},{:.6},{:.6},{c}", r.level, r.k, r.n, r.gain, r.ordered_bound, r.slack_bound);
    }
    out
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct LinkParams {
    pub levels: Vec<u32>,
    pub game: CoordinationGame,
    pub epsilon: f64,
    /// Horizon is `horizon_factor * n_l` revisions.
    pub horizon_factor: u64,
    pub trials: usize,
    pub seed: u64,
    pub k_cap: usize,
    /// Start from every vertex playing `A` instead of the first elementary
    /// triangle.
    pub init_all: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct LinkRow {
    pub level: u32,
    pub n: usize,
    #[serde(serialize_with = "ser_rational")]
    pub r_star: Rational,
    /// Smallest `k` for which `S_level` is `(r*, k)`-close-knit, if at most
    /// `k_cap`.
    pub min_k: Option<usize>,
    pub median: Option<u64>,
    pub success_rate: f64,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

/// Per level: the close-knit size at `r*` and diffusion statistics from the
/// first elementary triangle.
pub fn closeknit_diffusion_link(params: &LinkParams, jobs: usize) -> Result<Vec<LinkRow>> {
    let r_star = diffusion::risk_threshold(&params.game)?;
    params
        .levels
        .iter()
        .map(|&level| {
            let s = sierpinski::build(level)?;
            let g = s.graph();
            let n = g.n();
            let init = if params.init_all {
                VertexSubset::full(n)
            } else {
                s.subgaskets(1)?.swap_remove(0)
            };
            let config = DiffusionConfig {
                epsilon: params.epsilon,
                ..DiffusionConfig::new(init, params.horizon_factor * n as u64, derive_seed(params.seed, level as u64))
            };
            let stats = diffusion::hitting_time_stats(g, &params.game, &config, params.trials, jobs)?;
            Ok(LinkRow {
                level,
                n,
                r_star,
                min_k: closeknit::minimal_k(g, r_star, params.k_cap)?,
                median: stats.median,
                success_rate: stats.success_rate,
            })
        })
        .collect()
}

pub fn link_csv(params: &LinkParams, rows: &[LinkRow]) -> String {
    let mut out = csv_metadata("closeknit_diffusion_link", params, params.seed);
    out.push_str("level,n,r_star,min_k,median_hitting_time,success_rate\n");
    for r in rows {
        let k = r.min_k.map_or_else(String::new, |k| k.to_string());
        let m = r.median.map_or_else(String::new, |m| m.to_string());
        let _ = writeln!(out, "{},{},{},{k},{m},{}", r.level, r.n, fmt_ratio(&r.r_star), r.success_rate);
    }
    out
}
