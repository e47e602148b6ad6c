//! Noisy best-response dynamics of a 2×2 coordination game on a graph.
//!
//! Each revision picks one vertex. With probability `1 - ε` it adopts `A`
//! iff at least an `r*` fraction of its neighbours play `A` (ties adopt
//! `A`); with probability `ε` it picks a strategy uniformly at random.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::closeknit::{fmt_ratio, Rational};
use crate::error::{Error, Result};
use crate::graph::{derive_seed, LabeledGraph, VertexSubset};
use crate::ramsey::with_jobs;

/// Symmetric coordination game, row player's payoffs: `a` for (A, A), `c`
/// for (A, B), `d` for (B, A), `b` for (B, B).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CoordinationGame {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl CoordinationGame {
    /// Requires both all-`A` and all-`B` to be strict equilibria.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a <= d || b <= c {
            return Err(Error::DegenerateGame { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn r_star(&self) -> Result<Rational> {
        risk_threshold(self)
    }
}

/// `(b - c) / ((a - d) + (b - c))`, the neighbour fraction at which `A` and
/// `B` earn the same. `A` is risk-dominant iff this is below `1/2`.
pub fn risk_threshold(game: &CoordinationGame) -> Result<Rational> {
    let CoordinationGame { a, b, c, d } = *game;
    if a <= d || b <= c {
        return Err(Error::DegenerateGame { a, b, c, d });
    }
    let num = (b - c) as u64;
    Ok(Rational::new(num, (a - d) as u64 + num))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Strategy {
    A,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    /// Revision `t` (from 1) revises vertex `((t - 1) mod n) + 1`.
    RoundRobin,
    /// Each revision revises a uniformly random vertex.
    UniformRandom,
}

impl FromStr for Schedule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "round-robin" => Ok(Self::RoundRobin),
            "uniform-random" | "uniform" => Ok(Self::UniformRandom),
            other => Err(Error::Parse(format!("unknown schedule {other:?} (expected round-robin or uniform-random)"))),
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::RoundRobin => "round-robin",
            Self::UniformRandom => "uniform-random",
        })
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct DiffusionConfig {
    pub epsilon: f64,
    pub init: VertexSubset,
    /// Maximum number of revisions.
    pub horizon: u64,
    pub seed: u64,
    pub schedule: Schedule,
    /// Adoption fraction that counts as success.
    pub target: f64,
}

impl DiffusionConfig {
    pub fn new(init: VertexSubset, horizon: u64, seed: u64) -> Self {
        Self {
            epsilon: 0.0,
            init,
            horizon,
            seed,
            schedule: Schedule::UniformRandom,
            target: 0.99,
        }
    }

    fn validate(&self, g: &LabeledGraph) -> Result<()> {
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::InvalidArgument(format!("noise epsilon must lie in [0, 1), got {}", self.epsilon)));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be positive".into()));
        }
        if !(self.target > 0.0 && self.target <= 1.0) {
            return Err(Error::InvalidArgument(format!("target fraction must lie in (0, 1], got {}", self.target)));
        }
        self.init.check_within(g.n())?;
        if let Some(v) = g.isolated_vertices().next() {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(())
    }

    /// Smallest adopter count reaching `target`.
    fn target_count(&self, n: usize) -> usize {
        ((self.target * n as f64).ceil() as usize).clamp(1, n.max(1))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffusionState {
    /// `strategy[v - 1]`.
    pub strategy: Vec<Strategy>,
    pub t: u64,
}

impl DiffusionState {
    pub fn new(n: usize, init: &VertexSubset) -> Self {
        let mut strategy = vec![Strategy::B; n];
        for &v in init.members() {
            strategy[v - 1] = Strategy::A;
        }
        Self { strategy, t: 0 }
    }

    pub fn adopters(&self) -> usize {
        self.strategy.iter().filter(|&&s| s == Strategy::A).count()
    }
}

/// Best response of `v` against its neighbourhood, ties adopting `A`.
pub fn best_response(state: &DiffusionState, v: usize, g: &LabeledGraph, r_star: Rational) -> Result<Strategy> {
    let deg = g.degree(v);
    if deg == 0 {
        return Err(Error::IsolatedVertex(v));
    }
    let a = g.neighbors(v).iter().filter(|&&u| state.strategy[u - 1] == Strategy::A).count() as u64;
    // a / deg >= p / q
    Ok(if a * r_star.denom() >= r_star.numer() * deg as u64 {
        Strategy::A
    } else {
        Strategy::B
    })
}

/// One revision of `v`. Draws one `f64` for the noise test when `ε > 0`,
/// and one more `bool` when noise fires.
pub fn revise<R: Rng>(
    state: &mut DiffusionState,
    v: usize,
    g: &LabeledGraph,
    r_star: Rational,
    epsilon: f64,
    rng: &mut R,
) -> Result<()> {
    let next = if epsilon > 0.0 && rng.random::<f64>() < epsilon {
        if rng.random::<bool>() {
            Strategy::A
        } else {
            Strategy::B
        }
    } else {
        best_response(state, v, g, r_star)?
    };
    state.strategy[v - 1] = next;
    state.t += 1;
    Ok(())
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Trace {
    pub n: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub r_star: Rational,
    /// `adopter_counts[t]` after `t` revisions; empty unless recorded.
    #[serde(skip)]
    pub adopter_counts: Vec<usize>,
    pub revisions: u64,
    pub final_adopters: usize,
    /// First revision count at which every vertex plays `A`.
    pub hit_all: Option<u64>,
    /// First revision count at which the target fraction plays `A`.
    pub hit_target: Option<u64>,
}

fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(r))
}

impl Trace {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("revision,adopter_count\n");
        for (t, c) in self.adopter_counts.iter().enumerate() {
            out.push_str(&format!("{t},{c}\n"));
        }
        out
    }
}

/// Runs the dynamics for up to `config.horizon` revisions. Without noise,
/// the run stops early once all-`A` or all-`B` is reached, since both are
/// absorbing.
pub fn run(g: &LabeledGraph, game: &CoordinationGame, config: &DiffusionConfig) -> Result<Trace> {
    simulate(g, game, config, true)
}

fn simulate(g: &LabeledGraph, game: &CoordinationGame, config: &DiffusionConfig, record: bool) -> Result<Trace> {
    config.validate(g)?;
    let r_star = risk_threshold(game)?;
    let n = g.n();
    let goal = config.target_count(n);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = DiffusionState::new(n, &config.init);
    let mut count = state.adopters();
    let mut counts = Vec::new();
    if record {
        counts.push(count);
    }
    let mut hit_all = (count == n).then_some(0);
    let mut hit_target = (count >= goal).then_some(0);
    while state.t < config.horizon {
        if config.epsilon == 0.0 && (count == 0 || count == n) {
            break;
        }
        let v = match config.schedule {
            Schedule::RoundRobin => (state.t as usize % n) + 1,
            Schedule::UniformRandom => rng.random_range(1..=n),
        };
        let before = state.strategy[v - 1];
        revise(&mut state, v, g, r_star, config.epsilon, &mut rng)?;
        match (before, state.strategy[v - 1]) {
            (Strategy::B, Strategy::A) => count += 1,
            (Strategy::A, Strategy::B) => count -= 1,
            _ => {}
        }
        if record {
            counts.push(count);
        }
        if count == n && hit_all.is_none() {
            hit_all = Some(state.t);
        }
        if count >= goal && hit_target.is_none() {
            hit_target = Some(state.t);
        }
    }
    Ok(Trace {
        n,
        r_star,
        adopter_counts: counts,
        revisions: state.t,
        final_adopters: count,
        hit_all,
        hit_target,
    })
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct HittingStats {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Nearest-rank quantiles of the time to reach the target fraction,
    /// with failed trials counted as infinitely late; `None` when the rank
    /// falls on a failed trial.
    pub q1: Option<u64>,
    pub median: Option<u64>,
    pub q3: Option<u64>,
    /// Hitting time of each trial, in trial order.
    pub times: Vec<Option<u64>>,
}

/// Runs `trials` independent copies, trial `i` seeded with
/// `derive_seed(config.seed, i)`.
pub fn hitting_time_stats(
    g: &LabeledGraph,
    game: &CoordinationGame,
    config: &DiffusionConfig,
    trials: usize,
    jobs: usize,
) -> Result<HittingStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    config.validate(g)?;
    let times = with_jobs(jobs, || {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let cfg = DiffusionConfig {
                    seed: derive_seed(config.seed, i as u64),
                    ..config.clone()
                };
                simulate(g, game, &cfg, false).map(|t| t.hit_target)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let mut sorted: Vec<u64> = times.iter().map(|t| t.unwrap_or(u64::MAX)).collect();
    sorted.sort_unstable();
    let quantile = |p: f64| {
        let rank = ((p * trials as f64).ceil() as usize).max(1);
        Some(sorted[rank - 1]).filter(|&x| x != u64::MAX)
    };
    let successes = times.iter().filter(|t| t.is_some()).count();
    Ok(HittingStats {
        trials,
        successes,
        success_rate: successes as f64 / trials as f64,
        q1: quantile(0.25),
        median: quantile(0.5),
        q3: quantile(0.75),
        times,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sierpinski;

    fn game(a: i64, b: i64, c: i64, d: i64) -> CoordinationGame {
        CoordinationGame::new(a, b, c, d).unwrap()
    }

    fn round_robin(init: VertexSubset, horizon: u64) -> DiffusionConfig {
        DiffusionConfig {
            schedule: Schedule::RoundRobin,
            ..DiffusionConfig::new(init, horizon, 0)
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(game(2, 1, 0, 0).r_star().unwrap(), Rational::new(1, 3));
        assert_eq!(game(1, 1, 0, 0).r_star().unwrap(), Rational::new(1, 2));
        assert_eq!(game(3, 1, 0, 0).r_star().unwrap(), Rational::new(1, 4));
        assert!(matches!(CoordinationGame::new(0, 1, 0, 0), Err(Error::DegenerateGame { .. })));
        assert!(CoordinationGame::new(2, 1, 1, 0).is_err());
    }

    #[test]
    fn best_response_cases() {
        let g = LabeledGraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let r = Rational::new(1, 3);
        let all = DiffusionState::new(4, &VertexSubset::range(2, 4));
        assert_eq!(best_response(&all, 1, &g, r).unwrap(), Strategy::A);
        let none = DiffusionState::new(4, &VertexSubset::full(0));
        assert_eq!(best_response(&none, 1, &g, r).unwrap(), Strategy::B);
        let one = DiffusionState::new(4, &VertexSubset::new(vec![2]).unwrap());
        assert_eq!(best_response(&one, 1, &g, r).unwrap(), Strategy::A);
        assert_eq!(best_response(&one, 1, &g, Rational::new(1, 2)).unwrap(), Strategy::B);
        let lonely = LabeledGraph::empty(2);
        assert!(matches!(best_response(&none, 1, &lonely, r), Err(Error::IsolatedVertex(1))));
    }

    #[test]
    fn top_triangle_of_s2_spreads_in_one_sweep() {
        let s2 = sierpinski::build(2).unwrap().into_graph();
        let trace = run(&s2, &game(2, 1, 0, 0), &round_robin(VertexSubset::range(1, 3), 6)).unwrap();
        assert_eq!(trace.adopter_counts, vec![3, 3, 3, 3, 4, 5, 6]);
        assert_eq!(trace.hit_all, Some(6));
    }

    #[test]
    fn absorbing_states() {
        let s2 = sierpinski::build(2).unwrap().into_graph();
        let g = game(2, 1, 0, 0);
        let none = run(&s2, &g, &round_robin(VertexSubset::full(0), 100)).unwrap();
        assert_eq!((none.hit_all, none.final_adopters), (None, 0));
        let all = run(&s2, &g, &round_robin(VertexSubset::full(6), 100)).unwrap();
        assert_eq!(all.hit_all, Some(0));
        assert_eq!(all.revisions, 0);
    }

    #[test]
    fn majority_on_k8() {
        let k8 = LabeledGraph::complete(8);
        let trace = run(&k8, &game(2, 1, 0, 0), &round_robin(VertexSubset::range(1, 5), 100)).unwrap();
        assert!(trace.hit_all.unwrap() <= 8);
        let stats = hitting_time_stats(&k8, &game(2, 1, 0, 0), &DiffusionConfig::new(VertexSubset::range(1, 5), 200, 1), 50, 0).unwrap();
        assert_eq!(stats.success_rate, 1.0);
    }

    #[test]
    fn deterministic_contagion_from_any_triangle_at_quarter_threshold() {
        let g = game(3, 1, 0, 0);
        for l in 1..=4 {
            let s = sierpinski::build(l).unwrap();
            let n = s.graph().n();
            for tri in s.subgaskets(1).unwrap() {
                let trace = run(s.graph(), &g, &round_robin(tri, (n * n) as u64)).unwrap();
                let sweeps: Vec<usize> = trace.adopter_counts.iter().step_by(n).copied().collect();
                assert!(sweeps.windows(2).all(|w| w[0] <= w[1]));
                assert!(trace.hit_all.is_some(), "level {l}");
            }
        }
    }

    #[test]
    fn third_threshold_stalls_at_subgasket_joints() {
        // a degree-4 neighbour of a joint sees one adopter out of four
        let s3 = sierpinski::build(3).unwrap();
        let trace = run(s3.graph(), &game(2, 1, 0, 0), &round_robin(VertexSubset::range(1, 3), 1000)).unwrap();
        assert_eq!(trace.final_adopters, 6);
    }

    #[test]
    fn seeded_runs_repeat_and_ignore_payoff_scale() {
        let s3 = sierpinski::build(3).unwrap().into_graph();
        let cfg = DiffusionConfig {
            epsilon: 0.05,
            ..DiffusionConfig::new(VertexSubset::range(1, 3), 2000, 9)
        };
        let a = run(&s3, &game(2, 1, 0, 0), &cfg).unwrap();
        assert_eq!(a, run(&s3, &game(2, 1, 0, 0), &cfg).unwrap());
        assert_eq!(a.adopter_counts, run(&s3, &game(14, 7, 0, 0), &cfg).unwrap().adopter_counts);
        let s1 = hitting_time_stats(&s3, &game(2, 1, 0, 0), &cfg, 20, 1).unwrap();
        let s4 = hitting_time_stats(&s3, &game(2, 1, 0, 0), &cfg, 20, 4).unwrap();
        assert_eq!(s1, s4);
    }

    #[test]
    fn empty_start_never_succeeds() {
        let s2 = sierpinski::build(2).unwrap().into_graph();
        let stats = hitting_time_stats(&s2, &game(2, 1, 0, 0), &DiffusionConfig::new(VertexSubset::full(0), 500, 3), 10, 0).unwrap();
        assert_eq!(stats.success_rate, 0.0);
        assert_eq!(stats.median, None);
    }

    #[test]
    fn csv_trace() {
        let k3 = LabeledGraph::complete(3);
        let trace = run(&k3, &game(2, 1, 0, 0), &round_robin(VertexSubset::range(1, 2), 10)).unwrap();
        assert_eq!(trace.to_csv(), "revision,adopter_count\n0,2\n1,2\n2,2\n3,3\n");
    }
}
