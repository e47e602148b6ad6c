//! Command-line front end.
//!
//! Exit codes: `0` success, `1` domain error (a precondition of the
//! library was violated), `2` usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closeknit::{self, parse_ratio};
use crate::diffusion::{self, CoordinationGame, DiffusionConfig, Schedule};
use crate::error::{Error, Result};
use crate::experiments::{self, config_hash, LinkParams, SweepParams};
use crate::graph::io::{parse_graph, write_graph, GraphFormat};
use crate::graph::{gnp_sample, EdgeBitString, LabeledGraph, VertexSubset};
use crate::mdl::{self, AltEncoding, Generator, Occurrence, SideInfo};
use crate::ramsey::{self, SplitMode};
use crate::sierpinski;

#[derive(Parser, Debug, Serialize)]
#[command(name = "gasket", version, about = "Sierpinski graphs, close-knit groups, two-part graph codes and induced Ramsey checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct Global {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Graph output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Number of independent trials for sampling commands.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Split mode for `ramsey split`, schedule for `diffuse`.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Worker threads (0 = all cores). Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    #[serde(skip)]
    pub jobs: usize,
    /// Also write a JSON run manifest here.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Graph6,
    Json,
    Dot,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => GraphFormat::Graph6,
            FormatArg::Json => GraphFormat::Json,
            FormatArg::Dot => GraphFormat::Dot,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Fast,
    ProofFaithful,
    RoundRobin,
    UniformRandom,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate graphs.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Encode a graph as a canonical or two-part bit string.
    #[command(subcommand)]
    Encode(EncodeCmd),
    /// Decode canonical or two-part encodings.
    #[command(subcommand)]
    Decode(DecodeCmd),
    /// Close-knit ratios and certificates.
    #[command(subcommand)]
    Closeknit(CloseknitCmd),
    /// Induced occurrences, 2-colouring checks, union splitting, bounds.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Coordination-game diffusion.
    #[command(subcommand)]
    Diffuse(DiffuseCmd),
    /// Sampling experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenCmd {
    /// Sierpinski graph S_l.
    Sierpinski {
        #[arg(long)]
        level: u32,
        /// Emit lattice coordinates as JSON instead of the graph.
        #[arg(long)]
        coords: bool,
        #[arg(long, default_value_t = sierpinski::DEFAULT_MAX_LEVEL)]
        max_level: u32,
    },
    /// G(n, p) sample.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Overwrite the pairs inside a vertex set with a pattern.
    Plant {
        /// Host graph: file (graph6 or JSON) or shorthand such as K6, S2, P3, C5, E4.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
        /// Comma-separated vertex set; its j-th smallest member plays pattern vertex j.
        #[arg(long)]
        occ: String,
    },
    /// Named shorthand graph (K6, S3, P4, C5, E3).
    Named {
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncodeCmd {
    /// The C(n,2)-bit canonical string.
    Canonical {
        #[arg(long)]
        graph: String,
    },
    /// Two-part encoding around an induced occurrence of a generated pattern.
    Alt {
        #[arg(long)]
        graph: String,
        /// Host vertices in pattern-role order (sorted = rank order).
        #[arg(long)]
        occ: String,
        /// Generator id, e.g. sierpinski:2 or complete:4.
        #[arg(long = "gen")]
        generator: String,
        /// Do not store the vertex ordering.
        #[arg(long)]
        unordered: bool,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeCmd {
    Canonical {
        /// '0'/'1' string of length C(n,2).
        #[arg(long)]
        bits: String,
        #[arg(long)]
        n: Option<usize>,
    },
    Alt {
        /// File written by `encode alt --out`.
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CloseknitCmd {
    /// Close-knit ratio of one group.
    Ratio {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        group: String,
    },
    /// Check (r, k)-close-knittedness and print a certificate or failure.
    Certify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        k: usize,
    },
    /// Smallest k for which the graph is (r, k)-close-knit.
    MinK {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 8)]
        k_cap: usize,
    },
    /// Smallest k for S_1..S_max_level.
    Scan {
        #[arg(long)]
        max_level: u32,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 8)]
        k_cap: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RamseyCmd {
    /// Vertex sets inducing a copy of the pattern.
    Occurrences {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Exhaustive check that every 2-colouring has a monochromatic induced copy.
    HostCheck {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// First verified host in a candidate list.
    Oracle {
        #[arg(long)]
        pattern: String,
        /// Comma-separated candidate hosts in search order.
        #[arg(long)]
        hosts: String,
    },
    /// Disjoint union G1 ⊔ G2.
    Union {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Recover the pattern-free and host parts of a disjoint union.
    Split {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        pattern: String,
    },
    /// Closed-form Ramsey-type bounds for a pattern.
    Bounds {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        cd: f64,
    },
    /// Largest Sierpinski level with n^cd >= 2^((n-1)/2).
    MaxLevel {
        /// Rational constant, e.g. 3 or 5/2.
        #[arg(long)]
        cd: String,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct GameArgs {
    /// Payoff of (A, A).
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub a: i64,
    /// Payoff of (B, B).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub b: i64,
    /// Payoff of (A, B).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub c: i64,
    /// Payoff of (B, A).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub d: i64,
}

impl GameArgs {
    fn game(&self) -> Result<CoordinationGame> {
        CoordinationGame::new(self.a, self.b, self.c, self.d)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct DiffuseArgs {
    #[arg(long)]
    pub graph: String,
    /// Initial adopters: comma list, `all` or `none`.
    #[arg(long)]
    pub init: String,
    #[command(flatten)]
    pub game: GameArgs,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Revision budget; default 200 n.
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long, default_value_t = 0.99)]
    pub target: f64,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiffuseCmd {
    /// One seeded run.
    Run {
        #[command(flatten)]
        args: DiffuseArgs,
        /// Emit the adoption trace as CSV instead of the JSON summary.
        #[arg(long)]
        csv: bool,
    },
    /// Hitting-time statistics over independent trials.
    Stats {
        #[command(flatten)]
        args: DiffuseArgs,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentCmd {
    /// Expected occurrence counts in G(n, 1/2).
    Moment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
    },
    /// Sampled occurrence counts in G(n, 1/2).
    Containment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
    },
    /// Codec gain, closed-form bounds and sampled containment per (level, n).
    Sweep {
        /// Sierpinski levels, e.g. 1,2,3 or 1..3.
        #[arg(long)]
        levels: String,
        /// Host sizes, e.g. 2..20 or 7,16,128.
        #[arg(long)]
        n_values: String,
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Close-knit size versus diffusion time across levels.
    Link {
        #[arg(long)]
        levels: String,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = 0.02)]
        epsilon: f64,
        #[arg(long, default_value_t = 200)]
        horizon_factor: u64,
        #[arg(long, default_value_t = 6)]
        k_cap: usize,
        #[arg(long)]
        init_all: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Everything needed to reproduce a run. Contains no timestamps and no
/// worker count, so repeated runs produce identical manifests.
#[derive(Serialize, Debug)]
pub struct RunManifest<'a> {
    pub subcommand: String,
    pub parameters: &'a Cli,
    pub master_seed: u64,
    pub versions: Versions,
    pub outputs: Vec<String>,
    pub config_sha256: String,
}

#[derive(Serialize, Debug)]
pub struct Versions {
    pub gasket: &'static str,
}

/// Resolves a graph argument: a shorthand (`K6`, `S3`, `P4`, `C5`, `E3`)
/// or a path to a graph6 / JSON edge-list file.
pub fn resolve_graph(spec: &str) -> Result<LabeledGraph> {
    if let Some(g) = shorthand(spec)? {
        return Ok(g);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Io(format!(
            "{spec:?} is neither a graph file nor a shorthand (K<n>, S<l>, P<n>, C<n>, E<n>)"
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
    parse_graph(&text)
}

fn shorthand(spec: &str) -> Result<Option<LabeledGraph>> {
    let mut chars = spec.chars();
    let (Some(kind), rest) = (chars.next(), chars.as_str()) else {
        return Ok(None);
    };
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let k: usize = rest.parse().map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    Ok(Some(match kind {
        'K' => LabeledGraph::complete(k),
        'E' => LabeledGraph::empty(k),
        'P' => LabeledGraph::path(k),
        'C' => LabeledGraph::cycle(k)?,
        'S' => sierpinski::build(k as u32)?.into_graph(),
        _ => return Ok(None),
    }))
}

/// Parses `"1,2,5"` or an inclusive range `"2..20"`.
pub fn parse_list<T>(text: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr + Copy + Into<u64> + TryFrom<u64>,
    T::Err: std::fmt::Display,
{
    let bad = |t: &str| Error::Parse(format!("bad list entry {t:?} in {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: T = lo.trim().parse().map_err(|_| bad(part))?;
            let hi: T = hi.trim().parse().map_err(|_| bad(part))?;
            for x in lo.into()..=hi.into() {
                out.push(T::try_from(x).map_err(|_| bad(part))?);
            }
        } else {
            out.push(part.parse().map_err(|_| bad(part))?);
        }
    }
    Ok(out)
}

fn subset_arg(text: &str, n: usize) -> Result<VertexSubset> {
    match text.trim() {
        "all" => Ok(VertexSubset::full(n)),
        "none" | "" => Ok(VertexSubset::full(0)),
        t => {
            let s = VertexSubset::parse(t)?;
            s.check_within(n)?;
            Ok(s)
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

impl Cli {
    fn graph_format(&self, default: GraphFormat) -> GraphFormat {
        self.global.format.map_or(default, Into::into)
    }

    fn trials(&self, default: usize) -> usize {
        self.global.trials.unwrap_or(default)
    }

    fn subcommand_name(&self) -> String {
        let value = serde_json::to_value(&self.command).expect("command serializes");
        let mut name = Vec::new();
        let mut cur = &value;
        while let Some((k, v)) = cur.as_object().and_then(|o| o.iter().next()) {
            name.push(k.clone());
            cur = v;
            if !v.is_object() || v.as_object().is_some_and(|o| o.len() != 1) {
                break;
            }
        }
        name.join(" ")
    }

    fn schedule(&self) -> Result<Schedule> {
        match self.global.mode {
            None | Some(ModeArg::UniformRandom) => Ok(Schedule::UniformRandom),
            Some(ModeArg::RoundRobin) => Ok(Schedule::RoundRobin),
            Some(m) => Err(Error::InvalidArgument(format!("--mode {m:?} is not a diffusion schedule"))),
        }
    }

    fn split_mode(&self) -> Result<SplitMode> {
        match self.global.mode {
            None | Some(ModeArg::Fast) => Ok(SplitMode::Fast),
            Some(ModeArg::ProofFaithful) => Ok(SplitMode::ProofFaithful),
            Some(m) => Err(Error::InvalidArgument(format!("--mode {m:?} is not a split mode"))),
        }
    }

    /// Runs the command and returns its primary output. `encode alt`
    /// writes the binary encoding to `--out` itself and returns its report.
    pub fn execute(&self) -> Result<Vec<u8>> {
        let seed = self.global.seed;
        let jobs = self.global.jobs;
        match &self.command {
            Command::Gen(cmd) => match cmd {
                GenCmd::Sierpinski { level, coords, max_level } => {
                    let s = sierpinski::build_with_max(*level, *max_level)?;
                    if *coords {
                        json(&s.coords_json())
                    } else {
                        Ok(write_graph(s.graph(), self.graph_format(GraphFormat::Graph6)).into_bytes())
                    }
                }
                GenCmd::Gnp { n, p } => Ok(write_graph(&gnp_sample(*n, *p, seed)?, self.graph_format(GraphFormat::Graph6)).into_bytes()),
                GenCmd::Plant { graph, pattern, occ } => {
                    let g = resolve_graph(graph)?;
                    let s = subset_arg(occ, g.n())?;
                    let planted = experiments::plant_occurrence(&g, &resolve_graph(pattern)?, &s)?;
                    Ok(write_graph(&planted, self.graph_format(GraphFormat::Graph6)).into_bytes())
                }
                GenCmd::Named { name } => {
                    let g = shorthand(name)?.ok_or_else(|| Error::Parse(format!("unknown shorthand {name:?}")))?;
                    Ok(write_graph(&g, self.graph_format(GraphFormat::Graph6)).into_bytes())
                }
            },
            Command::Encode(cmd) => match cmd {
                EncodeCmd::Canonical { graph } => Ok(format!("{}\n", resolve_graph(graph)?.encode()).into_bytes()),
                EncodeCmd::Alt {
                    graph,
                    occ,
                    generator,
                    unordered,
                } => {
                    let g = resolve_graph(graph)?;
                    let roles: Vec<usize> = occ
                        .split(',')
                        .map(|t| t.trim().parse().map_err(|e| Error::Parse(format!("bad vertex {t:?}: {e}"))))
                        .collect::<Result<_>>()?;
                    let occurrence = Occurrence::from_roles(roles)?;
                    let side = SideInfo::new(g.n(), generator.parse::<Generator>()?, !unordered);
                    let bits = g.encode();
                    let alt = mdl::encode_alt(&bits, &occurrence, &side)?;
                    let bytes = alt.to_bytes();
                    let report = AltReport {
                        side: &alt.side,
                        subset_rank: alt.subset_rank.to_string(),
                        perm_rank: alt.perm_rank.as_ref().map(ToString::to_string),
                        residual_bits: alt.residual.len(),
                        lengths: alt.length_report(),
                        compressor_upper_bound: mdl::compressor_proxy(&bits),
                        hex: self.global.out.is_none().then(|| hex::encode(&bytes)),
                    };
                    if let Some(path) = &self.global.out {
                        fs::write(path, &bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    }
                    json(&report)
                }
            },
            Command::Decode(cmd) => match cmd {
                DecodeCmd::Canonical { bits, n } => {
                    let b = match n {
                        Some(n) => EdgeBitString::parse(bits, *n)?,
                        None => EdgeBitString::parse_infer(bits)?,
                    };
                    Ok(write_graph(&b.decode(), self.graph_format(GraphFormat::Graph6)).into_bytes())
                }
                DecodeCmd::Alt { input } => {
                    let bytes = fs::read(input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
                    let alt = AltEncoding::from_bytes(&bytes)?;
                    Ok(write_graph(&mdl::decode_alt(&alt)?.decode(), self.graph_format(GraphFormat::Graph6)).into_bytes())
                }
            },
            Command::Closeknit(cmd) => match cmd {
                CloseknitCmd::Ratio { graph, group } => {
                    let g = resolve_graph(graph)?;
                    json(&closeknit::min_ratio(&g, &VertexSubset::parse(group)?)?)
                }
                CloseknitCmd::Certify { graph, r, k } => {
                    json(&closeknit::is_rk_closeknit(&resolve_graph(graph)?, parse_ratio(r)?, *k)?)
                }
                CloseknitCmd::MinK { graph, r, k_cap } => {
                    json(&closeknit::minimal_k(&resolve_graph(graph)?, parse_ratio(r)?, *k_cap)?)
                }
                CloseknitCmd::Scan { max_level, r, k_cap } => json(&closeknit::family_scan(*max_level, parse_ratio(r)?, *k_cap)?),
            },
            Command::Ramsey(cmd) => match cmd {
                RamseyCmd::Occurrences { graph, pattern, limit } => {
                    let occ = ramsey::find_induced_occurrences(
                        &resolve_graph(graph)?,
                        &resolve_graph(pattern)?,
                        limit.unwrap_or(usize::MAX),
                    )?;
                    json(&occ)
                }
                RamseyCmd::HostCheck { host, pattern } => {
                    json(&ramsey::is_host_with_jobs(&resolve_graph(host)?, &resolve_graph(pattern)?, jobs)?)
                }
                RamseyCmd::Oracle { pattern, hosts } => {
                    let hosts = hosts
                        .split(',')
                        .map(|h| resolve_graph(h.trim()))
                        .collect::<Result<Vec<_>>>()?;
                    json(&ramsey::induced_ramsey_oracle(&resolve_graph(pattern)?, &hosts, jobs)?)
                }
                RamseyCmd::Union { g1, g2 } => {
                    let u = ramsey::construct_union(&resolve_graph(g1)?, &resolve_graph(g2)?);
                    Ok(write_graph(&u.graph, self.graph_format(GraphFormat::Graph6)).into_bytes())
                }
                RamseyCmd::Split { graph, pattern } => {
                    json(&ramsey::split_union(&resolve_graph(graph)?, &resolve_graph(pattern)?, self.split_mode()?)?)
                }
                RamseyCmd::Bounds { pattern, c, cd } => json(&ramsey::bounds_report(&resolve_graph(pattern)?, *c, *cd)?),
                RamseyCmd::MaxLevel { cd } => json(&ramsey::max_ramsey_level(parse_ratio(cd)?)?),
            },
            Command::Diffuse(cmd) => {
                let (args, csv) = match cmd {
                    DiffuseCmd::Run { args, csv } => (args, Some(*csv)),
                    DiffuseCmd::Stats { args } => (args, None),
                };
                let g = resolve_graph(&args.graph)?;
                let game = args.game.game()?;
                let config = DiffusionConfig {
                    epsilon: args.epsilon,
                    init: subset_arg(&args.init, g.n())?,
                    horizon: args.horizon.unwrap_or(200 * g.n() as u64),
                    seed,
                    schedule: self.schedule()?,
                    target: args.target,
                };
                match csv {
                    Some(true) => Ok(diffusion::run(&g, &game, &config)?.to_csv().into_bytes()),
                    Some(false) => json(&diffusion::run(&g, &game, &config)?),
                    None => json(&diffusion::hitting_time_stats(&g, &game, &config, self.trials(100), jobs)?),
                }
            }
            Command::Experiment(cmd) => match cmd {
                ExperimentCmd::Moment { n, pattern } => json(&experiments::expected_occurrences(*n, &resolve_graph(pattern)?)?),
                ExperimentCmd::Containment { n, pattern } => {
                    json(&experiments::containment_experiment(*n, &resolve_graph(pattern)?, self.trials(500), seed, jobs)?)
                }
                ExperimentCmd::Sweep {
                    levels,
                    n_values,
                    budget,
                    json: as_json,
                } => {
                    let params = SweepParams {
                        levels: parse_list(levels)?,
                        n_values: parse_list::<u64>(n_values)?.into_iter().map(|n| n as usize).collect(),
                        trials: self.trials(100),
                        seed,
                        sample_budget: *budget,
                    };
                    let rows = experiments::threshold_sweep(&params, jobs)?;
                    if *as_json {
                        json(&TableJson::new("threshold_sweep", &params, seed, &rows))
                    } else {
                        Ok(experiments::sweep_csv(&params, &rows).into_bytes())
                    }
                }
                ExperimentCmd::Link {
                    levels,
                    game,
                    epsilon,
                    horizon_factor,
                    k_cap,
                    init_all,
                    json: as_json,
                } => {
                    let params = LinkParams {
                        levels: parse_list(levels)?,
                        game: game.game()?,
                        epsilon: *epsilon,
                        horizon_factor: *horizon_factor,
                        trials: self.trials(100),
                        seed,
                        k_cap: *k_cap,
                        init_all: *init_all,
                    };
                    let rows = experiments::closeknit_diffusion_link(&params, jobs)?;
                    if *as_json {
                        json(&TableJson::new("closeknit_diffusion_link", &params, seed, &rows))
                    } else {
                        Ok(experiments::link_csv(&params, &rows).into_bytes())
                    }
                }
            },
        }
    }

    /// The manifest for this invocation.
    pub fn manifest(&self) -> RunManifest<'_> {
        RunManifest {
            subcommand: self.subcommand_name(),
            parameters: self,
            master_seed: self.global.seed,
            versions: Versions {
                gasket: env!("CARGO_PKG_VERSION"),
            },
            outputs: self.global.out.iter().map(|p| p.display().to_string()).collect(),
            config_sha256: config_hash(self),
        }
    }
}

#[derive(Serialize)]
struct AltReport<'a> {
    side: &'a SideInfo,
    subset_rank: String,
    perm_rank: Option<String>,
    residual_bits: usize,
    lengths: mdl::LengthReport,
    /// Deflate size of the canonical string: an upper bound on its
    /// description length, for reference only.
    compressor_upper_bound: u64,
    hex: Option<String>,
}

#[derive(Serialize)]
struct TableJson<'a, P: Serialize, R: Serialize> {
    kind: &'static str,
    config_sha256: String,
    master_seed: u64,
    version: &'static str,
    parameters: &'a P,
    rows: &'a [R],
}

impl<'a, P: Serialize, R: Serialize> TableJson<'a, P, R> {
    fn new(kind: &'static str, parameters: &'a P, master_seed: u64, rows: &'a [R]) -> Self {
        Self {
            kind,
            config_sha256: config_hash(parameters),
            master_seed,
            version: env!("CARGO_PKG_VERSION"),
            parameters,
            rows,
        }
    }
}

/// Parses `args`, runs the command, writes outputs and returns the exit
/// code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let out = cli.execute()?;
    let alt_to_file = matches!(cli.command, Command::Encode(EncodeCmd::Alt { .. }));
    match (&cli.global.out, alt_to_file) {
        (Some(path), false) => fs::write(path, &out).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        _ => std::io::stdout().write_all(&out)?,
    }
    if let Some(path) = &cli.global.manifest {
        let bytes = json(&cli.manifest())?;
        fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}
