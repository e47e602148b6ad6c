//! Acceptance suite: one PASS/FAIL line per criterion, each timed against
//! its runtime limit.
//!
//!     cargo test --release -p gasket --test acceptance

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gasket::closeknit::{is_rk_closeknit, min_ratio, Rational};
use gasket::diffusion::{hitting_time_stats, run, CoordinationGame, DiffusionConfig, Schedule};
use gasket::experiments::{containment_experiment, expected_occurrences, plant_occurrence};
use gasket::graph::{gnp_sample, gnp_sample_where, Color, LabeledGraph, VertexSubset};
use gasket::mdl::{self, decode_alt, encode_alt, AltEncoding, Generator, Occurrence, SideInfo};
use gasket::mdl::rank::{binomial, ceil_log2, factorial};
use gasket::ramsey::{
    construct_union, contains_induced, has_mono_induced, induced_ramsey_oracle, is_host, split_union, max_ramsey_level,
    SplitMode,
};
use gasket::sierpinski;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("sierpinski structure", Duration::from_secs(1), sierpinski_structure),
        ("codec roundtrips", Duration::from_secs(10), codec_roundtrips),
        ("compression threshold", Duration::from_secs(1), compression_threshold),
        ("close-knit suite", Duration::from_secs(30), closeknit_suite),
        ("ramsey suite", Duration::from_secs(60), ramsey_suite),
        ("union split", Duration::from_secs(300), union_split),
        ("level calculator", Duration::from_secs(10), level_calculator),
        ("first moments", Duration::from_secs(300), first_moments),
        ("diffusion", Duration::from_secs(300), diffusion),
        ("cli determinism", Duration::from_secs(120), cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name:<22} {:>9.3}s  {detail}", i + 1, took.as_secs_f64());
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VertexSubset {
    let members = rand::seq::index::sample(rng, n, k).into_iter().map(|v| v + 1).collect();
    VertexSubset::from_unsorted(members).unwrap()
}

fn sierpinski_structure() -> Outcome {
    for l in 1..=7u32 {
        let s = sierpinski::build(l).map_err(|e| e.to_string())?;
        let g = s.graph();
        let n = (3 * (3u64.pow(l - 1) + 1) / 2) as usize;
        ensure!(g.n() == n, "S_{l}: {} vertices, want {n}", g.n());
        ensure!(g.edge_count() == 3usize.pow(l), "S_{l}: {} edges, want {}", g.edge_count(), 3usize.pow(l));
        let deg2 = g.degrees().iter().filter(|&&d| d == 2).count();
        let deg4 = g.degrees().iter().filter(|&&d| d == 4).count();
        if l >= 2 {
            ensure!(deg2 == 3 && deg4 == n - 3, "S_{l}: degree multiset {{2:{deg2}, 4:{deg4}}}");
        }
    }
    Ok("l = 7 has 1095 vertices and 2187 edges".into())
}

fn codec_roundtrips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000 {
        let n = rng.random_range(1..=64);
        let g = gnp_sample(n, rng.random_range(0.0..=1.0), i).map_err(|e| e.to_string())?;
        let bits = g.encode();
        ensure!(bits.len() == n * (n - 1) / 2, "n = {n}: {} bits", bits.len());
        ensure!(LabeledGraph::decode(&bits) == g, "canonical roundtrip failed at n = {n}");
    }
    for i in 0..200u64 {
        let l = 1 + (i % 2) as u32;
        let h = sierpinski::build(l).map_err(|e| e.to_string())?.into_graph();
        let k = h.n();
        let n = rng.random_range(k..=64);
        let subset = random_subset(&mut rng, n, k);
        let base = gnp_sample(n, 0.5, 10_000 + i).map_err(|e| e.to_string())?;
        // plant in sorted order, then shuffle all labels so the roles end up
        // in arbitrary order
        let planted = plant_occurrence(&base, &h, &subset).map_err(|e| e.to_string())?;
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let g = planted.relabel(&perm).map_err(|e| e.to_string())?;
        let roles = subset.members().iter().map(|&v| perm[v - 1]).collect();
        let occ = Occurrence::from_roles(roles).map_err(|e| e.to_string())?;
        let side = SideInfo::new(n, Generator::Sierpinski(l), true);
        let alt = encode_alt(&g.encode(), &occ, &side).map_err(|e| e.to_string())?;
        let back = AltEncoding::from_bytes(&alt.to_bytes()).map_err(|e| e.to_string())?;
        ensure!(back == alt, "byte roundtrip changed the encoding at instance {i}");
        ensure!(decode_alt(&back).map_err(|e| e.to_string())? == g.encode(), "alt roundtrip failed at instance {i}");
        let formula = ceil_log2(&binomial(n as u64, k as u64)) + ceil_log2(&factorial(k as u64)) + (n * (n - 1) / 2 - k * (k - 1) / 2) as u64;
        ensure!(alt.bit_len() == formula, "instance {i}: L = {}, formula {formula}", alt.bit_len());
    }
    Ok("1000 canonical, 200 planted".into())
}

fn compression_threshold() -> Outcome {
    ensure!(mdl::threshold_exact(6, true) == Some(7), "threshold {:?}", mdl::threshold_exact(6, true));
    ensure!(mdl::gain(7, 6, true) == 2, "gain(7, 6) = {}", mdl::gain(7, 6, true));
    ensure!(mdl::gain(16, 6, true) == -8, "gain(16, 6) = {}", mdl::gain(16, 6, true));
    let s2 = sierpinski::build(2).map_err(|e| e.to_string())?.into_graph();
    let mut checked = 0;
    for n in 6..=7 {
        for seed in 0..20 {
            let subset = random_subset(&mut ChaCha8Rng::seed_from_u64(seed), n, 6);
            let g = plant_occurrence(&gnp_sample(n, 0.5, seed).map_err(|e| e.to_string())?, &s2, &subset)
                .map_err(|e| e.to_string())?;
            let side = SideInfo::new(n, Generator::Sierpinski(2), true);
            let alt = encode_alt(&g.encode(), &Occurrence::ordered(&subset), &side).map_err(|e| e.to_string())?;
            let gain = alt.length_report().gain;
            ensure!(gain > 0, "planted S_2 in n = {n}, seed {seed}: gain {gain}");
            ensure!(decode_alt(&alt).map_err(|e| e.to_string())? == g.encode(), "roundtrip failed");
            checked += 1;
        }
    }
    Ok(format!("threshold 7, gains +2/-8, {checked} planted instances compressible"))
}

fn closeknit_suite() -> Outcome {
    let err = |e: gasket::Error| e.to_string();
    let k3 = min_ratio(&LabeledGraph::complete(3), &VertexSubset::full(3)).map_err(err)?;
    ensure!(k3.min_ratio == Rational::new(1, 2), "K_3 ratio {}", k3.min_ratio);
    let s3 = sierpinski::build(3).map_err(err)?;
    let interior = VertexSubset::parse("4,7,8").map_err(err)?;
    let r = min_ratio(s3.graph(), &interior).map_err(err)?;
    ensure!(r.min_ratio == Rational::new(1, 4), "S_3 interior triangle ratio {}", r.min_ratio);
    for l in 1..=4 {
        let out = is_rk_closeknit(sierpinski::build(l).map_err(err)?.graph(), Rational::new(1, 4), 3).map_err(err)?;
        ensure!(out.is_certified(), "S_{l} is not (1/4, 3)-close-knit: {out:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..100 {
        let n = rng.random_range(2..=14);
        let p = rng.random_range(0.2..=0.9);
        let g = gnp_sample_where(n, p, i, 100_000, LabeledGraph::is_connected).map_err(err)?;
        let r = min_ratio(&g, &VertexSubset::full(n)).map_err(err)?;
        ensure!(r.min_ratio == Rational::new(1, 2), "connected graph {i} (n = {n}): ratio {}", r.min_ratio);
    }
    Ok("K_3 1/2, interior 1/4, S_1..S_4 certified, 100 random graphs at 1/2".into())
}

fn ramsey_suite() -> Outcome {
    let err = |e: gasket::Error| e.to_string();
    let k3 = LabeledGraph::complete(3);
    let k6 = is_host(&LabeledGraph::complete(6), &k3).map_err(err)?;
    ensure!(k6.verified && k6.colorings_checked == 32_768, "K_6: {} {}", k6.verified, k6.colorings_checked);

    let k5 = LabeledGraph::complete(5);
    let cert = is_host(&k5, &k3).map_err(err)?;
    ensure!(!cert.verified, "K_5 reported as a host");
    let w = cert.witness.ok_or("K_5 without a witness")?;
    w.check_total(&k5).map_err(err)?;
    for color in [Color::Red, Color::Blue] {
        let edges: Vec<(usize, usize)> = w.iter().filter(|&(_, c)| c == color).map(|(e, _)| e).collect();
        let class = LabeledGraph::from_edges(5, &edges).map_err(err)?;
        ensure!(
            edges.len() == 5 && class.is_connected() && class.degrees().iter().all(|&d| d == 2),
            "{color:?} class is not a 5-cycle: {edges:?}"
        );
    }
    for a in 1..=5 {
        for b in a + 1..=5 {
            for c in b + 1..=5 {
                let cols = [w.get(a, b), w.get(a, c), w.get(b, c)];
                ensure!(!(cols[0] == cols[1] && cols[1] == cols[2]), "monochromatic triangle {a},{b},{c}");
            }
        }
    }
    ensure!(!has_mono_induced(&k5, &w, &k3).map_err(err)?, "library finds a monochromatic triangle");

    let hosts: Vec<_> = (2..=7).map(LabeledGraph::complete).collect();
    let oracle = induced_ramsey_oracle(&k3, &hosts, 0).map_err(err)?;
    ensure!(oracle.host.host.n() == 6, "oracle returned K_{}", oracle.host.host.n());
    Ok("K_6 over 32768 colourings, K_5 split into two 5-cycles, oracle 6".into())
}

fn union_split() -> Outcome {
    let err = |e: gasket::Error| e.to_string();
    let k3 = LabeledGraph::complete(3);
    let k6 = LabeledGraph::complete(6);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..50 {
        let n = rng.random_range(1..=12);
        let g1 = gnp_sample_where(n, 0.25, i, 100_000, |g| !contains_induced(g, &k3).unwrap()).map_err(err)?;
        let u = construct_union(&g1, &k6);
        let fast = split_union(&u.graph, &k3, SplitMode::Fast).map_err(err)?;
        let faithful = split_union(&u.graph, &k3, SplitMode::ProofFaithful).map_err(err)?;
        ensure!(fast.g1_vertices == u.g1 && fast.g2_vertices == u.g2, "instance {i}: fast split {fast:?}");
        ensure!(
            faithful.g1_vertices == fast.g1_vertices && faithful.g2_vertices == fast.g2_vertices,
            "instance {i}: modes disagree"
        );
    }
    Ok("50 instances recovered, modes agree".into())
}

fn level_calculator() -> Outcome {
    let levels: Vec<Option<u32>> = (1..=10)
        .map(|c| max_ramsey_level(Rational::from_integer(c)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure!(levels[2] == Some(3), "c_d = 3 gives {:?}", levels[2]);
    Ok(format!("c_d = 1..10 -> {levels:?}"))
}

fn first_moments() -> Outcome {
    let err = |e: gasket::Error| e.to_string();
    let k3 = containment_experiment(10, &LabeledGraph::complete(3), 2000, 8, 0).map_err(err)?;
    ensure!((k3.mean - 15.0).abs() <= 0.05 * 15.0, "K_3 mean {}", k3.mean);
    let s2 = sierpinski::build(2).map_err(err)?.into_graph();
    let expected = expected_occurrences(12, &s2).map_err(err)?.expected_isomorphic_f64;
    ensure!((expected - 3.3838).abs() < 1e-4, "S_2 expectation {expected}");
    let r = containment_experiment(12, &s2, 4000, 8, 0).map_err(err)?;
    ensure!((r.mean - expected).abs() <= 0.10 * expected, "S_2 mean {} vs {expected}", r.mean);
    Ok(format!("K_3 mean {:.3} (15), S_2 mean {:.3} ({expected:.4})", k3.mean, r.mean))
}

fn diffusion() -> Outcome {
    let err = |e: gasket::Error| e.to_string();
    let game = CoordinationGame::new(2, 1, 0, 0).map_err(err)?;
    ensure!(game.r_star().map_err(err)? == Rational::new(1, 3), "r* is not 1/3");
    let s2 = sierpinski::build(2).map_err(err)?;
    let sweep = DiffusionConfig {
        schedule: Schedule::RoundRobin,
        ..DiffusionConfig::new(VertexSubset::range(1, 3), 6, 0)
    };
    let trace = run(s2.graph(), &game, &sweep).map_err(err)?;
    ensure!(trace.hit_all.is_some_and(|t| t <= 6), "round robin on S_2: {:?}", trace.hit_all);
    let mut rates = Vec::new();
    for l in 2..=4 {
        let s = sierpinski::build(l).map_err(err)?;
        let n = s.graph().n() as u64;
        let cfg = DiffusionConfig {
            epsilon: 0.02,
            ..DiffusionConfig::new(s.subgaskets(1).map_err(err)?.swap_remove(0), 200 * n, 9)
        };
        let st = hitting_time_stats(s.graph(), &game, &cfg, 100, 0).map_err(err)?;
        ensure!(st.success_rate >= 0.9, "S_{l}: success rate {}", st.success_rate);
        rates.push(st.success_rate);
    }
    Ok(format!("all-A after {:?} revisions, success rates {rates:?}", trace.hit_all.unwrap()))
}

fn gasket(dir: &Path, args: &[&str]) -> Result<(Vec<u8>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gasket"))
        .current_dir(dir)
        .args(args)
        .args(["--manifest", "manifest.json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read(dir.join("manifest.json")).map_err(|e| e.to_string())?;
    Ok((out.stdout, manifest))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: &[&[&str]] = &[
        &["gen", "sierpinski", "--level", "3", "--format", "graph6"],
        &["gen", "gnp", "--n", "30", "--p", "0.3", "--seed", "5", "--format", "json"],
        &["ramsey", "host-check", "--host", "K5", "--pattern", "K3"],
        &["ramsey", "oracle", "--pattern", "K3", "--hosts", "K4,K5,K6"],
        &["closeknit", "scan", "--max-level", "3", "--r", "1/4"],
        &["experiment", "containment", "--n", "10", "--pattern", "K3", "--trials", "300", "--seed", "3"],
        &["experiment", "sweep", "--levels", "1,2", "--n-values", "3..9", "--trials", "50", "--seed", "4"],
        &["experiment", "link", "--levels", "2,3", "--trials", "20", "--seed", "5"],
        &["diffuse", "stats", "--graph", "S3", "--init", "1,2,3", "--epsilon", "0.02", "--trials", "40", "--seed", "6"],
        &["diffuse", "run", "--graph", "S2", "--init", "1,2,3", "--mode", "round-robin", "--csv"],
    ];
    for args in runs {
        let (stdout, manifest) = gasket(dir.path(), args)?;
        ensure!(!stdout.is_empty(), "{args:?} printed nothing");
        for jobs in ["1", "4", "1"] {
            let mut with_jobs = args.to_vec();
            with_jobs.extend(["--jobs", jobs]);
            let (s, m) = gasket(dir.path(), &with_jobs)?;
            ensure!(s == stdout, "{args:?} output changed under --jobs {jobs}");
            ensure!(m == manifest, "{args:?} manifest changed under --jobs {jobs}");
        }
    }
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        gasket(dir.path(), &["experiment", "sweep", "--levels", "2", "--n-values", "6,7,8", "--trials", "40", "--out", "sweep.csv", "--jobs", jobs])?;
        outputs.push(std::fs::read(dir.path().join("sweep.csv")).map_err(|e| e.to_string())?);
    }
    ensure!(outputs[0] == outputs[1], "--out file differs across --jobs");
    Ok(format!("{} commands byte-identical across repeats and --jobs 1/4", runs.len() + 1))
}
