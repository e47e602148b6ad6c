//! Builds G1 ⊔ K_6 with a triangle-free G1 and recovers both parts.
//!
//!     cargo run --release --example union_split

use gasket::graph::{gnp_sample_where, LabeledGraph};
use gasket::ramsey::{construct_union, contains_induced, split_union, SplitMode};

fn main() -> gasket::Result<()> {
    let k3 = LabeledGraph::complete(3);
    for seed in 0..5 {
        let g1 = gnp_sample_where(10, 0.3, seed, 10_000, |g| !contains_induced(g, &k3).unwrap_or(true))?;
        let u = construct_union(&g1, &LabeledGraph::complete(6));
        let fast = split_union(&u.graph, &k3, SplitMode::Fast)?;
        let faithful = split_union(&u.graph, &k3, SplitMode::ProofFaithful)?;
        assert_eq!(fast.g2_vertices, faithful.g2_vertices);
        println!(
            "seed {seed}: G1 has {} edges; recovered G2 = {} (expected {})",
            g1.edge_count(),
            fast.g2_vertices,
            u.g2
        );
    }
    Ok(())
}
