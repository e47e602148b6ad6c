//! Sampled induced-copy counts in G(n, 1/2) against their expectations.
//!
//!     cargo run --release --example first_moment

use gasket::experiments::{containment_experiment, expected_occurrences};
use gasket::graph::LabeledGraph;
use gasket::sierpinski;

fn main() -> gasket::Result<()> {
    let cases = [
        ("K_3", 10, LabeledGraph::complete(3), 2000),
        ("P_3", 10, LabeledGraph::path(3), 2000),
        ("S_2", 12, sierpinski::build(2)?.into_graph(), 2000),
        ("S_2", 6, sierpinski::build(2)?.into_graph(), 500),
    ];
    println!("H    n   |Aut|  expected   mean     variance  P(contains)");
    for (name, n, h, trials) in cases {
        let m = expected_occurrences(n, &h)?;
        let r = containment_experiment(n, &h, trials, 2024, 0)?;
        println!(
            "{name}  {n:<3} {:<6} {:<10.4} {:<8.4} {:<9.3} {:.4}",
            m.aut_count, m.expected_isomorphic_f64, r.mean, r.variance, r.frequency
        );
    }
    Ok(())
}
