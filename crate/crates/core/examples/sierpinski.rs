//! Builds the first few Sierpinski graphs and prints their structure.
//!
//!     cargo run --example sierpinski

use std::collections::BTreeMap;

use gasket::graph::io::{to_dot, to_graph6};
use gasket::sierpinski;

fn main() -> gasket::Result<()> {
    println!("level  n_l    m_l    corners        degrees");
    for l in 1..=6 {
        let s = sierpinski::build(l)?;
        let g = s.graph();
        let mut hist = BTreeMap::new();
        for d in g.degrees() {
            *hist.entry(d).or_insert(0) += 1;
        }
        println!(
            "{l:<6} {:<6} {:<6} {:<14} {hist:?}",
            g.n(),
            g.edge_count(),
            format!("{:?}", s.corners())
        );
    }

    let s2 = sierpinski::build(2)?;
    println!("\nS_2 coordinates (vertex: row, col):");
    for rec in s2.coords_json() {
        println!("  {}: ({}, {})", rec.vertex, rec.row, rec.col);
    }
    println!("S_2 elementary triangles: {:?}", s2.subgaskets(1)?.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("S_3 graph6: {}", to_graph6(sierpinski::build(3)?.graph()));
    print!("S_2 as DOT:\n{}", to_dot(s2.graph()));
    Ok(())
}
