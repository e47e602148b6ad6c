//! Round-trips a graph through every supported format.
//!
//!     cargo run --example graph_io

use gasket::graph::io::{from_graph6, from_json, to_dot, to_graph6, to_json};
use gasket::graph::{gnp_sample, EdgeBitString, LabeledGraph};

fn main() -> gasket::Result<()> {
    let g = gnp_sample(8, 0.5, 42)?;
    let bits = g.encode();
    println!("G(8, 1/2), seed 42: {} edges", g.edge_count());
    println!("canonical bits ({}): {bits}", bits.len());

    let g6 = to_graph6(&g);
    let json = to_json(&g);
    println!("graph6: {g6}");
    println!("json:   {json}");
    assert_eq!(from_graph6(&g6)?, g);
    assert_eq!(from_json(&json)?, g);
    assert_eq!(LabeledGraph::decode(&EdgeBitString::parse(&bits.to_string(), 8)?), g);

    let petersen_like = LabeledGraph::cycle(5)?.disjoint_union(&LabeledGraph::complete(2));
    print!("{}", to_dot(&petersen_like));
    Ok(())
}
