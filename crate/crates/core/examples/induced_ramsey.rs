//! Exhaustive 2-colouring checks: six vertices force a monochromatic
//! triangle, five do not.
//!
//!     cargo run --release --example induced_ramsey

use gasket::graph::LabeledGraph;
use gasket::ramsey::{color_counts, find_induced_occurrences, induced_ramsey_oracle, is_host, max_ramsey_level};
use gasket::closeknit::Rational;
use gasket::sierpinski;

fn main() -> gasket::Result<()> {
    let k3 = LabeledGraph::complete(3);
    for n in [5, 6] {
        let cert = is_host(&LabeledGraph::complete(n), &k3)?;
        println!(
            "K_{n}: verified = {}, colourings checked = {}",
            cert.verified, cert.colorings_checked
        );
        if let Some(w) = &cert.witness {
            let red: Vec<_> = w.iter().filter(|(_, c)| *c == gasket::graph::Color::Red).map(|(e, _)| e).collect();
            println!("  witness: red edges {red:?}, (red, blue) = {:?}", color_counts(w));
        }
    }

    let hosts: Vec<_> = (2..=7).map(LabeledGraph::complete).collect();
    let report = induced_ramsey_oracle(&k3, &hosts, 0)?;
    println!("smallest complete host for K_3 among K_2..K_7: K_{}", report.host.host.n());

    let s3 = sierpinski::build(3)?;
    let s2 = sierpinski::build(2)?.into_graph();
    let occ = find_induced_occurrences(s3.graph(), &s2, usize::MAX)?;
    println!("induced copies of S_2 in S_3: {}", occ.len());

    for cd in 1..=10 {
        println!("c_d = {cd:<2} -> last level with n^c_d >= 2^((n-1)/2): {:?}", max_ramsey_level(Rational::from_integer(cd))?);
    }
    Ok(())
}
