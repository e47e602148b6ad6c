//! Close-knit ratios of small groups and (r, k) certificates on the
//! Sierpinski family.
//!
//!     cargo run --release --example closeknit

use gasket::closeknit::{family_scan, fmt_ratio, is_rk_closeknit, min_ratio, CloseKnitOutcome, Rational};
use gasket::graph::{LabeledGraph, VertexSubset};
use gasket::sierpinski;

fn main() -> gasket::Result<()> {
    let k3 = LabeledGraph::complete(3);
    let r = min_ratio(&k3, &VertexSubset::full(3))?;
    println!("K_3 alone: ratio {} attained at {}", fmt_ratio(&r.min_ratio), r.argmin);

    let s3 = sierpinski::build(3)?;
    for group in ["4,7,8", "1,2,3", "7,8,11"] {
        let rep = min_ratio(s3.graph(), &VertexSubset::parse(group)?)?;
        println!("S_3 group {}: ratio {} attained at {}", rep.group, fmt_ratio(&rep.min_ratio), rep.argmin);
    }

    let quarter = Rational::new(1, 4);
    for l in 1..=4 {
        match is_rk_closeknit(sierpinski::build(l)?.graph(), quarter, 3)? {
            CloseKnitOutcome::Certified(cert) => {
                let worst = cert.witness.iter().map(|w| w.min_ratio).min().unwrap();
                println!("S_{l}: (1/4, 3)-close-knit, weakest witness ratio {}", fmt_ratio(&worst));
            }
            CloseKnitOutcome::Failed { vertex, .. } => println!("S_{l}: fails at vertex {vertex}"),
        }
    }

    for r in [Rational::new(1, 4), Rational::new(1, 3)] {
        let rows = family_scan(4, r, 8)?;
        let ks: Vec<_> = rows.iter().map(|row| row.min_k).collect();
        println!("smallest k at r = {} for l = 1..4: {ks:?}", fmt_ratio(&r));
    }
    Ok(())
}
