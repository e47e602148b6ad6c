//! Plants S_2 into random graphs and compares the two-part code with the
//! canonical C(n,2)-bit string.
//!
//!     cargo run --example codec

use gasket::experiments::plant_occurrence;
use gasket::graph::{gnp_sample, VertexSubset};
use gasket::mdl::{self, decode_alt, encode_alt, AltEncoding, Generator, Occurrence, SideInfo};
use gasket::sierpinski;

fn main() -> gasket::Result<()> {
    let s2 = sierpinski::build(2)?.into_graph();
    println!("n   canonical  alt  gain  deflate(upper bound)");
    for (n, seed) in [(6, 1), (7, 2), (8, 3), (16, 4), (20, 5), (40, 6)] {
        let occ = VertexSubset::range(n - 5, n);
        let g = plant_occurrence(&gnp_sample(n, 0.5, seed)?, &s2, &occ)?;
        let side = SideInfo::new(n, Generator::Sierpinski(2), true);
        let alt = encode_alt(&g.encode(), &Occurrence::ordered(&occ), &side)?;
        let rep = alt.length_report();
        assert_eq!(rep.gain, mdl::gain(n, 6, true));
        assert_eq!(decode_alt(&AltEncoding::from_bytes(&alt.to_bytes())?)?, g.encode());
        println!(
            "{n:<3} {:<10} {:<4} {:<5} {}",
            rep.canonical,
            rep.alt,
            rep.gain,
            mdl::compressor_proxy(&g.encode())
        );
    }

    println!("\nlargest n with positive gain, against the asymptotic bounds:");
    println!("l  k    exact(ordered)  exact(unordered)  2^((k-1)/2)  2^(k(k-1)/(2(k+1)))");
    for l in 1..=4 {
        let k = sierpinski::vertex_count(l) as usize;
        let b = mdl::asymptotic_bounds(k);
        println!(
            "{l}  {k:<4} {:<15} {:<17} {:<12.2} {:.2}",
            format!("{:?}", mdl::threshold_exact(k, true)),
            format!("{:?}", mdl::threshold_exact(k, false)),
            b.ordered.value(),
            b.ordered_slack.value()
        );
    }
    Ok(())
}
