//! Spread of a risk-dominant innovation on Sierpinski graphs.
//!
//!     cargo run --release --example diffusion

use gasket::closeknit::fmt_ratio;
use gasket::diffusion::{hitting_time_stats, run, CoordinationGame, DiffusionConfig, Schedule};
use gasket::graph::VertexSubset;
use gasket::sierpinski;

fn main() -> gasket::Result<()> {
    let game = CoordinationGame::new(2, 1, 0, 0)?;
    println!("r* = {}", fmt_ratio(&game.r_star()?));

    let s2 = sierpinski::build(2)?;
    let sweep = DiffusionConfig {
        schedule: Schedule::RoundRobin,
        ..DiffusionConfig::new(VertexSubset::range(1, 3), 6, 0)
    };
    print!("S_2 round robin from the top triangle:\n{}", run(s2.graph(), &game, &sweep)?.to_csv());

    println!("\nl  n    success  q1     median  q3");
    for l in 2..=4 {
        let s = sierpinski::build(l)?;
        let n = s.graph().n();
        let cfg = DiffusionConfig {
            epsilon: 0.02,
            ..DiffusionConfig::new(s.subgaskets(1)?.swap_remove(0), 200 * n as u64, 7)
        };
        let st = hitting_time_stats(s.graph(), &game, &cfg, 100, 0)?;
        println!(
            "{l}  {n:<4} {:<8} {:<6} {:<7} {}",
            st.success_rate,
            st.q1.map_or("-".into(), |x| x.to_string()),
            st.median.map_or("-".into(), |x| x.to_string()),
            st.q3.map_or("-".into(), |x| x.to_string())
        );
    }
    Ok(())
}
