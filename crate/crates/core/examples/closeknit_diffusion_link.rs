//! Close-knit group size against diffusion time for two thresholds.
//!
//!     cargo run --release --example closeknit_diffusion_link

use gasket::diffusion::CoordinationGame;
use gasket::experiments::{closeknit_diffusion_link, link_csv, LinkParams};

fn main() -> gasket::Result<()> {
    for game in [CoordinationGame::new(2, 1, 0, 0)?, CoordinationGame::new(3, 1, 0, 0)?] {
        let params = LinkParams {
            levels: vec![2, 3, 4],
            game,
            epsilon: 0.02,
            horizon_factor: 200,
            trials: 100,
            seed: 11,
            k_cap: 6,
            init_all: false,
        };
        print!("{}", link_csv(&params, &closeknit_diffusion_link(&params, 0)?));
    }
    Ok(())
}
