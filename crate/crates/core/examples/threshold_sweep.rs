//! CSV table of codec gain, closed-form bounds and sampled containment.
//!
//!     cargo run --release --example threshold_sweep > sweep.csv

use gasket::experiments::{sweep_csv, threshold_sweep, SweepParams};

fn main() -> gasket::Result<()> {
    let params = SweepParams {
        levels: vec![1, 2, 3],
        n_values: vec![2, 3, 4, 6, 7, 8, 12, 16, 24, 32, 64, 128],
        trials: 200,
        seed: 1,
        sample_budget: 100_000,
    };
    print!("{}", sweep_csv(&params, &threshold_sweep(&params, 0)?));
    Ok(())
}
