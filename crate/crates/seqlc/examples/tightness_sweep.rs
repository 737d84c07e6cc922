//! Sample random clocked generators and measure how close the spectral bound
//! comes to the exact complexity. Same seed, same rows, any thread count.

use seqlc::bound::{tightness_sweep, SweepConfig};

fn main() {
    let cfg = SweepConfig {
        trials: 16,
        seed: 7,
        ..SweepConfig::default()
    };
    let summary = tightness_sweep(&cfg);
    println!("{:>5} {:>5} {:>5} {:>7} {:>7} {:>9}", "trial", "m", "n", "bound", "exact", "ratio");
    for row in &summary.rows {
        println!(
            "{:>5} {:>5} {:>5} {:>7} {:>7} {:>9.6}",
            row.index, row.m, row.n, row.bound, row.exact_lc, row.tightness
        );
    }
    println!(
        "{}/{} trials, {} exact matches, mean ratio {:.6}, worst {:.6}",
        summary.completed,
        summary.trials,
        summary.exact_matches,
        summary.mean_tightness,
        summary.min_tightness
    );
}
