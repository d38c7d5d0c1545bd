//! Threshold estimates with their reference values: the square lattice
//! (self-dual, threshold 1/2) via the crossing onset, the 4-regular tree
//! (branching process, threshold 1/3) via the susceptibility intercept,
//! and the line (threshold 1). Uniqueness onsets are finite-volume
//! heuristics and say so.
//!
//! ```bash
//! cargo run --release --example critical_thresholds
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::percolation::{estimate_pc, estimate_pu, DEFAULT_P_RESOLUTION};

fn main() -> hdperc::Result<()> {
    let cases = [
        (GraphFamily::lattice(2)?, 64usize, 200usize, 0.5),
        (GraphFamily::regular_tree(4)?, 12, 200, 1.0 / 3.0),
        (GraphFamily::Line, 1000, 100, 1.0),
    ];
    for (family, radius, samples, reference) in cases {
        let pc = estimate_pc(&family, radius, samples, DEFAULT_P_RESOLUTION, 7)?;
        println!(
            "{:<12} pc[{}] = {:.4} [{:.4}, {:.4}]  (reference {reference})",
            family.describe(),
            pc.method,
            pc.value,
            pc.ci_low,
            pc.ci_high
        );
    }
    for (family, radius) in [(GraphFamily::lattice(2)?, 64usize), (GraphFamily::regular_tree(4)?, 10)] {
        let pu = estimate_pu(&family, radius, 60, DEFAULT_P_RESOLUTION, 3)?;
        println!(
            "{:<12} pu[{}] = {:.4} [{:.4}, {:.4}]  heuristic={}",
            family.describe(),
            pu.method,
            pu.value,
            pu.ci_low,
            pu.ci_high,
            pu.heuristic
        );
    }
    Ok(())
}
