//! Cost of the Bernoulli-p cluster graphing (half the expected retained
//! degree) against the bound `invariant <= cost - 1`, which is an
//! equality exactly when the retained graph is a tree.
//!
//! ```bash
//! cargo run --release --example cost_bounds
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::harmonic;
use hdperc::invariants::cost_report;

fn main() -> hdperc::Result<()> {
    let cases: [(GraphFamily, &[usize]); 3] = [
        (GraphFamily::regular_tree(4)?, &[4, 6, 8]),
        (GraphFamily::lattice(2)?, &[10, 20, 40]),
        (GraphFamily::biregular_tree(3, 4)?, &[3, 5, 7, 9]),
    ];
    for (family, radii) in cases {
        let est = harmonic::beta1_estimate(&family, &family.default_orbit_weights(), radii)?;
        for p in [0.5, 1.0] {
            let report = cost_report(&family, p, &est)?;
            println!(
                "{:<15} p={p:<4} cost {:>6.4}  invariant {:>8.6}  {}",
                report.family, report.cost, report.beta1_bound, report.relation
            );
        }
    }
    Ok(())
}
