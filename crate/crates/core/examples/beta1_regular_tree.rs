//! Invariant ladders for regular trees: the `d`-regular tree has first
//! invariant `d/2 - 1`, and every radius gives a certified upper bound.
//!
//! ```bash
//! cargo run --release --example beta1_regular_tree
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::harmonic;

fn main() -> hdperc::Result<()> {
    for degree in [3usize, 4, 6] {
        let family = GraphFamily::regular_tree(degree)?;
        let weights = family.default_orbit_weights();
        let radii: &[usize] = match degree {
            3 => &[4, 8, 12, 16],
            4 => &[4, 6, 8, 10],
            _ => &[3, 5, 7],
        };
        let estimate = harmonic::beta1_estimate(&family, &weights, radii)?;
        println!("{} (limit {}):", family.describe(), degree as f64 / 2.0 - 1.0);
        for (radius, bound) in &estimate.per_radius {
            println!("  radius {radius:>2}  upper bound {bound:.8}");
        }
        println!("  final: {:.8}\n", estimate.final_value);
    }
    Ok(())
}
