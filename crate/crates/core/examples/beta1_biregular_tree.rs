//! The biregular tree is the built-in quasi-transitive family: two
//! vertex orbits with stabilizer weights (r, s), and the orbit-weighted
//! estimator converges to `(1/r + 1/s)^-1 * (1 - 1/r - 1/s)` — for
//! valencies (3, 4) that is 5/7.
//!
//! ```bash
//! cargo run --release --example beta1_biregular_tree
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::harmonic;

fn main() -> hdperc::Result<()> {
    let (r, s) = (3usize, 4usize);
    let family = GraphFamily::biregular_tree(r, s)?;
    let weights = family.default_orbit_weights();
    let t = weights.normalizer();
    let target = (1.0 - t) / t;
    println!(
        "{}: stabilizer weights {:?}, normalizer T = {t:.6}",
        family.describe(),
        weights.stabilizer_weight
    );
    let estimate = harmonic::beta1_estimate(&family, &weights, &[3, 5, 7, 9])?;
    for (radius, bound) in &estimate.per_radius {
        println!("  radius {radius}  upper bound {bound:.8}");
    }
    println!("  final {:.8}  vs  (1/T)(1 - T) = {target:.8}", estimate.final_value);
    Ok(())
}
