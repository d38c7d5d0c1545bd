//! The square lattice carries no nonconstant harmonic functions of
//! finite energy, so its invariant is zero: the upper bounds decay to
//! zero along the exhaustion and the vanishing verdict fires.
//!
//! ```bash
//! cargo run --release --example beta1_planar_lattice
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::harmonic;

fn main() -> hdperc::Result<()> {
    let family = GraphFamily::lattice(2)?;
    let weights = family.default_orbit_weights();
    let estimate = harmonic::beta1_estimate(&family, &weights, &[5, 10, 20, 30, 40])?;
    println!("{}:", family.describe());
    for (radius, bound) in &estimate.per_radius {
        println!("  radius {radius:>2}  upper bound {bound:.8}");
    }
    let verdict = harmonic::is_ohd(&estimate, 0.05)?;
    println!(
        "  vanishing at threshold 0.05: {} (margin {:.6})",
        verdict.is_ohd, verdict.margin
    );
    Ok(())
}
