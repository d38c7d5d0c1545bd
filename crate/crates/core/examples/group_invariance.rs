//! The invariant belongs to the group, not to one Cayley graph of it:
//! the free group of rank 2 with generators {a, b} (the 4-regular tree)
//! and with generators {a, b, ab} (a 6-regular graph full of triangles)
//! give the same value, 1.
//!
//! ```bash
//! cargo run --release --example group_invariance
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::harmonic;

fn main() -> hdperc::Result<()> {
    let standard = GraphFamily::free_group(2, &["a", "b"])?;
    let redundant = GraphFamily::free_group(2, &["a", "b", "ab"])?;

    let est_standard =
        harmonic::beta1_estimate(&standard, &standard.default_orbit_weights(), &[4, 6, 8, 10])?;
    let est_redundant =
        harmonic::beta1_estimate(&redundant, &redundant.default_orbit_weights(), &[3, 5, 7, 8])?;

    for est in [&est_standard, &est_redundant] {
        println!("{}:", est.family);
        for (radius, bound) in &est.per_radius {
            println!("  radius {radius}  upper bound {bound:.8}");
        }
    }
    let rel = (est_standard.final_value - est_redundant.final_value).abs()
        / est_standard.final_value;
    println!(
        "final values {:.8} vs {:.8}; relative disagreement {:.2e}",
        est_standard.final_value, est_redundant.final_value, rel
    );
    Ok(())
}
