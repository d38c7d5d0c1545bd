//! Expected base degree of the random-cluster model on a lattice slice:
//! at q = 1 the curve is the Bernoulli line `deg * p`; at q = 2 the
//! wired chain dominates the free one pointwise.
//!
//! ```bash
//! cargo run --release --example random_cluster_curves
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::randomcluster::{degree_curve, Boundary};

fn main() -> hdperc::Result<()> {
    let family = GraphFamily::lattice(2)?;
    let radius = 8;
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let samples = 800;

    let bernoulli = degree_curve(&family, radius, 1.0, Boundary::Free, &grid, samples, 5)?;
    let free = degree_curve(&family, radius, 2.0, Boundary::Free, &grid, samples, 5)?;
    let wired = degree_curve(&family, radius, 2.0, Boundary::Wired, &grid, samples, 5)?;

    println!(
        "{} radius {radius}: mean base degree (stderr in parens)",
        family.describe()
    );
    println!("{:>5} {:>16} {:>16} {:>16} {:>8}", "p", "q=1 free", "q=2 free", "q=2 wired", "4p");
    for k in 0..grid.len() {
        let b = &bernoulli.points[k];
        let f = &free.points[k];
        let w = &wired.points[k];
        println!(
            "{:>5.2} {:>9.3} ({:.3}) {:>9.3} ({:.3}) {:>9.3} ({:.3}) {:>8.2}",
            grid[k],
            b.mean_degree,
            b.stderr,
            f.mean_degree,
            f.stderr,
            w.mean_degree,
            w.stderr,
            4.0 * grid[k]
        );
    }
    Ok(())
}
