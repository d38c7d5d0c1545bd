//! One labeled slice carries every retention parameter at once: sort the
//! edges by label, insert them one by one, and snapshot cluster
//! statistics at each grid value.
//!
//! ```bash
//! cargo run --release --example percolation_sweep
//! ```

use hdperc::graphs::GraphFamily;
use hdperc::percolation::{sweep, EdgeLabels};

fn main() -> hdperc::Result<()> {
    let family = GraphFamily::lattice(2)?;
    let slice = family.build_slice(32)?;
    let labels = EdgeLabels::new(&slice, 1);
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let result = sweep(&labels, &grid)?;
    println!(
        "{} radius 32 ({} vertices), seed {}:",
        family.describe(),
        slice.vertex_count,
        labels.seed
    );
    println!("{:>5} {:>8} {:>8} {:>8} {:>9} {:>10}", "p", "largest", "second", "origin", "spanning", "mean size");
    for row in &result.rows {
        println!(
            "{:>5.2} {:>8} {:>8} {:>8} {:>9} {:>10.2}",
            row.p,
            row.largest,
            row.second_largest,
            row.origin_cluster_size,
            row.spanning_cluster_count,
            row.mean_cluster_size
        );
    }
    Ok(())
}
