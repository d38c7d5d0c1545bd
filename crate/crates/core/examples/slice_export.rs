//! Building balls, contracting boundaries, and the plain-text edge-list
//! export (deterministic byte-for-byte for a fixed family and radius).
//!
//! ```bash
//! cargo run --release --example slice_export
//! ```

use hdperc::graphs::GraphFamily;

fn main() -> hdperc::Result<()> {
    let family = GraphFamily::free_group(2, &["a", "b", "ab"])?;
    let slice = family.build_slice(1)?;
    println!("{} radius 1:", family.describe());
    let mut buf = Vec::new();
    slice.write_edge_list(&mut buf)?;
    print!("{}", String::from_utf8(buf).expect("ascii"));

    let ball = GraphFamily::regular_tree(3)?.build_slice(2)?;
    let contracted = ball.contract_boundary()?;
    println!(
        "\ntree(3) radius 2: {} vertices / {} edges; contracted: {} vertices / {} edges (edge count preserved)",
        ball.vertex_count,
        ball.edge_count(),
        contracted.vertex_count,
        contracted.edge_count()
    );
    Ok(())
}
