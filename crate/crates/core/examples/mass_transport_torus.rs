//! The mass-transport identity on a finite torus: for any translation-
//! invariant transport function, the mass sent from the origin equals
//! the mass it receives. Checked for the adjacency indicator, the
//! equality indicator, and a group-averaged random kernel.
//!
//! ```bash
//! cargo run --release --example mass_transport_torus
//! ```

use hdperc::invariants::{
    adjacency_transport, averaged_random_kernel, verify_mass_transport, Torus, TorusPoint,
};

fn main() -> hdperc::Result<()> {
    let torus = Torus::new(16)?;
    let adjacency = adjacency_transport(&torus);
    let equality = |u: TorusPoint, v: TorusPoint| if u == v { 1.0 } else { 0.0 };
    let averaged = averaged_random_kernel(&torus, 9);
    for (name, f) in [
        ("adjacency ", &adjacency as &dyn Fn(TorusPoint, TorusPoint) -> f64),
        ("equality  ", &equality),
        ("avg kernel", &averaged),
    ] {
        let report = verify_mass_transport(&torus, f, 1)?;
        println!(
            "{name}: sent {:>10.6}  received {:>10.6}  |difference| {:.2e}",
            report.sent, report.received, report.difference
        );
    }
    Ok(())
}
