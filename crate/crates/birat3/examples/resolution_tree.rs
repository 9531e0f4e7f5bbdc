//! A feasible resolution: the minimal chain of w-morphisms taking a point to
//! a smooth state, printed as text and as Graphviz DOT.
//!
//! Run with `cargo run --example resolution_tree`.

use std::collections::BTreeMap;

use birat3::cli::emit_dot;
use birat3::depth::feasible_resolution;
use birat3::models::{SingClass, SingularityModel};
use birat3::polyring::parse_poly;
use birat3::qlattice::QuotientAction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = SingularityModel::hypersurface(
        QuotientAction::new(1, &[0, 0, 0, 0])?,
        parse_poly("x*y + z^2 + u^7", &["x", "y", "z", "u"])?,
        SingClass::CAr,
        BTreeMap::new(),
    )?;
    println!("model: {}", m.describe());

    let tree = feasible_resolution(&m)?;
    println!("picard gain (chain length): {}", tree.picard_gain);
    for node in &tree.nodes {
        println!("state {}: {} (gdep {})", node.id, node.label(), node.gdep);
    }
    for edge in &tree.edges {
        println!(
            "edge {} -> {}: blow up {} with weight {} (discrepancy {}, strict: {})",
            edge.from,
            edge.to,
            edge.blown_point.describe(),
            edge.weight,
            edge.discrepancy,
            edge.strict
        );
        if let Some(vals) = &edge.valuations {
            let shown: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
            println!("  valuations of the new divisor: ({})", shown.join(", "));
        }
    }

    println!("\nDOT output:\n{}", emit_dot(&tree));
    Ok(())
}
