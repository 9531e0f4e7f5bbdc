//! The three depth invariants (gdep, dep, dep_gor) over a small corpus of
//! quotient and hypersurface points, computed with one shared engine so the
//! memo is reused across queries.
//!
//! Run with `cargo run --example depth_invariants`.

use std::collections::BTreeMap;

use birat3::depth::DepthEngine;
use birat3::models::{SingClass, SingularityModel};
use birat3::polyring::parse_poly;
use birat3::qlattice::QuotientAction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["x", "y", "z", "u"];
    let mut corpus: Vec<SingularityModel> = Vec::new();
    for (r, a) in [(2, [1, 1, 1]), (3, [1, 2, 1]), (5, [1, 2, 3])] {
        corpus.push(SingularityModel::quotient_point(QuotientAction::new(
            r, &a,
        )?)?);
    }
    for (r, act, f) in [
        (1, [0, 0, 0, 0], "x*y + z^2 + u^3"),
        (1, [0, 0, 0, 0], "x*y + z^2 + u^7"),
        (3, [1, 2, 1, 0], "x*y + z^6 + u^2"),
        (2, [1, 1, 1, 0], "x*y + z^4 + u^3"),
    ] {
        corpus.push(SingularityModel::hypersurface(
            QuotientAction::new(r, &act)?,
            parse_poly(f, &vars)?,
            SingClass::CAr,
            BTreeMap::new(),
        )?);
    }

    let engine = DepthEngine::default();
    println!("{:<40} {:>6} {:>6} {:>8}", "model", "gdep", "dep", "dep_gor");
    for m in &corpus {
        let rep = engine.report(m)?;
        println!(
            "{:<40} {:>6} {:>6} {:>8}",
            m.describe(),
            rep.gdep.to_string(),
            rep.dep.to_string(),
            rep.dep_gor.to_string()
        );
    }
    println!("\nexpanded search nodes: {}", engine.expanded_nodes());
    Ok(())
}
