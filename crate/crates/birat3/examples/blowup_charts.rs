//! Weighted blow-up of a compound point: chart atlas, discrepancy, and the
//! singular points left on each chart.
//!
//! Run with `cargo run --example blowup_charts`.

use std::collections::BTreeMap;

use birat3::blowup::{chart_singularities, chart_vars, weighted_blowup};
use birat3::models::{SingClass, SingularityModel};
use birat3::polyring::parse_poly;
use birat3::qlattice::{QuotientAction, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // X = (xy + z^6 + u^5 = 0) in A^4 / (1/3)(1, 2, 1, 0).
    let action = QuotientAction::new(3, &[1, 2, 1, 0])?;
    let f = parse_poly("x*y + z^6 + u^5", &["x", "y", "z", "u"])?;
    let m = SingularityModel::hypersurface(action, f, SingClass::CAr, BTreeMap::new())?;
    println!("model: {}", m.describe());

    // Blow up with the weight (1/3)(4, 2, 1, 3).
    let w = WeightVector::new(3, &[4, 2, 1, 3])?;
    let c = weighted_blowup(&m, &w)?;
    println!("weight: {w}");
    println!("discrepancy: {}", c.discrepancy);
    println!("exceptional divisor: {}", c.exceptional);
    for warning in &c.warnings {
        println!("warning: {warning}");
    }

    let names = chart_vars(m.nvars());
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    for chart in &c.charts {
        println!("\nchart {} (inverts axis {})", chart.label, chart.axis);
        println!("  group: {}", chart.quotient);
        for eq in &chart.equations {
            println!("  equation: {}", eq.render(&name_refs));
        }
        println!("  exceptional locus: {}", chart.exceptional_locus);
    }

    println!("\nsingular points on the blow-up:");
    for s in chart_singularities(&c) {
        match &s.model {
            Some(p) => println!("  {} at {}: {}", s.chart, s.locus, p.describe()),
            None => println!("  {} at {}: unclassified ({})", s.chart, s.locus, s.note),
        }
    }
    Ok(())
}
