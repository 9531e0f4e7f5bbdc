//! The link between the two discrepancy-1/r blow-ups of a compound-A1
//! point: the linked weight, the flop-or-negative flag, and the exact
//! intersection number of the canonical class with the witness curve.
//!
//! Run with `cargo run --example linked_contractions`.

use std::collections::BTreeMap;

use birat3::blowup::weighted_blowup;
use birat3::links::{ca_link, kng_intersection, xi_condition, xi_strict};
use birat3::models::{SingClass, SingularityModel};
use birat3::polyring::parse_poly;
use birat3::qlattice::{QuotientAction, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["x", "y", "z", "u"];
    // The u-exponent decides the type: u^2 keeps a u-term in the witness
    // curve equation and gives a strictly negative link, while u^3
    // degenerates the equation to a bare coordinate and gives a flop.
    for f in ["x*y + z^6 + u^2", "x*y + z^6 + u^3"] {
        let m = SingularityModel::hypersurface(
            QuotientAction::new(3, &[1, 2, 1, 0])?,
            parse_poly(f, &vars)?,
            SingClass::CAr,
            BTreeMap::new(),
        )?;
        let w = WeightVector::new(3, &[4, 2, 1, 3])?;
        let c = weighted_blowup(&m, &w)?;
        println!("model: {}", m.describe());
        println!("  first weight:  {w} (discrepancy {})", c.discrepancy);

        let link = ca_link(&m, &c)?;
        println!(
            "  linked weight: {} (discrepancy {})",
            link.linked.weight, link.linked.discrepancy
        );
        println!("  witness curve equation on the first chart: {}", {
            link.eta4.render(&vars)
        });
        println!("  flop: {}", link.flop);
        println!("  K . Gamma = {}", kng_intersection(&link.data)?);
        println!("  sign condition holds: {}", xi_condition(&link.data)?);
        println!("  strict sign condition: {}", xi_strict(&link.data)?);
        println!();
    }
    Ok(())
}
