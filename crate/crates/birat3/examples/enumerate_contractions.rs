//! Enumerate the w-morphisms (discrepancy-1/r weighted blow-ups) over a few
//! models, including a class where the enumeration is deliberately partial.
//!
//! Run with `cargo run --example enumerate_contractions`.

use std::collections::BTreeMap;

use birat3::blowup::enumerate_w_morphisms;
use birat3::depth::is_strict;
use birat3::models::{SingClass, SingularityModel};
use birat3::polyring::parse_poly;
use birat3::qlattice::QuotientAction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let quotient =
        SingularityModel::quotient_point(QuotientAction::new(2, &[1, 1, 1])?)?;
    let car = SingularityModel::hypersurface(
        QuotientAction::new(3, &[1, 2, 1, 0])?,
        parse_poly("x*y + z^6 + u^2", &["x", "y", "z", "u"])?,
        SingClass::CAr,
        BTreeMap::new(),
    )?;
    let other = SingularityModel::hypersurface(
        QuotientAction::new(1, &[0, 0, 0, 0])?,
        parse_poly("x^2 + y^3 + z^4 + u^5", &["x", "y", "z", "u"])?,
        SingClass::CdvOther,
        BTreeMap::new(),
    )?;

    for m in [quotient, car, other] {
        println!("model: {}", m.describe());
        let en = enumerate_w_morphisms(&m)?;
        if !en.complete {
            println!(
                "  enumeration incomplete: {}",
                en.note.as_deref().unwrap_or("(no reason recorded)")
            );
        }
        if en.contractions.is_empty() {
            println!("  no candidates listed");
        }
        for c in &en.contractions {
            println!(
                "  weight {}  discrepancy {}  strict: {}",
                c.weight,
                c.discrepancy,
                is_strict(c)?
            );
        }
        println!();
    }
    Ok(())
}
