//! Replay the divisorial-contraction registry: instantiate every row,
//! validate the model/weight pair against the row's constraints, and check
//! that the computed discrepancy reproduces the row's value.
//!
//! Run with `cargo run --example table_registry`.

use birat3::blowup::weighted_blowup;
use birat3::models::{default_instances, expected_discrepancy, lookup_entry, validate_table_entry};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let instances = default_instances();
    println!("registry instances: {}", instances.len());

    let mut passed = 0;
    let mut shown = 0;
    for inst in &instances {
        let entry = lookup_entry(inst.id)?;
        let report = validate_table_entry(&inst.model, entry, &inst.weight, &inst.bindings)?;
        let c = weighted_blowup(&inst.model, &inst.weight)?;
        let want = expected_discrepancy(entry, &inst.bindings)?;
        let ok = report.passed() && c.discrepancy == want;
        if ok {
            passed += 1;
        }
        // Print the first few rows in full; summarize the rest.
        if shown < 8 || !ok {
            shown += 1;
            println!(
                "row {:<5} weight {:<14} discrepancy {:<6} {}",
                inst.id,
                inst.weight.to_string(),
                c.discrepancy.to_string(),
                if ok { "ok" } else { "MISMATCH" }
            );
            if !ok {
                for check in report.failures() {
                    println!("    failed: {} ({})", check.name, check.detail);
                }
            }
        }
    }
    println!("validated {passed}/{} instances", instances.len());
    Ok(())
}
