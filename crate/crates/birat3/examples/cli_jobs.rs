//! Drive the JSON job interface programmatically: the same entry point the
//! `birat3` binary uses, so output bytes match the CLI exactly.
//!
//! Run with `cargo run --example cli_jobs`.

use birat3::cli::{run, Overrides};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let depth_job = r#"{
        "version": 1,
        "command": "depth",
        "model": {
            "ambient": {"dim": 4, "vars": ["x", "y", "z", "u"], "index": 1, "action": [0, 0, 0, 0]},
            "equations": ["x*y + z^2 + u^7"],
            "declared_class": "cA/r",
            "params": {}
        }
    }"#;
    println!("depth job:\n{}", run(depth_job, &Overrides::default())?);

    let resolve_dot_job = r#"{
        "version": 1,
        "command": "resolve",
        "model": {
            "ambient": {"dim": 3, "vars": ["x", "y", "z"], "index": 3, "action": [1, 2, 1]},
            "equations": [],
            "declared_class": "quotient",
            "params": {}
        },
        "options": {"format": "dot"}
    }"#;
    println!("resolve job (DOT):\n{}", run(resolve_dot_job, &Overrides::default())?);

    // Schema violations carry JSON-pointer paths and map to exit code 2.
    let bad_job = r#"{"version": 1, "command": "depth", "model": {}, "extra": true}"#;
    match run(bad_job, &Overrides::default()) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("rejected job: {e} (exit code {})", e.exit_code()),
    }
    Ok(())
}
