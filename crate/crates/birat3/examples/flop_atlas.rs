//! The explicit chart atlas of the symmetric partial resolution over a flop
//! total space V = (xy + u f(z, u) = 0) / (1/r)(beta, -beta, 1, 0), plus the
//! flip bookkeeping showing the one-unit depth gain.
//!
//! Run with `cargo run --example flop_atlas`.

use birat3::flopatlas::{
    canonical_second_weight, flip_bookkeeping, v_prime, AtlasChart, FlopModel, QFactoriality,
};
use birat3::polyring::parse_poly;

fn show_tower(title: &str, tower: &[AtlasChart]) {
    println!("{title}:");
    for chart in tower {
        let names: Vec<&str> = chart.vars.iter().map(|s| s.as_str()).collect();
        println!(
            "  {}  group {}  equation {}{}",
            chart.label,
            chart.action,
            chart.equation.render(&names),
            if chart.smooth { "  (smooth)" } else { "" }
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("z^6 + u^3", &["z", "u"])?;
    let fm = FlopModel::new(3, 1, f)?;
    println!("total space: {fm}");
    println!("k = {}, m = {}", fm.k(), fm.m());

    let w = canonical_second_weight(&fm)?;
    println!("second blow-up weight: {w}");

    let atlas = v_prime(&fm, &w)?;
    println!("m equals k: {}", atlas.m_equals_k);
    show_tower("direct tower (V' over V)", &atlas.v_tower);
    show_tower("tower through the small resolution (Z1' over Z1)", &atlas.z_tower);

    match &atlas.q_factorial_u_chart {
        QFactoriality::IrreducibleOverQ { certificate } => {
            println!("u-chart residual is irreducible: {certificate}")
        }
        QFactoriality::Reducible { note, .. } => println!("u-chart residual reducible: {note}"),
        QFactoriality::Undecided { reason } => println!("u-chart scan undecided: {reason}"),
    }

    let report = atlas.validate()?;
    println!(
        "atlas validation: {} ({} checks)",
        if report.passed() { "passed" } else { "FAILED" },
        report.checks.len()
    );

    let flip = flip_bookkeeping(&fm, &w)?;
    println!(
        "flip bookkeeping: contracted side gdep {} vs resolved side gdep {} (delta {})",
        flip.v_side_gdep, flip.z_side_gdep, flip.delta
    );
    Ok(())
}
