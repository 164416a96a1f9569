//! Runs the full candidate sweep and prints the surviving pentagons.
//!
//! `cargo run --release --example classify_all -- [starts]`

use pentasphere::classify::classify;
use pentasphere::solver::SolveConfig;
use std::f64::consts::PI;

fn main() {
    let starts = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5000);
    let cfg = SolveConfig { starts, ..SolveConfig::default() };
    let t = std::time::Instant::now();
    let report = classify(&cfg);
    for g in &report.groups {
        let a: Vec<String> = g.angles.iter().map(|x| format!("{:.5}", x / PI)).collect();
        println!(
            "{:<18} {:<4} f={:<3} cos a={:.5} simple={} angles/π=[{}]",
            g.cases.join("/"),
            g.arrangement,
            g.f,
            g.cos_a,
            g.simple,
            a.join(", ")
        );
    }
    println!("{} groups from {} pairs in {:.1?}", report.groups.len(), report.summaries.len(), t.elapsed());
}
