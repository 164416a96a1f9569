//! Derives the vertex set of a candidate pentagon and prunes it by vertex
//! counting.
//!
//! `cargo run --release --example derive_avc -- [case]`

use pentasphere::cases::find_case;
use pentasphere::classify::classify_cases;
use pentasphere::pipeline::group_avc;
use pentasphere::solver::SolveConfig;

fn main() {
    let label = std::env::args().nth(1).unwrap_or_else(|| "5.5".into());
    let case = find_case(&label).expect("known case label");
    let report = classify_cases(&[case], &SolveConfig::default());
    if report.groups.is_empty() {
        println!("{label}: no candidate pentagon");
    }
    for g in &report.groups {
        let avc = group_avc(g);
        println!("{label}({}) f={} cos a={:.5}", g.arrangement, g.f, g.cos_a);
        println!("  derived {}", avc.derived);
        println!("  pruned  {}", avc.pruned.as_deref().unwrap_or("none"));
    }
}
