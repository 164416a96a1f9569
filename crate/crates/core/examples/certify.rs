//! Evaluates the closed-form identities and scans the exceptional region.
//!
//! `cargo run --release --example certify -- [resolution]`

use pentasphere::certify::{certify_all, exceptional_region_scan};

fn main() {
    let resolution = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    for c in certify_all() {
        println!("{:<40} {:>20.12} residual {:.1e} {}", c.name, c.value, c.residual, if c.pass { "ok" } else { "FAIL" });
    }
    let scan = exceptional_region_scan(resolution);
    println!(
        "region scan {resolution}: {} + {} cells, {} violations, {} cells where area(ACE) < ε",
        scan.cells_in_region_low,
        scan.cells_in_region_high,
        scan.violations.len(),
        scan.ace_area_failures
    );
}
