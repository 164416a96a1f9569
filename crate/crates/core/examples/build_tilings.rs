//! Builds the eight tilings, validates them, runs the mutation sweep and
//! writes OFF files.
//!
//! `cargo run --release --example build_tilings -- [out-dir]`

use pentasphere::tiling::validate::to_off;
use pentasphere::tiling::{all_tilings, mutation_survivors, validate};

fn main() {
    let out = std::env::args().nth(1);
    for t in all_tilings() {
        let r = validate(&t.tiling, &t.shape, &t.avc);
        let (n, survivors) = mutation_survivors(&t.tiling, &t.shape, &t.avc);
        println!(
            "{:<16} f={:<3} pass={} residual={:.1e} area/π={:.9} degrees={:?} mutations {n}, survivors {survivors}",
            t.name,
            t.tiling.f(),
            r.pass(),
            r.worst_residual,
            r.area / std::f64::consts::PI,
            r.degree_histogram
        );
        if let Some(dir) = &out {
            std::fs::create_dir_all(dir).unwrap();
            std::fs::write(format!("{dir}/{}.off", t.name), to_off(&t.tiling, &t.shape).unwrap()).unwrap();
        }
    }
}
