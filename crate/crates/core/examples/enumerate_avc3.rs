//! Prints the degree 3 vertex collections for each number of distinct angles.
//!
//! `cargo run --example enumerate_avc3`

use pentasphere::avc3::enumerate_avc3;

fn main() {
    for n in 1..=5 {
        let rows = enumerate_avc3(n);
        println!("{n} distinct angles: {} collections", rows.len());
        for row in rows {
            println!("  {row}");
        }
    }
}
