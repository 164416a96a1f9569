//! Exhaustive search for tilings with a given vertex set.
//!
//! `cargo run --release --example search_tilings -- "abc, de2, d3e" 20 A3`

use pentasphere::cases::Arrangement;
use pentasphere::combo::parse_avc;
use pentasphere::tiling::{search, SearchConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let avc = args.next().unwrap_or_else(|| "abc, de2, d3e".into());
    let f = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let arrangement = Arrangement::by_name(&args.next().unwrap_or_else(|| "A3".into())).expect("arrangement");
    let cfg = SearchConfig { arrangement, avc: parse_avc(&avc).expect("vertex list"), f, node_budget: 50_000_000 };
    let t = std::time::Instant::now();
    let out = search(&cfg);
    println!("{avc} f={f}: {:?}, {} tilings, {} nodes, {:.1?}", out.status, out.tilings.len(), out.nodes, t.elapsed());
    for (i, tiling) in out.tilings.iter().enumerate() {
        println!("tiling {i}: degrees {:?}", tiling.degree_histogram());
        print!("{}", tiling.to_text());
    }
}
