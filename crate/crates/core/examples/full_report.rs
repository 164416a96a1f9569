//! Runs the whole classification and writes the report directory.
//!
//! `cargo run --release --example full_report -- [out-dir]`

use pentasphere::pipeline::{candidate_table, emit, run_full, PipelineConfig};
use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "report".into()));
    let cfg = PipelineConfig::default().with_env_overrides();
    let report = run_full(&cfg).unwrap_or_else(|e| panic!("{e}"));
    print!("{}", candidate_table(&report));
    for t in &report.tilings {
        println!("{:<16} f={:<3} {:?}", t.name, t.f, t.uniqueness);
    }
    let files = emit(&report, &dir).unwrap_or_else(|e| panic!("{e}"));
    println!("wrote {} files to {}", files.len(), dir.display());
}
