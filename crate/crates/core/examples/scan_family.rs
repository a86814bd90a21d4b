//! Sweeps the default (c, d) grid at base 8 and solves for the remaining leg
//! in every cell. Pass a path to write the accepted solutions as CSV.

use std::fs::File;
use std::io::BufWriter;
use std::time::Instant;

use trapcc::solver::{scan_family, ScanConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ScanConfig::default();
    let start = Instant::now();
    let outcome = scan_family(&cfg)?;
    let elapsed = start.elapsed();
    let summary = outcome.summary();

    println!("{} cells, {} roots, {} accepted in {:.1?}", summary.cells, summary.roots, summary.accepted, elapsed);
    for (kind, count) in &summary.failures {
        println!("  {:<22} {count}", format!("{kind:?}"));
    }
    println!("m1 > m2 in {} solutions, m1 < m2 in {}", summary.m1_greater_than_m2, summary.m1_less_than_m2);
    for (name, range) in &summary.masses {
        println!("  {name} in [{:.6}, {:.6}]", range.min, range.max);
    }

    if let Some(path) = std::env::args().nth(1) {
        outcome.write_csv(BufWriter::new(File::create(&path)?))?;
        println!("wrote {path}");
    } else if let Some(first) = outcome.solutions.first() {
        println!("first solution: {}", first.distances);
    }
    Ok(())
}
