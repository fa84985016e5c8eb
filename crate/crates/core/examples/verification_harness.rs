//! The cross-check harness: every enumeration statement verified at desk
//! scale, plus the dual-oracle comparison between the fertility sweep and
//! the structural test.
//!
//! Run with: cargo run --release --example verification_harness

use unisort::enumeration::{cross_check, enumerate_class, DEFAULT_ENUM_LIMIT};
use unisort::perm::PatternSet;
use unisort::stacksort::fertility_histogram;

fn main() -> unisort::Result<()> {
    let report = cross_check(4, DEFAULT_ENUM_LIMIT)?;
    for row in &report.rows {
        println!("[{}] {}", if row.pass { "pass" } else { "FAIL" }, row.name);
    }
    assert!(report.all_pass());

    println!("\ndual oracle (fertility sweep vs structural test):");
    for n in [1usize, 3, 5, 7, 9] {
        let structural = enumerate_class(n, &PatternSet::default())?;
        let by_fertility = fertility_histogram(n)?.fixed_set();
        assert_eq!(structural, by_fertility);
        println!("  n = {n}: both oracles give {} permutations", structural.len());
    }
    Ok(())
}
