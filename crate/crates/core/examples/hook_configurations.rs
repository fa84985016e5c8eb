//! Canonical hook configurations: build one, draw it, and probe the
//! descent-bottom / NE-endpoint partition property.
//!
//! Run with: cargo run --example hook_configurations

use unisort::chc::{build_chc, check_partition, partition_gaps};
use unisort::perm::Permutation;
use unisort::render::render_permutation;

fn main() -> unisort::Result<()> {
    let pi: Permutation = "2 7 3 5 9 4 8 1 6 10 11 12".parse()?;
    let chc = build_chc(&pi).expect("this permutation is sorted");
    println!("hooks of {pi}:");
    for hook in &chc.hooks {
        println!("  {hook}");
    }
    println!("\n{}", render_permutation(&pi, Some(&chc)));

    // this permutation is sorted but not uniquely; the partition of its
    // points fails, and the gap witnesses say where
    println!("partition gaps: {:?}", partition_gaps(&pi).unwrap());

    let unique: Permutation = "31425".parse()?;
    println!(
        "\n{unique} is uniquely sorted; partition holds: {}",
        check_partition(&unique)?
    );
    Ok(())
}
