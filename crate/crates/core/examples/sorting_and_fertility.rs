//! Stack-sorting basics: apply the map, count preimages, and inspect the
//! fertility histogram of a small symmetric group.
//!
//! Run with: cargo run --example sorting_and_fertility

use unisort::perm::Permutation;
use unisort::stacksort;

fn main() -> unisort::Result<()> {
    let pi: Permutation = "516243".parse()?;
    println!("s({pi}) = {}", stacksort::stack_sort(&pi));

    let target: Permutation = "123".parse()?;
    let pre = stacksort::preimages(&target)?;
    println!("\npreimages of {target} (fertility {}):", pre.len());
    for q in &pre {
        println!("  {q}");
    }

    let hist = stacksort::fertility_histogram(5)?;
    println!("\nfertility histogram over S_5:");
    println!("  sorted permutations: {}", hist.sorted_count());
    println!("  uniquely sorted:     {:?}", hist.fixed_set().len());
    for q in hist.fixed_set() {
        println!("    {q}");
    }
    Ok(())
}
