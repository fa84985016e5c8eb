//! Structural decompositions: splitting a modsvee permutation at its big
//! hook, and taking a nice permutation apart (and back together).
//!
//! Run with: cargo run --example decompositions

use unisort::bijections::{modsvee_split, modvee_modsvee, nice_decompose, nice_recompose};
use unisort::perm::Permutation;

fn main() -> unisort::Result<()> {
    let pi: Permutation = "643527819".parse()?;
    let (j, prefix, suffix) = modsvee_split(&pi)?;
    println!("{pi} splits at j = {j} into ({prefix}) and ({suffix})");

    let modvee: Permutation = "5 4 2 1 3 6 7".parse()?;
    println!(
        "\ninversion carries the modvee member {modvee}\n  to the modsvee member {}",
        modvee_modsvee(&modvee)?
    );

    let nice: Permutation = "8 2 1 4 3 7 6 5 10 11 9 12 13".parse()?;
    let (pi2, tau) = nice_decompose(&nice)?;
    println!("\n{nice} decomposes into pi'' = {pi2}, tau' = {tau}");
    assert_eq!(nice_recompose(&pi2, &tau)?, nice);
    println!("recomposition returns the original");
    Ok(())
}
