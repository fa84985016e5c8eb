//! Lattice-path families: generation, validation, closed-form counts, and
//! the halving relation between the two Schröder families.
//!
//! Run with: cargo run --example lattice_paths

use unisort::paths::{
    count_family, generate_all, little_schroeder, schroeder, three_catalan, Family, LatticePath,
};

fn main() -> unisort::Result<()> {
    println!("S-Motzkin paths of size 2:");
    for path in generate_all(Family::SMotzkin, 2)? {
        println!("  {path}");
    }

    for k in 0..=6usize {
        assert_eq!(count_family(Family::SMotzkin, k)? as i128, three_catalan(k)?);
    }
    println!("\ngenerated S-Motzkin counts match C(3k,k)/(2k+1) for k <= 6");

    for k in 1..=6usize {
        assert_eq!(schroeder(k)?, 2 * little_schroeder(k)?);
    }
    println!("Schröder counts are twice the little Schröder counts for k <= 6");

    // validation is strict: an H resting on the axis is fine for one
    // family and rejected by the other
    assert!(LatticePath::parse("HUD", Family::Schroeder).is_ok());
    assert!(LatticePath::parse("HUD", Family::LittleSchroeder).is_err());
    println!("\nHUD is a Schröder path but not a little Schröder path");
    Ok(())
}
