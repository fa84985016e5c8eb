//! Shape classification: which structural classes a permutation falls in,
//! and the pattern pair that characterizes each class.
//!
//! Run with: cargo run --example shape_classifier

use unisort::perm::Permutation;
use unisort::shapes::{classify, ShapeClass};

fn main() -> unisort::Result<()> {
    for text in [
        "10 6 5 3 2 1 4 7 8 9 11",
        "643527819",
        "732154689",
        "3 2 4 1 9 8 7 10 11 6 5 12 13",
        "213",
    ] {
        let pi: Permutation = text.parse()?;
        let tags = classify(&pi);
        let names: Vec<&str> = tags.iter().map(|t| t.name()).collect();
        println!("{pi}: {}", names.join(", "));
    }

    println!("\nclass → avoided patterns:");
    for shape in ShapeClass::ALL {
        let [a, b] = shape.patterns();
        println!("  {shape:<16} {{{a}, {b}}}");
    }
    Ok(())
}
