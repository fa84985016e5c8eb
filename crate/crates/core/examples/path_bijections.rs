//! The permutation ↔ lattice-path bijections: map class members to paths,
//! invert the paths, and draw the staircases.
//!
//! Run with: cargo run --example path_bijections

use unisort::bijections::MapVia;
use unisort::perm::Permutation;
use unisort::render::render_path;

fn main() -> unisort::Result<()> {
    let cases = [
        (MapVia::Lemma31, "10 6 5 3 2 1 4 7 8 9 11"),
        (MapVia::Thm53, "3 2 4 1 9 8 7 10 11 6 5 12 13"),
        (MapVia::Thm55, "4 3 2 5 7 6 1 9 10 8 11"),
        (MapVia::Thm61, "732154689"),
    ];
    for (via, text) in cases {
        let pi: Permutation = text.parse()?;
        let path = via.apply(&pi)?;
        println!("{via}: {pi}  ->  {path}");
        print!("{}", render_path(&path));
        let back = via.invert(&path)?;
        assert_eq!(back, pi);
        println!("  (inverse recovers {back})\n");
    }
    Ok(())
}
