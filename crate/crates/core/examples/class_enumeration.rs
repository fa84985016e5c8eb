//! Exhaustive class sweeps: list the members of a pattern-restricted
//! class and tabulate counts against the known closed forms.
//!
//! Run with: cargo run --example class_enumeration

use unisort::enumeration::{count_table, enumerate_class};
use unisort::perm::PatternSet;
use unisort::serial::count_table_to_csv;

fn main() -> unisort::Result<()> {
    let patterns = PatternSet::parse("132,4312")?;
    println!("members avoiding {{132, 4312}} at length 7:");
    for q in enumerate_class(7, &patterns)? {
        println!("  {q}");
    }

    let sets = [
        PatternSet::parse("132,231")?,
        PatternSet::parse("312,2431")?,
        PatternSet::parse("231,4312")?,
    ];
    let table = count_table(4, &sets)?;
    println!("\n{}", count_table_to_csv(&table));
    Ok(())
}
