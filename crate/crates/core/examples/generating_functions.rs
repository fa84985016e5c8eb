//! Exact power-series arithmetic: the Catalan series, the composition
//! C(xC(x)), and the two algebraic identities checked coefficientwise.
//!
//! Run with: cargo run --example generating_functions

use unisort::series::{
    b_series, btilde_series, catalan_series, check_btilde_identity, check_sum_identity,
};

fn main() -> unisort::Result<()> {
    println!("C(x):    {:?}", catalan_series(8)?.coefficients());
    println!("C(xC(x)): {:?}", b_series(8)?.coefficients());
    println!("x·B(x²): {:?}", btilde_series(10)?.coefficients());

    for k in [1usize, 2, 6, 12] {
        println!("sum identity at k = {k}: {}", check_sum_identity(k)?);
    }
    println!(
        "functional equation to 25 terms: {}",
        check_btilde_identity(25)?
    );
    Ok(())
}
