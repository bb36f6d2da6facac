//! Parse polynomial text, inspect the canonical form, and round-trip it.
//!
//! Run with: cargo run --example parse_and_format

use lgkit::prelude::*;

fn main() -> Result<()> {
    for text in [
        "x1^3 + x2^3 + x3^3",
        "x^2*y + y^3",
        "y^3 + x^2*y",          // same polynomial, different term order
        "2*x^3 + -1/2*x*y^3",   // rational coefficients
    ] {
        let f = Polynomial::parse(text)?;
        println!("input      {text}");
        println!("canonical  {f}");
        println!("variables  {}", f.num_vars());
        let e = f.exponent_matrix();
        for i in 0..e.rows() {
            println!("  row {i}    {:?}", e.row(i));
        }
        let round = Polynomial::parse(&f.to_string())?;
        assert_eq!(round, f);
        println!("round-trip ok\n");
    }

    // errors carry byte positions
    for bad in ["x^2 + 3", "x1^2 + y^3", "x^2 + -x"] {
        match Polynomial::parse(bad) {
            Err(e) => println!("rejected   {bad:?}: {e}"),
            Ok(_) => unreachable!(),
        }
    }
    Ok(())
}
