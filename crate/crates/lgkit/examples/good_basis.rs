//! The standard good basis of an invertible polynomial, built blockwise:
//! truncated powers for Fermats, the full box for loops, and the box minus
//! the excluded tail patterns for chains. Its size always equals the
//! Milnor number, and its degree multiset matches the Jacobian basis.
//!
//! Run with: cargo run --example good_basis

use lgkit::prelude::*;

fn main() -> Result<()> {
    for text in [
        "x^5",
        "x^3 + y^3 + z^3",
        "x^2 + x*y^3",
        "x1^2 + x1*x2^2 + x2*x3^2",
        "x1^2*x2 + x2^2*x1",
    ] {
        let f = Polynomial::parse(text)?;
        let w = check_invertible(&f)?;
        let ws = weight_system(&w.matrix)?;
        let basis = standard_good_basis(&w)?;
        println!("{f}");
        let names: Vec<String> = basis.iter().map(|m| m.to_string()).collect();
        println!("  good basis ({} elements): {}", basis.len(), names.join(", "));
        assert_eq!(num::BigInt::from(basis.len()), ws.milnor_number);

        // same degree multiset as the Jacobian basis
        let jac = jacobian_basis(&f, &ws.weights)?;
        let mut good_degrees: Vec<Rat> = basis.iter().map(|m| m.degree(&ws.weights)).collect();
        good_degrees.sort();
        assert_eq!(good_degrees, jac.degree_multiset());
        println!("  degree multiset matches Jac(f)\n");
    }
    Ok(())
}
