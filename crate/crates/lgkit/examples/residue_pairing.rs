//! The Grothendieck residue pairing on the Jacobian algebra, normalized by
//! Res(hess f) = mu. For a Fermat x^a this reproduces the textbook
//! g(x^i, x^j) = delta_{i+j, a-2} / a.
//!
//! Run with: cargo run --example residue_pairing

use lgkit::prelude::*;

fn print_pairing(text: &str) -> Result<()> {
    let f = Polynomial::parse(text)?;
    let q = weights(&f.exponent_matrix())?;
    let basis = jacobian_basis(&f, &q)?;
    let pairing = residue_pairing(&f, &basis, &q)?;
    println!("residue pairing on Jac({f}):");
    let names: Vec<String> = basis.elements.iter().map(|e| e.monomial.to_string()).collect();
    let width = names.iter().map(|n| n.len()).max().unwrap_or(1).max(6);
    print!("{:width$}", "");
    for n in &names {
        print!(" {n:>width$}");
    }
    println!();
    for (i, row) in pairing.matrix.iter().enumerate() {
        print!("{:width$}", names[i]);
        for v in row {
            print!(" {:>width$}", rat_string(v));
        }
        println!();
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    print_pairing("x^4")?;
    print_pairing("x^3 + y^3")?;
    print_pairing("x^2*y + y^3")?;
    Ok(())
}
