//! Graded Jacobian algebra: monomial bases, hessian, normal forms, and the
//! isolatedness certificate.
//!
//! Run with: cargo run --example jacobian_basis

use lgkit::prelude::*;

fn main() -> Result<()> {
    for text in ["x^3", "x^2*y + y^3", "x^3 + y^3 + z^3", "x^3 + x*y^3"] {
        let f = Polynomial::parse(text)?;
        let q = weights(&f.exponent_matrix())?;
        let basis = jacobian_basis(&f, &q)?;
        println!("Jac({f}), mu = {}", basis.len());
        for el in &basis.elements {
            println!("  {:8}  degree {}", el.monomial.to_string(), rat_string(&el.degree));
        }
        println!("  socle degree = central charge = {}", rat_string(&basis.socle_degree));
        println!("  hessian = {}", hessian(&f));
        println!();
    }

    // normal form in the top degree: x^2 = -3 y^2 mod (2xy, x^2 + 3y^2)
    let f = Polynomial::parse("x^2*y + y^3")?;
    let q = weights(&f.exponent_matrix())?;
    let reducer = TopDegreeReducer::new(&f, &q)?;
    let x2 = Polynomial::parse("x1^2 + 0*x2")?;
    println!(
        "x1^2 = {} * {} in Jac({f})",
        rat_string(&reducer.reduce_polynomial(&x2)?),
        reducer.socle_monomial()
    );

    // isolatedness: x^2 y^2 has a non-isolated critical locus
    let g = Polynomial::parse("x^2*y^2")?;
    let qg = vec![lgkit::poly::Rat::new(1.into(), 4.into()); 2];
    let rep = isolatedness_check(&g, &qg)?;
    println!(
        "\n{g} isolated: {}, quotient persists at degree {:?}",
        rep.isolated,
        rep.offending_degree.map(|d| rat_string(&d))
    );
    Ok(())
}
