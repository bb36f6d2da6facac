//! Maximal diagonal symmetry group: invariant factors, generators, element
//! enumeration, fixed loci, and twisted characters on monomials.
//!
//! Run with: cargo run --example symmetry_group

use lgkit::prelude::*;

fn main() -> Result<()> {
    let f = Polynomial::parse("x^2*y + y^3")?;
    let w = check_invertible(&f)?;
    let e = &w.matrix;

    let g = max_symmetry_group(e)?;
    println!("W = {f}");
    println!("|G| = {} (= |det E|), invariant factors {:?}", g.order, g.invariant_factors);
    for gen in &g.generators {
        let phases: Vec<String> = gen.phases().iter().map(rat_string).collect();
        println!("generator ({})", phases.join(", "));
    }

    let elements = enumerate_elements(&g, DEFAULT_GROUP_BOUND)?;
    for (k, el) in elements.iter().enumerate() {
        let phases: Vec<String> = el.phases().iter().map(rat_string).collect();
        let fixed: Vec<String> = el
            .fixed_locus()
            .iter()
            .map(|v| format!("x{}", v + 1))
            .collect();
        println!("  element {k}: ({})  fixes {{{}}}", phases.join(", "), fixed.join(", "));
    }

    // the exponential grading element is always a member
    let q = weights(e)?;
    let j = exponential_grading_element(&q);
    assert!(is_member(e, &j));
    let phases: Vec<String> = j.phases().iter().map(rat_string).collect();
    println!("grading element ({}) is a member", phases.join(", "));

    // twisted character of x * dx1 ^ dx2 under the generator
    let m = Monomial::new(vec![1, 0], num::BigRational::from_integer(1.into()));
    let chi = monomial_character(&g.generators[0], &m, &[0, 1], true)?;
    println!("twisted character of x1*dx1^dx2 under the generator: {}", rat_string(&chi));
    Ok(())
}
