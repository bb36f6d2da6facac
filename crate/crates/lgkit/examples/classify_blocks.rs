//! Invertibility check, atomic decomposition, weights, central charge,
//! and Milnor number.
//!
//! Run with: cargo run --example classify_blocks

use lgkit::prelude::*;

fn main() -> Result<()> {
    for text in [
        "x^5",
        "x1^2*x2 + x2^2*x1",
        "x^3 + x*y^3",
        "x1^2*x2 + x2^3",
        "x1^3 + x2^3 + x3^4",
        "x1^2*x2 + x2^2*x3 + x1*x3^3",
    ] {
        let f = Polynomial::parse(text)?;
        let w = check_invertible(&f)?;
        let ws = weight_system(&w.matrix)?;
        println!("{f}");
        for b in &w.blocks {
            let vars: Vec<String> = b.variables.iter().map(|v| format!("x{}", v + 1)).collect();
            println!(
                "  {:?} on ({}) with exponents {:?}{}",
                b.kind,
                vars.join(", "),
                b.exponents,
                match b.orientation {
                    Some(ChainOrientation::HeadPowerFirst) => " [head power first]",
                    Some(ChainOrientation::TailPowerLast) => " [tail power last]",
                    None => "",
                }
            );
        }
        if let Some(label) = ade_label(&w.blocks) {
            println!("  label          {label}");
        }
        let qs: Vec<String> = ws.weights.iter().map(rat_string).collect();
        println!("  weights        ({})", qs.join(", "));
        println!("  central charge {}", rat_string(&ws.central_charge));
        println!("  milnor number  {}", ws.milnor_number);
        println!();
    }

    // rejection paths
    for bad in ["x^2 + x*y", "x^3 + y^3 + x*y"] {
        let f = Polynomial::parse(bad)?;
        match check_invertible(&f) {
            Err(e) => println!("rejected {bad:?}: {e}"),
            Ok(_) => unreachable!(),
        }
    }
    Ok(())
}
