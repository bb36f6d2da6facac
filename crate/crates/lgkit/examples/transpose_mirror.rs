//! The transpose mirror polynomial: Fermats are self-transpose, chains flip
//! orientation, loops reverse direction; the operation is an involution and
//! preserves |det E|, hence the symmetry group order.
//!
//! Run with: cargo run --example transpose_mirror

use lgkit::prelude::*;

fn main() -> Result<()> {
    for text in [
        "x^2*y + y^3",
        "x^3 + x*y^3",
        "x1^3*x3 + x1*x2^2 + x2*x3^2",
        "x1^3 + x2^3 + x3^3",
    ] {
        let f = Polynomial::parse(text)?;
        let w = check_invertible(&f)?;
        let t = transpose(&w);
        println!("W   = {f}");
        println!("W^T = {t}");

        let tw = check_invertible(&t)?;
        let back = transpose(&tw);
        assert_eq!(back, f, "transpose is an involution");

        let gw = max_symmetry_group(&w.matrix)?;
        let gt = max_symmetry_group(&tw.matrix)?;
        assert_eq!(gw.order, gt.order);
        println!("|G_max(W)| = |G_max(W^T)| = {}\n", gw.order);
    }
    Ok(())
}
