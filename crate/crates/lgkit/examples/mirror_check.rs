//! Mirror consistency: the state-space dimension of (W, G_max) equals the
//! Milnor number of the transpose, which equals the size of its standard
//! good basis. The report also flags chain variables of weight 1/2.
//!
//! Run with: cargo run --example mirror_check

use lgkit::prelude::*;

fn main() -> Result<()> {
    println!(
        "{:28} {:>9} {:>9} {:>10}  {:5}  {}",
        "W", "dim H_W", "mu(W^T)", "good basis", "equal", "1/2-chain"
    );
    for text in [
        "x^2*y + y^3",
        "x^3 + y^3 + z^3",
        "x^6",
        "x^3 + x*y^5",
        "x1^3*x2 + x2^5",
        "x1^2*x2 + x2^2*x3 + x1*x3^3",
        "x1^4 + x2^3*x3 + x3^2",
    ] {
        let f = Polynomial::parse(text)?;
        let w = check_invertible(&f)?;
        let r = mirror_check(&w, DEFAULT_GROUP_BOUND)?;
        println!(
            "{:28} {:>9} {:>9} {:>10}  {:5}  {}",
            f.to_string(),
            r.state_dim,
            r.mirror_milnor,
            r.good_basis_size,
            r.equal,
            r.weight_half_chain
        );
        assert!(r.equal);
    }
    Ok(())
}
