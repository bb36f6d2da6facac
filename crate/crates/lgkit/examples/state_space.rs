//! State-space sectors for the maximal symmetry group: one summand per
//! group element, narrow sectors contribute 1, broad sectors the invariant
//! part of the middle cohomology of the restriction.
//!
//! Run with: cargo run --example state_space

use lgkit::prelude::*;

fn main() -> Result<()> {
    for text in ["x^3", "x^2*y + y^3", "x^3 + y^3 + z^3"] {
        let f = Polynomial::parse(text)?;
        let w = check_invertible(&f)?;
        let s = fjrw_state_space(&w, DEFAULT_GROUP_BOUND)?;
        println!("W = {f}");
        for sec in &s.sectors {
            let phases: Vec<String> = sec.element.phases().iter().map(rat_string).collect();
            let fixed: Vec<String> = sec.fixed.iter().map(|v| format!("x{}", v + 1)).collect();
            let kind = if sec.fixed.is_empty() { "narrow" } else { "broad " };
            println!(
                "  ({:12}) {kind} fix {{{:8}}} dim {}{}",
                phases.join(", "),
                fixed.join(","),
                sec.dimension,
                sec.restricted
                    .as_ref()
                    .map(|p| format!("   W|fix = {p}"))
                    .unwrap_or_default()
            );
        }
        println!("  total dimension {}\n", s.total_dimension);
    }
    Ok(())
}
