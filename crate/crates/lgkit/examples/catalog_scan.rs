//! Run the bundled catalog through the analysis pipeline and compare
//! against the pinned expectations.
//!
//! Run with: cargo run --release --example catalog_scan

use lgkit::catalog;
use lgkit::report::{run_catalog, CatalogOptions};

fn main() -> lgkit::Result<()> {
    let entries = catalog::bundled_entries()?;
    let report = run_catalog(&entries, &CatalogOptions::default())?;
    for e in &report.entries {
        let c = e.computed.as_ref();
        println!(
            "{} {:28} mu={:<4} |G|={:<4} state={:<4} {}",
            if e.ok { "ok  " } else { "FAIL" },
            e.name,
            c.map(|c| c.mu).unwrap_or(0),
            c.map(|c| c.g_order).unwrap_or(0),
            c.map(|c| c.state_dim).unwrap_or(0),
            e.error.clone().unwrap_or_default(),
        );
    }
    println!("{} / {} passed", report.passed, report.total);
    std::process::exit(if report.failed == 0 { 0 } else { 1 });
}
