//! Runs every exact cross-check on a scenario and prints the report. The
//! corrupted scenario shows how a bad relation ideal is caught.
//!
//! ```bash
//! cargo run --example verify_scenario -- crates/core/examples/scenarios/corrupted_cusp.json
//! ```

use std::path::PathBuf;

use chevalley::experiments::verify_consistency;
use chevalley::scenario::Scenario;

fn main() -> chevalley::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenarios/identity.json")));
    let report = verify_consistency(&Scenario::load(&path)?)?;
    print!("{}", report.text());
    if !report.passed() {
        std::process::exit(4);
    }
    Ok(())
}
