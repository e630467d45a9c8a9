//! Loads a scenario and prints its Chevalley table.
//!
//! ```bash
//! cargo run --example chevalley_table -- crates/core/examples/scenarios/cusp.json
//! ```

use std::path::PathBuf;

use chevalley::experiments::{table_text, run_table};
use chevalley::scenario::Scenario;

fn main() -> chevalley::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenarios/cusp.json")));
    let sc = Scenario::load(&path)?;
    print!("{}", table_text(&run_table(&sc)?));
    Ok(())
}
