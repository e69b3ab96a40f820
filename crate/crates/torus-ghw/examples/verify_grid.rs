//! Run the formula-verification suites in-process: every closed form the
//! crate implements is re-derived or cross-checked against the exhaustive
//! oracle over a grid of fields and dimensions.
//!
//!     cargo run --release --example verify_grid

use torus_ghw::cli::verify::{format_summary, run_verify, Overrides};
use torus_ghw::OracleCaps;

fn main() {
    let caps = OracleCaps::default();
    let results = run_verify(5, 3, &caps, &Overrides::default());
    let (summary, pass) = format_summary(&results);
    print!("{summary}");
    assert!(pass);

    let total: u64 = results.iter().map(|r| r.checks).sum();
    println!("{total} individual identities checked");
}
