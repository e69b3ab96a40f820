//! Reproduce the worked weight-hierarchy tables for torus codes over GF(4)
//! and GF(5), checking the closed forms for d_1 and d_2 against the
//! exhaustive oracle on every row.
//!
//!     cargo run --release --example hierarchy_tables

use torus_ghw::{
    build_code, d1_torus, d2_torus, hierarchy_exact, hilbert_profile, torus_points, Field,
    OracleCaps,
};

fn table(q: u32) {
    let field = Field::new(q).unwrap();
    let torus = torus_points(&field, 3).unwrap();
    let profile = hilbert_profile(&torus).unwrap();
    let caps = OracleCaps::default();
    println!(
        "GF({}), T_2: n = {}, regularity {}",
        q,
        torus.len(),
        profile.reg
    );

    for d in 1..=profile.reg {
        let code = build_code(&torus, d).unwrap();
        let h = hierarchy_exact(&code, &caps).unwrap();
        let row: Vec<String> = h.weights().iter().map(|w| w.to_string()).collect();
        println!("  d={}  k={:>2}  ({})", d, code.k(), row.join(", "));

        // The closed forms cover the first two weights at every degree.
        let d1 = d1_torus(q as u64, 3, d as u64).unwrap();
        assert_eq!(d1, h.weight(1).unwrap() as u128, "d1 mismatch at d={d}");
        if code.k() >= 2 {
            let d2 = d2_torus(q as u64, 3, d as u64).unwrap();
            assert_eq!(d2, h.weight(2).unwrap() as u128, "d2 mismatch at d={d}");
        }
    }
    println!("  closed forms match the oracle on every row\n");
}

fn main() {
    table(4);
    table(5);
}
