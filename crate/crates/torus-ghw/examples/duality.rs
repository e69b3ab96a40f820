//! Wei duality: the weight hierarchies of a code and its dual partition
//! {1, …, n} between them. Knowing one hierarchy therefore determines the
//! other, which turns hard sweeps into cheap ones when the dual dimension
//! is small.
//!
//!     cargo run --release --example duality

use std::collections::BTreeSet;

use torus_ghw::{
    build_code, dual_code, duality_complete, hierarchy_exact, torus_points, Field, OracleCaps,
};

fn main() {
    let field = Field::new(5).unwrap();
    let torus = torus_points(&field, 3).unwrap();
    let caps = OracleCaps::default();
    let n = torus.len();

    let c2 = build_code(&torus, 2).unwrap();
    let c2_h = hierarchy_exact(&c2, &caps).unwrap();
    println!("C(2): {:?}", c2_h.weights());

    // The dual of C(2) happens to be monomially equivalent to C(3) for this
    // torus; either way, its hierarchy comes straight from C(2)'s.
    let dual = dual_code(&c2);
    let dual_h = hierarchy_exact(&dual, &caps).unwrap();
    println!("C(2)^perp: {:?}", dual_h.weights());

    // The partition: {d_r(C)} and {n + 1 - d_r(C^perp)} tile {1..n} exactly.
    let mut seen: BTreeSet<usize> = c2_h.weights().iter().copied().collect();
    for &w in dual_h.weights() {
        assert!(seen.insert(n + 1 - w), "duality overlap at {w}");
    }
    assert_eq!(seen, (1..=n).collect::<BTreeSet<_>>());
    println!("{{d_r(C)}} ∪ {{n+1-d_r(C^perp)}} = {{1..{n}}}: ok");

    // duality_complete does that bookkeeping for you.
    let derived = duality_complete(&dual_h, n).unwrap();
    assert_eq!(derived.weights(), c2_h.weights());
    println!("hierarchy of C(2) recovered from its dual alone");

    // Sanity: specific derived weights match the direct sweep.
    assert_eq!(derived.weight(2), Some(11));
    assert_eq!(derived.weight(3), Some(12));
}
