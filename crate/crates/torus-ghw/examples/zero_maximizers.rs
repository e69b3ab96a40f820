//! Construct, for each degree d, an explicit pair of degree-d forms that are
//! linearly independent and share the largest possible number of common
//! zeros on the torus — the configuration that realizes the second
//! generalized Hamming weight.
//!
//!     cargo run --release --example zero_maximizers

use torus_ghw::{torus_points, z2, Field};

fn main() {
    let q = 5;
    let s = 3;
    let field = Field::new(q).unwrap();
    let torus = torus_points(&field, s).unwrap();
    let n = torus.len();

    for d in 1..=4u32 {
        let (f, g) = torus_ghw::construct_zero_maximizers(&field, s, d).unwrap();
        let zf = f.zero_set(&torus).unwrap();
        let zg = g.zero_set(&torus).unwrap();
        let common = zf
            .iter()
            .filter(|i| zg.binary_search(i).is_ok())
            .count();
        let predicted = z2(q as u64, s as u32, d as u64).unwrap();

        println!("d = {d}");
        println!("  F = {f}");
        println!("  G = {g}");
        println!(
            "  |Z(F) ∩ Z(G)| = {common}, closed form Z2 = {predicted}, so d_2 = {}",
            n - common
        );
        assert_eq!(common as u128, predicted);
    }
}
