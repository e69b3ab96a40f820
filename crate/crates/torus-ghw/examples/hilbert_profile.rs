//! Hilbert functions of the point sets this crate builds: the dimension
//! k = H(d) of every evaluation code, the regularity where H reaches |X|,
//! and the a-invariant.
//!
//!     cargo run --release --example hilbert_profile

use torus_ghw::{bipartite_points, hilbert_profile, toric_points, torus_points, Field, PointSet};

fn show(label: &str, x: &PointSet) {
    let p = hilbert_profile(x).unwrap();
    let head: Vec<String> = p.values.iter().map(|v| v.to_string()).collect();
    println!("{label}: |X| = {}", x.len());
    println!("  H = [{}]", head.join(", "));
    println!("  regularity {}, a-invariant {}", p.reg, p.a_inv);
}

fn main() {
    let f5 = Field::new(5).unwrap();
    show("torus T_2 / GF(5)", &torus_points(&f5, 3).unwrap());

    let f3 = Field::new(3).unwrap();
    show("torus T_3 / GF(3)", &torus_points(&f3, 4).unwrap());

    show("K_2,2 / GF(5)", &bipartite_points(&f5, 2, 2).unwrap());

    // A degenerate torus: growth is slower and regularity larger than for
    // the full torus in the same ambient dimension.
    let f7 = Field::new(7).unwrap();
    let sq = toric_points(&f7, &[vec![0, 0], vec![2, 0], vec![0, 1]]).unwrap();
    show("[1 : t1^2 : t2] / GF(7)", &sq);

    // An explicit point list, straight from text.
    let x = PointSet::from_text("3 3\n1 1 1\n1 1 2\n1 2 1\n0 1 1\n").unwrap();
    show("explicit 4-point set / GF(3)", &x);
}
