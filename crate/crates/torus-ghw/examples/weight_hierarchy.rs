//! Build one evaluation code over a projective torus and compute its full
//! generalized Hamming weight hierarchy exactly.
//!
//!     cargo run --release --example weight_hierarchy

use torus_ghw::{build_code, hierarchy_exact, torus_points, Field, OracleCaps};

fn main() {
    // The projective torus T_2 ⊂ P^2 over GF(5): all points [1 : a : b]
    // with a, b nonzero. That is (5-1)^2 = 16 points.
    let field = Field::new(5).unwrap();
    let torus = torus_points(&field, 3).unwrap();
    println!("point set: {} points in P^{} over GF(5)", torus.len(), torus.s() - 1);

    // Evaluate every homogeneous quadric at those points.
    let code = build_code(&torus, 2).unwrap();
    println!(
        "C(2) is a [{}, {}] code over GF({})",
        code.n(),
        code.k(),
        code.field().q()
    );

    // d_r = the smallest support of an r-dimensional subcode. d_1 is the
    // minimum distance; the rest refine it.
    let h = hierarchy_exact(&code, &OracleCaps::default()).unwrap();
    for (r, w) in h.weights().iter().enumerate() {
        println!("  d_{} = {}", r + 1, w);
    }

    // Two laws every hierarchy obeys: strict growth, and the generalized
    // Singleton bound d_r <= n - k + r.
    let w = h.weights();
    assert!(w.windows(2).all(|p| p[0] < p[1]));
    assert!(w
        .iter()
        .enumerate()
        .all(|(i, &d)| d <= code.n() - code.k() + i + 1));
    println!("strictly increasing and within the Singleton bound: ok");
}
