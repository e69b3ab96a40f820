//! Codes parameterized by the edges of a complete bipartite graph K_{m,n}:
//! the point set lives in P^{m+n-1} and the second generalized Hamming
//! weight of the degree-d code has a closed form.
//!
//!     cargo run --release --example bipartite

use torus_ghw::{
    build_code, d2_bipartite, bipartite_points, ghw_exact, hilbert_profile, Field, OracleCaps,
};

fn main() {
    let caps = OracleCaps::default();
    for q in [3u32, 5] {
        let field = Field::new(q).unwrap();
        let x = bipartite_points(&field, 2, 2).unwrap();
        let profile = hilbert_profile(&x).unwrap();
        println!(
            "K_2,2 over GF({q}): {} points, regularity {}",
            x.len(),
            profile.reg
        );
        for d in 1..profile.reg {
            let code = build_code(&x, d).unwrap();
            if code.k() < 2 {
                continue;
            }
            let by_formula = d2_bipartite(q as u64, 2, 2, d as u64).unwrap();
            let by_oracle = ghw_exact(&code, 2, &caps).unwrap();
            println!(
                "  d={d}: [{}, {}] code, d_2 = {by_oracle} (formula {by_formula})",
                code.n(),
                code.k()
            );
            assert_eq!(by_formula, by_oracle as u128);
        }
    }
}
