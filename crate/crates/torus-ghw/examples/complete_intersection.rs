//! A degenerate torus in P^3 over GF(181): the 90 points
//! [1 : t1^90 : t2^36 : t3^20] with t1, t2, t3 ranging over GF(181)*. Its
//! vanishing ideal is a complete intersection, which pins down large parts
//! of the weight hierarchy without any search.
//!
//!     cargo run --release --example complete_intersection

use torus_ghw::{
    build_code, ci_a_level_hierarchy, ci_mds_range, ci_tail_weights, dual_code, duality_complete,
    hilbert_profile, is_r_mds, min_distance, toric_points, Field, Method, OracleCaps,
    WeightHierarchy,
};

fn main() {
    let field = Field::new(181).unwrap();
    // One exponent row per coordinate of the parameterization.
    let x = toric_points(
        &field,
        &[vec![0, 0, 0], vec![90, 0, 0], vec![0, 36, 0], vec![0, 0, 20]],
    )
    .unwrap();
    let profile = hilbert_profile(&x).unwrap();
    println!(
        "|X| = {}, regularity = {}, a-invariant = {}",
        x.len(),
        profile.reg,
        profile.a_inv
    );
    assert_eq!(x.len(), 90);

    // Complete-intersection symmetry of the Hilbert function:
    // H(d) + H(a - d) = |X| for 0 <= d <= a.
    let a = profile.a_inv as usize;
    for d in 0..=a {
        let sum = profile.values[d] + profile.values[a - d];
        assert_eq!(sum, x.len(), "H({d}) + H({}) != |X|", a - d);
    }
    println!("H(d) + H({a} - d) = 90 for every d: ok");
    println!("H(5) = {}, H(7) = {}", profile.values[5], profile.values[7]);

    // At the a-invariant degree the whole hierarchy is forced: d_r = r + 1.
    let code = build_code(&x, a as u32).unwrap();
    println!("C({a}) is a [{}, {}] code", code.n(), code.k());
    let formula = ci_a_level_hierarchy(code.n()).unwrap();

    // Cross-check by duality: the dual is one-dimensional, so its single
    // weight is cheap to compute even though n = 90, and Wei duality then
    // determines all 89 weights of C(a).
    let caps = OracleCaps::default();
    let dual = dual_code(&code);
    assert_eq!(dual.k(), 1);
    let w1 = min_distance(&dual, &caps).unwrap();
    println!("the dual codeword has full support: weight {w1}");
    let derived =
        duality_complete(&WeightHierarchy::new(vec![w1], Method::Oracle), code.n()).unwrap();
    assert_eq!(derived.weights(), formula.weights());
    println!("duality agrees with d_r = r + 1 for all r = 1..={}", code.k());

    // Away from the a-level, the tail of the hierarchy is still explicit:
    // d_{beta-i} = |X| - i, where beta = dim C(d) and the count of forced
    // entries is governed by the minimum distance of the complementary
    // degree a - d.
    for (d, d1_complement) in [(5u32, 7usize), (7, 9)] {
        let c = build_code(&x, d).unwrap();
        let beta = c.k();
        let tail = ci_tail_weights(x.len(), beta, d1_complement).unwrap();
        println!(
            "C({d}): k = {beta}, the top {} weights are forced:",
            tail.len()
        );
        for (&r, &w) in tail.iter().rev().take(3) {
            println!("  d_{r} = {w}");
        }
        // Everything from rank alpha on is r-MDS (meets Singleton exactly).
        let (alpha, mds) = ci_mds_range(x.len(), beta, d1_complement).unwrap();
        assert_eq!(mds, tail);
        for (&r, &w) in mds.iter() {
            assert!(is_r_mds(&c, r, w).unwrap());
        }
        println!("  and C({d}) is r-MDS for every r >= {alpha}");
    }
}
