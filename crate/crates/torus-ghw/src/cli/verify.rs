//! Machine verification suites: every closed-form statement the library
//! implements, checked against the exhaustive oracle and against pure
//! integer recomputations over parameter grids.
//!
//! Grids deliberately exceed the requested `--grid qmax smax` for the pure
//! formula suites (those run on any integer q ≥ 3, prime power or not);
//! code-backed suites run on every prime power q ≤ qmax and stay within the
//! oracle's exhaustive cap. All hierarchies are memoized across suites.

use std::collections::HashMap;

use crate::evalcode::{build_code, dual_code, hilbert_profile, is_degenerate, LinearCode};
use crate::field::Field;
use crate::formulas::{
    self, ci_a_level_hierarchy, ci_mds_range, ci_tail_weights, kl_decompose, FormulaError,
    KLDecomp,
};
use crate::geometry::{bipartite_points, torus_points, PointSet};
use crate::ghw::{
    duality_complete, hierarchy_exact, is_r_mds, GhwError, Method, OracleCaps, WeightHierarchy,
};
use crate::matrix::GfMatrix;
use crate::poly::construct_zero_maximizers;

/// Test hooks: swap a formula for a corrupted one to prove the suites
/// actually detect disagreements. The CLI always runs with the defaults.
#[derive(Default, Clone, Copy)]
pub struct Overrides {
    pub d2_torus: Option<fn(u64, u32, u64) -> Result<u128, FormulaError>>,
}

impl Overrides {
    fn d2(&self, q: u64, s: u32, d: u64) -> Result<u128, FormulaError> {
        match self.d2_torus {
            Some(f) => f(q, s, d),
            None => formulas::d2_torus(q, s, d),
        }
    }
}

pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> SuiteResult {
        SuiteResult {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }
}

/// Shared state: point sets, codes, and hierarchies, keyed by (q, s, d).
struct Ctx<'a> {
    caps: &'a OracleCaps,
    ov: &'a Overrides,
    tori: HashMap<(u32, u32), PointSet>,
    codes: HashMap<(u32, u32, u32), LinearCode>,
    hiers: HashMap<(u32, u32, u32), Option<WeightHierarchy>>,
}

impl Ctx<'_> {
    fn torus(&mut self, q: u32, s: u32) -> PointSet {
        self.tori
            .entry((q, s))
            .or_insert_with(|| {
                let f = Field::new(q).expect("grid q is a prime power");
                torus_points(&f, s as usize).expect("torus construction")
            })
            .clone()
    }

    fn code(&mut self, q: u32, s: u32, d: u32) -> LinearCode {
        if let Some(c) = self.codes.get(&(q, s, d)) {
            return c.clone();
        }
        let x = self.torus(q, s);
        let c = build_code(&x, d).expect("torus code construction");
        self.codes.insert((q, s, d), c.clone());
        c
    }

    /// Exact hierarchy, or None when the sweep is infeasible under the caps.
    fn hier(&mut self, q: u32, s: u32, d: u32) -> Option<WeightHierarchy> {
        if let Some(h) = self.hiers.get(&(q, s, d)) {
            return h.clone();
        }
        let c = self.code(q, s, d);
        let h = match hierarchy_exact(&c, self.caps) {
            Ok(h) => Some(h),
            Err(GhwError::Infeasible { .. }) => None,
            Err(e) => panic!("unexpected oracle error on the verify grid: {e}"),
        };
        self.hiers.insert((q, s, d), h.clone());
        h
    }
}

fn prime_powers(qmax: u64) -> Vec<u32> {
    (3..=qmax.min(u32::MAX as u64) as u32)
        .filter(|&q| Field::new(q).is_ok())
        .collect()
}

fn torus_reg(q: u64, s: u32) -> u64 {
    (q - 2) * (s as u64 - 1)
}

/// ⌈(q−2)·(q−1)^{s−(k+3)}⌉, recomputed from scratch (independently of
/// `formulas`) for the unified second-weight cross-check.
fn unified_gap(q: u64, s: u32, k: u64) -> u128 {
    let qm1 = (q - 1) as u128;
    let e = s as i64 - (k as i64 + 3);
    if e >= 0 {
        qm1.pow(e as u32) * (q - 2) as u128
    } else {
        match qm1.checked_pow((-e).try_into().unwrap_or(u32::MAX)) {
            Some(den) => ((q - 2) as u128).div_ceil(den),
            None => 1,
        }
    }
}

fn suite_zero_count_laws(qmax: u64, smax: u32) -> SuiteResult {
    let mut r = SuiteResult::new("zero-count-laws");
    for q in 3..=qmax.max(9) {
        for s in 3..=smax.max(6) {
            let rix = torus_reg(q, s);
            for d in 1..=rix {
                let z1d = formulas::z1(q, s, d).unwrap();
                let z2d = formulas::z2(q, s, d).unwrap();
                r.check(z2d <= z1d, || format!("q={q} s={s} d={d}: Z2 > Z1"));
                if d > 1 {
                    let z1p = formulas::z1(q, s, d - 1).unwrap();
                    let z2p = formulas::z2(q, s, d - 1).unwrap();
                    r.check(z1p <= z1d, || format!("q={q} s={s} d={d}: Z1 not monotone"));
                    r.check(z2p <= z2d, || format!("q={q} s={s} d={d}: Z2 not monotone"));
                    r.check(z1p <= z2d, || {
                        format!("q={q} s={s} d={d}: Z1(d−1) > Z2(d)")
                    });
                }
                let scaled = (q as u128 - 1) * z1d;
                r.check(scaled == formulas::z1(q, s + 1, d).unwrap(), || {
                    format!("q={q} s={s} d={d}: (q−1)Z1(s,d) ≠ Z1(s+1,d)")
                });
                r.check(
                    (q as u128 - 1) * z2d <= formulas::z2(q, s + 1, d).unwrap(),
                    || format!("q={q} s={s} d={d}: (q−1)Z2(s,d) > Z2(s+1,d)"),
                );
            }
        }
    }
    r
}

fn suite_unified_second_weight(qmax: u64, smax: u32, ov: &Overrides) -> SuiteResult {
    let mut r = SuiteResult::new("unified-second-weight");
    for q in 3..=qmax.max(9) {
        for s in 2..=smax.max(6) {
            for d in 1..=torus_reg(q, s) + 3 {
                let KLDecomp { k, .. } = kl_decompose(q, d).unwrap();
                let unified = formulas::d1_torus(q, s, d).unwrap() + unified_gap(q, s, k);
                let d2 = ov.d2(q, s, d).unwrap();
                r.check(d2 == unified, || {
                    format!("q={q} s={s} d={d}: d2={d2} but d1+gap={unified}")
                });
            }
        }
    }
    r
}

fn suite_formula_vs_oracle(ctx: &mut Ctx, qmax: u64, smax: u32) -> SuiteResult {
    let mut r = SuiteResult::new("formula-vs-oracle");
    for q in prime_powers(qmax) {
        for s in 2..=smax {
            let n = (q as u64 - 1).pow(s - 1) as usize;
            if n > ctx.caps.max_n_exhaustive {
                continue;
            }
            let hp = hilbert_profile(&ctx.torus(q, s)).unwrap();
            let rix = torus_reg(q as u64, s);
            r.check(hp.reg as u64 == rix, || {
                format!("q={q} s={s}: regularity {} ≠ (q−2)(s−1)={rix}", hp.reg)
            });
            for d in 1..=(rix + 1) as u32 {
                let c = ctx.code(q, s, d);
                let h_d = hp.values[(d as usize).min(hp.reg as usize)];
                r.check(c.k() == h_d, || {
                    format!("q={q} s={s} d={d}: k={} ≠ H_X(d)={h_d}", c.k())
                });
                let Some(h) = ctx.hier(q, s, d) else { continue };
                let w = h.weights();
                let d1 = formulas::d1_torus(q as u64, s, d as u64).unwrap();
                r.check(d1 == w[0] as u128, || {
                    format!("q={q} s={s} d={d}: d1 formula {d1} ≠ oracle {}", w[0])
                });
                if c.k() >= 2 {
                    let d2 = ctx.ov.d2(q as u64, s, d as u64).unwrap();
                    r.check(d2 == w[1] as u128, || {
                        format!("q={q} s={s} d={d}: d2 formula {d2} ≠ oracle {}", w[1])
                    });
                }
                let z1 = formulas::z1(q as u64, s, d as u64).unwrap();
                r.check(z1 == (n - w[0]) as u128, || {
                    format!("q={q} s={s} d={d}: Z1 ≠ n − d1")
                });
                if s >= 3 && (d as u64) <= rix && c.k() >= 2 {
                    let z2 = formulas::z2(q as u64, s, d as u64).unwrap();
                    r.check(z2 == (n - w[1]) as u128, || {
                        format!("q={q} s={s} d={d}: Z2 ≠ n − d2")
                    });
                }
                for (i, &x) in w.iter().enumerate() {
                    r.check(x <= n - c.k() + i + 1, || {
                        format!("q={q} s={s} d={d}: Singleton violated at r={}", i + 1)
                    });
                    if i > 0 {
                        r.check(w[i - 1] < x, || {
                            format!("q={q} s={s} d={d}: not strictly increasing at r={}", i + 1)
                        });
                    }
                }
                r.check(*w.last().unwrap() == n, || {
                    format!("q={q} s={s} d={d}: d_k ≠ n for a non-degenerate code")
                });
                if d as u64 >= rix {
                    r.check(w.iter().enumerate().all(|(i, &x)| x == i + 1), || {
                        format!("q={q} s={s} d={d}: full-space code should have d_r = r")
                    });
                }
            }
        }
    }
    r
}

fn suite_duality(ctx: &mut Ctx, qmax: u64, smax: u32) -> SuiteResult {
    let mut r = SuiteResult::new("duality");
    for q in prime_powers(qmax) {
        for s in 2..=smax {
            let n = (q as u64 - 1).pow(s - 1) as usize;
            if n > ctx.caps.max_n_exhaustive {
                continue;
            }
            for d in 1..=(torus_reg(q as u64, s) + 1) as u32 {
                let Some(h) = ctx.hier(q, s, d) else { continue };
                let c = ctx.code(q, s, d);
                let derived = duality_complete(&h, n).unwrap();
                let dual = dual_code(&c);
                let direct = if dual.k() == 0 {
                    WeightHierarchy::new(Vec::new(), Method::Oracle)
                } else {
                    hierarchy_exact(&dual, ctx.caps).unwrap()
                };
                r.check(derived.weights() == direct.weights(), || {
                    format!(
                        "q={q} s={s} d={d}: dual hierarchy {:?} ≠ completed {:?}",
                        direct.weights(),
                        derived.weights()
                    )
                });
                let back = duality_complete(&derived, n).unwrap();
                r.check(back.weights() == h.weights(), || {
                    format!("q={q} s={s} d={d}: duality does not round-trip")
                });
            }
        }
    }
    r
}

fn check_monotone(
    r: &mut SuiteResult,
    label: &str,
    lo: &WeightHierarchy,
    hi: &WeightHierarchy,
) {
    for (i, &w) in lo.weights().iter().enumerate() {
        let next = hi.weights()[i];
        if w == i + 1 {
            r.check(next == i + 1, || {
                format!("{label} r={}: d_r stuck at r must stay", i + 1)
            });
        } else {
            r.check(next < w, || {
                format!("{label} r={}: d_r must strictly drop ({w} → {next})", i + 1)
            });
        }
    }
}

fn suite_monotonicity(ctx: &mut Ctx, qmax: u64, smax: u32) -> SuiteResult {
    let mut r = SuiteResult::new("degree-monotonicity");
    for q in prime_powers(qmax) {
        for s in 2..=smax {
            let n = (q as u64 - 1).pow(s - 1) as usize;
            if n > ctx.caps.max_n_exhaustive {
                continue;
            }
            for d in 1..=torus_reg(q as u64, s) as u32 {
                let c = ctx.code(q, s, d);
                r.check(!is_degenerate(&c), || {
                    format!("torus q={q} s={s} d={d}: parameterized code is degenerate")
                });
                let (Some(lo), Some(hi)) = (ctx.hier(q, s, d), ctx.hier(q, s, d + 1)) else {
                    continue;
                };
                check_monotone(&mut r, &format!("torus q={q} s={s} d={d}"), &lo, &hi);
            }
        }
    }
    // The bipartite families are parameterized codes too.
    for q in prime_powers(qmax).into_iter().filter(|&q| q % 2 == 1) {
        let f = Field::new(q).unwrap();
        let x = bipartite_points(&f, 2, 2).unwrap();
        if x.len() > ctx.caps.max_n_exhaustive {
            continue;
        }
        let hp = hilbert_profile(&x).unwrap();
        let mut prev: Option<WeightHierarchy> = None;
        for d in 1..=hp.reg + 1 {
            let c = build_code(&x, d).unwrap();
            r.check(!is_degenerate(&c), || {
                format!("bipartite q={q} d={d}: parameterized code is degenerate")
            });
            let h = hierarchy_exact(&c, ctx.caps).unwrap();
            if let Some(lo) = prev {
                check_monotone(&mut r, &format!("bipartite q={q} d={}", d - 1), &lo, &h);
            }
            prev = Some(h);
        }
    }
    r
}

fn suite_ci(ctx: &mut Ctx, qmax: u64, smax: u32) -> SuiteResult {
    let mut r = SuiteResult::new("complete-intersection");
    for q in prime_powers(qmax) {
        for s in 2..=smax {
            let x = ctx.torus(q, s);
            let n = x.len();
            let hp = hilbert_profile(&x).unwrap();
            let a_x = hp.reg as i64 - 1;
            r.check(hp.a_inv == a_x, || {
                format!("q={q} s={s}: a-invariant mismatch")
            });
            // Hilbert sum identity H(d) + H(a_X − d) = n across the window.
            for d in 0..=a_x {
                let lhs = hp.values[d as usize] + hp.values[(a_x - d) as usize];
                r.check(lhs == n, || {
                    format!("q={q} s={s} d={d}: H(d)+H(a_X−d) = {lhs} ≠ {n}")
                });
            }
            // a-level row: d_r = r + 1, and d_1 = 2 in particular.
            if a_x >= 1 && n >= 2 {
                if let Some(h) = ctx.hier(q, s, a_x as u32) {
                    let want = ci_a_level_hierarchy(n).unwrap();
                    r.check(h.weights() == want.weights(), || {
                        format!("q={q} s={s}: a-level hierarchy ≠ (2..={n})")
                    });
                    r.check(h.weights()[0] == 2, || {
                        format!("q={q} s={s}: d1 at the a-level must be 2")
                    });
                }
            }
            // At the regularity index the code is the whole space.
            if let Some(h) = ctx.hier(q, s, hp.reg) {
                r.check(
                    h.weights().iter().enumerate().all(|(i, &w)| w == i + 1),
                    || format!("q={q} s={s}: d_r ≠ r at d = reg"),
                );
            }
            // Tail weights via the dual-degree minimum distance.
            for d in 1..a_x.max(1) as u32 {
                let beta = hp.values[d as usize];
                let d1_dual =
                    formulas::d1_torus(q as u64, s, (a_x as u64) - d as u64).unwrap() as usize;
                if beta < d1_dual {
                    continue; // forced-tail hypothesis not met; nothing to check
                }
                let tail = ci_tail_weights(n, beta, d1_dual).unwrap();
                let (alpha, mds) = ci_mds_range(n, beta, d1_dual).unwrap();
                r.check(mds == tail, || {
                    format!("q={q} s={s} d={d}: MDS range disagrees with tail weights")
                });
                if let Some(h) = ctx.hier(q, s, d) {
                    let c = ctx.code(q, s, d);
                    for (&rank, &dr) in &tail {
                        r.check(h.weight(rank) == Some(dr), || {
                            format!(
                                "q={q} s={s} d={d}: tail says d_{rank}={dr}, oracle {:?}",
                                h.weight(rank)
                            )
                        });
                        r.check(
                            rank < alpha || is_r_mds(&c, rank, dr).unwrap(),
                            || format!("q={q} s={s} d={d}: r={rank} should be r-MDS"),
                        );
                    }
                }
            }
        }
    }
    r
}

/// Coefficient-level linear independence of two homogeneous polynomials:
/// true unless one is a scalar multiple of the other (or either is zero).
fn independent_polys(f: &crate::poly::HomogPoly, g: &crate::poly::HomogPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    if f.num_terms() != g.num_terms() {
        return true;
    }
    let (mono, c_g) = g.terms().next().unwrap();
    let c_f = f.coeff(mono);
    if c_f.code() == 0 {
        return true;
    }
    let field = f.field();
    let lambda = field.elem(field.divc(c_f.code(), c_g.code())).unwrap();
    *f != g.scale(lambda).unwrap()
}

fn suite_zero_maximizers(ctx: &mut Ctx, qmax: u64, smax: u32) -> SuiteResult {
    let mut r = SuiteResult::new("zero-maximizers");
    for q in prime_powers(qmax) {
        for s in 3..=smax.max(3) {
            let n = (q as u64 - 1).pow(s - 1);
            if n > 4096 {
                continue;
            }
            let x = ctx.torus(q, s);
            let f = x.field().clone();
            for d in 1..=torus_reg(q as u64, s) as u32 {
                let (pf, pg) = construct_zero_maximizers(&f, s as usize, d).unwrap();
                let zf = pf.zero_set(&x).unwrap();
                let zg = pg.zero_set(&x).unwrap();
                r.check(zf.len() < x.len() && zg.len() < x.len(), || {
                    format!("q={q} s={s} d={d}: a maximizer vanishes on the whole torus")
                });
                r.check(independent_polys(&pf, &pg), || {
                    format!("q={q} s={s} d={d}: maximizers are proportional")
                });
                // Codeword-level independence: the two evaluation vectors
                // span a 2-dimensional subcode.
                let rows: Vec<Vec<u32>> = [&pf, &pg]
                    .iter()
                    .map(|p| x.iter().map(|pt| p.eval(pt).unwrap().code()).collect())
                    .collect();
                let rank = GfMatrix::from_codes(&f, &rows).rank();
                r.check(rank == 2, || {
                    format!("q={q} s={s} d={d}: evaluation vectors have rank {rank}")
                });
                let common = zf.iter().filter(|i| zg.binary_search(i).is_ok()).count();
                let z2 = formulas::z2(q as u64, s, d as u64).unwrap();
                r.check(common as u128 == z2, || {
                    format!("q={q} s={s} d={d}: common zeros {common} ≠ Z2 {z2}")
                });
            }
        }
    }
    r
}

/// Run every suite over the grid; `caps` bounds the oracle side.
pub fn run_verify(qmax: u64, smax: u32, caps: &OracleCaps, ov: &Overrides) -> Vec<SuiteResult> {
    let mut ctx = Ctx {
        caps,
        ov,
        tori: HashMap::new(),
        codes: HashMap::new(),
        hiers: HashMap::new(),
    };
    vec![
        suite_zero_count_laws(qmax, smax),
        suite_unified_second_weight(qmax, smax, ov),
        suite_formula_vs_oracle(&mut ctx, qmax, smax),
        suite_duality(&mut ctx, qmax, smax),
        suite_monotonicity(&mut ctx, qmax, smax),
        suite_ci(&mut ctx, qmax, smax),
        suite_zero_maximizers(&mut ctx, qmax, smax),
    ]
}

/// Human summary plus overall pass flag.
pub fn format_summary(results: &[SuiteResult]) -> (String, bool) {
    let mut out = String::new();
    let mut pass = true;
    for s in results {
        out.push_str(&format!(
            "suite {}: {} checks, {} failures\n",
            s.name,
            s.checks,
            s.failures.len()
        ));
        for f in &s.failures {
            pass = false;
            out.push_str(&format!("  FAIL {f}\n"));
        }
    }
    out.push_str(if pass { "verify: PASS\n" } else { "verify: FAIL\n" });
    (out, pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let caps = OracleCaps::default();
        let results = run_verify(3, 3, &caps, &Overrides::default());
        let (summary, pass) = format_summary(&results);
        assert!(pass, "{summary}");
        assert!(results.iter().all(|s| s.checks > 0));
    }

    #[test]
    fn corrupted_formula_is_caught_and_named() {
        fn wrong_d2(q: u64, s: u32, d: u64) -> Result<u128, FormulaError> {
            // Correct everywhere except one grid point.
            let v = formulas::d2_torus(q, s, d)?;
            Ok(if (q, s, d) == (5, 3, 2) { v + 1 } else { v })
        }
        let caps = OracleCaps::default();
        let ov = Overrides {
            d2_torus: Some(wrong_d2),
        };
        let results = run_verify(5, 3, &caps, &ov);
        let (summary, pass) = format_summary(&results);
        assert!(!pass);
        // Both the oracle comparison and the unified-form recomputation
        // must localize the corrupted tuple.
        for suite in ["formula-vs-oracle", "unified-second-weight"] {
            let s = results.iter().find(|s| s.name == suite).unwrap();
            assert!(
                s.failures.iter().any(|f| f.contains("q=5 s=3 d=2")),
                "{suite} missed the corruption: {summary}"
            );
        }
    }

    #[test]
    fn poly_independence_helper() {
        let f = Field::new(5).unwrap();
        let a = crate::poly::HomogPoly::parse(&f, 2, "X1 + 2*X2").unwrap();
        let b = crate::poly::HomogPoly::parse(&f, 2, "X1 + 3*X2").unwrap();
        let c = crate::poly::HomogPoly::parse(&f, 2, "2*X1 + 4*X2").unwrap();
        assert!(independent_polys(&a, &b));
        assert!(!independent_polys(&a, &c)); // c = 2a
    }
}
