//! Closed-form weight and zero-count formulas for torus codes.
//!
//! Everything here is pure integer arithmetic over `u128`, with every
//! ceiling of a fractional power (q−1)^{negative}·a taken by exact integer
//! division — never floating point. The functions accept any integer q ≥ 3
//! (field or not): the formulas are combinatorial identities in q, and the
//! monotonicity suites exercise them on non-prime-power q as well. Overflow
//! is reported as `BadParams` rather than wrapped.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ghw::{Method, WeightHierarchy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("q={q} is too small: these formulas need q ≥ 3")]
    BadField { q: u64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

type Result<T> = std::result::Result<T, FormulaError>;

/// The unique decomposition d = k(q−2) + l with k ≥ 0 and 1 ≤ l ≤ q−2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KLDecomp {
    pub k: u64,
    pub l: u64,
}

pub fn kl_decompose(q: u64, d: u64) -> Result<KLDecomp> {
    if q < 3 {
        return Err(FormulaError::BadField { q });
    }
    if d < 1 {
        return Err(FormulaError::BadParams(format!("degree d={d} must be ≥ 1")));
    }
    // l must land in [1, q−2], so shift by one before dividing.
    let k = (d - 1) / (q - 2);
    let l = d - k * (q - 2);
    debug_assert!((1..=q - 2).contains(&l) && k * (q - 2) + l == d);
    Ok(KLDecomp { k, l })
}

/// The derived torus constants η = (q−2)(s−2) and r = (q−2)(s−1): d ≤ η and
/// η < d ≤ r are the two zero-count regimes, and d ≥ r is the full-space
/// range (the regularity index of the torus is r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusParams {
    pub q: u64,
    pub s: u32,
    pub d: u64,
    pub eta: u128,
    pub r: u128,
}

impl TorusParams {
    pub fn new(q: u64, s: u32, d: u64) -> Result<TorusParams> {
        if q < 3 {
            return Err(FormulaError::BadField { q });
        }
        if s < 2 {
            return Err(FormulaError::BadParams(format!(
                "s={s} must be ≥ 2 (T_{{s−1}} needs at least two coordinates)"
            )));
        }
        if d < 1 {
            return Err(FormulaError::BadParams(format!("degree d={d} must be ≥ 1")));
        }
        let qm2 = (q - 2) as u128;
        Ok(TorusParams {
            q,
            s,
            d,
            eta: qm2 * (s as u128 - 2),
            r: qm2 * (s as u128 - 1),
        })
    }

    pub fn kl(&self) -> KLDecomp {
        kl_decompose(self.q, self.d).expect("validated in the constructor")
    }
}

fn pow(base: u128, exp: u128) -> Result<u128> {
    let exp: u32 = exp
        .try_into()
        .map_err(|_| FormulaError::BadParams(format!("exponent {exp} out of range")))?;
    base.checked_pow(exp)
        .ok_or_else(|| FormulaError::BadParams(format!("{base}^{exp} overflows")))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b)
        .ok_or_else(|| FormulaError::BadParams(format!("{a}·{b} overflows")))
}

/// ⌈a·(q−1)^e⌉ for integer a ≥ 1 and a possibly negative exponent e,
/// evaluated exactly: multiplication when e ≥ 0, ceiling division otherwise.
/// A denominator too large for u128 dominates any u128 numerator, so the
/// ceiling is 1 in that case.
fn ceil_mul_pow(qm1: u128, a: u128, e: i64) -> Result<u128> {
    if e >= 0 {
        mul(a, pow(qm1, e as u128)?)
    } else {
        match qm1.checked_pow((-e).try_into().unwrap_or(u32::MAX)) {
            Some(den) => Ok(a.div_ceil(den)),
            None => Ok(1),
        }
    }
}

/// 𝒵₁(s,d) = (q−1)^{s−1} − d₁(C_{T_{s−1}}(d)): the largest zero set of a
/// single degree-d form that does not vanish on all of T_{s−1}.
pub fn z1(q: u64, s: u32, d: u64) -> Result<u128> {
    let p = TorusParams::new(q, s, d)?;
    let torus = pow((q - 1) as u128, s as u128 - 1)?;
    Ok(torus - d1_torus(p.q, p.s, p.d)?)
}

/// 𝒵₂(s,d): the largest common zero set of two linearly independent
/// degree-d forms, neither vanishing on T_{s−1}. Two branches split at
/// η = (q−2)(s−2); defined for 1 ≤ d ≤ r = (q−2)(s−1).
pub fn z2(q: u64, s: u32, d: u64) -> Result<u128> {
    let p = TorusParams::new(q, s, d)?;
    if s < 3 {
        return Err(FormulaError::BadParams(format!(
            "𝒵₂ needs s ≥ 3, got s={s}"
        )));
    }
    if (d as u128) > p.r {
        return Err(FormulaError::BadParams(format!(
            "𝒵₂ needs d ≤ (q−2)(s−1) = {}, got d={d}",
            p.r
        )));
    }
    let KLDecomp { k, l } = p.kl();
    let qm1 = (q - 1) as u128;
    if (d as u128) <= p.eta {
        // Here k ≤ s−3, so both exponents are non-negative.
        let bracket = pow(qm1, k as u128 + 2)? - qm1 * (q - l) as u128 + 1;
        mul(pow(qm1, s as u128 - (k as u128 + 3))?, bracket)
    } else {
        Ok(pow(qm1, s as u128 - 1)? - (q - l) as u128)
    }
}

/// The minimum distance of C_{T_{s−1}}(d): ⌈(q−1)^{s−(k+2)}(q−1−l)⌉, which
/// collapses to 1 for every d ≥ (q−2)(s−1).
pub fn d1_torus(q: u64, s: u32, d: u64) -> Result<u128> {
    let p = TorusParams::new(q, s, d)?;
    let KLDecomp { k, l } = p.kl();
    let qm1 = (q - 1) as u128;
    ceil_mul_pow(qm1, (q - 1 - l) as u128, s as i64 - (k as i64 + 2))
}

/// The second generalized Hamming weight of C_{T_{s−1}}(d).
///
/// For s ≥ 3 the value splits at η and r; for s = 2 it is the classical
/// Reed–Solomon-type value (q−d for d ≤ q−3, else 2; always 2 when q = 3).
/// Each call also evaluates the unified form d₁ + ⌈(q−1)^{s−(k+3)}(q−2)⌉
/// and asserts the two agree.
pub fn d2_torus(q: u64, s: u32, d: u64) -> Result<u128> {
    let p = TorusParams::new(q, s, d)?;
    let KLDecomp { k, l } = p.kl();
    let qm1 = (q - 1) as u128;
    let value = if s == 2 {
        if q == 3 || d > q - 3 {
            2
        } else {
            (q - d) as u128
        }
    } else if (d as u128) <= p.eta {
        // k ≤ s−3 in this branch.
        mul(pow(qm1, s as u128 - (k as u128 + 3))?, qm1 * (q - l) as u128 - 1)?
    } else if (d as u128) < p.r {
        (q - l) as u128
    } else {
        2
    };
    let unified = d1_torus(q, s, d)?
        + ceil_mul_pow(qm1, (q - 2) as u128, s as i64 - (k as i64 + 3))?;
    assert_eq!(
        value, unified,
        "d₂ branch value and unified form disagree at q={q}, s={s}, d={d}"
    );
    Ok(value)
}

/// At the a-invariant level d = a_X of a complete intersection X with
/// |X| = n points, the hierarchy is d_r = r + 1: weights (2, …, n).
pub fn ci_a_level_hierarchy(n: usize) -> Result<WeightHierarchy> {
    if n < 2 {
        return Err(FormulaError::BadParams(format!(
            "a complete intersection with |X|={n} has no a-level hierarchy"
        )));
    }
    Ok(WeightHierarchy::new((2..=n).collect(), Method::Formula))
}

fn ci_validate(n: usize, beta: usize, d1_dual: usize) -> Result<()> {
    if n < 1 || beta < 1 || d1_dual < 1 {
        return Err(FormulaError::BadParams(format!(
            "need n, β, d₁(dual) ≥ 1; got n={n}, β={beta}, d₁={d1_dual}"
        )));
    }
    if beta > n {
        return Err(FormulaError::BadParams(format!(
            "β={beta} exceeds the code length n={n}"
        )));
    }
    if beta < d1_dual {
        return Err(FormulaError::HypothesisViolated(format!(
            "β={beta} < d₁(C_X(a_X−d))={d1_dual}: forced tails need β ≥ d₁ of the complementary-degree code"
        )));
    }
    Ok(())
}

/// The top of the hierarchy of a non-degenerate complete-intersection code:
/// d_{β−i} = n − i for i = 0, …, d₁(C_X(a_X−d)) − 2, where β = H_X(d) and
/// both C_X(d) and C_X(a_X−d) are non-degenerate (caller-asserted; cf.
/// `is_degenerate`). Returns the map r ↦ d_r.
pub fn ci_tail_weights(n: usize, beta: usize, d1_dual: usize) -> Result<BTreeMap<usize, usize>> {
    ci_validate(n, beta, d1_dual)?;
    let mut out = BTreeMap::new();
    for i in 0..d1_dual.saturating_sub(1) {
        out.insert(beta - i, n - i);
    }
    Ok(out)
}

/// The r-MDS range of the same code: from α = β − d₁(dual) + 2 upward the
/// code meets the Singleton bound, with d_{α+j} = n − d₁(dual) + 2 + j.
/// Returns α and the map r ↦ d_r (the same pairs as `ci_tail_weights`).
pub fn ci_mds_range(
    n: usize,
    beta: usize,
    d1_dual: usize,
) -> Result<(usize, BTreeMap<usize, usize>)> {
    ci_validate(n, beta, d1_dual)?;
    let alpha = beta - d1_dual + 2;
    let mut out = BTreeMap::new();
    for j in 0..d1_dual.saturating_sub(1) {
        out.insert(alpha + j, n - d1_dual + 2 + j);
    }
    Ok((alpha, out))
}

/// The second weight of the code of the complete bipartite graph K_{m,n}
/// over GF(q): the code is the tensor product of two torus codes, giving
/// d₂ = min{d₁(T_{m−1})·d₂(T_{n−1}), d₁(T_{n−1})·d₂(T_{m−1})}.
pub fn d2_bipartite(q: u64, m: u32, n: u32, d: u64) -> Result<u128> {
    if m < 2 || n < 2 {
        return Err(FormulaError::BadParams(format!(
            "bipartite parts need m, n ≥ 2; got m={m}, n={n}"
        )));
    }
    let a = mul(d1_torus(q, m, d)?, d2_torus(q, n, d)?)?;
    let b = mul(d1_torus(q, n, d)?, d2_torus(q, m, d)?)?;
    Ok(a.min(b))
}

/// The maximum number of common zeros on T_{s−1} of two linearly
/// independent degree-d forms, with no non-vanishing restriction: 𝒵₂ while
/// d < q−1, and the whole torus once d ≥ q−1.
pub fn max_common_zeros(q: u64, s: u32, d: u64) -> Result<u128> {
    let p = TorusParams::new(q, s, d)?;
    if s < 3 {
        return Err(FormulaError::BadParams(format!(
            "max_common_zeros needs s ≥ 3, got s={s}"
        )));
    }
    if d < q - 1 {
        z2(p.q, p.s, p.d)
    } else {
        pow((q - 1) as u128, s as u128 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalcode::build_code;
    use crate::geometry::torus_points;
    use crate::ghw::{hierarchy_exact, OracleCaps};
    use crate::Field;

    #[test]
    fn kl_decomposition() {
        assert_eq!(kl_decompose(5, 4).unwrap(), KLDecomp { k: 1, l: 1 });
        assert_eq!(kl_decompose(5, 3).unwrap(), KLDecomp { k: 0, l: 3 });
        // l stays in [1, q−2]: 6 = 1·3 + 3, not 2·3 + 0.
        assert_eq!(kl_decompose(5, 6).unwrap(), KLDecomp { k: 1, l: 3 });
        assert!(matches!(
            kl_decompose(2, 1),
            Err(FormulaError::BadField { q: 2 })
        ));
        assert!(matches!(
            kl_decompose(5, 0),
            Err(FormulaError::BadParams(_))
        ));
        // Uniqueness: the decomposition reconstructs d with l in range.
        for q in 3..=9u64 {
            for d in 1..=40u64 {
                let KLDecomp { k, l } = kl_decompose(q, d).unwrap();
                assert_eq!(k * (q - 2) + l, d);
                assert!((1..=q - 2).contains(&l));
            }
        }
    }

    #[test]
    fn z1_values() {
        assert_eq!(z1(5, 3, 2).unwrap(), 8);
        assert_eq!(z1(5, 3, 6).unwrap(), 15);
        assert_eq!(z1(3, 3, 1).unwrap(), 2);
        // Where the exponent is non-negative, compare against the displayed
        // definition (q−1)^{s−1} − (q−1)^{s−(k+2)}(q−1−l) directly.
        for q in 3..=7u64 {
            for s in 2..=5u32 {
                for d in 1..=(q - 2) * (s as u64 - 1) {
                    let KLDecomp { k, l } = kl_decompose(q, d).unwrap();
                    if k + 2 <= s as u64 {
                        let qm1 = (q - 1) as u128;
                        let direct = qm1.pow(s - 1)
                            - qm1.pow(s - (k as u32 + 2)) * (q - 1 - l) as u128;
                        assert_eq!(z1(q, s, d).unwrap(), direct, "q={q} s={s} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn z2_values_and_intro_formula() {
        assert_eq!(z2(5, 3, 2).unwrap(), 5);
        assert_eq!(z2(5, 3, 5).unwrap(), 13);
        assert_eq!(z2(5, 4, 1).unwrap(), 4);
        assert!(matches!(z2(5, 2, 1), Err(FormulaError::BadParams(_))));
        assert!(matches!(z2(5, 3, 7), Err(FormulaError::BadParams(_))));
        // For d ≤ q−2 (k=0) the branch-1 value equals the introduction's
        // (q−1)^{s−2}(d−1) + (q−1)^{s−3}.
        for q in 3..=9u64 {
            for s in 3..=6u32 {
                for d in 1..=q - 2 {
                    let qm1 = (q - 1) as u128;
                    let intro = qm1.pow(s - 2) * (d as u128 - 1) + qm1.pow(s - 3);
                    assert_eq!(z2(q, s, d).unwrap(), intro, "q={q} s={s} d={d}");
                }
            }
        }
    }

    #[test]
    fn d1_values() {
        assert_eq!(d1_torus(5, 3, 2).unwrap(), 8);
        assert_eq!(d1_torus(5, 3, 4).unwrap(), 3);
        assert_eq!(d1_torus(5, 3, 7).unwrap(), 1);
        // d₁ = 1 exactly from the regularity index onward.
        for q in 3..=7u64 {
            for s in 2..=5u32 {
                let r = (q - 2) * (s as u64 - 1);
                if r >= 2 {
                    assert!(d1_torus(q, s, r - 1).unwrap() > 1, "q={q} s={s}");
                }
                for d in r..r + 4 {
                    assert_eq!(d1_torus(q, s, d.max(1)).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn d2_values_incl_s2() {
        assert_eq!(d2_torus(5, 3, 1).unwrap(), 15);
        assert_eq!(d2_torus(5, 3, 4).unwrap(), 4);
        assert_eq!(d2_torus(5, 2, 2).unwrap(), 3);
        // q=3, s=2: always 2.
        for d in 1..=6 {
            assert_eq!(d2_torus(3, 2, d).unwrap(), 2);
        }
        // Beyond the regularity index: always 2.
        for d in 6..=9 {
            assert_eq!(d2_torus(5, 3, d).unwrap(), 2);
        }
        // The unified-form assert inside d2_torus runs on every call; sweep
        // a wide grid (including non-prime-power q) to exercise it.
        for q in 3..=9u64 {
            for s in 2..=6u32 {
                for d in 1..=(q - 2) * (s as u64 - 1) + 3 {
                    d2_torus(q, s, d).unwrap();
                }
            }
        }
    }

    #[test]
    fn monotonicity_suite() {
        // 𝒵₁/𝒵₂ grow with d, 𝒵₂ ≤ 𝒵₁ interleaved, exact (q−1)-scaling of
        // 𝒵₁ in s, and (q−1)-bounded growth of 𝒵₂ in s.
        for q in 3..=9u64 {
            for s in 3..=6u32 {
                let r = (q - 2) * (s as u64 - 1);
                for d in 1..=r {
                    let z1d = z1(q, s, d).unwrap();
                    let z2d = z2(q, s, d).unwrap();
                    assert!(z2d <= z1d, "q={q} s={s} d={d}");
                    if d > 1 {
                        let z1p = z1(q, s, d - 1).unwrap();
                        let z2p = z2(q, s, d - 1).unwrap();
                        assert!(z1p <= z1d, "q={q} s={s} d={d}");
                        assert!(z2p <= z2d, "q={q} s={s} d={d}");
                        assert!(z1p <= z2d, "q={q} s={s} d={d}");
                    }
                    assert_eq!(
                        (q as u128 - 1) * z1d,
                        z1(q, s + 1, d).unwrap(),
                        "q={q} s={s} d={d}"
                    );
                    assert!(
                        (q as u128 - 1) * z2d <= z2(q, s + 1, d).unwrap(),
                        "q={q} s={s} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn ci_a_level() {
        let h = ci_a_level_hierarchy(16).unwrap();
        assert_eq!(h.weights(), (2..=16).collect::<Vec<_>>());
        assert!(h.methods().iter().all(|&m| m == Method::Formula));
        assert_eq!(ci_a_level_hierarchy(2).unwrap().weights(), &[2]);
        assert!(matches!(
            ci_a_level_hierarchy(1),
            Err(FormulaError::BadParams(_))
        ));
    }

    #[test]
    fn ci_tails() {
        let t = ci_tail_weights(90, 35, 7).unwrap();
        assert_eq!(t.len(), 6);
        for i in 0..=5usize {
            assert_eq!(t[&(35 - i)], 90 - i);
        }
        let t = ci_tail_weights(90, 55, 9).unwrap();
        assert_eq!(t.len(), 8);
        for i in 0..=7usize {
            assert_eq!(t[&(55 - i)], 90 - i);
        }
        let t = ci_tail_weights(16, 6, 4).unwrap();
        assert_eq!(t[&6], 16);
        assert_eq!(t[&5], 15);
        assert_eq!(t[&4], 14);
        assert_eq!(t.len(), 3);
        // d₁(dual)=1 gives an empty (but valid) tail.
        assert!(ci_tail_weights(10, 5, 1).unwrap().is_empty());
        assert!(matches!(
            ci_tail_weights(90, 5, 7),
            Err(FormulaError::HypothesisViolated(_))
        ));
        assert!(matches!(
            ci_tail_weights(5, 9, 2),
            Err(FormulaError::BadParams(_))
        ));
    }

    #[test]
    fn ci_mds_matches_tail() {
        let (alpha, m) = ci_mds_range(16, 6, 4).unwrap();
        assert_eq!(alpha, 4);
        assert_eq!(m, ci_tail_weights(16, 6, 4).unwrap());
        let (alpha, m) = ci_mds_range(90, 35, 7).unwrap();
        assert_eq!(alpha, 30);
        assert_eq!(m, ci_tail_weights(90, 35, 7).unwrap());
        // Singleton equality at every listed rank.
        for (&r, &dr) in &m {
            assert_eq!(dr, 90 - 35 + r);
        }
    }

    #[test]
    fn bipartite_second_weight() {
        assert_eq!(d2_bipartite(5, 2, 2, 1).unwrap(), 12);
        // Symmetry in the two parts.
        for q in [3u64, 5] {
            for m in 2..=4u32 {
                for n in 2..=4u32 {
                    for d in 1..=4u64 {
                        assert_eq!(
                            d2_bipartite(q, m, n, d).unwrap(),
                            d2_bipartite(q, n, m, d).unwrap()
                        );
                    }
                }
            }
        }
        assert!(matches!(
            d2_bipartite(5, 1, 2, 1),
            Err(FormulaError::BadParams(_))
        ));
    }

    #[test]
    fn max_common_zeros_values() {
        assert_eq!(max_common_zeros(5, 3, 2).unwrap(), 5);
        assert_eq!(max_common_zeros(5, 3, 4).unwrap(), 16);
        assert_eq!(max_common_zeros(5, 4, 1).unwrap(), 4);
        assert!(matches!(
            max_common_zeros(5, 2, 1),
            Err(FormulaError::BadParams(_))
        ));
    }

    #[test]
    fn formulas_match_oracle_on_planar_tori() {
        let caps = OracleCaps::default();
        for q in [3u32, 4, 5] {
            let f = Field::new(q).unwrap();
            let x = torus_points(&f, 3).unwrap();
            let reg = (q as u64 - 2) * 2;
            for d in 1..=reg + 1 {
                let c = build_code(&x, d as u32).unwrap();
                let h = hierarchy_exact(&c, &caps).unwrap();
                assert_eq!(
                    d1_torus(q as u64, 3, d).unwrap(),
                    h.weights()[0] as u128,
                    "d1 q={q} d={d}"
                );
                assert_eq!(
                    d2_torus(q as u64, 3, d).unwrap(),
                    h.weights()[1] as u128,
                    "d2 q={q} d={d}"
                );
                // 𝒵₂ counts the common zeros behind d₂: d₂ = n − 𝒵₂.
                if d <= reg {
                    assert_eq!(
                        z2(q as u64, 3, d).unwrap(),
                        (c.n() - h.weights()[1]) as u128,
                        "z2 q={q} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            z1(u64::MAX - 1, 40, 1),
            Err(FormulaError::BadParams(_))
        ));
        // Huge k pushes the d₁ ceiling to 1 rather than overflowing.
        assert_eq!(d1_torus(5, 2, 1_000_000).unwrap(), 1);
        assert_eq!(d2_torus(5, 2, 1_000_000).unwrap(), 2);
    }
}
