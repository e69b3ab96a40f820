//! Evaluation codes C_X(d): generator matrices from point evaluation,
//! Hilbert profiles (dimension growth, regularity, a-invariant), dual codes,
//! and degeneracy checks.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::geometry::{PointSet, Provenance};
use crate::matrix::GfMatrix;
use crate::poly::{monomial_basis, HomogPoly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the point set is empty")]
    EmptyPointSet,
    #[error("degree must be at least 1, got {d}")]
    BadDegree { d: u32 },
    #[error("normalizer {index}: {reason}")]
    BadNormalizer { index: usize, reason: String },
    #[error("Hilbert function did not stabilize by degree {cap}")]
    RegularityCap { cap: u32 },
}

/// Where a code came from, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeProvenance {
    Evaluation { degree: u32, points: Provenance },
    Dual(Box<CodeProvenance>),
    Explicit,
}

/// A linear [n, k] code over GF(q), held as a canonical (reduced
/// row-echelon, no zero rows) generator matrix. Equality is row-space
/// equality: canonical generators of equal codes are identical.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    k: usize,
    gen: GfMatrix,
    provenance: CodeProvenance,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code over GF({})", self.n, self.k, self.field().q())
    }
}

#[derive(Serialize)]
struct CodeJson {
    q: u32,
    n: usize,
    k: usize,
    rows: Vec<Vec<u32>>,
}

impl LinearCode {
    /// Canonicalize an arbitrary spanning matrix into a code: row-reduce and
    /// drop zero rows. The zero code (k = 0) is allowed.
    pub fn from_generator(m: &GfMatrix) -> LinearCode {
        let (rref, pivots) = m.rref();
        let gen = rref.without_zero_rows();
        LinearCode {
            n: m.cols(),
            k: pivots.len(),
            gen,
            provenance: CodeProvenance::Explicit,
        }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The canonical k×n generator matrix.
    pub fn generator(&self) -> &GfMatrix {
        &self.gen
    }

    pub fn provenance(&self) -> &CodeProvenance {
        &self.provenance
    }

    /// True iff this code's row space contains every row of `other`.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.gen.row_space_includes(&other.gen)
    }

    pub fn contains_word(&self, word: &[u32]) -> bool {
        self.gen.row_space_contains(word)
    }

    /// `{"q":…, "n":…, "k":…, "rows":[[…]]}`.
    pub fn to_json(&self) -> String {
        let rows = (0..self.k).map(|i| self.gen.row_codes(i).to_vec()).collect();
        serde_json::to_string(&CodeJson {
            q: self.field().q(),
            n: self.n,
            k: self.k,
            rows,
        })
        .expect("code serialization cannot fail")
    }

    /// Plain text: header `q n k`, then one generator row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field().q(), self.n, self.k);
        for i in 0..self.k {
            let row: Vec<String> = self.gen.row_codes(i).iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The evaluation code C_X(d): evaluate every degree-d monomial at every
/// point of X, normalize column i by f_i(P_i), and take the row space.
/// The default normalizers follow the usual convention: f_i = X_1^d when no
/// point of X has a zero coordinate, otherwise f_i = X_κ^d with κ the first
/// nonzero coordinate of P_i. Since points are kept in standard form the
/// normalizing values are 1 either way, but the division is performed so the
/// construction matches its definition.
pub fn build_code(x: &PointSet, d: u32) -> Result<LinearCode, CodeError> {
    let f = x.field();
    let all_nonzero = x
        .iter()
        .all(|p| p.coords().iter().all(|c| !c.is_zero()));
    let normalizers: Vec<HomogPoly> = x
        .iter()
        .map(|p| {
            let kappa = if all_nonzero {
                0
            } else {
                p.coords()
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("projective points have a nonzero coordinate")
            };
            let mut exps = vec![0u32; x.s()];
            exps[kappa] = d;
            HomogPoly::monomial(f, f.one(), exps).expect("monic monomial is well-formed")
        })
        .collect();
    build_code_with_normalizers(x, d, &normalizers)
}

/// As `build_code`, but with caller-chosen normalizers f_i (each of degree d
/// and nonzero at its point). Different valid choices yield codes with the
/// same parameters and weight hierarchy.
pub fn build_code_with_normalizers(
    x: &PointSet,
    d: u32,
    normalizers: &[HomogPoly],
) -> Result<LinearCode, CodeError> {
    if x.is_empty() {
        return Err(CodeError::EmptyPointSet);
    }
    if d == 0 {
        return Err(CodeError::BadDegree { d });
    }
    if normalizers.len() != x.len() {
        return Err(CodeError::BadNormalizer {
            index: normalizers.len().min(x.len()),
            reason: format!("expected {} normalizers, got {}", x.len(), normalizers.len()),
        });
    }
    let f = x.field();
    let mut scale = Vec::with_capacity(x.len());
    for (i, (fi, p)) in normalizers.iter().zip(x.iter()).enumerate() {
        if fi.degree() != d || fi.is_zero() {
            return Err(CodeError::BadNormalizer {
                index: i,
                reason: format!("must be a nonzero form of degree {d}"),
            });
        }
        let v = fi.eval(p)?;
        if v.is_zero() {
            return Err(CodeError::BadNormalizer {
                index: i,
                reason: format!("vanishes at its point {p}"),
            });
        }
        scale.push(f.invc(v.code()));
    }
    let basis = monomial_basis(x.s(), d);
    let mut rows = Vec::with_capacity(basis.len());
    for m in &basis {
        let mut row = Vec::with_capacity(x.len());
        for (i, p) in x.iter().enumerate() {
            let mut v = 1u32;
            for (coord, &e) in p.coords().iter().zip(m.exponents()) {
                if e == 0 {
                    continue;
                }
                v = f.mulc(v, f.powc(coord.code(), e as u64));
                if v == 0 {
                    break;
                }
            }
            row.push(f.mulc(v, scale[i]));
        }
        rows.push(row);
    }
    let m = GfMatrix::from_codes(f, &rows);
    let mut code = LinearCode::from_generator(&m);
    code.provenance = CodeProvenance::Evaluation {
        degree: d,
        points: x.provenance().clone(),
    };
    Ok(code)
}

/// The Hilbert function of X through its regularity index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertProfile {
    /// values[d] = H_X(d) for d = 0..=reg.
    pub values: Vec<usize>,
    /// Least degree where H_X reaches |X|.
    pub reg: u32,
    /// reg − 1 (the a-invariant; −1 for a single point).
    pub a_inv: i64,
}

/// Compute H_X(d) = dim C_X(d) for increasing d until it stabilizes at |X|.
/// The search is capped at d = (q−1)s + 8 as a loud guard against
/// non-termination bugs; genuine point sets stabilize far below it.
pub fn hilbert_profile(x: &PointSet) -> Result<HilbertProfile, CodeError> {
    if x.is_empty() {
        return Err(CodeError::EmptyPointSet);
    }
    let f = x.field();
    let n = x.len();
    let cap = (f.q() - 1) * x.s() as u32 + 8;
    // H_X(0) = 1: constants evaluate to the (normalized) all-ones vector.
    let mut values = vec![1usize];
    if n == 1 {
        return Ok(HilbertProfile {
            values,
            reg: 0,
            a_inv: -1,
        });
    }
    for d in 1..=cap {
        let k = build_code(x, d)?.k();
        values.push(k);
        if k == n {
            return Ok(HilbertProfile {
                values,
                reg: d,
                a_inv: d as i64 - 1,
            });
        }
    }
    Err(CodeError::RegularityCap { cap })
}

/// The dual code: the (n−k)-dimensional null space of the generator.
pub fn dual_code(c: &LinearCode) -> LinearCode {
    let f = c.field();
    let ns = if c.k == 0 {
        // Dual of the zero code is the full space.
        let mut rows = Vec::with_capacity(c.n);
        for i in 0..c.n {
            let mut row = vec![0u32; c.n];
            row[i] = 1;
            rows.push(row);
        }
        GfMatrix::from_codes(f, &rows)
    } else {
        c.gen.nullspace()
    };
    let mut dual = LinearCode::from_generator(&ns);
    dual.n = c.n;
    dual.provenance = CodeProvenance::Dual(Box::new(c.provenance.clone()));
    dual
}

/// True iff some coordinate is zero in every codeword (a zero column of the
/// generator). The zero code on n ≥ 1 positions is degenerate.
pub fn is_degenerate(c: &LinearCode) -> bool {
    (0..c.n).any(|j| c.gen.is_zero_col(j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{toric_points, torus_points, ProjPoint};

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn torus_code(q: u32, s: usize, d: u32) -> LinearCode {
        let f = gf(q);
        let x = torus_points(&f, s).unwrap();
        build_code(&x, d).unwrap()
    }

    #[test]
    fn torus_code_dimensions_gf5() {
        let c = torus_code(5, 3, 2);
        assert_eq!((c.n(), c.k()), (16, 6));
        // At and beyond the regularity index the code is the full space.
        let c6 = torus_code(5, 3, 6);
        assert_eq!((c6.n(), c6.k()), (16, 16));
    }

    #[test]
    fn hilbert_profile_torus_gf5() {
        let f = gf(5);
        let x = torus_points(&f, 3).unwrap();
        let h = hilbert_profile(&x).unwrap();
        assert_eq!(h.reg, 6);
        assert_eq!(h.a_inv, 5);
        assert_eq!(h.values, vec![1, 3, 6, 10, 13, 15, 16]);
    }

    #[test]
    fn hilbert_profile_single_point() {
        let f = gf(5);
        let p = ProjPoint::standardize(&f, &[f.one(), f.elem(2).unwrap()]).unwrap();
        let x = PointSet::explicit(&f, 2, &[p.coords().to_vec()]).unwrap();
        let h = hilbert_profile(&x).unwrap();
        assert_eq!((h.reg, h.a_inv), (0, -1));
        assert_eq!(h.values, vec![1]);
    }

    #[test]
    fn hilbert_sum_identity_torus() {
        // H_X(d) + H_X(a_X − d) = |X| for the torus, 1 ≤ d < a_X.
        for (q, s) in [(3u32, 3usize), (4, 3), (5, 3), (3, 4), (4, 4)] {
            let f = gf(q);
            let x = torus_points(&f, s).unwrap();
            let h = hilbert_profile(&x).unwrap();
            let a = h.a_inv as u32;
            for d in 1..a {
                assert_eq!(
                    h.values[d as usize] + h.values[(a - d) as usize],
                    x.len(),
                    "q={q} s={s} d={d}"
                );
            }
        }
    }

    #[test]
    fn example_point_set_gf181() {
        // Three-parameter monomial set over GF(181): 90 points, reg 13,
        // H(5) = 35, H(7) = 55.
        let f = gf(181);
        let exps = vec![
            vec![0, 0, 0],
            vec![90, 0, 0],
            vec![0, 36, 0],
            vec![0, 0, 20],
        ];
        let x = toric_points(&f, &exps).unwrap();
        assert_eq!(x.len(), 90);
        let h = hilbert_profile(&x).unwrap();
        assert_eq!(h.reg, 13);
        assert_eq!(h.a_inv, 12);
        assert_eq!(h.values[5], 35);
        assert_eq!(h.values[7], 55);
        // The sum identity from the complete-intersection structure.
        for d in 1..12 {
            assert_eq!(h.values[d] + h.values[12 - d], 90, "d={d}");
        }
    }

    #[test]
    fn dual_code_dimensions_and_double_dual() {
        let c = torus_code(5, 3, 2);
        let dual = dual_code(&c);
        assert_eq!((dual.n(), dual.k()), (16, 10));
        let double = dual_code(&dual);
        assert_eq!(double, c);
        // Orthogonality: every dual row is orthogonal to every generator row.
        let f = c.field();
        for i in 0..c.k() {
            for j in 0..dual.k() {
                let mut acc = 0u32;
                for t in 0..c.n() {
                    acc = f.addc(
                        acc,
                        f.mulc(c.generator().row_codes(i)[t], dual.generator().row_codes(j)[t]),
                    );
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn dual_of_full_space_is_zero_code() {
        let c = torus_code(5, 3, 6);
        let dual = dual_code(&c);
        assert_eq!(dual.k(), 0);
        assert_eq!(dual.n(), 16);
        assert!(is_degenerate(&dual));
        // And back: the dual of the zero code is the full space.
        let back = dual_code(&dual);
        assert_eq!(back, c);
    }

    #[test]
    fn repetition_code_dual_gf3() {
        let f = gf(3);
        let rep = LinearCode::from_generator(&GfMatrix::from_codes(&f, &[vec![1, 1]]));
        let dual = dual_code(&rep);
        assert_eq!(dual.k(), 1);
        // Dual is {(a, −a)}: canonical generator (1, 2) over GF(3).
        assert_eq!(dual.generator().row_codes(0), &[1, 2]);
    }

    #[test]
    fn degeneracy_checks() {
        let f = gf(5);
        let c = LinearCode::from_generator(&GfMatrix::from_codes(&f, &[vec![1, 0, 1]]));
        assert!(is_degenerate(&c));
        assert!(!is_degenerate(&torus_code(5, 3, 2)));
        // Parameterized codes contain the all-ones word.
        let c = torus_code(4, 3, 2);
        assert!(c.contains_word(&vec![1; c.n()]));
    }

    #[test]
    fn codes_nest_as_degree_grows() {
        for q in [3u32, 4, 5] {
            let f = gf(q);
            let x = torus_points(&f, 3).unwrap();
            let reg = hilbert_profile(&x).unwrap().reg;
            let mut prev = build_code(&x, 1).unwrap();
            for d in 2..=reg {
                let next = build_code(&x, d).unwrap();
                assert!(
                    next.contains_code(&prev),
                    "C_X({}) not inside C_X({d}) for q={q}",
                    d - 1
                );
                prev = next;
            }
        }
    }

    #[test]
    fn normalizer_independence() {
        // Scaling every normalizer by the same nonzero constant leaves the
        // row space — hence the canonical generator — untouched.
        let f = gf(5);
        let x = torus_points(&f, 3).unwrap();
        let d = 2;
        let base = build_code(&x, d).unwrap();
        let uniform: Vec<HomogPoly> = x
            .iter()
            .map(|_| HomogPoly::monomial(&f, f.elem(3).unwrap(), vec![d, 0, 0]).unwrap())
            .collect();
        assert_eq!(build_code_with_normalizers(&x, d, &uniform).unwrap(), base);
        // Per-point choices (here X_2^d, or point-dependent scalings) give a
        // diagonally equivalent code: same n and k, and — checked in the
        // integration suite once hierarchies are in play — the same weights.
        let alt: Vec<HomogPoly> = x
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let c = f.elem(1 + (i as u32 % 4)).unwrap();
                HomogPoly::monomial(&f, c, vec![0, d, 0]).unwrap()
            })
            .collect();
        let code = build_code_with_normalizers(&x, d, &alt).unwrap();
        assert_eq!((code.n(), code.k()), (base.n(), base.k()));
        assert_ne!(code, base, "diagonal equivalence is not row-space equality");
    }

    #[test]
    fn bad_normalizers_are_rejected() {
        let f = gf(5);
        let x = torus_points(&f, 3).unwrap();
        // Wrong degree.
        let wrong: Vec<HomogPoly> = x
            .iter()
            .map(|_| HomogPoly::monomial(&f, f.one(), vec![1, 0, 0]).unwrap())
            .collect();
        assert!(matches!(
            build_code_with_normalizers(&x, 2, &wrong),
            Err(CodeError::BadNormalizer { .. })
        ));
        // Vanishing at its point: X_1 − X_2 vanishes at [1:1:…].
        let vanishing: Vec<HomogPoly> = x
            .iter()
            .map(|_| HomogPoly::parse(&f, 3, "X1^1 + 4*X2").unwrap())
            .collect();
        assert!(matches!(
            build_code_with_normalizers(&x, 1, &vanishing),
            Err(CodeError::BadNormalizer { .. })
        ));
    }

    #[test]
    fn degree_zero_and_empty_set_errors() {
        let f = gf(5);
        let x = torus_points(&f, 3).unwrap();
        assert!(matches!(build_code(&x, 0), Err(CodeError::BadDegree { d: 0 })));
    }

    #[test]
    fn json_and_text_exports() {
        let c = torus_code(5, 2, 1);
        let json = c.to_json();
        assert!(json.starts_with("{\"q\":5,\"n\":4,\"k\":2,\"rows\":[["));
        let text = c.to_text();
        assert!(text.starts_with("5 4 2\n"));
        assert_eq!(text.lines().count(), 3);
    }
}
