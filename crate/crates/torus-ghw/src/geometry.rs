//! Point sets in projective space over GF(q): the projective torus, toric
//! sets parameterized by monomials, complete-bipartite edge sets, and
//! explicit lists.
//!
//! Points are kept in standard form (first nonzero coordinate equals 1),
//! deduplicated, and sorted lexicographically by element code, so every
//! constructor returns an identical ordered list on every run.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElem, FieldError};

/// Default maximum number of points a constructor will produce.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("point set would exceed the size cap of {cap} points")]
    SizeCap { cap: usize },
    #[error("cannot standardize the zero vector")]
    ZeroVector,
    #[error("ambient dimension must be at least {min}, got {got}")]
    BadDimension { min: usize, got: usize },
    #[error("exponent matrix must have at least one row and one column")]
    EmptyExponents,
    #[error("bipartite part sizes must be at least 2, got m={m}, n={n}")]
    BadBipartite { m: usize, n: usize },
    #[error("point text format error: {0}")]
    Parse(String),
}

/// A point of projective space in standard form: the first nonzero
/// coordinate equals 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: Vec<FieldElem>,
}

impl ProjPoint {
    /// Scale a nonzero coordinate vector into standard form.
    pub fn standardize(field: &Field, raw: &[FieldElem]) -> Result<ProjPoint, GeometryError> {
        let lead = raw.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return Err(GeometryError::ZeroVector);
        };
        let inv = field.inv(raw[lead])?;
        let coords = raw
            .iter()
            .map(|&c| field.mul(c, inv))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of the first nonzero coordinate (always exists).
    pub fn lead(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }

    /// The coordinates as raw field codes.
    pub fn codes(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.code()).collect()
    }

    fn from_codes(field: &Field, codes: &[u32]) -> ProjPoint {
        ProjPoint {
            coords: codes.iter().map(|&c| field.elem(c).unwrap()).collect(),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(":")
        )
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How a point set was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The projective torus T_{s-1}: all coordinates nonzero.
    Torus,
    /// Toric set parameterized by monomials; rows are the exponent vectors.
    Toric { exponents: Vec<Vec<u32>> },
    /// Edges of the complete bipartite graph K_{m,n}.
    Bipartite { m: usize, n: usize },
    /// Explicit list (e.g. loaded from text).
    Explicit,
}

/// An ordered, deduplicated set of standard-form points in P^{s-1}.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    s: usize,
    points: Vec<ProjPoint>,
    provenance: Provenance,
}

impl PointSet {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Ambient dimension parameter: points live in P^{s-1}.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter()
    }

    /// Build from an explicit list: standardizes, deduplicates, sorts.
    pub fn explicit(
        field: &Field,
        s: usize,
        raw: &[Vec<FieldElem>],
    ) -> Result<PointSet, GeometryError> {
        if s < 1 {
            return Err(GeometryError::BadDimension { min: 1, got: s });
        }
        let mut set = BTreeSet::new();
        for coords in raw {
            if coords.len() != s {
                return Err(GeometryError::BadDimension {
                    min: s,
                    got: coords.len(),
                });
            }
            set.insert(ProjPoint::standardize(field, coords)?);
        }
        Ok(PointSet {
            field: field.clone(),
            s,
            points: set.into_iter().collect(),
            provenance: Provenance::Explicit,
        })
    }

    /// Serialize as the plain-text point format: header line `q s`, then one
    /// point per line with coordinates as integer codes.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.field.q(), self.s);
        for p in &self.points {
            let line: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the plain-text point format. Blank lines and lines starting
    /// with `#` are ignored.
    pub fn from_text(text: &str) -> Result<PointSet, GeometryError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| GeometryError::Parse("missing `q s` header line".into()))?;
        let mut it = header.split_whitespace();
        let q: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GeometryError::Parse("bad q in header".into()))?;
        let s: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GeometryError::Parse("bad s in header".into()))?;
        if it.next().is_some() {
            return Err(GeometryError::Parse("header must be exactly `q s`".into()));
        }
        let field = Field::new(q)?;
        let mut raw = Vec::new();
        for (idx, line) in lines.enumerate() {
            let mut coords = Vec::with_capacity(s);
            for tok in line.split_whitespace() {
                let code: u32 = tok.parse().map_err(|_| {
                    GeometryError::Parse(format!("bad coordinate `{tok}` on point line {}", idx + 1))
                })?;
                coords.push(field.elem(code)?);
            }
            if coords.len() != s {
                return Err(GeometryError::Parse(format!(
                    "point line {} has {} coordinates, expected {s}",
                    idx + 1,
                    coords.len()
                )));
            }
            raw.push(coords);
        }
        PointSet::explicit(&field, s, &raw)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PointSet({} points in P^{} over {}, {:?})",
            self.points.len(),
            self.s.saturating_sub(1),
            self.field,
            self.provenance
        )
    }
}

/// The projective torus T_{s-1}: all points with every coordinate nonzero,
/// in standard form `[1 : t_2 : ... : t_s]`. Size (q-1)^{s-1}.
pub fn torus_points(field: &Field, s: usize) -> Result<PointSet, GeometryError> {
    torus_points_capped(field, s, DEFAULT_SIZE_CAP)
}

pub fn torus_points_capped(
    field: &Field,
    s: usize,
    cap: usize,
) -> Result<PointSet, GeometryError> {
    if s < 2 {
        return Err(GeometryError::BadDimension { min: 2, got: s });
    }
    let q = field.q() as u64;
    let count = (q - 1).checked_pow((s - 1) as u32);
    match count {
        Some(c) if c <= cap as u64 => {}
        _ => return Err(GeometryError::SizeCap { cap }),
    }
    let mut points = Vec::with_capacity(count.unwrap() as usize);
    let mut codes = vec![1u32; s];
    // Odometer over (t_2, ..., t_s) in K*, most significant first: emits
    // points in lexicographic order directly.
    loop {
        points.push(ProjPoint::from_codes(field, &codes));
        let mut i = s;
        loop {
            if i == 1 {
                let set = PointSet {
                    field: field.clone(),
                    s,
                    points,
                    provenance: Provenance::Torus,
                };
                debug_assert!(set.points.windows(2).all(|w| w[0] < w[1]));
                return Ok(set);
            }
            i -= 1;
            if codes[i] + 1 < field.q() {
                codes[i] += 1;
                break;
            }
            codes[i] = 1;
        }
    }
}

/// Toric set parameterized by monomials: the closure of
/// `[t^{a_1} : ... : t^{a_s}]` over all t in (K*)^n, where `exponents`
/// holds the rows a_i. Standardized and deduplicated; always a subgroup of
/// the torus under coordinatewise multiplication.
pub fn toric_points(field: &Field, exponents: &[Vec<u32>]) -> Result<PointSet, GeometryError> {
    toric_points_capped(field, exponents, DEFAULT_SIZE_CAP)
}

pub fn toric_points_capped(
    field: &Field,
    exponents: &[Vec<u32>],
    cap: usize,
) -> Result<PointSet, GeometryError> {
    let s = exponents.len();
    if s == 0 || exponents[0].is_empty() {
        return Err(GeometryError::EmptyExponents);
    }
    let n = exponents[0].len();
    if exponents.iter().any(|row| row.len() != n) {
        return Err(GeometryError::EmptyExponents);
    }
    let m = (field.q() - 1) as u64; // exponents live in Z_{q-1}

    // Work in the exponent domain: a parameter tuple t with t_j = beta^{u_j}
    // maps to the point whose i-th coordinate is beta^{<a_i, u> mod (q-1)}.
    // The image is the subgroup of Z_{q-1}^s generated by the exponent
    // matrix columns; standardization subtracts the first coordinate, i.e.
    // quotients by the diagonal. BFS closure over standardized
    // representatives enumerates the point set without visiting all (q-1)^n
    // parameter tuples.
    let gens: Vec<Vec<u64>> = (0..n)
        .map(|j| exponents.iter().map(|row| row[j] as u64 % m.max(1)).collect())
        .collect();
    let standardize = |v: &mut Vec<u64>| {
        let first = v[0];
        if first != 0 {
            for x in v.iter_mut() {
                *x = (*x + m - first) % m;
            }
        }
    };
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue: Vec<Vec<u64>> = Vec::new();
    let origin = vec![0u64; s];
    seen.insert(origin.clone());
    queue.push(origin);
    while let Some(v) = queue.pop() {
        for g in &gens {
            let mut w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| (a + b) % m.max(1)).collect();
            standardize(&mut w);
            if !seen.contains(&w) {
                if seen.len() >= cap {
                    return Err(GeometryError::SizeCap { cap });
                }
                seen.insert(w.clone());
                queue.push(w);
            }
        }
    }

    let mut points: Vec<ProjPoint> = seen
        .into_iter()
        .map(|logs| {
            let codes: Vec<u32> = logs.iter().map(|&u| field.exp_beta(u)).collect();
            ProjPoint::from_codes(field, &codes)
        })
        .collect();
    points.sort();
    Ok(PointSet {
        field: field.clone(),
        s,
        points,
        provenance: Provenance::Toric {
            exponents: exponents.to_vec(),
        },
    })
}

/// The toric set parameterized by the edges of the complete bipartite graph
/// K_{m,n}: the mn monomials z_i z_{m+j}. Size (q-1)^{m+n-2}, living in
/// P^{mn-1}.
pub fn bipartite_points(field: &Field, m: usize, n: usize) -> Result<PointSet, GeometryError> {
    bipartite_points_capped(field, m, n, DEFAULT_SIZE_CAP)
}

pub fn bipartite_points_capped(
    field: &Field,
    m: usize,
    n: usize,
    cap: usize,
) -> Result<PointSet, GeometryError> {
    if m < 2 || n < 2 {
        return Err(GeometryError::BadBipartite { m, n });
    }
    let mut exponents = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut row = vec![0u32; m + n];
            row[i] = 1;
            row[m + j] = 1;
            exponents.push(row);
        }
    }
    let set = toric_points_capped(field, &exponents, cap)?;
    Ok(PointSet {
        provenance: Provenance::Bipartite { m, n },
        ..set
    })
}

/// Standardize a raw coordinate vector (spec operation; equivalent to
/// [`ProjPoint::standardize`]).
pub fn standardize(field: &Field, raw: &[FieldElem]) -> Result<ProjPoint, GeometryError> {
    ProjPoint::standardize(field, raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn elems(f: &Field, codes: &[u32]) -> Vec<FieldElem> {
        codes.iter().map(|&c| f.elem(c).unwrap()).collect()
    }

    #[test]
    fn standardize_examples() {
        let f = gf(5);
        let p = standardize(&f, &elems(&f, &[2, 4, 1])).unwrap();
        assert_eq!(p.codes(), vec![1, 2, 3]);
        let p = standardize(&f, &elems(&f, &[0, 3, 3])).unwrap();
        assert_eq!(p.codes(), vec![0, 1, 1]);
        assert_eq!(
            standardize(&f, &elems(&f, &[0, 0, 0])).unwrap_err(),
            GeometryError::ZeroVector
        );
    }

    #[test]
    fn torus_sizes() {
        assert_eq!(torus_points(&gf(5), 3).unwrap().len(), 16);
        assert_eq!(torus_points(&gf(3), 3).unwrap().len(), 4);
        assert_eq!(torus_points(&gf(4), 4).unwrap().len(), 27);
        // q=2: the single point [1:1:...:1].
        let t = torus_points(&gf(2), 4).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.points()[0].codes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn torus_points_all_nonzero_and_sorted() {
        let t = torus_points(&gf(5), 3).unwrap();
        for p in t.iter() {
            assert!(p.coords().iter().all(|c| !c.is_zero()));
            assert_eq!(p.coords()[0].code(), 1);
        }
        let mut sorted = t.points().to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), t.len());
        assert_eq!(&sorted[..], t.points());
    }

    #[test]
    fn torus_determinism() {
        let a = torus_points(&gf(7), 3).unwrap();
        let b = torus_points(&gf(7), 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn toric_identity_exponents_is_torus() {
        for q in [3u32, 4, 5] {
            let f = gf(q);
            let s = 3;
            let ident: Vec<Vec<u32>> = (0..s)
                .map(|i| (0..s).map(|j| u32::from(i == j)).collect())
                .collect();
            let toric = toric_points(&f, &ident).unwrap();
            let torus = torus_points(&f, s).unwrap();
            assert_eq!(toric.points(), torus.points(), "q={q}");
        }
    }

    #[test]
    fn toric_single_constant_monomial() {
        let f = gf(3);
        // Two rows of a single zero exponent: every monomial evaluates to 1.
        let set = toric_points(&f, &[vec![0], vec![0]]).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.points()[0].codes(), vec![1, 1]);
    }

    #[test]
    fn degenerate_torus_example_size() {
        // [1 : t1^90 : t2^36 : t3^20] over GF(181) has 2*5*9 = 90 points.
        let f = gf(181);
        let expo = vec![
            vec![0, 0, 0],
            vec![90, 0, 0],
            vec![0, 36, 0],
            vec![0, 0, 20],
        ];
        let set = toric_points(&f, &expo).unwrap();
        assert_eq!(set.len(), 90);
        // All coordinates nonzero, first coordinate 1.
        for p in set.iter() {
            assert_eq!(p.coords()[0].code(), 1);
            assert!(p.coords().iter().all(|c| !c.is_zero()));
        }
    }

    #[test]
    fn toric_sets_are_multiplicative_subgroups() {
        // Contains [1:...:1] and closed under coordinatewise product,
        // checked exhaustively for small sets.
        let cases: Vec<(u32, Vec<Vec<u32>>)> = vec![
            (5, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            (4, vec![vec![2, 0], vec![0, 1], vec![1, 1]]),
            (7, vec![vec![2, 0], vec![0, 3]]),
            (9, vec![vec![1, 1], vec![2, 0], vec![0, 4]]),
        ];
        for (q, expo) in cases {
            let f = gf(q);
            let set = toric_points(&f, &expo).unwrap();
            assert!(set.len() <= 256);
            let one = vec![f.one(); set.s()];
            let ident = ProjPoint::standardize(&f, &one).unwrap();
            assert!(set.points().contains(&ident), "q={q}: missing identity");
            for a in set.iter() {
                for b in set.iter() {
                    let prod: Vec<FieldElem> = a
                        .coords()
                        .iter()
                        .zip(b.coords())
                        .map(|(&x, &y)| f.mul(x, y).unwrap())
                        .collect();
                    let p = ProjPoint::standardize(&f, &prod).unwrap();
                    assert!(set.points().contains(&p), "q={q}: not closed");
                }
            }
        }
    }

    #[test]
    fn bipartite_sizes() {
        assert_eq!(bipartite_points(&gf(3), 2, 2).unwrap().len(), 4);
        assert_eq!(bipartite_points(&gf(5), 2, 2).unwrap().len(), 16);
        assert_eq!(bipartite_points(&gf(2), 2, 3).unwrap().len(), 1);
        // Points live in P^{mn-1}.
        assert_eq!(bipartite_points(&gf(3), 2, 2).unwrap().s(), 4);
        assert_eq!(bipartite_points(&gf(3), 2, 3).unwrap().s(), 6);
    }

    #[test]
    fn bipartite_matches_direct_parameterization() {
        let f = gf(3);
        let (m, n) = (2usize, 2usize);
        let set = bipartite_points(&f, m, n).unwrap();
        // Direct: for every (z_1..z_m, w_1..w_n) in (K*)^{m+n}, the point
        // with coordinates z_i * w_j.
        let mut expect = BTreeSet::new();
        let units: Vec<FieldElem> = f.units().collect();
        for z1 in &units {
            for z2 in &units {
                for w1 in &units {
                    for w2 in &units {
                        let coords = vec![
                            f.mul(*z1, *w1).unwrap(),
                            f.mul(*z1, *w2).unwrap(),
                            f.mul(*z2, *w1).unwrap(),
                            f.mul(*z2, *w2).unwrap(),
                        ];
                        expect.insert(ProjPoint::standardize(&f, &coords).unwrap());
                    }
                }
            }
        }
        let expect: Vec<ProjPoint> = expect.into_iter().collect();
        assert_eq!(set.points(), &expect[..]);
    }

    #[test]
    fn size_cap_enforced() {
        let f = gf(5);
        assert_eq!(
            torus_points_capped(&f, 3, 10).unwrap_err(),
            GeometryError::SizeCap { cap: 10 }
        );
        let ident: Vec<Vec<u32>> = (0..3)
            .map(|i| (0..3).map(|j| u32::from(i == j)).collect())
            .collect();
        assert_eq!(
            toric_points_capped(&f, &ident, 10).unwrap_err(),
            GeometryError::SizeCap { cap: 10 }
        );
    }

    #[test]
    fn text_round_trip() {
        let t = torus_points(&gf(5), 3).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("5 3\n"));
        let back = PointSet::from_text(&text).unwrap();
        assert_eq!(back.points(), t.points());
        assert_eq!(back.s(), 3);
        assert_eq!(*back.provenance(), Provenance::Explicit);
    }

    #[test]
    fn text_parse_standardizes_and_dedupes() {
        // (2,4,1) and (1,2,3) are the same projective point over GF(5).
        let text = "5 3\n2 4 1\n1 2 3\n0 3 3\n";
        let set = PointSet::from_text(text).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.points()[0].codes(), vec![0, 1, 1]);
        assert_eq!(set.points()[1].codes(), vec![1, 2, 3]);
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(
            PointSet::from_text(""),
            Err(GeometryError::Parse(_))
        ));
        assert!(matches!(
            PointSet::from_text("5 3\n1 2\n"),
            Err(GeometryError::Parse(_))
        ));
        assert!(matches!(
            PointSet::from_text("6 3\n1 2 3\n"),
            Err(GeometryError::Field(FieldError::NotPrimePower(6)))
        ));
        assert!(matches!(
            PointSet::from_text("5 3\n1 2 x\n"),
            Err(GeometryError::Parse(_))
        ));
    }

    #[test]
    fn explicit_rejects_bad_dimension() {
        let f = gf(5);
        let raw = vec![elems(&f, &[1, 2])];
        assert!(PointSet::explicit(&f, 3, &raw).is_err());
    }
}
