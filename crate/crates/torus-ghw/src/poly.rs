//! Homogeneous multivariate polynomials over GF(q): sparse term maps,
//! evaluation on point sets, and the explicit pairs of degree-d forms that
//! maximize common zeros on the projective torus.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElem, FieldError};
use crate::geometry::{PointSet, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("degree {d} is outside the valid range 1..={max}")]
    DegreeOutOfRange { d: u32, max: u64 },
    #[error("polynomial text format error: {0}")]
    Parse(String),
}

/// A monomial in s variables: the vector of exponents of X_1, ..., X_s.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn vars(&self) -> usize {
        self.exponents.len()
    }
}

/// All degree-d monomials in s variables, in graded-lexicographic order with
/// X_1 greatest (so X_1^d comes first). There are C(d+s-1, s-1) of them.
pub fn monomial_basis(s: usize, d: u32) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Monomial>, prefix: &mut Vec<u32>, rest_vars: usize, rest_deg: u32) {
        if rest_vars == 1 {
            prefix.push(rest_deg);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=rest_deg).rev() {
            prefix.push(e);
            rec(out, prefix, rest_vars - 1, rest_deg - e);
            prefix.pop();
        }
    }
    assert!(s >= 1);
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::with_capacity(s), s, d);
    out
}

/// A homogeneous polynomial of declared degree d in s variables: a sparse
/// map from monomials to nonzero coefficients. The zero polynomial is the
/// empty map (with any declared degree).
#[derive(Clone)]
pub struct HomogPoly {
    field: Field,
    s: usize,
    d: u32,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl PartialEq for HomogPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.s == other.s
            && self.terms == other.terms
            && (self.d == other.d || self.terms.is_empty())
    }
}

impl Eq for HomogPoly {}

impl HomogPoly {
    pub fn zero(field: &Field, s: usize, d: u32) -> HomogPoly {
        HomogPoly {
            field: field.clone(),
            s,
            d,
            terms: BTreeMap::new(),
        }
    }

    /// Build from (monomial, coefficient) pairs. Every monomial must have s
    /// variables and degree exactly d; repeated monomials accumulate; zero
    /// coefficients are dropped.
    pub fn from_terms(
        field: &Field,
        s: usize,
        d: u32,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Result<HomogPoly, PolyError> {
        let mut poly = HomogPoly::zero(field, s, d);
        for (m, c) in terms {
            if m.vars() != s {
                return Err(PolyError::DimensionMismatch {
                    expected: s,
                    got: m.vars(),
                });
            }
            if m.degree() != d {
                return Err(PolyError::DegreeMismatch {
                    expected: d,
                    got: m.degree(),
                });
            }
            if c.q() != field.q() {
                return Err(FieldError::MixedFields(field.q(), c.q()).into());
            }
            poly.accumulate(m, c);
        }
        Ok(poly)
    }

    /// The linear form c_1 X_1 + ... + c_s X_s.
    pub fn linear_form(field: &Field, coeffs: &[FieldElem]) -> Result<HomogPoly, PolyError> {
        let s = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, &c)| {
            let mut e = vec![0u32; s];
            e[i] = 1;
            (Monomial::new(e), c)
        });
        HomogPoly::from_terms(field, s, 1, terms)
    }

    /// The single monomial c * X^exponents.
    pub fn monomial(field: &Field, c: FieldElem, exponents: Vec<u32>) -> Result<HomogPoly, PolyError> {
        let s = exponents.len();
        let m = Monomial::new(exponents);
        let d = m.degree();
        HomogPoly::from_terms(field, s, d, [(m, c)])
    }

    fn accumulate(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.field.add(*e.get(), c).unwrap();
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> usize {
        self.s
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).copied().unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &HomogPoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(FieldError::MixedFields(self.field.q(), other.field.q()).into());
        }
        if self.s != other.s {
            return Err(PolyError::DimensionMismatch {
                expected: self.s,
                got: other.s,
            });
        }
        Ok(())
    }

    /// Sum of two forms of the same degree (a zero polynomial adapts to the
    /// other side's degree).
    pub fn add(&self, other: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.check_compatible(other)?;
        if self.d != other.d && !self.is_zero() && !other.is_zero() {
            return Err(PolyError::DegreeMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let d = if self.is_zero() { other.d } else { self.d };
        let mut out = HomogPoly::zero(&self.field, self.s, d);
        for (m, c) in self.terms() {
            out.accumulate(m.clone(), c);
        }
        for (m, c) in other.terms() {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> HomogPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c).unwrap();
        }
        out
    }

    pub fn sub(&self, other: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElem) -> Result<HomogPoly, PolyError> {
        if c.q() != self.field.q() {
            return Err(FieldError::MixedFields(self.field.q(), c.q()).into());
        }
        let mut out = HomogPoly::zero(&self.field, self.s, self.d);
        for (m, v) in self.terms() {
            out.accumulate(m.clone(), self.field.mul(v, c).unwrap());
        }
        Ok(out)
    }

    /// Product of two forms; degrees add.
    pub fn mul(&self, other: &HomogPoly) -> Result<HomogPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = HomogPoly::zero(&self.field, self.s, self.d + other.d);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let exps: Vec<u32> = ma
                    .exponents()
                    .iter()
                    .zip(mb.exponents())
                    .map(|(&a, &b)| a + b)
                    .collect();
                let c = self.field.mul(ca, cb).unwrap();
                out.accumulate(Monomial::new(exps), c);
            }
        }
        Ok(out)
    }

    /// Evaluate at a projective point (using its standard-form coordinates).
    pub fn eval(&self, p: &ProjPoint) -> Result<FieldElem, PolyError> {
        if p.dim() != self.s {
            return Err(PolyError::DimensionMismatch {
                expected: self.s,
                got: p.dim(),
            });
        }
        let f = &self.field;
        if let Some(c) = p.coords().first() {
            if c.q() != f.q() {
                return Err(FieldError::MixedFields(f.q(), c.q()).into());
            }
        }
        let mut acc = 0u32;
        for (m, c) in self.terms() {
            let mut t = c.code();
            for (coord, &e) in p.coords().iter().zip(m.exponents()) {
                if e == 0 {
                    continue;
                }
                t = f.mulc(t, f.powc(coord.code(), e as u64));
                if t == 0 {
                    break;
                }
            }
            acc = f.addc(acc, t);
        }
        Ok(f.elem(acc).unwrap())
    }

    /// Indices of the points of X where the polynomial vanishes, ascending.
    pub fn zero_set(&self, x: &PointSet) -> Result<Vec<usize>, PolyError> {
        let mut out = Vec::new();
        for (i, p) in x.iter().enumerate() {
            if self.eval(p)?.is_zero() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Parse the plain-text grammar `coef*X1^e1*...*Xs^es + ...`.
    /// Exponent suffixes `^1` may be omitted, variables with exponent zero
    /// may be dropped, and a bare leading variable implies coefficient 1.
    /// The text `0` denotes the zero polynomial.
    pub fn parse(field: &Field, s: usize, text: &str) -> Result<HomogPoly, PolyError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PolyError::Parse("empty polynomial text".into()));
        }
        if text == "0" {
            return Ok(HomogPoly::zero(field, s, 0));
        }
        let mut terms: Vec<(Monomial, FieldElem)> = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(PolyError::Parse("empty term".into()));
            }
            let mut coef: Option<u32> = None;
            let mut exps = vec![0u32; s];
            for (i, factor) in term.split('*').enumerate() {
                let factor = factor.trim();
                if let Some(rest) = factor.strip_prefix('X') {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e),
                        None => (rest, "1"),
                    };
                    let var: usize = var
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad variable `{factor}`")))?;
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad exponent `{factor}`")))?;
                    if var < 1 || var > s {
                        return Err(PolyError::Parse(format!(
                            "variable X{var} out of range 1..={s}"
                        )));
                    }
                    exps[var - 1] += exp;
                } else if i == 0 {
                    let c: u32 = factor
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad coefficient `{factor}`")))?;
                    coef = Some(c);
                } else {
                    return Err(PolyError::Parse(format!("unexpected factor `{factor}`")));
                }
            }
            let c = field.elem(coef.unwrap_or(1))?;
            terms.push((Monomial::new(exps), c));
        }
        let d = terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0);
        if let Some((m, _)) = terms.iter().find(|(m, _)| m.degree() != d) {
            return Err(PolyError::Parse(format!(
                "mixed degrees: {} and {}",
                m.degree(),
                d
            )));
        }
        HomogPoly::from_terms(field, s, d, terms)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Terms in graded-lex order with X_1 greatest.
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut printed = false;
            if c.code() != 1 || m.degree() == 0 {
                write!(f, "{}", c.code())?;
                printed = true;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                printed = true;
                write!(f, "X{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (deg {}, {} vars)", self, self.d, self.s)
    }
}

/// Decompose d = k(q-2) + l with 1 <= l <= q-2 (requires q >= 3, d >= 1).
fn kl_local(q: u32, d: u32) -> (u32, u32) {
    let k = (d - 1) / (q - 2);
    let l = d - k * (q - 2);
    (k, l)
}

/// A pair of linearly independent degree-d forms, neither vanishing
/// identically on the torus T_{s-1}, whose number of common torus zeros is
/// the maximum possible (the two-form zero bound from `formulas::z2`).
///
/// Valid for s >= 3 and 1 <= d <= (q-2)(s-1).
pub fn construct_zero_maximizers(
    field: &Field,
    s: usize,
    d: u32,
) -> Result<(HomogPoly, HomogPoly), PolyError> {
    if s < 3 {
        return Err(PolyError::DimensionMismatch { expected: 3, got: s });
    }
    let q = field.q();
    let max = (q as u64 - 2) * (s as u64 - 1);
    if d < 1 || d as u64 > max {
        return Err(PolyError::DegreeOutOfRange { d, max });
    }
    let (k, l) = kl_local(q, d);
    let beta = field.beta();
    let one = field.one();

    // a*X_i - X_j as a linear form (variables are 1-based).
    let lin = |a: FieldElem, i: usize, j: usize| -> HomogPoly {
        let mut coeffs = vec![field.zero(); s];
        coeffs[i - 1] = a;
        coeffs[j - 1] = field.neg(one).unwrap();
        HomogPoly::linear_form(field, &coeffs).unwrap()
    };
    let beta_pow = |i: u32| field.pow(beta, i as i64).unwrap();

    let product = |factors: Vec<HomogPoly>| -> HomogPoly {
        let mut acc = HomogPoly::monomial(field, one, vec![0; s]).unwrap();
        for fac in factors {
            acc = acc.mul(&fac).unwrap();
        }
        acc
    };

    if k == 0 {
        // d <= q-2: the two forms of the three-variable construction,
        // reused verbatim inside the first three of the s variables.
        if d == 1 {
            return Ok((lin(one, 1, 3), lin(one, 2, 3)));
        }
        let tail: Vec<HomogPoly> = (1..d).map(|j| lin(beta_pow(j), 1, 3)).collect();
        let f1 = product(
            std::iter::once(lin(beta_pow(q - 2), 1, 3))
                .chain(tail.iter().cloned())
                .collect(),
        );
        let f2 = product(
            std::iter::once(lin(one, 2, 3))
                .chain(tail.into_iter())
                .collect(),
        );
        return Ok((f1, f2));
    }

    // H_k hits every torus value of X_{j+1}/X_1 except one, for each of the
    // first k quotient variables.
    let h_factors = |kk: u32| -> Vec<HomogPoly> {
        let mut v = Vec::new();
        for j in 1..=kk as usize {
            for i in 1..=q - 2 {
                v.push(lin(beta_pow(i), 1, j + 1));
            }
        }
        v
    };

    if (k as usize) <= s - 3 {
        // q-2 < d <= (q-2)(s-2)
        let c = k as usize + 2;
        let tail: Vec<HomogPoly> = (1..l).map(|i| lin(beta_pow(i), 1, c)).collect();
        let mut f_factors = h_factors(k);
        f_factors.push(lin(beta_pow(q - 2), 1, c));
        f_factors.extend(tail.iter().cloned());
        let mut g_factors = h_factors(k);
        g_factors.push(lin(one, c, c + 1));
        g_factors.extend(tail);
        return Ok((product(f_factors), product(g_factors)));
    }

    // (q-2)(s-2) < d <= (q-2)(s-1), i.e. k = s-2.
    debug_assert_eq!(k as usize, s - 2);
    let tail: Vec<HomogPoly> = (1..l).map(|i| lin(beta_pow(i), 1, s)).collect();
    let mut f_factors = h_factors(k);
    f_factors.push(lin(beta_pow(q - 2), 1, s));
    f_factors.extend(tail.iter().cloned());
    let mut g_factors = h_factors(k);
    g_factors.push(lin(one, 1, s));
    g_factors.extend(tail);
    Ok((product(f_factors), product(g_factors)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::torus_points;

    fn gf(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn basis_counts_and_order() {
        let b = monomial_basis(2, 1);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].exponents(), &[1, 0]); // X1 first
        assert_eq!(b[1].exponents(), &[0, 1]);
        assert_eq!(monomial_basis(3, 2).len(), 6);
        assert_eq!(monomial_basis(4, 5).len(), 56);
        // Graded-lex with X1 greatest: strictly decreasing exponent vectors.
        let b = monomial_basis(3, 2);
        assert_eq!(b[0].exponents(), &[2, 0, 0]);
        assert!(b.windows(2).all(|w| w[0].exponents() > w[1].exponents()));
    }

    #[test]
    fn eval_examples() {
        let f = gf(5);
        let t2 = torus_points(&f, 3).unwrap();
        // X1 - X3 vanishes exactly at points with X3 = 1.
        let x1_minus_x3 = HomogPoly::parse(&f, 3, "1*X1 + 4*X3").unwrap();
        let alpha = f.elem(3).unwrap();
        let p = ProjPoint::standardize(&f, &[f.one(), alpha, f.one()]).unwrap();
        assert!(x1_minus_x3.eval(&p).unwrap().is_zero());
        assert_eq!(x1_minus_x3.zero_set(&t2).unwrap().len(), 4);
        // X1^d never vanishes on the torus.
        let x1d = HomogPoly::monomial(&f, f.one(), vec![3, 0, 0]).unwrap();
        assert!(x1d.zero_set(&t2).unwrap().is_empty());
        for p in t2.iter() {
            assert_eq!(x1d.eval(p).unwrap(), f.one());
        }
        // The zero polynomial vanishes everywhere.
        let z = HomogPoly::zero(&f, 3, 4);
        assert_eq!(z.zero_set(&t2).unwrap().len(), 16);
    }

    #[test]
    fn mul_expansion() {
        let f = gf(5);
        let a = HomogPoly::parse(&f, 3, "X1 + 4*X3").unwrap(); // X1 - X3
        let b = HomogPoly::parse(&f, 3, "X2 + 4*X3").unwrap(); // X2 - X3
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.degree(), 2);
        assert_eq!(prod.num_terms(), 4); // X1X2 - X1X3 - X2X3 + X3^2
        let expect = HomogPoly::parse(&f, 3, "X1*X2 + 4*X1*X3 + 4*X2*X3 + X3^2").unwrap();
        assert_eq!(prod, expect);
        // f * 0 = 0.
        let z = HomogPoly::zero(&f, 3, 1);
        assert!(a.mul(&z).unwrap().is_zero());
        // (2 X1)(3 X2) = X1 X2 over GF(5).
        let p = HomogPoly::parse(&f, 3, "2*X1").unwrap();
        let q = HomogPoly::parse(&f, 3, "3*X2").unwrap();
        assert_eq!(p.mul(&q).unwrap(), HomogPoly::parse(&f, 3, "X1*X2").unwrap());
    }

    #[test]
    fn mul_commutes_and_associates() {
        let f = gf(7);
        let polys = [
            HomogPoly::parse(&f, 3, "2*X1 + 3*X2").unwrap(),
            HomogPoly::parse(&f, 3, "X1 + 6*X3").unwrap(),
            HomogPoly::parse(&f, 3, "5*X2 + X3").unwrap(),
        ];
        for a in &polys {
            for b in &polys {
                assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                for c in &polys {
                    assert_eq!(
                        a.mul(b).unwrap().mul(c).unwrap(),
                        a.mul(&b.mul(c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn maximizer_pair_common_zeros_gf5_d2() {
        // Over GF(5), d=2: the pair of forms has 1+(2-1)(5-1) = 5 common
        // torus zeros.
        let f = gf(5);
        let t2 = torus_points(&f, 3).unwrap();
        let (f1, f2) = construct_zero_maximizers(&f, 3, 2).unwrap();
        let z1: std::collections::BTreeSet<usize> =
            f1.zero_set(&t2).unwrap().into_iter().collect();
        let z2: std::collections::BTreeSet<usize> =
            f2.zero_set(&t2).unwrap().into_iter().collect();
        assert_eq!(z1.intersection(&z2).count(), 5);
    }

    #[test]
    fn zero_maximizer_range_errors() {
        let f = gf(5);
        assert!(matches!(
            construct_zero_maximizers(&f, 2, 1),
            Err(PolyError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            construct_zero_maximizers(&f, 3, 0),
            Err(PolyError::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            construct_zero_maximizers(&f, 3, 7),
            Err(PolyError::DegreeOutOfRange { max: 6, .. })
        ));
        // Over GF(2) the valid degree range is empty.
        let f2 = gf(2);
        assert!(matches!(
            construct_zero_maximizers(&f2, 3, 1),
            Err(PolyError::DegreeOutOfRange { max: 0, .. })
        ));
    }

    #[test]
    fn display_parse_round_trip() {
        let f = gf(5);
        let polys = [
            "0",
            "3*X1^2 + X1*X2 + 4*X3^2",
            "X1 + X2 + X3",
            "2*X1^3",
            "4*X1*X2*X3",
        ];
        for text in polys {
            let p = HomogPoly::parse(&f, 3, text).unwrap();
            let rendered = p.to_string();
            let q = HomogPoly::parse(&f, 3, &rendered).unwrap();
            assert_eq!(p, q, "round trip failed for `{text}` -> `{rendered}`");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        let f = gf(5);
        assert!(HomogPoly::parse(&f, 3, "").is_err());
        assert!(HomogPoly::parse(&f, 3, "X4").is_err());
        assert!(HomogPoly::parse(&f, 3, "7*X1").is_err()); // coefficient out of range
        assert!(HomogPoly::parse(&f, 3, "X1 + X2^2").is_err()); // mixed degrees
        assert!(HomogPoly::parse(&f, 3, "X1^x").is_err());
    }

    #[test]
    fn add_and_scale() {
        let f = gf(5);
        let a = HomogPoly::parse(&f, 3, "2*X1 + X2").unwrap();
        let b = HomogPoly::parse(&f, 3, "3*X1 + X3").unwrap();
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, HomogPoly::parse(&f, 3, "X2 + X3").unwrap());
        let neg = a.neg();
        assert!(a.add(&neg).unwrap().is_zero());
        let scaled = a.scale(f.elem(3).unwrap()).unwrap();
        assert_eq!(scaled, HomogPoly::parse(&f, 3, "X1 + 3*X2").unwrap());
    }

    #[test]
    fn eval_dimension_mismatch() {
        let f = gf(5);
        let a = HomogPoly::parse(&f, 2, "X1 + X2").unwrap();
        let t2 = torus_points(&f, 3).unwrap();
        assert!(matches!(
            a.eval(&t2.points()[0]),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }
}
