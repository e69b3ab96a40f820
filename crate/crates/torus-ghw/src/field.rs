//! Exact arithmetic in GF(q) for prime-power q.
//!
//! Prime fields use residue arithmetic. Extension fields GF(p^e) represent
//! elements as integer codes packing the coefficient vector over GF(p) in
//! base p (little-endian digits), with multiplication routed through
//! discrete-log tables built once at construction.
//!
//! Everything is deterministic: the modulus is the lexicographically smallest
//! irreducible monic polynomial of degree e, and `beta` is the smallest
//! primitive element in code order. Downstream constructions (which are
//! parameterized by powers of `beta`) are therefore reproducible bit-for-bit.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Default largest supported field size (arithmetic is table-backed).
pub const DEFAULT_MAX_Q: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {q} exceeds the table limit {limit}")]
    TooLarge { q: u32, limit: u32 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("elements of GF({0}) and GF({1}) cannot be combined")]
    MixedFields(u32, u32),
    #[error("code {code} is not an element of GF({q})")]
    BadElement { code: u32, q: u32 },
}

/// An element of GF(q), stored as its canonical integer code in `[0, q)`.
///
/// For prime fields the code is the residue. For extension fields it packs
/// the coefficient vector `(c_0, ..., c_{e-1})` over GF(p) as
/// `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. Equality is representational.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    code: u32,
    q: u32,
}

impl FieldElem {
    /// The canonical integer code in `[0, q)`.
    pub fn code(self) -> u32 {
        self.code
    }

    /// Cardinality of the field this element belongs to.
    pub fn q(self) -> u32 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#GF({})", self.code, self.q)
    }
}

struct FieldInner {
    q: u32,
    p: u32,
    e: u32,
    /// Irreducible monic modulus for e > 1, little-endian coefficients of
    /// length e+1 (leading coefficient 1); empty for prime fields.
    modulus: Vec<u32>,
    /// Code of the distinguished multiplicative generator.
    beta: u32,
    /// exp[i] = code of beta^i, i in 0..q-1.
    exp: Vec<u32>,
    /// log[code] = i with beta^i = code, for code in 1..q; log[0] is a sentinel.
    log: Vec<u32>,
}

/// A handle to GF(q). Cheap to clone; all arithmetic is exact and pure.
///
/// Two independently constructed fields of the same cardinality are
/// interchangeable (construction is deterministic), so element compatibility
/// is checked by cardinality alone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

impl Field {
    /// Construct GF(q) with the default size limit.
    pub fn new(q: u32) -> Result<Field, FieldError> {
        Self::with_limit(q, DEFAULT_MAX_Q)
    }

    /// Construct GF(q) with an explicit table-size limit.
    pub fn with_limit(q: u32, limit: u32) -> Result<Field, FieldError> {
        let (p, e) = prime_power_split(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > limit {
            return Err(FieldError::TooLarge { q, limit });
        }
        let modulus = if e > 1 { find_modulus(p, e) } else { Vec::new() };
        let raw = RawField { q, p, e, modulus };
        let beta = raw.find_beta();
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = raw.mul(acc, beta);
        }
        debug_assert_eq!(acc, 1, "beta must have order q-1");
        Ok(Field(Arc::new(FieldInner {
            q,
            p,
            e,
            modulus: raw.modulus,
            beta,
            exp,
            log,
        })))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Characteristic p.
    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Extension degree e, with q = p^e.
    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// The modulus polynomial for e > 1, as little-endian coefficients over
    /// GF(p) (length e+1, monic). Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The distinguished generator of the multiplicative group.
    pub fn beta(&self) -> FieldElem {
        FieldElem { code: self.0.beta, q: self.0.q }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { code: 0, q: self.0.q }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { code: 1, q: self.0.q }
    }

    /// The element with the given canonical code.
    pub fn elem(&self, code: u32) -> Result<FieldElem, FieldError> {
        if code >= self.0.q {
            return Err(FieldError::BadElement { code, q: self.0.q });
        }
        Ok(FieldElem { code, q: self.0.q })
    }

    /// All q elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let q = self.0.q;
        (0..q).map(move |code| FieldElem { code, q })
    }

    /// All q-1 nonzero elements in code order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let q = self.0.q;
        (1..q).map(move |code| FieldElem { code, q })
    }

    fn check(&self, a: FieldElem) -> Result<u32, FieldError> {
        if a.q != self.0.q {
            return Err(FieldError::MixedFields(self.0.q, a.q));
        }
        Ok(a.code)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(FieldElem { code: self.addc(a, b), q: self.0.q })
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(FieldElem { code: self.addc(a, self.negc(b)), q: self.0.q })
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, FieldError> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(FieldElem { code: self.mulc(a, b), q: self.0.q })
    }

    pub fn neg(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        let a = self.check(a)?;
        Ok(FieldElem { code: self.negc(a), q: self.0.q })
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, FieldError> {
        let a = self.check(a)?;
        if a == 0 {
            return Err(FieldError::DivisionByZero(self.0.q));
        }
        Ok(FieldElem { code: self.invc(a), q: self.0.q })
    }

    /// a^n with integer exponents; negative exponents invert (nonzero base).
    pub fn pow(&self, a: FieldElem, n: i64) -> Result<FieldElem, FieldError> {
        let a = self.check(a)?;
        if a == 0 {
            return match n {
                0 => Ok(self.one()),
                n if n > 0 => Ok(self.zero()),
                _ => Err(FieldError::DivisionByZero(self.0.q)),
            };
        }
        let m = (self.0.q - 1) as i64;
        let n = n.rem_euclid(m.max(1));
        Ok(FieldElem { code: self.powc(a, n as u64), q: self.0.q })
    }

    // ----- raw code-level arithmetic (crate-internal hot paths) -----

    #[inline]
    pub(crate) fn addc(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            let s = a + b;
            if s >= inner.q { s - inner.q } else { s }
        } else if inner.p == 2 {
            a ^ b
        } else {
            let p = inner.p;
            let mut res = 0u32;
            let (mut a, mut b) = (a, b);
            let mut pw = 1u32;
            while a != 0 || b != 0 {
                res += ((a % p + b % p) % p) * pw;
                a /= p;
                b /= p;
                pw *= p;
            }
            res
        }
    }

    #[inline]
    pub(crate) fn negc(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.e == 1 {
            if a == 0 { 0 } else { inner.q - a }
        } else if inner.p == 2 {
            a
        } else {
            let p = inner.p;
            let mut res = 0u32;
            let mut a = a;
            let mut pw = 1u32;
            while a != 0 {
                res += ((p - a % p) % p) * pw;
                a /= p;
                pw *= p;
            }
            res
        }
    }

    #[inline]
    pub(crate) fn subc(&self, a: u32, b: u32) -> u32 {
        self.addc(a, self.negc(b))
    }

    #[inline]
    pub(crate) fn mulc(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        let m = (inner.q - 1) as usize;
        let i = inner.log[a as usize] as usize + inner.log[b as usize] as usize;
        inner.exp[if i >= m { i - m } else { i }]
    }

    #[inline]
    pub(crate) fn invc(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        let inner = &*self.0;
        let m = (inner.q - 1) as usize;
        let i = inner.log[a as usize] as usize;
        inner.exp[if i == 0 { 0 } else { m - i }]
    }

    #[inline]
    pub(crate) fn divc(&self, a: u32, b: u32) -> u32 {
        debug_assert_ne!(b, 0);
        if a == 0 { 0 } else { self.mulc(a, self.invc(b)) }
    }

    #[inline]
    pub(crate) fn powc(&self, a: u32, n: u64) -> u32 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let inner = &*self.0;
        let m = (inner.q - 1) as u64;
        let i = (inner.log[a as usize] as u64 * (n % m)) % m;
        inner.exp[i as usize]
    }

    /// beta^i for i taken mod q-1 (crate-internal: torus constructions work
    /// in the exponent domain).
    #[inline]
    pub(crate) fn exp_beta(&self, i: u64) -> u32 {
        let inner = &*self.0;
        inner.exp[(i % (inner.q - 1) as u64) as usize]
    }
}

/// Split q into (p, e) with q = p^e and p prime; None if q is not a prime
/// power (or q < 2).
fn prime_power_split(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0u32;
    let mut d = 2u32;
    while d as u64 * d as u64 <= q as u64 {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut e = 0u32;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest == 1 {
        Some((p, e))
    } else {
        None
    }
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d as u64 * d as u64 <= n as u64 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ----- polynomial arithmetic over GF(p) used only at construction -----
// Polynomials are little-endian coefficient vectors with no trailing zeros.

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    debug_assert!(!b.is_empty() && *b.last().unwrap() != 0);
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(*b.last().unwrap(), p);
    while r.len() > db {
        let da = r.len() - 1;
        let c = (r[da] as u64 * lead_inv as u64 % p as u64) as u32;
        for i in 0..=db {
            let idx = da - db + i;
            let sub = (c as u64 * b[i] as u64 % p as u64) as u32;
            r[idx] = (r[idx] + p - sub) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and a != 0: Fermat.
    mod_pow(a, p as u64 - 2, p)
}

fn mod_pow(a: u32, mut n: u64, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut acc = 1u64;
    let m = p as u64;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        n >>= 1;
    }
    acc as u32
}

fn code_to_poly(code: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::new();
    let mut c = code;
    while c != 0 {
        v.push(c % p);
        c /= p;
    }
    v
}

fn poly_to_code(v: &[u32], p: u32) -> u32 {
    let mut code = 0u32;
    for &c in v.iter().rev() {
        code = code * p + c;
    }
    code
}

/// Find the lexicographically smallest irreducible monic polynomial of
/// degree e over GF(p), comparing coefficient tuples (c_{e-1}, ..., c_0).
fn find_modulus(p: u32, e: u32) -> Vec<u32> {
    let total = (p as u64).pow(e);
    for n in 0..total {
        let mut m = Vec::with_capacity(e as usize + 1);
        let mut c = n;
        for _ in 0..e {
            m.push((c % p as u64) as u32);
            c /= p as u64;
        }
        m.push(1);
        if poly_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials of degree {e} exist over GF({p})")
}

/// Exhaustive factor test: no monic divisor of degree 1..=e/2.
fn poly_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for dd in 1..=e / 2 {
        let total = (p as u64).pow(dd as u32);
        for n in 0..total {
            let mut b = Vec::with_capacity(dd + 1);
            let mut c = n;
            for _ in 0..dd {
                b.push((c % p as u64) as u32);
                c /= p as u64;
            }
            b.push(1);
            if poly_rem(m, &b, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Arithmetic on codes before the log tables exist.
struct RawField {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
}

impl RawField {
    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            (a as u64 * b as u64 % self.q as u64) as u32
        } else {
            let pa = code_to_poly(a, self.p);
            let pb = code_to_poly(b, self.p);
            poly_to_code(&poly_mulmod(&pa, &pb, &self.modulus, self.p), self.p)
        }
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Smallest code with multiplicative order exactly q-1.
    fn find_beta(&self) -> u32 {
        let m = self.q - 1;
        let factors = distinct_prime_factors(m);
        'outer: for g in 1..self.q {
            for &f in &factors {
                if self.pow(g, (m / f) as u64) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("the multiplicative group of GF({}) is cyclic", self.q)
    }
}
