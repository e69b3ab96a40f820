//! Exact generalized Hamming weights.
//!
//! The workhorse is a coordinate-subset sweep: d_r(C) equals
//! n − max{|Y| : rank(G_Y) ≤ k − r} over column subsets Y of the generator,
//! and dually min{|Y| : |Y| − rank(H_Y) ≥ r} over column subsets of a parity
//! check. Both forms are computed by a depth-first enumeration ordered "by
//! next included column", with incremental rank tracking and two safe prunes:
//! a subtree is abandoned when no reachable (rank, size) combination can
//! improve the records, and on the parity side a subtree whose columns have
//! saturated the rank is folded into its records in closed form. The sweep
//! runs on whichever of G / H has fewer rows and, for longer codes, fans the
//! DFS frontier out across threads; records are shared atomics merged by
//! max/min, so the result is deterministic regardless of scheduling.

use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::evalcode::LinearCode;
use crate::field::Field;
use crate::matrix::GfMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GhwError {
    #[error("r={r} is out of range for a dimension-{k} code")]
    OutOfRange { r: usize, k: usize },
    #[error("n={n} exceeds the exhaustive-search cap of {cap} coordinates")]
    Infeasible { n: usize, cap: usize },
    #[error("enumerating {count} {what} exceeds the cap of {cap}")]
    InfeasibleEnumeration {
        count: u128,
        cap: u64,
        what: &'static str,
    },
    #[error("not a partition candidate: {reason}")]
    NotAPartitionCandidate { reason: String },
}

/// How a weight was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    Formula,
    Duality,
    SingletonForced,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Oracle => "oracle",
            Method::Formula => "formula",
            Method::Duality => "duality",
            Method::SingletonForced => "singleton-forced",
        };
        write!(f, "{s}")
    }
}

/// The full sequence d_1 < d_2 < … < d_k with a per-entry method tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightHierarchy {
    weights: Vec<usize>,
    methods: Vec<Method>,
}

#[derive(Serialize)]
struct HierarchyJson<'a> {
    n: usize,
    k: usize,
    weights: &'a [usize],
    methods: &'a [Method],
}

impl WeightHierarchy {
    pub fn new(weights: Vec<usize>, method: Method) -> WeightHierarchy {
        let methods = vec![method; weights.len()];
        WeightHierarchy { weights, methods }
    }

    pub fn with_methods(weights: Vec<usize>, methods: Vec<Method>) -> WeightHierarchy {
        assert_eq!(weights.len(), methods.len(), "one method tag per weight");
        WeightHierarchy { weights, methods }
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn methods(&self) -> &[Method] {
        &self.methods
    }

    /// Number of weights (the code dimension for a full hierarchy).
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// d_r for 1-based r.
    pub fn weight(&self, r: usize) -> Option<usize> {
        (r >= 1).then(|| self.weights.get(r - 1).copied()).flatten()
    }

    /// `{"n":…, "k":…, "weights":[…], "methods":[…]}`.
    pub fn to_json(&self, n: usize) -> String {
        serde_json::to_string(&HierarchyJson {
            n,
            k: self.k(),
            weights: &self.weights,
            methods: &self.methods,
        })
        .expect("hierarchy serialization cannot fail")
    }
}

/// Feasibility caps for the exhaustive methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    /// Longest code the subset sweep will attempt.
    pub max_n_exhaustive: usize,
    /// Largest enumeration (codewords, subspaces) the fallbacks will attempt.
    pub max_codewords: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_n_exhaustive: 24,
            max_codewords: 10_000_000,
        }
    }
}

// ----- small-field arithmetic tables for the sweep hot path -----

struct Ops<'a> {
    field: &'a Field,
    q: usize,
    // mul + sub tables, q*q entries each, when q is small enough to afford.
    tables: Option<(Vec<u32>, Vec<u32>)>,
}

impl<'a> Ops<'a> {
    fn new(field: &'a Field) -> Ops<'a> {
        let q = field.q() as usize;
        let tables = (q <= 256).then(|| {
            let mut mul = vec![0u32; q * q];
            let mut sub = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    mul[(a as usize) * q + b as usize] = field.mulc(a, b);
                    sub[(a as usize) * q + b as usize] = field.subc(a, b);
                }
            }
            (mul, sub)
        });
        Ops { field, q, tables }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some((m, _)) => m[(a as usize) * self.q + b as usize],
            None => self.field.mulc(a, b),
        }
    }

    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some((_, s)) => s[(a as usize) * self.q + b as usize],
            None => self.field.subc(a, b),
        }
    }

    fn inv(&self, a: u32) -> u32 {
        self.field.invc(a)
    }
}

/// One echelon basis vector: leading position plus the (normalized) vector.
type BasisVec = (usize, Vec<u32>);

/// Reduce `col` against the echelon basis into `scratch`. Returns the leading
/// position if the column is independent (scratch then holds the normalized
/// residual), or None if it lies in the span.
fn reduce_into(ops: &Ops, basis: &[BasisVec], col: &[u32], scratch: &mut Vec<u32>) -> Option<usize> {
    scratch.clear();
    scratch.extend_from_slice(col);
    for (lead, b) in basis {
        let c = scratch[*lead];
        if c != 0 {
            for (x, y) in scratch.iter_mut().zip(b) {
                *x = ops.sub(*x, ops.mul(c, *y));
            }
        }
    }
    let lead = scratch.iter().position(|&x| x != 0)?;
    let inv = ops.inv(scratch[lead]);
    if inv != 1 {
        for x in scratch.iter_mut() {
            if *x != 0 {
                *x = ops.mul(*x, inv);
            }
        }
    }
    Some(lead)
}

#[inline]
fn bump_max(a: &AtomicUsize, v: usize) {
    if v > a.load(Relaxed) {
        a.fetch_max(v, Relaxed);
    }
}

#[inline]
fn bump_min(a: &AtomicUsize, v: usize) {
    if v < a.load(Relaxed) {
        a.fetch_min(v, Relaxed);
    }
}

struct Sweep<'a> {
    ops: Ops<'a>,
    cols: Vec<Vec<u32>>,
    n: usize,
    rows: usize,
    /// Generator side: rec[ρ] = max subset size of column-rank ρ (ρ < rows).
    /// Parity side: rec[e] = min subset size of excess e (e ≤ k).
    rec: Vec<AtomicUsize>,
}

/// Columns at and after `start` are still available; the current subset has
/// `size` columns spanning `basis`. Records every descendant subset of rank
/// below `rows` (larger ranks cannot matter for any d_r).
fn g_dfs(sw: &Sweep, basis: &mut Vec<BasisVec>, start: usize, size: usize, scratch: &mut Vec<u32>) {
    let rank = basis.len();
    let remaining = sw.n - start;
    let cap_size = size + remaining;
    let hi = (rank + remaining).min(sw.rows - 1);
    if !(rank..=hi).any(|rho| sw.rec[rho].load(Relaxed) < cap_size) {
        return;
    }
    for j in start..sw.n {
        match reduce_into(&sw.ops, basis, &sw.cols[j], scratch) {
            None => {
                bump_max(&sw.rec[rank], size + 1);
                g_dfs(sw, basis, j + 1, size + 1, scratch);
            }
            Some(lead) => {
                if rank + 1 < sw.rows {
                    bump_max(&sw.rec[rank + 1], size + 1);
                    basis.push((lead, scratch.clone()));
                    g_dfs(sw, basis, j + 1, size + 1, scratch);
                    basis.pop();
                }
            }
        }
    }
}

/// Parity-side analogue of `g_dfs`; `kdim` is the code dimension (the
/// largest possible excess). Once the basis saturates the parity rank, all
/// remaining columns are dependent and the subtree's records are closed-form.
fn h_dfs(
    sw: &Sweep,
    basis: &mut Vec<BasisVec>,
    start: usize,
    size: usize,
    kdim: usize,
    scratch: &mut Vec<u32>,
) {
    let rank = basis.len();
    let excess = size - rank;
    let remaining = sw.n - start;
    if rank == sw.rows {
        let lim = remaining.min(kdim - excess);
        for t in 1..=lim {
            bump_min(&sw.rec[excess + t], size + t);
        }
        return;
    }
    let hi = (excess + remaining).min(kdim);
    if !(excess + 1..=hi).any(|e| sw.rec[e].load(Relaxed) > size + (e - excess)) {
        return;
    }
    for j in start..sw.n {
        match reduce_into(&sw.ops, basis, &sw.cols[j], scratch) {
            None => {
                bump_min(&sw.rec[excess + 1], size + 1);
                h_dfs(sw, basis, j + 1, size + 1, kdim, scratch);
            }
            Some(lead) => {
                basis.push((lead, scratch.clone()));
                h_dfs(sw, basis, j + 1, size + 1, kdim, scratch);
                basis.pop();
            }
        }
    }
}

struct Task {
    basis: Vec<BasisVec>,
    start: usize,
    size: usize,
}

/// Expand the DFS down to subsets of `depth` columns, recording along the
/// way; the depth-`depth` nodes become independent tasks.
#[allow(clippy::too_many_arguments)]
fn expand(
    sw: &Sweep,
    basis: &mut Vec<BasisVec>,
    start: usize,
    size: usize,
    depth: usize,
    parity: Option<usize>, // Some(kdim) on the parity side
    scratch: &mut Vec<u32>,
    tasks: &mut Vec<Task>,
) {
    if size == depth {
        tasks.push(Task {
            basis: basis.clone(),
            start,
            size,
        });
        return;
    }
    let rank = basis.len();
    match parity {
        None => {
            for j in start..sw.n {
                match reduce_into(&sw.ops, basis, &sw.cols[j], scratch) {
                    None => {
                        bump_max(&sw.rec[rank], size + 1);
                        expand(sw, basis, j + 1, size + 1, depth, parity, scratch, tasks);
                    }
                    Some(lead) => {
                        if rank + 1 < sw.rows {
                            bump_max(&sw.rec[rank + 1], size + 1);
                            basis.push((lead, scratch.clone()));
                            expand(sw, basis, j + 1, size + 1, depth, parity, scratch, tasks);
                            basis.pop();
                        }
                    }
                }
            }
        }
        Some(kdim) => {
            let excess = size - rank;
            if rank == sw.rows {
                let remaining = sw.n - start;
                let lim = remaining.min(kdim - excess);
                for t in 1..=lim {
                    bump_min(&sw.rec[excess + t], size + t);
                }
                return;
            }
            for j in start..sw.n {
                match reduce_into(&sw.ops, basis, &sw.cols[j], scratch) {
                    None => {
                        bump_min(&sw.rec[excess + 1], size + 1);
                        expand(sw, basis, j + 1, size + 1, depth, parity, scratch, tasks);
                    }
                    Some(lead) => {
                        basis.push((lead, scratch.clone()));
                        expand(sw, basis, j + 1, size + 1, depth, parity, scratch, tasks);
                        basis.pop();
                    }
                }
            }
        }
    }
}

/// Run one side of the sweep, parallelizing over a shallow DFS frontier when
/// the code is long enough for it to pay.
fn run_sweep(sw: &Sweep, parity: Option<usize>) {
    let mut basis = Vec::new();
    let mut scratch = Vec::new();
    if sw.n <= 20 {
        match parity {
            None => g_dfs(sw, &mut basis, 0, 0, &mut scratch),
            Some(kdim) => h_dfs(sw, &mut basis, 0, 0, kdim, &mut scratch),
        }
        return;
    }
    let depth = 3.min(sw.n);
    let mut tasks = Vec::new();
    expand(sw, &mut basis, 0, 0, depth, parity, &mut scratch, &mut tasks);
    tasks.into_par_iter().for_each(|mut t| {
        let mut scratch = Vec::new();
        match parity {
            None => g_dfs(sw, &mut t.basis, t.start, t.size, &mut scratch),
            Some(kdim) => h_dfs(sw, &mut t.basis, t.start, t.size, kdim, &mut scratch),
        }
    });
}

fn columns(m: &GfMatrix) -> Vec<Vec<u32>> {
    (0..m.cols()).map(|j| m.col_codes(j)).collect()
}

fn sweep_generator_side(c: &LinearCode) -> Vec<usize> {
    let g = c.generator();
    let (n, k) = (c.n(), c.k());
    let sw = Sweep {
        ops: Ops::new(c.field()),
        cols: columns(g),
        n,
        rows: k,
        rec: (0..k).map(|_| AtomicUsize::new(0)).collect(),
    };
    run_sweep(&sw, None);
    // d_r = n − max{|Y| : rank(Y) ≤ k − r}; make the records cumulative in ρ.
    let mut cum = vec![0usize; k];
    let mut best = 0;
    for (rho, slot) in sw.rec.iter().enumerate() {
        best = best.max(slot.load(Relaxed));
        cum[rho] = best;
    }
    (1..=k).map(|r| n - cum[k - r]).collect()
}

fn sweep_parity_side(c: &LinearCode) -> Vec<usize> {
    let (n, k) = (c.n(), c.k());
    let h = c.generator().nullspace();
    debug_assert_eq!(h.rows(), n - k);
    let mut rec: Vec<AtomicUsize> = (0..=k).map(|_| AtomicUsize::new(usize::MAX)).collect();
    rec[0] = AtomicUsize::new(0);
    let sw = Sweep {
        ops: Ops::new(c.field()),
        cols: columns(&h),
        n,
        rows: n - k,
        rec,
    };
    run_sweep(&sw, Some(k));
    // d_r = min{|Y| : excess(Y) ≥ r}: suffix-minimize the exact-excess records.
    let mut out = vec![0usize; k];
    let mut best = usize::MAX;
    for e in (1..=k).rev() {
        best = best.min(sw.rec[e].load(Relaxed));
        out[e - 1] = best;
    }
    out
}

/// The full weight hierarchy d_1 < … < d_k by exhaustive subset sweep.
///
/// A full-space code (k = n) needs no sweep: d_r = r, tagged
/// `singleton-forced`. The zero code has no hierarchy (OutOfRange), and
/// codes longer than `caps.max_n_exhaustive` are refused (Infeasible).
pub fn hierarchy_exact(c: &LinearCode, caps: &OracleCaps) -> Result<WeightHierarchy, GhwError> {
    let (n, k) = (c.n(), c.k());
    if k == 0 {
        return Err(GhwError::OutOfRange { r: 1, k: 0 });
    }
    if k == n {
        return Ok(WeightHierarchy::new(
            (1..=n).collect(),
            Method::SingletonForced,
        ));
    }
    if n > caps.max_n_exhaustive {
        return Err(GhwError::Infeasible {
            n,
            cap: caps.max_n_exhaustive,
        });
    }
    let weights = if k <= n - k {
        sweep_generator_side(c)
    } else {
        sweep_parity_side(c)
    };
    debug_assert!(
        weights.windows(2).all(|w| w[0] < w[1]),
        "hierarchy must be strictly increasing: {weights:?}"
    );
    Ok(WeightHierarchy::new(weights, Method::Oracle))
}

/// d_r alone, via the same sweep.
pub fn ghw_exact(c: &LinearCode, r: usize, caps: &OracleCaps) -> Result<usize, GhwError> {
    if r < 1 || r > c.k() {
        return Err(GhwError::OutOfRange { r, k: c.k() });
    }
    Ok(hierarchy_exact(c, caps)?.weights()[r - 1])
}

/// Gaussian binomial [k choose r]_q — the number of r-dimensional subspaces
/// of GF(q)^k. Saturates at u128::MAX on overflow.
pub fn gaussian_binomial(q: u128, k: usize, r: usize) -> u128 {
    if r > k {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        let Some(num) = q.checked_pow((k - i) as u32).map(|x| x - 1) else {
            return u128::MAX;
        };
        let den = match q.checked_pow((i + 1) as u32) {
            Some(x) => x - 1,
            None => return u128::MAX,
        };
        // Partial products are themselves Gaussian binomials, so each
        // division is exact.
        acc = match acc.checked_mul(num) {
            Some(x) => x / den,
            None => return u128::MAX,
        };
    }
    acc
}

/// d_r by direct enumeration of all r-dimensional subcodes, each named by
/// its canonical reduced-row-echelon basis in message space. Exponentially
/// slower than the sweep; kept as an independent oracle for cross-checks.
pub fn ghw_by_subspaces(c: &LinearCode, r: usize, caps: &OracleCaps) -> Result<usize, GhwError> {
    let k = c.k();
    if r < 1 || r > k {
        return Err(GhwError::OutOfRange { r, k });
    }
    let f = c.field();
    let q = f.q();
    let count = gaussian_binomial(q as u128, k, r);
    if count > caps.max_codewords as u128 {
        return Err(GhwError::InfeasibleEnumeration {
            count,
            cap: caps.max_codewords,
            what: "subspaces",
        });
    }
    let g = c.generator();
    let n = c.n();
    let mut best = usize::MAX;
    let mut pivots = vec![0usize; r];
    let mut msg = GfMatrix::zeros(f, r, k);

    // Enumerate pivot-column combinations, then odometer the free entries.
    fn pivot_combos(k: usize, r: usize, at: usize, lo: usize, pivots: &mut [usize], mut f: &mut dyn FnMut(&[usize])) {
        if at == r {
            f(pivots);
            return;
        }
        for p in lo..=k - (r - at) {
            pivots[at] = p;
            pivot_combos(k, r, at + 1, p + 1, pivots, &mut f);
        }
    }

    let mut eval = |mat: &GfMatrix| {
        // Support of the subcode spanned by msg·G: columns of the r×n image
        // with any nonzero entry.
        let mut support = 0usize;
        'cols: for j in 0..n {
            for i in 0..r {
                let mut acc = 0u32;
                for t in 0..k {
                    acc = f.addc(acc, f.mulc(mat.getc(i, t), g.getc(t, j)));
                }
                if acc != 0 {
                    support += 1;
                    continue 'cols;
                }
            }
        }
        best = best.min(support);
    };

    pivot_combos(k, r, 0, 0, &mut pivots, &mut |piv: &[usize]| {
        // Reset and place pivot 1s.
        for i in 0..r {
            for j in 0..k {
                msg.setc(i, j, 0);
            }
        }
        for (i, &p) in piv.iter().enumerate() {
            msg.setc(i, p, 1);
        }
        // Free positions: right of the row's pivot, not a pivot column.
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                let piv_cols: Vec<usize> = piv.to_vec();
                (piv[i] + 1..k)
                    .filter(move |j| !piv_cols.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            for (d, &(i, j)) in digits.iter().zip(&free) {
                msg.setc(i, j, *d);
            }
            eval(&msg);
            // Odometer increment.
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return;
                }
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    });
    Ok(best)
}

/// Minimum distance d_1. Prefers the subset sweep; falls back to enumerating
/// all q^k codewords (up to projective scaling) when the code is too long
/// but low-dimensional.
pub fn min_distance(c: &LinearCode, caps: &OracleCaps) -> Result<usize, GhwError> {
    let (n, k) = (c.n(), c.k());
    if k == 0 {
        return Err(GhwError::OutOfRange { r: 1, k: 0 });
    }
    if n <= caps.max_n_exhaustive {
        return Ok(hierarchy_exact(c, caps)?.weights()[0]);
    }
    let q = c.field().q();
    let feasible = (q as u128)
        .checked_pow(k as u32)
        .is_some_and(|cw| cw <= caps.max_codewords as u128);
    if !feasible {
        return Err(GhwError::Infeasible {
            n,
            cap: caps.max_n_exhaustive,
        });
    }
    Ok(codeword_min_weight(c))
}

fn codeword_min_weight(c: &LinearCode) -> usize {
    struct Walker<'a> {
        rows: Vec<&'a [u32]>,
        f: &'a Field,
        q: u32,
        v: Vec<u32>,
        best: usize,
    }
    impl Walker<'_> {
        fn add_row(&mut self, i: usize) {
            for (x, y) in self.v.iter_mut().zip(self.rows[i]) {
                *x = self.f.addc(*x, *y);
            }
        }
        fn sub_row(&mut self, i: usize) {
            for (x, y) in self.v.iter_mut().zip(self.rows[i]) {
                *x = self.f.subc(*x, *y);
            }
        }
        /// Weights are scaling-invariant, so only messages whose first
        /// nonzero digit is 1 are walked: a (q−1)-fold saving.
        fn go(&mut self, i: usize, seen_nonzero: bool) {
            if i == self.rows.len() {
                if seen_nonzero {
                    let w = self.v.iter().filter(|&&x| x != 0).count();
                    self.best = self.best.min(w);
                }
                return;
            }
            if seen_nonzero {
                self.go(i + 1, true);
                for _ in 1..self.q {
                    self.add_row(i);
                    self.go(i + 1, true);
                }
                self.add_row(i); // q·row ≡ 0: restores v
            } else {
                self.go(i + 1, false);
                self.add_row(i);
                self.go(i + 1, true);
                self.sub_row(i);
            }
        }
    }
    let g = c.generator();
    let mut w = Walker {
        rows: (0..c.k()).map(|i| g.row_codes(i)).collect(),
        f: c.field(),
        q: c.field().q(),
        v: vec![0u32; c.n()],
        best: usize::MAX,
    };
    w.go(0, false);
    w.best
}

/// Complete a hierarchy through Wei duality: {d_r(C)} and {n+1 − d_r(C⊥)}
/// partition {1, …, n}, so the dual hierarchy is the reflected complement.
pub fn duality_complete(h: &WeightHierarchy, n: usize) -> Result<WeightHierarchy, GhwError> {
    let w = h.weights();
    if w.len() > n {
        return Err(GhwError::NotAPartitionCandidate {
            reason: format!("{} weights cannot fit in {{1..{n}}}", w.len()),
        });
    }
    for (i, &x) in w.iter().enumerate() {
        if x < 1 || x > n {
            return Err(GhwError::NotAPartitionCandidate {
                reason: format!("weight d_{} = {x} is outside 1..={n}", i + 1),
            });
        }
        if i > 0 && w[i - 1] >= x {
            return Err(GhwError::NotAPartitionCandidate {
                reason: format!("weights not strictly increasing at d_{}", i + 1),
            });
        }
    }
    let mut excluded = vec![false; n + 1];
    for &x in w {
        excluded[n + 1 - x] = true;
    }
    let dual: Vec<usize> = (1..=n).filter(|&x| !excluded[x]).collect();
    Ok(WeightHierarchy::new(dual, Method::Duality))
}

/// True iff d_r meets the generalized Singleton bound with equality:
/// d_r = n − k + r.
pub fn is_r_mds(c: &LinearCode, r: usize, dr: usize) -> Result<bool, GhwError> {
    if r < 1 || r > c.k() {
        return Err(GhwError::OutOfRange { r, k: c.k() });
    }
    Ok(dr == c.n() - c.k() + r)
}
