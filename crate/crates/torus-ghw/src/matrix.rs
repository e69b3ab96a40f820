//! Dense matrices over GF(q) with exact Gaussian elimination.
//!
//! Entries are stored as field codes in row-major order. Elimination uses
//! first-nonzero pivoting, so reduced forms (and everything derived from
//! them: ranks, null spaces, canonical generator matrices) are deterministic.

use std::fmt;

use crate::field::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GfMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Build from rows of element codes. All rows must have equal length and
    /// all codes must be valid for the field.
    pub fn from_codes(field: &Field, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            for &c in r {
                assert!(c < field.q(), "code {c} out of range for {field}");
                data.push(c);
            }
        }
        GfMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_elems(field: &Field, rows: &[Vec<FieldElem>]) -> Self {
        let codes: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| {
                        assert_eq!(e.q(), field.q(), "mixed fields in matrix");
                        e.code()
                    })
                    .collect()
            })
            .collect();
        Self::from_codes(field, &codes)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub(crate) fn getc(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn setc(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.field.elem(self.getc(i, j)).unwrap()
    }

    pub fn row_codes(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn col_codes(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.getc(i, j)).collect()
    }

    pub fn is_zero_col(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.getc(i, j) == 0)
    }

    /// Reduced row-echelon form and the pivot column indices, leftmost-first.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut pr = 0; // next pivot row
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            // First nonzero entry at or below pr.
            let Some(src) = (pr..self.rows).find(|&i| self.getc(i, col) != 0) else {
                continue;
            };
            if src != pr {
                for j in 0..self.cols {
                    let a = self.getc(pr, j);
                    let b = self.getc(src, j);
                    self.setc(pr, j, b);
                    self.setc(src, j, a);
                }
            }
            let inv = f.invc(self.getc(pr, col));
            if inv != 1 {
                for j in col..self.cols {
                    let v = self.getc(pr, j);
                    self.setc(pr, j, f.mulc(v, inv));
                }
            }
            for i in 0..self.rows {
                if i == pr {
                    continue;
                }
                let factor = self.getc(i, col);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.subc(self.getc(i, j), f.mulc(factor, self.getc(pr, j)));
                    self.setc(i, j, v);
                }
            }
            pivots.push(col);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Drop all-zero rows (meaningful on a matrix already in RREF).
    pub(crate) fn without_zero_rows(&self) -> GfMatrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row_codes(i).iter().any(|&c| c != 0))
            .collect();
        let mut data = Vec::with_capacity(keep.len() * self.cols);
        for i in keep.iter() {
            data.extend_from_slice(self.row_codes(*i));
        }
        GfMatrix {
            field: self.field.clone(),
            rows: keep.len(),
            cols: self.cols,
            data,
        }
    }

    /// A canonical basis of the right null space `{v : M v^T = 0}`, returned
    /// as the rows of a matrix in reduced row-echelon form. For a rank-r
    /// matrix with c columns the result has c - r rows.
    pub fn nullspace(&self) -> GfMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut rows: Vec<Vec<u32>> = Vec::with_capacity(free.len());
        for &fj in &free {
            let mut v = vec![0u32; self.cols];
            v[fj] = 1;
            for (i, &pj) in pivots.iter().enumerate().take(rank) {
                v[pj] = f.negc(r.getc(i, fj));
            }
            rows.push(v);
        }
        if rows.is_empty() {
            // Full column rank: the null space is trivial (0 × cols).
            return GfMatrix::zeros(f, 0, self.cols);
        }
        let mut ns = GfMatrix::from_codes(f, &rows);
        ns.rref_in_place();
        ns
    }

    /// Whether `v` (a code vector of length cols) lies in the row space.
    pub fn row_space_contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut w = v.to_vec();
        for (i, &pj) in pivots.iter().enumerate() {
            let c = w[pj];
            if c == 0 {
                continue;
            }
            for j in 0..self.cols {
                w[j] = f.subc(w[j], f.mulc(c, r.getc(i, j)));
            }
        }
        w.iter().all(|&c| c == 0)
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_includes(&self, other: &GfMatrix) -> bool {
        assert_eq!(self.cols, other.cols);
        (0..other.rows).all(|i| self.row_space_contains(other.row_codes(i)))
    }

    /// msg · M for a coefficient vector of length rows.
    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        assert_eq!(msg.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &c) in msg.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let row = self.row_codes(i);
            for (o, &r) in out.iter_mut().zip(row.iter()) {
                *o = f.addc(*o, f.mulc(c, r));
            }
        }
        out
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row_codes(i)
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        Ok(())
    }
}
