//! Report structures and the method cross-check logic behind them.
//!
//! Every report is a serde struct so that field order — and therefore the
//! emitted JSON — is fixed: identical invocations must produce byte-identical
//! output. Weight values are computed per method (oracle sweep, closed-form
//! formula, Wei duality), then merged into entries carrying one value, the
//! method that produced it, and a tri-state agreement flag.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::evalcode::{dual_code, LinearCode};
use crate::formulas::{self, FormulaError};
use crate::geometry::{PointSet, Provenance};
use crate::ghw::{duality_complete, hierarchy_exact, GhwError, Method, OracleCaps, WeightHierarchy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    Agree,
    Disagree,
    NotComputed,
}

impl std::fmt::Display for Agreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::NotComputed => "not-computed",
        };
        write!(f, "{s}")
    }
}

/// Echo of the point-set specification, for report headers.
#[derive(Debug, Serialize)]
pub struct PointSetEcho {
    pub kind: &'static str,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub points: usize,
}

pub fn echo_for(x: &PointSet) -> PointSetEcho {
    let (kind, m, n) = match x.provenance() {
        Provenance::Torus => ("torus", None, None),
        Provenance::Toric { .. } => ("toric", None, None),
        Provenance::Bipartite { m, n } => ("bipartite", Some(*m), Some(*n)),
        Provenance::Explicit => ("explicit", None, None),
    };
    PointSetEcho {
        kind,
        q: x.field().q(),
        s: if m.is_none() { Some(x.s()) } else { None },
        m,
        n,
        points: x.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub r: usize,
    pub value: Option<u64>,
    pub method: Option<Method>,
    pub agreement: Agreement,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<u64>,
}

#[derive(Serialize)]
pub struct HierarchyReport {
    pub schema: u32,
    pub command: &'static str,
    pub point_set: PointSetEcho,
    pub d: u32,
    pub n: usize,
    pub k: usize,
    pub reg: u32,
    pub a_inv: i64,
    pub method: &'static str,
    pub weights: Vec<WeightEntry>,
    pub agreement: Agreement,
}

#[derive(Serialize)]
pub struct TableRow {
    pub d: u32,
    pub k: usize,
    pub weights: Vec<WeightEntry>,
    pub agreement: Agreement,
}

#[derive(Serialize)]
pub struct TableReport {
    pub schema: u32,
    pub command: &'static str,
    pub point_set: PointSetEcho,
    pub dmax: u32,
    pub n: usize,
    pub reg: u32,
    pub a_inv: i64,
    pub method: &'static str,
    pub rows: Vec<TableRow>,
}

#[derive(Serialize)]
pub struct ZerosReport {
    pub schema: u32,
    pub command: &'static str,
    pub point_set: PointSetEcho,
    pub d: u32,
    pub f: String,
    pub g: String,
    pub common_zeros: usize,
    pub z2: u128,
    pub agreement: Agreement,
}

#[derive(Serialize)]
pub struct HilbertReport {
    pub schema: u32,
    pub command: &'static str,
    pub point_set: PointSetEcho,
    pub n: usize,
    pub values: Vec<usize>,
    pub reg: u32,
    pub a_inv: i64,
}

/// Which closed-form formulas apply to a point set.
#[derive(Debug, Clone, Copy)]
pub enum FormulaScope {
    Torus { q: u64, s: u32 },
    Bipartite { q: u64, m: u32, n: u32 },
    None,
}

pub fn formula_scope(x: &PointSet) -> FormulaScope {
    let q = x.field().q() as u64;
    match x.provenance() {
        Provenance::Torus => FormulaScope::Torus {
            q,
            s: x.s() as u32,
        },
        Provenance::Bipartite { m, n } => FormulaScope::Bipartite {
            q,
            m: *m as u32,
            n: *n as u32,
        },
        _ => FormulaScope::None,
    }
}

fn to_u64(v: u128) -> Result<u64, FormulaError> {
    v.try_into()
        .map_err(|_| FormulaError::BadParams(format!("weight {v} exceeds the report range")))
}

/// The sparse map r ↦ d_r that the closed formulas cover: d₁ and d₂ in
/// general, the whole row at the a-invariant level d = reg − 1 (d_r = r+1),
/// and the whole row once the code is the full space (d_r = r).
pub fn formula_entries(
    scope: FormulaScope,
    d: u32,
    n: usize,
    k: usize,
    reg: u32,
) -> Result<BTreeMap<usize, u64>, FormulaError> {
    let mut out = BTreeMap::new();
    if d >= reg {
        for r in 1..=k {
            out.insert(r, r as u64);
        }
        return Ok(out);
    }
    match scope {
        FormulaScope::Torus { q, s } => {
            if d + 1 == reg && n >= 2 {
                // a-invariant level of the torus (a complete intersection).
                for r in 1..=k {
                    out.insert(r, r as u64 + 1);
                }
                return Ok(out);
            }
            out.insert(1, to_u64(formulas::d1_torus(q, s, d as u64)?)?);
            if k >= 2 {
                out.insert(2, to_u64(formulas::d2_torus(q, s, d as u64)?)?);
            }
        }
        FormulaScope::Bipartite { q, m, n } => {
            if k >= 2 {
                out.insert(2, to_u64(formulas::d2_bipartite(q, m, n, d as u64)?)?);
            }
        }
        FormulaScope::None => {}
    }
    Ok(out)
}

/// Raw per-method results for one code, before merging.
#[derive(Debug, Default)]
pub struct MethodOutputs {
    pub oracle: Option<WeightHierarchy>,
    pub duality: Option<Vec<usize>>,
    pub formula: BTreeMap<usize, u64>,
}

/// Full hierarchy of `c` through its dual: sweep the dual, reflect back.
pub fn hierarchy_by_duality(c: &LinearCode, caps: &OracleCaps) -> Result<Vec<usize>, GhwError> {
    let dual = dual_code(c);
    let n = c.n();
    let dual_h = if dual.k() == 0 {
        WeightHierarchy::new(Vec::new(), Method::Oracle)
    } else {
        hierarchy_exact(&dual, caps)?
    };
    Ok(duality_complete(&dual_h, n)?.weights().to_vec())
}

/// Merge per-method values into display entries. Each entry gets the value
/// from the strongest available source (oracle, then duality, then formula)
/// and an agreement flag: `agree`/`disagree` when at least two methods
/// computed the entry, `not-computed` otherwise.
pub fn assemble_entries(k: usize, out: &MethodOutputs) -> (Vec<WeightEntry>, Agreement) {
    let mut entries = Vec::with_capacity(k);
    let mut any_agree = false;
    let mut any_disagree = false;
    for r in 1..=k {
        let oracle = out
            .oracle
            .as_ref()
            .and_then(|h| h.weight(r))
            .map(|w| w as u64);
        let duality = out.duality.as_ref().and_then(|w| w.get(r - 1)).map(|&w| w as u64);
        let formula = out.formula.get(&r).copied();
        let (value, method) = if let Some(v) = oracle {
            let tag = out.oracle.as_ref().map(|h| h.methods()[r - 1]);
            (Some(v), tag)
        } else if let Some(v) = duality {
            (Some(v), Some(Method::Duality))
        } else {
            (formula, formula.map(|_| Method::Formula))
        };
        let computed: Vec<u64> = [oracle, duality, formula].into_iter().flatten().collect();
        let agreement = if computed.len() < 2 {
            Agreement::NotComputed
        } else if computed.windows(2).all(|w| w[0] == w[1]) {
            any_agree = true;
            Agreement::Agree
        } else {
            any_disagree = true;
            Agreement::Disagree
        };
        entries.push(WeightEntry {
            r,
            value,
            method,
            agreement,
            oracle,
            formula,
            duality,
        });
    }
    let overall = if any_disagree {
        Agreement::Disagree
    } else if any_agree {
        Agreement::Agree
    } else {
        Agreement::NotComputed
    };
    (entries, overall)
}

/// One CSV line per degree: `d,d1,...,dn` with empty cells for r > k.
pub fn csv_row(d: u32, n: usize, entries: &[WeightEntry]) -> String {
    let mut cells = Vec::with_capacity(n + 1);
    cells.push(d.to_string());
    for r in 1..=n {
        cells.push(
            entries
                .get(r - 1)
                .and_then(|e| e.value)
                .map(|v| v.to_string())
                .unwrap_or_default(),
        );
    }
    cells.join(",")
}

pub fn csv_header(n: usize) -> String {
    let mut cells = Vec::with_capacity(n + 1);
    cells.push("d".to_string());
    for r in 1..=n {
        cells.push(format!("d{r}"));
    }
    cells.join(",")
}
