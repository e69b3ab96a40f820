//! Command-line surface: build codes, compute hierarchies by any method,
//! reproduce the worked tables, and run the verification grids.
//!
//! Reports go to stdout (or `--output`); errors go to stderr as one-line
//! JSON `{"schema":1,"error":{"kind":…,"message":…}}` with exit status 1.
//! Usage errors (bad flags, out-of-range values clap can see) exit 2. A
//! disagreement between methods is an error like any other: the report is
//! still written, then the process fails.

pub mod report;
pub mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::evalcode::{build_code, hilbert_profile, CodeError, LinearCode};
use crate::field::{Field, FieldError};
use crate::formulas::{self, FormulaError};
use crate::geometry::{
    bipartite_points, toric_points, torus_points, GeometryError, PointSet,
};
use crate::ghw::{hierarchy_exact, GhwError, OracleCaps};
use crate::poly::{construct_zero_maximizers, PolyError};
use report::{
    assemble_entries, csv_header, csv_row, echo_for, formula_entries, formula_scope,
    hierarchy_by_duality, Agreement, FormulaScope, HierarchyReport, HilbertReport, MethodOutputs,
    TableReport, TableRow, ZerosReport,
};

#[derive(Parser)]
#[command(
    name = "torus-ghw",
    version,
    about = "Generalized Hamming weights of evaluation codes over projective tori"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weight hierarchy of one code, by oracle, formula, duality, or all
    Hierarchy(HierarchyArgs),
    /// Hierarchies for every degree up to --dmax, as CSV or JSON
    Table(TableArgs),
    /// Construct the two degree-d forms realizing the maximal common zero set
    Zeros(ZerosArgs),
    /// Run the formula/oracle/duality verification suites over a grid
    Verify(VerifyArgs),
    /// Code-level utilities
    #[command(subcommand)]
    Code(CodeCmd),
    /// Hilbert function profile of a point set
    Hilbert(HilbertArgs),
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Export a generator matrix as JSON or text
    Export(CodeExportArgs),
}

/// Exactly one way of naming a point set.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct PointSetArgs {
    /// Projective torus T_{s-1} over GF(q)
    #[arg(long, num_args = 2, value_names = ["Q", "S"])]
    torus: Option<Vec<u32>>,
    /// Toric set from an exponent file: line 1 is q, then one exponent row per coordinate
    #[arg(long, value_name = "FILE")]
    toric: Option<PathBuf>,
    /// Edges of the complete bipartite graph K_{m,n} over GF(q)
    #[arg(long, num_args = 3, value_names = ["Q", "M", "N"])]
    bipartite: Option<Vec<u32>>,
    /// Explicit point file: header line `q s`, one point per line
    #[arg(long, value_name = "FILE")]
    points: Option<PathBuf>,
}

#[derive(Args)]
struct CapsArgs {
    /// Longest code the exhaustive sweep will attempt (flag beats the
    /// TORUS_GHW_MAX_N environment variable, which beats the default of 24)
    #[arg(long, value_name = "N")]
    max_n_exhaustive: Option<usize>,
    /// Largest enumeration the codeword/subspace fallbacks will attempt
    #[arg(long, value_name = "COUNT")]
    max_codewords: Option<u64>,
}

impl CapsArgs {
    fn resolve(&self) -> Result<OracleCaps, CliError> {
        let mut caps = OracleCaps::default();
        if let Ok(v) = std::env::var("TORUS_GHW_MAX_N") {
            caps.max_n_exhaustive = v.trim().parse().map_err(|_| {
                CliError::new(
                    "parse",
                    format!("TORUS_GHW_MAX_N must be a non-negative integer, got `{v}`"),
                )
            })?;
        }
        if let Some(n) = self.max_n_exhaustive {
            caps.max_n_exhaustive = n;
        }
        if let Some(c) = self.max_codewords {
            caps.max_codewords = c;
        }
        Ok(caps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Formula,
    Duality,
    All,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Oracle => "oracle",
            MethodArg::Formula => "formula",
            MethodArg::Duality => "duality",
            MethodArg::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatJtc {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatJt {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatCj {
    Csv,
    Json,
}

#[derive(Args)]
struct HierarchyArgs {
    #[command(flatten)]
    set: PointSetArgs,
    /// Degree of the evaluation code
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    d: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatJtc::Json)]
    format: FormatJtc,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(flatten)]
    caps: CapsArgs,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    set: PointSetArgs,
    /// Largest degree; rows cover d = 1..=dmax
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    dmax: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatCj::Csv)]
    format: FormatCj,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(flatten)]
    caps: CapsArgs,
}

#[derive(Args)]
struct ZerosArgs {
    /// Projective torus T_{s-1} over GF(q) (the construction is torus-specific)
    #[arg(long, num_args = 2, value_names = ["Q", "S"], required = true)]
    torus: Vec<u32>,
    /// Degree of the two forms
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    d: u32,
    #[arg(long, value_enum, default_value_t = FormatJt::Json)]
    format: FormatJt,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Grid bounds: largest prime power q and largest dimension s
    #[arg(long, num_args = 2, value_names = ["QMAX", "SMAX"], required = true)]
    grid: Vec<u32>,
    #[command(flatten)]
    caps: CapsArgs,
}

#[derive(Args)]
struct CodeExportArgs {
    #[command(flatten)]
    set: PointSetArgs,
    /// Degree of the evaluation code
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    d: u32,
    #[arg(long, value_enum, default_value_t = FormatJt::Json)]
    format: FormatJt,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct HilbertArgs {
    #[command(flatten)]
    set: PointSetArgs,
    #[arg(long, value_enum, default_value_t = FormatJt::Json)]
    format: FormatJt,
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

// ----- error plumbing -----

#[derive(Debug)]
pub(crate) struct CliError {
    kind: &'static str,
    message: String,
    n: Option<usize>,
    cap: Option<usize>,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> CliError {
        CliError {
            kind,
            message: message.into(),
            n: None,
            cap: None,
        }
    }
}

impl From<GhwError> for CliError {
    fn from(e: GhwError) -> CliError {
        match e {
            GhwError::Infeasible { n, cap } => CliError {
                kind: "oracle_infeasible",
                message: e.to_string(),
                n: Some(n),
                cap: Some(cap),
            },
            GhwError::InfeasibleEnumeration { .. } => {
                CliError::new("oracle_infeasible", e.to_string())
            }
            GhwError::OutOfRange { .. } | GhwError::NotAPartitionCandidate { .. } => {
                CliError::new("bad_params", e.to_string())
            }
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> CliError {
        match e {
            FormulaError::HypothesisViolated(_) => {
                CliError::new("hypothesis_violated", e.to_string())
            }
            _ => CliError::new("bad_params", e.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> CliError {
        match e {
            PolyError::DegreeOutOfRange { .. } => {
                CliError::new("degree_out_of_range", e.to_string())
            }
            PolyError::Parse(_) => CliError::new("parse", e.to_string()),
            _ => CliError::new("bad_params", e.to_string()),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> CliError {
        match e {
            CodeError::BadDegree { .. } => CliError::new("degree_out_of_range", e.to_string()),
            CodeError::Poly(p) => p.into(),
            _ => CliError::new("bad_params", e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> CliError {
        match e {
            GeometryError::Parse(_) => CliError::new("parse", e.to_string()),
            _ => CliError::new("bad_params", e.to_string()),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> CliError {
        CliError::new("bad_params", e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new("io", e.to_string())
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'static str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    schema: u32,
    error: ErrorBody<'a>,
}

/// Parse the process arguments and run; returns the process exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let report = ErrorReport {
                schema: 1,
                error: ErrorBody {
                    kind: e.kind,
                    message: &e.message,
                    n: e.n,
                    cap: e.cap,
                },
            };
            eprintln!(
                "{}",
                serde_json::to_string(&report).expect("error serialization cannot fail")
            );
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Hierarchy(a) => cmd_hierarchy(a),
        Cmd::Table(a) => cmd_table(a),
        Cmd::Zeros(a) => cmd_zeros(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Code(CodeCmd::Export(a)) => cmd_code_export(a),
        Cmd::Hilbert(a) => cmd_hilbert(a),
    }
}

// ----- shared helpers -----

fn resolve_point_set(args: &PointSetArgs) -> Result<PointSet, CliError> {
    if let Some(v) = &args.torus {
        let (q, s) = (v[0], v[1] as usize);
        return Ok(torus_points(&Field::new(q)?, s)?);
    }
    if let Some(path) = &args.toric {
        return parse_toric_file(&fs::read_to_string(path)?);
    }
    if let Some(v) = &args.bipartite {
        let (q, m, n) = (v[0], v[1] as usize, v[2] as usize);
        return Ok(bipartite_points(&Field::new(q)?, m, n)?);
    }
    if let Some(path) = &args.points {
        return Ok(PointSet::from_text(&fs::read_to_string(path)?)?);
    }
    unreachable!("clap enforces exactly one point-set flag");
}

/// Toric exponent file: first non-comment line is q; every following line is
/// one coordinate's exponent vector.
fn parse_toric_file(text: &str) -> Result<PointSet, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let q: u32 = lines
        .next()
        .and_then(|l| l.parse().ok())
        .ok_or_else(|| CliError::new("parse", "toric file must start with a `q` line"))?;
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            let e: u32 = tok.parse().map_err(|_| {
                CliError::new(
                    "parse",
                    format!("bad exponent `{tok}` on toric row {}", i + 1),
                )
            })?;
            row.push(e);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::new("parse", "toric file has no exponent rows"));
    }
    Ok(toric_points(&Field::new(q)?, &rows)?)
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

/// Compute the requested methods for one code. In `all` mode a method that
/// cannot run (infeasible oracle, no formula for this point set) is skipped,
/// as long as at least one method produced values; in single-method mode the
/// failure is fatal.
fn compute_row(
    scope: FormulaScope,
    c: &LinearCode,
    d: u32,
    reg: u32,
    method: MethodArg,
    caps: &OracleCaps,
) -> Result<MethodOutputs, CliError> {
    let mut out = MethodOutputs::default();
    let mut first_err: Option<CliError> = None;
    let keep = |err: CliError, slot: &mut Option<CliError>| {
        if slot.is_none() {
            *slot = Some(err);
        }
    };
    if matches!(method, MethodArg::Oracle | MethodArg::All) {
        match hierarchy_exact(c, caps) {
            Ok(h) => out.oracle = Some(h),
            Err(e) if method == MethodArg::Oracle => return Err(e.into()),
            Err(e) => keep(e.into(), &mut first_err),
        }
    }
    if matches!(method, MethodArg::Duality | MethodArg::All) {
        match hierarchy_by_duality(c, caps) {
            Ok(w) => out.duality = Some(w),
            Err(e) if method == MethodArg::Duality => return Err(e.into()),
            Err(e) => keep(e.into(), &mut first_err),
        }
    }
    if matches!(method, MethodArg::Formula | MethodArg::All) {
        if matches!(scope, FormulaScope::None) && d < reg {
            let err = CliError::new(
                "formula_unavailable",
                "no closed-form weight formulas apply to this point set",
            );
            if method == MethodArg::Formula {
                return Err(err);
            }
            keep(err, &mut first_err);
        } else {
            match formula_entries(scope, d, c.n(), c.k(), reg) {
                Ok(m) => out.formula = m,
                Err(e) if method == MethodArg::Formula => return Err(e.into()),
                Err(e) => keep(e.into(), &mut first_err),
            }
        }
    }
    let any = out.oracle.is_some() || out.duality.is_some() || !out.formula.is_empty();
    match (any, first_err) {
        (false, Some(e)) => Err(e),
        _ => Ok(out),
    }
}

fn hierarchy_text(report: &HierarchyReport) -> String {
    let mut s = format!(
        "[{}, {}] code over GF({}), d = {} (reg {}, a_inv {})\n",
        report.n, report.k, report.point_set.q, report.d, report.reg, report.a_inv
    );
    s.push_str("r\td_r\tmethod\tagreement\n");
    for e in &report.weights {
        let value = e.value.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let method = e
            .method
            .map(|m| m.to_string())
            .unwrap_or_else(|| "-".into());
        s.push_str(&format!("{}\t{}\t{}\t{}\n", e.r, value, method, e.agreement));
    }
    s.push_str(&format!("agreement: {}\n", report.agreement));
    s
}

// ----- subcommands -----

fn cmd_hierarchy(a: HierarchyArgs) -> Result<(), CliError> {
    let caps = a.caps.resolve()?;
    let x = resolve_point_set(&a.set)?;
    let hp = hilbert_profile(&x)?;
    let c = build_code(&x, a.d)?;
    let out = compute_row(formula_scope(&x), &c, a.d, hp.reg, a.method, &caps)?;
    let (weights, agreement) = assemble_entries(c.k(), &out);
    let report = HierarchyReport {
        schema: 1,
        command: "hierarchy",
        point_set: echo_for(&x),
        d: a.d,
        n: c.n(),
        k: c.k(),
        reg: hp.reg,
        a_inv: hp.a_inv,
        method: a.method.name(),
        weights,
        agreement,
    };
    let content = match a.format {
        FormatJtc::Json => json_line(&report),
        FormatJtc::Text => hierarchy_text(&report),
        FormatJtc::Csv => format!(
            "{}\n{}\n",
            csv_header(report.n),
            csv_row(report.d, report.n, &report.weights)
        ),
    };
    emit(&a.output, &content)?;
    if agreement == Agreement::Disagree {
        return Err(CliError::new(
            "disagreement",
            "methods disagree on at least one weight; see the report",
        ));
    }
    Ok(())
}

fn cmd_table(a: TableArgs) -> Result<(), CliError> {
    let caps = a.caps.resolve()?;
    let x = resolve_point_set(&a.set)?;
    let hp = hilbert_profile(&x)?;
    let scope = formula_scope(&x);
    // Degrees are independent; compute them in parallel, assemble in order.
    let rows: Vec<TableRow> = (1..=a.dmax)
        .into_par_iter()
        .map(|d| -> Result<TableRow, CliError> {
            let c = build_code(&x, d)?;
            let out = compute_row(scope, &c, d, hp.reg, a.method, &caps)?;
            let (weights, agreement) = assemble_entries(c.k(), &out);
            Ok(TableRow {
                d,
                k: c.k(),
                weights,
                agreement,
            })
        })
        .collect::<Result<_, _>>()?;
    let disagree = rows.iter().any(|r| r.agreement == Agreement::Disagree);
    let report = TableReport {
        schema: 1,
        command: "table",
        point_set: echo_for(&x),
        dmax: a.dmax,
        n: x.len(),
        reg: hp.reg,
        a_inv: hp.a_inv,
        method: a.method.name(),
        rows,
    };
    let content = match a.format {
        FormatCj::Json => json_line(&report),
        FormatCj::Csv => {
            let mut s = csv_header(report.n);
            s.push('\n');
            for row in &report.rows {
                s.push_str(&csv_row(row.d, report.n, &row.weights));
                s.push('\n');
            }
            s
        }
    };
    emit(&a.output, &content)?;
    if disagree {
        return Err(CliError::new(
            "disagreement",
            "methods disagree on at least one table entry; see the report",
        ));
    }
    Ok(())
}

fn cmd_zeros(a: ZerosArgs) -> Result<(), CliError> {
    let (q, s) = (a.torus[0], a.torus[1] as usize);
    let field = Field::new(q)?;
    let x = torus_points(&field, s)?;
    let (f, g) = construct_zero_maximizers(&field, s, a.d)?;
    let zf = f.zero_set(&x)?;
    let zg = g.zero_set(&x)?;
    let common = zf.iter().filter(|i| zg.binary_search(i).is_ok()).count();
    let z2 = formulas::z2(q as u64, s as u32, a.d as u64)?;
    let agreement = if common as u128 == z2 {
        Agreement::Agree
    } else {
        Agreement::Disagree
    };
    let report = ZerosReport {
        schema: 1,
        command: "zeros",
        point_set: echo_for(&x),
        d: a.d,
        f: f.to_string(),
        g: g.to_string(),
        common_zeros: common,
        z2,
        agreement,
    };
    let content = match a.format {
        FormatJt::Json => json_line(&report),
        FormatJt::Text => format!(
            "F = {}\nG = {}\ncommon zeros: {}\nZ2: {}\nagreement: {}\n",
            report.f, report.g, report.common_zeros, report.z2, report.agreement
        ),
    };
    emit(&a.output, &content)?;
    if agreement == Agreement::Disagree {
        return Err(CliError::new(
            "disagreement",
            "constructed common-zero count disagrees with the closed form",
        ));
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let caps = a.caps.resolve()?;
    let (qmax, smax) = (a.grid[0], a.grid[1]);
    if qmax < 3 || smax < 2 {
        return Err(CliError::new(
            "bad_params",
            format!("grid needs qmax ≥ 3 and smax ≥ 2, got {qmax} {smax}"),
        ));
    }
    let results = verify::run_verify(qmax as u64, smax, &caps, &verify::Overrides::default());
    let (summary, pass) = verify::format_summary(&results);
    print!("{summary}");
    if pass {
        Ok(())
    } else {
        Err(CliError::new(
            "disagreement",
            "verification suites reported failures; see the summary",
        ))
    }
}

fn cmd_code_export(a: CodeExportArgs) -> Result<(), CliError> {
    let x = resolve_point_set(&a.set)?;
    let c = build_code(&x, a.d)?;
    let content = match a.format {
        FormatJt::Json => {
            let mut s = c.to_json();
            s.push('\n');
            s
        }
        FormatJt::Text => c.to_text(),
    };
    emit(&a.output, &content)
}

fn cmd_hilbert(a: HilbertArgs) -> Result<(), CliError> {
    let x = resolve_point_set(&a.set)?;
    let hp = hilbert_profile(&x)?;
    let report = HilbertReport {
        schema: 1,
        command: "hilbert",
        point_set: echo_for(&x),
        n: x.len(),
        values: hp.values.clone(),
        reg: hp.reg,
        a_inv: hp.a_inv,
    };
    let content = match a.format {
        FormatJt::Json => json_line(&report),
        FormatJt::Text => {
            let mut s = String::new();
            for (d, h) in report.values.iter().enumerate() {
                s.push_str(&format!("{d}\t{h}\n"));
            }
            s.push_str(&format!("reg\t{}\na_inv\t{}\n", report.reg, report.a_inv));
            s
        }
    };
    emit(&a.output, &content)
}
