//! Constant tables, the two graph families for a fixed `d`, and
//! verification grids over them.

use std::fmt;
use std::io;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::basis::{FamilyParams, PrimeBasis};
use crate::error::{Error, Result};
use crate::field::{legendre, MAX_FIELD};
use crate::graph::CayleyGraph;
use crate::primes::{is_prime_power, primes_up_to};
use crate::projective::{image_generators, GraphSpec};
use crate::report::{verify_report_with_budget, GraphReport};

/// Published lower bound on `c(d)` for the bracket containing `d`, if any.
pub fn bracket_bound(d: u64) -> Option<f64> {
    let bound = if d % 2 == 1 {
        match d {
            1335.. => 1.33,
            35..=1331 => 1.3,
            15..=31 => 1.27,
            _ => return None,
        }
    } else {
        match d {
            4826.. => 1.33,
            184..=4824 => 1.3,
            44..=182 => 1.25,
            22..=42 => 1.1,
            10 => 1.28,
            12 => 1.12,
            14 => 1.19,
            18 => 1.3,
            20 => 1.061,
            _ => return None,
        }
    };
    Some(bound)
}

/// Tolerance when comparing a computed constant with a published bound.
pub const BRACKET_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct CTableRow {
    pub d: u64,
    pub p: u64,
    pub kappa: f64,
    pub c_d: f64,
    pub bracket_bound: Option<f64>,
    /// `c_d >= bound - 1e-9`, or true when no bracket applies.
    pub meets_bracket: bool,
}

impl CTableRow {
    pub fn new(d: u64) -> Result<Self> {
        let params = FamilyParams::new(d)?;
        let bound = bracket_bound(d);
        Ok(CTableRow {
            d,
            p: params.p,
            kappa: params.kappa,
            c_d: params.c_d,
            bracket_bound: bound,
            meets_bracket: bound.is_none_or(|b| params.c_d >= b - BRACKET_TOLERANCE),
        })
    }
}

/// One row per `d` in range; prime powers are skipped unless `include_all`.
pub fn c_table(d_min: u64, d_max: u64, include_all: bool) -> Result<Vec<CTableRow>> {
    if d_min < 10 {
        return Err(Error::DegreeOutOfRange(d_min));
    }
    (d_min..=d_max)
        .filter(|&d| include_all || !is_prime_power(d))
        .map(CTableRow::new)
        .collect()
}

/// `X`: `(p/q) = -1`, bipartite graphs on `PGL2`. `Y`: `(p/q) = 1`, on `PSL2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    X,
    Y,
}

impl Branch {
    pub fn legendre(self) -> i8 {
        match self {
            Branch::X => -1,
            Branch::Y => 1,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::X => "x",
            Branch::Y => "y",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Branch::X),
            "y" => Ok(Branch::Y),
            _ => Err(Error::Format(format!(
                "unknown branch {s:?}, expected x or y"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyQuery {
    pub d: u64,
    pub q_min: u64,
    pub q_max: u64,
    pub branch: Branch,
    /// Keep only `q > Q_d(p)`.
    pub enforce_regime: bool,
}

impl FamilyQuery {
    pub fn new(d: u64, q_min: u64, q_max: u64, branch: Branch) -> Self {
        FamilyQuery {
            d,
            q_min,
            q_max,
            branch,
            enforce_regime: false,
        }
    }
}

/// `q` prime, `q != p`, `q^2 > 4p`.
pub fn is_admissible(p: u64, q: u64) -> bool {
    q > 2 && q != p && q * q > 4 * p && crate::primes::is_prime(q)
}

/// Every admissible `q` in range whose Legendre symbol matches the branch.
pub fn list_family(fq: &FamilyQuery) -> Result<Vec<GraphSpec>> {
    if fq.q_min < 3 {
        return Err(Error::Format(format!(
            "q_min must be at least 3, got {}",
            fq.q_min
        )));
    }
    let params = FamilyParams::new(fq.d)?;
    let mut q_min = fq.q_min;
    if fq.enforce_regime {
        let above: BigUint = &params.q_bound + 1u32;
        match above.to_u64() {
            Some(lo) if lo <= fq.q_max => q_min = q_min.max(lo),
            _ => return Ok(Vec::new()),
        }
    }
    if q_min > fq.q_max {
        return Ok(Vec::new());
    }
    if fq.q_max > MAX_FIELD {
        return Err(Error::FieldTooLarge(fq.q_max));
    }
    let gens = PrimeBasis::build(params.p)?.select_generators(fq.d)?;
    primes_up_to(fq.q_max as usize)
        .into_iter()
        .filter(|&q| q >= q_min && is_admissible(params.p, q))
        .filter(|&q| legendre(params.p as i64, q) == fq.branch.legendre())
        .map(|q| image_generators(&gens, q))
        .collect()
}

/// One verified grid instance.
#[derive(Clone, Debug, PartialEq)]
pub struct GridRecord {
    pub d: u64,
    pub p: u64,
    pub q: u64,
    pub report: GraphReport,
    /// Names of failed checks; empty when the instance is clean.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridFailure {
    pub q: u64,
    pub error: Error,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GridOutcome {
    /// Sorted by `(d, p, q)`.
    pub records: Vec<GridRecord>,
    pub failures: Vec<GridFailure>,
}

impl GridOutcome {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty() && self.records.iter().all(|r| r.violations.is_empty())
    }
}

/// Checks beyond the report: parts of a bipartite graph are `PSL2` and its
/// complement, of equal size.
pub fn check_instance(g: &CayleyGraph, report: &GraphReport) -> Vec<String> {
    let mut v = Vec::new();
    let mut fail = |name: &str| v.push(name.to_string());
    if report.degree != g.spec.d + 1 || !g.graph.is_symmetric() {
        fail("regularity");
    }
    if !report.connected {
        fail("connected");
    }
    if report.bipartite != (report.legendre_pq == -1) {
        fail("bipartite_iff_legendre");
    }
    if report.bipartite {
        if report.girth.is_some_and(|t| t % 2 == 1) {
            fail("even_girth");
        }
        if report.connected && g.bipartition_matches_psl() != Some(true) {
            fail("psl_parts");
        }
    }
    if !report.girth_method_agreement {
        fail("girth_method_agreement");
    }
    if report.connected && !report.main_inequality_ok {
        fail("main_inequality");
    }
    if !report.moore_ok {
        fail("moore");
    }
    v
}

/// Build and verify every member of the family on a pool of `jobs` workers.
/// Instance errors are collected, not fatal.
pub fn run_grid(fq: &FamilyQuery, jobs: usize, budget_bytes: u64) -> Result<GridOutcome> {
    let specs = list_family(fq)?;
    let params = FamilyParams::new(fq.d)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let results: Vec<(u64, Result<GridRecord>)> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let run = || -> Result<GridRecord> {
                    let g = CayleyGraph::build(spec, budget_bytes)?;
                    let report = verify_report_with_budget(&g, &params, budget_bytes)?;
                    let violations = check_instance(&g, &report);
                    Ok(GridRecord {
                        d: spec.d,
                        p: spec.p,
                        q: spec.q,
                        report,
                        violations,
                    })
                };
                (spec.q, run())
            })
            .collect()
    });
    let mut outcome = GridOutcome::default();
    for (q, r) in results {
        match r {
            Ok(rec) => outcome.records.push(rec),
            Err(error) => outcome.failures.push(GridFailure { q, error }),
        }
    }
    outcome.records.sort_by_key(|r| (r.d, r.p, r.q));
    outcome.failures.sort_by_key(|f| f.q);
    Ok(outcome)
}

fn csv_header() -> Vec<&'static str> {
    let mut h = vec!["d", "p", "q"];
    h.extend(GraphReport::FIELDS);
    h.push("violations");
    h
}

pub fn write_grid_csv<W: io::Write>(records: &[GridRecord], out: W) -> Result<()> {
    let err = |e: csv::Error| Error::Format(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header()).map_err(err)?;
    for r in records {
        let mut row = vec![r.d.to_string(), r.p.to_string(), r.q.to_string()];
        row.extend(r.report.values());
        row.push(r.violations.join(";"));
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))
}

pub fn read_grid_csv<R: io::Read>(input: R) -> Result<Vec<GridRecord>> {
    let err = |e: csv::Error| Error::Format(e.to_string());
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(err)?.clone();
    if header.iter().ne(csv_header()) {
        return Err(Error::Format("unexpected CSV header".into()));
    }
    rd.records()
        .map(|row| {
            let row = row.map_err(err)?;
            let cell = |i: usize| row.get(i).unwrap_or("");
            let n = |i: usize| {
                cell(i)
                    .parse::<u64>()
                    .map_err(|_| Error::Format(format!("bad integer {:?}", cell(i))))
            };
            let report_cells: Vec<&str> = (3..3 + GraphReport::FIELDS.len()).map(cell).collect();
            let last = cell(row.len() - 1);
            Ok(GridRecord {
                d: n(0)?,
                p: n(1)?,
                q: n(2)?,
                report: GraphReport::from_values(&report_cells)?,
                violations: if last.is_empty() {
                    Vec::new()
                } else {
                    last.split(';').map(String::from).collect()
                },
            })
        })
        .collect()
}

pub fn write_c_table_csv<W: io::Write>(rows: &[CTableRow], out: W) -> Result<()> {
    let err = |e: csv::Error| Error::Format(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["d", "p", "kappa", "c_d", "bracket_bound", "meets_bracket"])
        .map_err(err)?;
    for r in rows {
        w.write_record([
            r.d.to_string(),
            r.p.to_string(),
            r.kappa.to_string(),
            r.c_d.to_string(),
            r.bracket_bound.map_or_else(String::new, |b| b.to_string()),
            r.meets_bracket.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))
}
