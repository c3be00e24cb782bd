//! Per-graph verification record and its flat `key=value` text form.

use std::fmt;
use std::str::FromStr;

use crate::basis::FamilyParams;
use crate::bounds::{main_inequality_rhs, moore_bound, Parity};
use crate::error::{Error, Result};
use crate::girth::girth_words_with_budget;
use crate::graph::{CayleyGraph, DEFAULT_MEMORY_BYTES};

/// Slack for comparing a measured integer girth with a real bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GraphReport {
    pub n: u64,
    pub degree: u64,
    pub connected: bool,
    pub bipartite: bool,
    /// `None` for an acyclic graph, written as `inf`.
    pub girth: Option<u32>,
    pub girth_method_agreement: bool,
    pub main_inequality_rhs: f64,
    pub main_inequality_ok: bool,
    pub moore_rhs: f64,
    pub moore_ok: bool,
    /// `girth / log_d n`.
    pub girth_ratio: f64,
    pub legendre_pq: i8,
    pub theoretical_regime: bool,
}

impl GraphReport {
    pub const FIELDS: [&'static str; 13] = [
        "n",
        "degree",
        "connected",
        "bipartite",
        "girth",
        "girth_method_agreement",
        "main_inequality_rhs",
        "main_inequality_ok",
        "moore_rhs",
        "moore_ok",
        "girth_ratio",
        "legendre_pq",
        "theoretical_regime",
    ];

    /// Field values in `FIELDS` order.
    pub fn values(&self) -> [String; 13] {
        [
            self.n.to_string(),
            self.degree.to_string(),
            self.connected.to_string(),
            self.bipartite.to_string(),
            self.girth
                .map_or_else(|| "inf".to_string(), |g| g.to_string()),
            self.girth_method_agreement.to_string(),
            self.main_inequality_rhs.to_string(),
            self.main_inequality_ok.to_string(),
            self.moore_rhs.to_string(),
            self.moore_ok.to_string(),
            self.girth_ratio.to_string(),
            self.legendre_pq.to_string(),
            self.theoretical_regime.to_string(),
        ]
    }

    pub fn from_values<S: AsRef<str>>(values: &[S]) -> Result<Self> {
        if values.len() != Self::FIELDS.len() {
            return Err(Error::Format(format!(
                "expected {} report fields, got {}",
                Self::FIELDS.len(),
                values.len()
            )));
        }
        let v = |i: usize| values[i].as_ref().trim();
        Ok(GraphReport {
            n: parse_field(Self::FIELDS[0], v(0))?,
            degree: parse_field(Self::FIELDS[1], v(1))?,
            connected: parse_field(Self::FIELDS[2], v(2))?,
            bipartite: parse_field(Self::FIELDS[3], v(3))?,
            girth: match v(4) {
                "inf" => None,
                s => Some(parse_field(Self::FIELDS[4], s)?),
            },
            girth_method_agreement: parse_field(Self::FIELDS[5], v(5))?,
            main_inequality_rhs: parse_field(Self::FIELDS[6], v(6))?,
            main_inequality_ok: parse_field(Self::FIELDS[7], v(7))?,
            moore_rhs: parse_field(Self::FIELDS[8], v(8))?,
            moore_ok: parse_field(Self::FIELDS[9], v(9))?,
            girth_ratio: parse_field(Self::FIELDS[10], v(10))?,
            legendre_pq: parse_field(Self::FIELDS[11], v(11))?,
            theoretical_regime: parse_field(Self::FIELDS[12], v(12))?,
        })
    }

    /// Every check that must hold for a connected graph of the family.
    pub fn all_ok(&self) -> bool {
        self.connected
            && self.girth_method_agreement
            && self.main_inequality_ok
            && self.moore_ok
            && self.bipartite == (self.legendre_pq == -1)
            && (!self.bipartite || self.girth.is_some_and(|g| g % 2 == 0))
    }
}

fn parse_field<T: FromStr>(key: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Format(format!("bad value {s:?} for {key}")))
}

impl fmt::Display for GraphReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in Self::FIELDS.iter().zip(self.values()) {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for GraphReport {
    type Err = Error;

    /// Parses the `key=value` form; every field must appear exactly once.
    fn from_str(s: &str) -> Result<Self> {
        let mut values: [Option<String>; 13] = Default::default();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("missing '=' in {line:?}")))?;
            let idx = Self::FIELDS
                .iter()
                .position(|f| *f == k.trim())
                .ok_or_else(|| Error::Format(format!("unknown key {k:?}")))?;
            if values[idx].replace(v.to_string()).is_some() {
                return Err(Error::Format(format!("duplicate key {k:?}")));
            }
        }
        let values = values
            .into_iter()
            .zip(Self::FIELDS)
            .map(|(v, k)| v.ok_or_else(|| Error::Format(format!("missing key {k:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(&values)
    }
}

pub fn verify_report(g: &CayleyGraph, params: &FamilyParams) -> Result<GraphReport> {
    verify_report_with_budget(g, params, DEFAULT_MEMORY_BYTES)
}

/// Run every check on a built graph. The word engine searches up to the BFS
/// girth, so agreement means it finds no shorter relator and one of that
/// length.
pub fn verify_report_with_budget(
    g: &CayleyGraph,
    params: &FamilyParams,
    budget_bytes: u64,
) -> Result<GraphReport> {
    let spec = &g.spec;
    if (params.d, params.p) != (spec.d, spec.p) {
        return Err(Error::Invariant(format!(
            "parameters (d, p) = ({}, {}) do not match the graph ({}, {})",
            params.d, params.p, spec.d, spec.p
        )));
    }
    let n = g.n() as u64;
    let degree = g.graph.degree as u64;
    let girth = g.girth_bfs();

    let words_limit =
        girth.unwrap_or_else(|| moore_bound(degree, n, Parity::Odd).ceil() as u32 + 1);
    let words = girth_words_with_budget(spec, words_limit, budget_bytes)?;

    let main_rhs = main_inequality_rhs(params.d, params.p, n, spec.legendre_pq);
    let (main_ok, moore_rhs, moore_ok, ratio) = match girth {
        Some(t) => {
            let moore = moore_bound(degree, n, Parity::of(t));
            (
                t as f64 >= main_rhs - BOUND_TOLERANCE,
                moore,
                t as f64 <= moore + BOUND_TOLERANCE,
                t as f64 / ((n as f64).ln() / (params.d as f64).ln()),
            )
        }
        None => (true, f64::INFINITY, false, f64::INFINITY),
    };

    Ok(GraphReport {
        n,
        degree,
        connected: g.is_connected(),
        bipartite: g.graph.is_bipartite(),
        girth,
        girth_method_agreement: words.girth() == girth,
        main_inequality_rhs: main_rhs,
        main_inequality_ok: main_ok,
        moore_rhs,
        moore_ok,
        girth_ratio: ratio,
        legendre_pq: spec.legendre_pq,
        theoretical_regime: spec.theoretical_regime,
    })
}
