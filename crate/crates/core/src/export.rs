//! Edge-list and DOT output.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::CayleyGraph;
use crate::projective::GroupKind;

/// Largest vertex count accepted by [`to_dot`].
pub const DOT_MAX_VERTICES: usize = 10_000;

/// Header of an edge-list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListHeader {
    pub d: u64,
    pub p: u64,
    pub q: u64,
    pub group: GroupKind,
    pub legendre: i8,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub header: EdgeListHeader,
    pub edges: Vec<(u32, u32)>,
}

impl EdgeList {
    pub fn from_graph(g: &CayleyGraph) -> Self {
        let s = &g.spec;
        EdgeList {
            header: EdgeListHeader {
                d: s.d,
                p: s.p,
                q: s.q,
                group: s.group_kind,
                legendre: s.legendre_pq,
                n: g.n(),
            },
            edges: undirected_edges(g),
        }
    }

    pub fn write(&self) -> String {
        let h = &self.header;
        let mut out = String::new();
        writeln!(out, "# d={}", h.d).unwrap();
        writeln!(out, "# p={}", h.p).unwrap();
        writeln!(out, "# q={}", h.q).unwrap();
        writeln!(out, "# group={}", h.group).unwrap();
        writeln!(out, "# legendre={}", h.legendre).unwrap();
        writeln!(out, "# n={}", h.n).unwrap();
        for (u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields: [Option<&str>; 6] = [None; 6];
        const KEYS: [&str; 6] = ["d", "p", "q", "group", "legendre", "n"];
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix('#') {
                let Some((k, v)) = rest.trim().split_once('=') else {
                    continue;
                };
                if let Some(i) = KEYS.iter().position(|key| *key == k.trim()) {
                    fields[i] = Some(v.trim());
                }
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Format(format!("bad edge line {line:?}")));
            };
            edges.push((num(u)?, num(v)?));
        }
        let get = |i: usize| {
            fields[i].ok_or_else(|| Error::Format(format!("missing header '# {}='", KEYS[i])))
        };
        let header = EdgeListHeader {
            d: num(get(0)?)?,
            p: num(get(1)?)?,
            q: num(get(2)?)?,
            group: get(3)?.parse()?,
            legendre: num(get(4)?)?,
            n: num(get(5)?)?,
        };
        if edges.iter().any(|&(u, v)| u >= v || v as usize >= header.n)
            || edges.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Format(
                "edges must satisfy u < v < n in ascending order".into(),
            ));
        }
        Ok(EdgeList { header, edges })
    }
}

fn num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Format(format!("bad number {s:?}")))
}

/// Each undirected edge once, as `(u, v)` with `u < v`, ascending.
pub fn undirected_edges(g: &CayleyGraph) -> Vec<(u32, u32)> {
    let mut edges: Vec<(u32, u32)> = (0..g.n())
        .flat_map(|u| {
            g.graph
                .neighbors(u)
                .iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
        .collect();
    edges.sort_unstable();
    edges
}

pub fn to_dot(g: &CayleyGraph) -> Result<String> {
    if g.n() > DOT_MAX_VERTICES {
        return Err(Error::Format(format!(
            "DOT export is limited to {DOT_MAX_VERTICES} vertices, graph has {}",
            g.n()
        )));
    }
    let s = &g.spec;
    let mut out = String::new();
    writeln!(out, "graph G_{}_{}_{} {{", s.d, s.p, s.q).unwrap();
    writeln!(
        out,
        "  label=\"{} d={} p={} q={}\";",
        s.group_kind, s.d, s.p, s.q
    )
    .unwrap();
    for (i, e) in g.index.elements.iter().enumerate() {
        writeln!(out, "  {i} [label=\"{e}\"];").unwrap();
    }
    for (u, v) in undirected_edges(g) {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
