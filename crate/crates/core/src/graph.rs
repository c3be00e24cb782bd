//! Regular graphs with flat adjacency, the Cayley graphs `G_{d,p,q}`, and
//! the BFS-based checks: connectivity, 2-colouring and girth.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::projective::{GraphSpec, GroupIndex, ProjElement, ProjectiveGroup};

const UNSEEN: u32 = u32::MAX;

/// Default memory budget for graph construction.
pub const DEFAULT_MEMORY_BYTES: u64 = 8 << 30;

/// A `degree`-regular graph on `0..n`; row `v` of `adj` lists the neighbours
/// of `v`, one per slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraph {
    pub n: usize,
    pub degree: usize,
    pub adj: Vec<u32>,
}

impl RegularGraph {
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let degree = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == degree),
            "rows must be regular"
        );
        RegularGraph {
            n: rows.len(),
            degree,
            adj: rows.concat(),
        }
    }

    pub fn cycle(n: usize) -> Self {
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|v| vec![((v + n - 1) % n) as u32, ((v + 1) % n) as u32])
            .collect();
        Self::from_rows(&rows)
    }

    pub fn complete(n: usize) -> Self {
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).map(|u| u as u32).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let rows: Vec<Vec<u32>> = (0..10u32)
            .map(|v| {
                if v < 5 {
                    vec![(v + 4) % 5, (v + 1) % 5, v + 5]
                } else {
                    let i = v - 5;
                    vec![5 + (i + 2) % 5, 5 + (i + 3) % 5, i]
                }
            })
            .collect();
        Self::from_rows(&rows)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v * self.degree..(v + 1) * self.degree]
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.degree / 2
    }

    /// `u` lists `v` as often as `v` lists `u`.
    pub fn is_symmetric(&self) -> bool {
        let mut forward: Vec<(u32, u32)> = Vec::with_capacity(self.adj.len());
        for u in 0..self.n {
            for &v in self.neighbors(u) {
                forward.push((u as u32, v));
            }
        }
        let mut backward: Vec<(u32, u32)> = forward.iter().map(|&(u, v)| (v, u)).collect();
        forward.par_sort_unstable();
        backward.par_sort_unstable();
        forward == backward
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.neighbors(v).contains(&(v as u32)))
    }

    pub fn has_parallel_edges(&self) -> bool {
        (0..self.n).into_par_iter().any(|v| {
            let mut row = self.neighbors(v).to_vec();
            row.sort_unstable();
            row.windows(2).any(|w| w[0] == w[1])
        })
    }

    pub fn bfs_distances(&self, root: usize) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNSEEN {
                    dist[v as usize] = dist[u] + 1;
                    queue.push_back(v as usize);
                }
            }
        }
        dist
    }

    pub fn component_size(&self, root: usize) -> usize {
        self.bfs_distances(root)
            .iter()
            .filter(|&&d| d != UNSEEN)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_size(0) == self.n
    }

    /// A proper 2-colouring over all components, if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    let v = v as usize;
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Length of the shortest cycle found by a BFS rooted at `root`: the
    /// minimum of `dist(u) + dist(v) + 1` over non-tree edges. This is the
    /// girth whenever the graph is vertex-transitive; in general it lies
    /// between the girth and the shortest cycle through `root`. `None` when
    /// the component of `root` is acyclic.
    pub fn girth_from(&self, root: usize) -> Option<u32> {
        let mut dist = vec![UNSEEN; self.n];
        let mut parent = vec![UNSEEN; self.n];
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        let mut best: Option<u32> = None;
        while let Some(u) = queue.pop_front() {
            // Any cycle closed from level k has length >= 2k.
            if best.is_some_and(|b| b <= 2 * dist[u]) {
                break;
            }
            for &v in self.neighbors(u) {
                let v = v as usize;
                if dist[v] == UNSEEN {
                    dist[v] = dist[u] + 1;
                    parent[v] = u as u32;
                    queue.push_back(v);
                } else if parent[u] != v as u32 {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        best
    }

    /// Girth as the minimum over every root; `O(n * m)`, for fixtures and
    /// cross-checks on small graphs.
    pub fn girth_exhaustive(&self) -> Option<u32> {
        (0..self.n).filter_map(|r| self.girth_from(r)).min()
    }
}

/// Adjacency of `Cay(group, images)` restricted to the vertices in `index`:
/// row `g` holds `g * s` for each image `s`, in image order.
pub fn cayley_adjacency(
    group: &ProjectiveGroup,
    index: &GroupIndex,
    images: &[ProjElement],
) -> Result<RegularGraph> {
    let degree = images.len();
    let n = index.len();
    let mut adj = vec![0u32; n * degree];
    adj.par_chunks_mut(degree.max(1))
        .zip(index.elements.par_iter())
        .try_for_each(|(row, g)| {
            for (slot, s) in row.iter_mut().zip(images) {
                let h = group.mul(g, s);
                *slot = index
                    .index_of(group, &h)
                    .ok_or_else(|| Error::Invariant(format!("{g} * {s} leaves the vertex set")))?;
            }
            Ok::<(), Error>(())
        })?;
    Ok(RegularGraph { n, degree, adj })
}

/// `G_{d,p,q}` with its vertex index.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub spec: GraphSpec,
    pub index: GroupIndex,
    pub graph: RegularGraph,
}

impl CayleyGraph {
    /// Bytes needed for the vertex index and adjacency of `spec`.
    pub fn required_bytes(spec: &GraphSpec) -> u64 {
        GroupIndex::footprint(spec.q, spec.group_kind) + spec.order() * spec.degree() as u64 * 4
    }

    pub fn build(spec: &GraphSpec, budget_bytes: u64) -> Result<Self> {
        let required = Self::required_bytes(spec);
        if required > budget_bytes {
            return Err(Error::MemoryBudget {
                required,
                budget: budget_bytes,
            });
        }
        let index = GroupIndex::new(&spec.group, spec.group_kind);
        let graph = cayley_adjacency(&spec.group, &index, &spec.generator_images)?;
        if graph.has_loops() {
            return Err(Error::Invariant("a generator image is the identity".into()));
        }
        if graph.has_parallel_edges() {
            return Err(Error::Invariant("two generators give the same edge".into()));
        }
        Ok(CayleyGraph {
            spec: spec.clone(),
            index,
            graph,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn identity_vertex(&self) -> usize {
        self.index
            .index_of(&self.spec.group, &ProjElement::IDENTITY)
            .expect("identity is a vertex") as usize
    }

    pub fn is_connected(&self) -> bool {
        self.graph.component_size(self.identity_vertex()) == self.n()
    }

    /// Girth from the identity; exact because Cayley graphs are
    /// vertex-transitive.
    pub fn girth_bfs(&self) -> Option<u32> {
        self.graph.girth_from(self.identity_vertex())
    }

    /// When 2-colourable, the colour classes are `PSL2` and its complement.
    pub fn bipartition_matches_psl(&self) -> Option<bool> {
        let colors = self.graph.bipartition()?;
        let id = colors[self.identity_vertex()];
        Some(
            self.index
                .elements
                .iter()
                .zip(&colors)
                .all(|(e, &c)| self.spec.group.in_psl(e) == (c == id)),
        )
    }
}
