//! Simple undirected graphs on vertices `0..n`.

mod bitset;
pub mod canon;
pub mod embed;
pub mod io;

pub use bitset::Bitset;
pub use embed::{find_new_copy, Embedding, Matcher};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// An unordered vertex pair, stored with `u < v`.
pub type Edge = (usize, usize);

/// Normalizes a pair so the smaller endpoint comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("circulant needs k >= 3, got {0}")]
    CirculantTooSmall(usize),
    #[error("generator {0} is 0 mod k")]
    ZeroGenerator(usize),
    #[error("schedule is missing edge {{{0}, {1}}}")]
    MissingSchedule(usize, usize),
    #[error("path length for edge {{{0}, {1}}} must be at least 1")]
    ZeroLength(usize, usize),
}

/// Immutable simple graph backed by adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Bitset>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, m: 0, adj: vec![Bitset::new(n); n] }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                let (a, b) = edge(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.insert_edge(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n {
            g.insert_edge(i - 1, i);
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for i in 1..=leaves {
            g.insert_edge(0, i);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Minimum degree; 0 for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter()
    }

    pub fn neighbor_set(&self, v: usize) -> &Bitset {
        &self.adj[v]
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Non-adjacent pairs in ascending lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    /// Copy of this graph with `{u, v}` added; a no-op if already present.
    pub fn with_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            g.insert_edge(u, v);
        }
        g
    }

    /// Copy of this graph with `{u, v}` removed, if present.
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if g.has_edge(u, v) {
            g.delete_edge(u, v);
        }
        g
    }

    /// Copy with extra edges; existing ones are ignored.
    pub fn with_edges<I: IntoIterator<Item = Edge>>(&self, edges: I) -> Self {
        let mut g = self.clone();
        for (u, v) in edges {
            if !g.has_edge(u, v) {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Copy with extra isolated vertices appended.
    pub fn with_vertices(&self, extra: usize) -> Self {
        let mut g = Self::empty(self.n + extra);
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        g
    }

    /// Subgraph induced by `vs`, relabeled `0..vs.len()` in the given order.
    pub fn induced(&self, vs: &[usize]) -> Self {
        let mut g = Self::empty(vs.len());
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.insert_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        g
    }

    /// Number of edges with at least one end in `s`.
    pub fn edges_touching(&self, s: &[usize]) -> usize {
        let mut inside = Bitset::new(self.n);
        for &v in s {
            inside.insert(v);
        }
        let mut deg_sum = 0;
        let mut internal2 = 0;
        for &v in s {
            deg_sum += self.degree(v);
            internal2 += self.adj[v].intersection_len(&inside);
        }
        deg_sum - internal2 / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.adj[v].iter() {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
    }

    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.m -= 1;
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Circulant graph on `0..k` joining `i` and `i + s` for each generator `s`.
pub fn circulant(k: usize, generators: &[usize]) -> Result<Graph, GraphError> {
    if k < 3 {
        return Err(GraphError::CirculantTooSmall(k));
    }
    let mut g = Graph::empty(k);
    for &s in generators {
        if s % k == 0 {
            return Err(GraphError::ZeroGenerator(s));
        }
        for i in 0..k {
            let j = (i + s) % k;
            if !g.has_edge(i, j) {
                g.insert_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Disjoint union; the vertices of `gs[i]` are shifted by the sizes of `gs[..i]`.
pub fn disjoint_union(gs: &[Graph]) -> Graph {
    let mut g = Graph::empty(gs.iter().map(Graph::n).sum());
    let mut offset = 0;
    for h in gs {
        for (u, v) in h.edges() {
            g.insert_edge(u + offset, v + offset);
        }
        offset += h.n();
    }
    g
}

/// Internal vertices created for one original edge, in path order from the smaller endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedEdge {
    pub edge: Edge,
    pub internal: Vec<usize>,
}

/// Replaces each edge by a path of the scheduled length.
///
/// Original vertices keep their labels. New vertices are appended edge by edge in
/// lexicographic edge order.
pub fn subdivide(
    g: &Graph,
    schedule: &BTreeMap<Edge, usize>,
) -> Result<(Graph, Vec<SubdividedEdge>), GraphError> {
    let edges = g.edges();
    let mut extra = 0;
    for &(u, v) in &edges {
        match schedule.get(&(u, v)) {
            None => return Err(GraphError::MissingSchedule(u, v)),
            Some(0) => return Err(GraphError::ZeroLength(u, v)),
            Some(&len) => extra += len - 1,
        }
    }
    let mut out = Graph::empty(g.n() + extra);
    let mut groups = Vec::with_capacity(edges.len());
    let mut next = g.n();
    for (u, v) in edges {
        let len = schedule[&(u, v)];
        let internal: Vec<usize> = (next..next + len - 1).collect();
        next += len - 1;
        let mut prev = u;
        for &w in &internal {
            out.insert_edge(prev, w);
            prev = w;
        }
        out.insert_edge(prev, v);
        groups.push(SubdividedEdge { edge: (u, v), internal });
    }
    Ok((out, groups))
}
