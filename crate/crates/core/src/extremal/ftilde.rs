//! The union of all spanning supergraphs, and the host sequences built on it.

use std::collections::BTreeSet;

use thiserror::Error;

use super::gamma::{gamma_min_brute, gamma_min_ratio, gamma_of_set};
use crate::graph::canon::{canonical_form, MAX_CANON_N};
use crate::graph::{disjoint_union, edge, Edge, Graph};
use crate::rational::{ratio, Rational};

pub const DEFAULT_NONEDGE_CAP: usize = 16;
/// Largest union built; adjacency is dense.
pub const MAX_F_TILDE_VERTICES: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error("{count} non-edges exceed the cap of {cap}")]
    TooManyNonEdges { count: usize, cap: usize },
    #[error("the union would have {0} vertices, above {MAX_F_TILDE_VERTICES}")]
    UnionTooLarge(usize),
    #[error("deduplication needs components of at most {MAX_CANON_N} vertices")]
    DedupTooLarge,
    #[error("the set is not a minimizer: gamma(S) = {got}, gamma = {want}")]
    NotMinimizing { got: String, want: String },
    #[error("no edge is incident to S")]
    NoIncidentEdge,
    #[error("every vertex outside S has a neighbor in S")]
    NoFreeOutsideVertex,
    #[error("the set must be nonempty and within range")]
    BadSet,
    #[error("owned edge {0:?} has no end in the part")]
    ForeignEdge(Edge),
}

#[derive(Clone, Debug)]
pub struct FTilde {
    pub graph: Graph,
    pub components: usize,
    pub deduplicated: bool,
}

/// Disjoint union over all supersets of `E(f ⊔ K_pad)` on the same vertices,
/// in increasing order of the added-edge mask over non-edges in lexicographic
/// order. `f ⊔ K_pad` itself comes first.
pub fn build_f_tilde(f: &Graph, clique_pad: usize, dedup: bool, cap: usize) -> Result<FTilde, ExtremalError> {
    let base = disjoint_union(&[f.clone(), Graph::complete(clique_pad)]);
    let non_edges = base.non_edges();
    if non_edges.len() > cap || non_edges.len() >= 32 {
        return Err(ExtremalError::TooManyNonEdges { count: non_edges.len(), cap });
    }
    if dedup && base.n() > MAX_CANON_N {
        return Err(ExtremalError::DedupTooLarge);
    }
    let literal_size = base.n() << non_edges.len();
    if !dedup && literal_size > MAX_F_TILDE_VERTICES {
        return Err(ExtremalError::UnionTooLarge(literal_size));
    }
    let mut parts = Vec::new();
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << non_edges.len() {
        let g = base.with_edges(
            non_edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
        );
        if dedup && !seen.insert(canonical_form(&g).expect("size checked")) {
            continue;
        }
        parts.push(g);
    }
    if parts.len() * base.n() > MAX_F_TILDE_VERTICES {
        return Err(ExtremalError::UnionTooLarge(parts.len() * base.n()));
    }
    Ok(FTilde { components: parts.len(), graph: disjoint_union(&parts), deduplicated: dedup })
}

/// Host `G_i` from the `γ` upper-bound argument.
#[derive(Clone, Debug)]
pub struct HostSequence {
    pub graph: Graph,
    pub clique_size: usize,
    /// Clique vertices standing in for `V(f) \ S`, in increasing order of the
    /// vertices they replace.
    pub u: Vec<usize>,
    /// The deleted edge of `f`.
    pub e_star: Edge,
}

/// Clique of size `|V(f̃)| + 1` (literal `f̃`, no padding) plus `i` copies of
/// `S`, each wired to the clique as `f − e*` with `V(f) \ S` mapped onto `U`.
/// `e*` is the lexicographically first edge incident to `S`.
pub fn host_sequence(f: &Graph, s: &[usize], i: usize) -> Result<HostSequence, ExtremalError> {
    let n = f.n();
    let mut s: Vec<usize> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.iter().any(|&v| v >= n) {
        return Err(ExtremalError::BadSet);
    }
    let gamma = if n <= 20 { gamma_min_brute(f) } else { gamma_min_ratio(f) }
        .map_err(|_| ExtremalError::BadSet)?
        .value;
    let got = gamma_of_set(f, &s);
    if got != gamma {
        return Err(ExtremalError::NotMinimizing { got: got.to_string(), want: gamma.to_string() });
    }
    let in_s = |v: usize| s.binary_search(&v).is_ok();
    let e_star = f
        .edges()
        .into_iter()
        .find(|&(a, b)| in_s(a) || in_s(b))
        .ok_or(ExtremalError::NoIncidentEdge)?;
    let outside: Vec<usize> = (0..n).filter(|&v| !in_s(v)).collect();
    if !outside.iter().any(|&v| s.iter().all(|&w| !f.has_edge(v, w))) {
        return Err(ExtremalError::NoFreeOutsideVertex);
    }
    let nonedges = f.non_edges().len();
    let clique_size = n * (1usize << nonedges.min(40)) + 1;
    let mut g = Graph::complete(clique_size).with_vertices(i * s.len());
    let mut image = vec![0; n];
    for (k, &v) in outside.iter().enumerate() {
        image[v] = k;
    }
    for j in 0..i {
        let base = clique_size + j * s.len();
        for (k, &v) in s.iter().enumerate() {
            image[v] = base + k;
        }
        for (a, b) in f.edges() {
            if (a, b) != e_star && (in_s(a) || in_s(b)) {
                g.insert_edge(image[a], image[b]);
            }
        }
    }
    Ok(HostSequence { graph: g, clique_size, u: (0..outside.len()).collect(), e_star })
}

/// `g` plus `i` disjoint copies of the part `p0` with its owned edges. Owned
/// edges leaving `p0` are copied with the same outside endpoint.
pub fn replicate_component(g: &Graph, p0: &[usize], owned: &[Edge], i: usize) -> Result<Graph, ExtremalError> {
    let mut p0: Vec<usize> = p0.to_vec();
    p0.sort_unstable();
    p0.dedup();
    if p0.iter().any(|&v| v >= g.n()) {
        return Err(ExtremalError::BadSet);
    }
    let idx = |v: usize| p0.binary_search(&v).ok();
    for &(u, v) in owned {
        if idx(u).is_none() && idx(v).is_none() {
            return Err(ExtremalError::ForeignEdge(edge(u, v)));
        }
    }
    let mut out = g.with_vertices(i * p0.len());
    for j in 0..i {
        let base = g.n() + j * p0.len();
        let img = |v: usize| idx(v).map_or(v, |k| base + k);
        for &(u, v) in owned {
            out.insert_edge(img(u), img(v));
        }
    }
    Ok(out)
}

/// Vertex and edge counts `base + i·step`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearFamily {
    pub base_vertices: usize,
    pub base_edges: usize,
    pub step_vertices: usize,
    pub step_edges: usize,
}

impl LinearFamily {
    pub fn at(&self, i: usize) -> (usize, usize) {
        (self.base_vertices + i * self.step_vertices, self.base_edges + i * self.step_edges)
    }

    /// `lim e(G_i) / |V(G_i)|`.
    pub fn limit_density(&self) -> Rational {
        ratio(self.step_edges as i64, self.step_vertices as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::is_weakly_saturated;

    #[test]
    fn f_tilde_examples() {
        let t = build_f_tilde(&Graph::complete(3), 0, false, 16).unwrap();
        assert_eq!(t.graph, Graph::complete(3));
        let t = build_f_tilde(&Graph::path(3), 0, false, 16).unwrap();
        assert_eq!(t.graph.n(), 6);
        assert_eq!(t.graph.edge_count(), 5);
        assert_eq!(t.components, 2);
        // C_4 has two non-edges; with dedup the two one-chord graphs merge.
        let lit = build_f_tilde(&Graph::cycle(4), 0, false, 16).unwrap();
        let ded = build_f_tilde(&Graph::cycle(4), 0, true, 16).unwrap();
        assert_eq!((lit.components, ded.components), (4, 3));
        assert!(matches!(
            build_f_tilde(&Graph::empty(7), 0, false, 16),
            Err(ExtremalError::TooManyNonEdges { count: 21, cap: 16 })
        ));
        assert!(matches!(
            build_f_tilde(&Graph::complete(3), 5, false, 16),
            Err(ExtremalError::UnionTooLarge(262_144))
        ));
    }

    #[test]
    fn host_sequence_growth_and_percolation() {
        let f = Graph::complete(4).without_edge(0, 1);
        let ft = build_f_tilde(&f, 0, false, 16).unwrap().graph;
        let mut prev = None;
        for i in 0..=3 {
            let h = host_sequence(&f, &[0], i).unwrap();
            assert_eq!(h.clique_size, 9);
            if let Some(p) = prev {
                assert_eq!(h.graph.edge_count() - p, 1);
            }
            prev = Some(h.graph.edge_count());
            assert!(is_weakly_saturated(&h.graph, &ft), "i = {i}");
        }
        assert!(host_sequence(&f, &[2], 1).is_err());
    }

    #[test]
    fn replicate_counts() {
        let g = Graph::complete(4).with_vertices(2).with_edges([(4, 5), (0, 4)]);
        let owned = [(0, 4), (4, 5)];
        assert_eq!(replicate_component(&g, &[4, 5], &owned, 0).unwrap(), g);
        let r = replicate_component(&g, &[4, 5], &owned, 3).unwrap();
        assert_eq!((r.n(), r.edge_count()), (g.n() + 6, g.edge_count() + 6));
        assert!(r.has_edge(0, 6) && r.has_edge(6, 7));
        assert_eq!(replicate_component(&g, &[4, 5], &[(0, 1)], 1), Err(ExtremalError::ForeignEdge((0, 1))));
    }
}
