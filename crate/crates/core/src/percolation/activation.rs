use crate::graph::{edge, Bitset, Edge, Embedding, Graph};

use super::{PercolationError, PercolationTrace};

/// Vertices activated by one restored edge, with the edges they own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    /// Sorted.
    pub vertices: Vec<usize>,
    pub activating_edge: Edge,
    /// Sorted; includes the activating edge when it has an end in the part.
    pub owned: Vec<Edge>,
}

impl Part {
    pub fn owns_activating_edge(&self) -> bool {
        self.owned.binary_search(&self.activating_edge).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationPartition {
    pub host: Graph,
    /// In activation order.
    pub parts: Vec<Part>,
    /// Edges of the augmented host owned by no part, sorted.
    pub free_edges: Vec<Edge>,
}

impl ActivationPartition {
    /// Host plus every activating edge.
    pub fn augmented(&self) -> Graph {
        self.host.with_edges(self.parts.iter().map(|p| p.activating_edge))
    }

    /// Part index of each vertex.
    pub fn part_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.host.n()];
        for (i, p) in self.parts.iter().enumerate() {
            for &v in &p.vertices {
                out[v] = i;
            }
        }
        out
    }
}

/// Replays a complete trace and records which vertices each step activates.
pub fn activation_partition(trace: &PercolationTrace) -> Result<ActivationPartition, PercolationError> {
    if !trace.reaches_complete() {
        return Err(PercolationError::NotComplete);
    }
    let host = &trace.host;
    let n = host.n();
    let mut active = Bitset::new(n);
    let mut parts = Vec::new();
    for step in &trace.steps {
        let fresh: Vec<usize> = {
            let mut v: Vec<usize> = step.witness.iter().copied().filter(|&x| !active.contains(x)).collect();
            v.sort_unstable();
            v
        };
        if fresh.is_empty() {
            continue;
        }
        let mut inside = Bitset::new(n);
        for &x in &fresh {
            inside.insert(x);
        }
        let touches = |(u, v): Edge| inside.contains(u) || inside.contains(v);
        let emb = Embedding { map: step.witness.clone() };
        let mut owned: Vec<Edge> = emb
            .image_edges(&trace.pattern)
            .into_iter()
            .filter(|&(u, v)| host.has_edge(u, v) && touches((u, v)))
            .collect();
        let e = edge(step.edge.0, step.edge.1);
        if touches(e) {
            owned.push(e);
        }
        owned.sort_unstable();
        owned.dedup();
        for &x in &fresh {
            active.insert(x);
        }
        parts.push(Part { vertices: fresh, activating_edge: e, owned });
    }
    let missing: Vec<usize> = (0..n).filter(|&v| !active.contains(v)).collect();
    if !missing.is_empty() {
        return Err(PercolationError::NeverActivated(missing));
    }
    let mut owned_all: Vec<Edge> = parts.iter().flat_map(|p| p.owned.iter().copied()).collect();
    owned_all.sort_unstable();
    let hat = host.with_edges(parts.iter().map(|p| p.activating_edge));
    let free_edges = hat
        .edges()
        .into_iter()
        .filter(|e| owned_all.binary_search(e).is_err())
        .collect();
    Ok(ActivationPartition { host: host.clone(), parts, free_edges })
}
