//! F-bootstrap percolation: closure, traces, activation partitions and rotations.
//!
//! A copy of the pattern is *new* after adding `e` exactly when its image uses
//! `e`, since `e` was absent before. Copies are subgraph copies, not induced.

mod activation;
mod rotation;

pub use activation::{activation_partition, ActivationPartition, Part};
pub use rotation::{
    a_matching_count, enumerate_a_matchings, part_density, rotate, rotation_components, AMatching,
    DEFAULT_MATCHING_BUDGET,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge, Edge, Embedding, Graph, Matcher};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PercolationError {
    #[error("step {index}: edge {edge:?} is not a valid restoration")]
    InvalidStep { index: usize, edge: Edge },
    #[error("the closure does not reach the complete graph")]
    NotComplete,
    #[error("vertices {0:?} are never activated; the host is not minimum")]
    NeverActivated(Vec<usize>),
    #[error("part {0} owns no edges")]
    NoOwnedEdges(usize),
    #[error("{count} A-matchings exceed the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("not an A-matching for this partition: {0}")]
    InvalidMatching(String),
    #[error("part density needs a nonempty part")]
    EmptyPart,
}

/// One restored edge with the pattern copy it created.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub edge: Edge,
    /// Host vertex for each pattern vertex.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PercolationTrace {
    pub host: Graph,
    pub pattern: Graph,
    pub steps: Vec<Step>,
}

impl PercolationTrace {
    pub fn final_graph(&self) -> Graph {
        self.host.with_edges(self.steps.iter().map(|s| s.edge))
    }

    pub fn reaches_complete(&self) -> bool {
        self.host.edge_count() + self.steps.len() == self.host.n() * self.host.n().saturating_sub(1) / 2
    }

    /// Replays the steps, checking each edge is new and each witness is a valid
    /// copy through that edge in the graph at that point.
    pub fn validate(&self) -> Result<(), PercolationError> {
        let mut g = self.host.clone();
        for (index, s) in self.steps.iter().enumerate() {
            let (u, v) = s.edge;
            let bad = || PercolationError::InvalidStep { index, edge: s.edge };
            if u >= g.n() || v >= g.n() || u == v || g.has_edge(u, v) {
                return Err(bad());
            }
            g.insert_edge(u, v);
            let emb = Embedding { map: s.witness.clone() };
            if !emb.is_valid(&self.pattern, &g) || !emb.covers(&self.pattern, s.edge) {
                return Err(bad());
            }
        }
        Ok(())
    }
}

/// Extends `g` in place with passes over the non-edges in lexicographic order.
///
/// Within a pass, every non-edge that completes a new copy is added
/// immediately and the scan continues; passes repeat until one adds nothing.
fn run_passes(matcher: &Matcher, g: &mut Graph, mut record: impl FnMut(Edge, Embedding)) {
    loop {
        let mut added = false;
        for (u, v) in g.non_edges() {
            g.insert_edge(u, v);
            match matcher.find(g, (u, v)) {
                Some(emb) => {
                    record((u, v), emb);
                    added = true;
                }
                None => g.delete_edge(u, v),
            }
        }
        if !added {
            return;
        }
    }
}

/// Maximal percolation trace from `host`.
pub fn closure(host: &Graph, pattern: &Graph) -> PercolationTrace {
    closure_with(&Matcher::new(pattern), host)
}

pub fn closure_with(matcher: &Matcher, host: &Graph) -> PercolationTrace {
    let mut g = host.clone();
    let mut steps = Vec::new();
    run_passes(matcher, &mut g, |e, emb| steps.push(Step { edge: e, witness: emb.map }));
    PercolationTrace { host: host.clone(), pattern: matcher.pattern().clone(), steps }
}

/// Closure that first restores `prefix` in the given order, each of which must
/// create a new copy, then continues as [`closure`].
pub fn closure_from(
    host: &Graph,
    pattern: &Graph,
    prefix: &[Edge],
) -> Result<PercolationTrace, PercolationError> {
    let matcher = Matcher::new(pattern);
    let mut g = host.clone();
    let mut steps = Vec::new();
    for (index, &(u, v)) in prefix.iter().enumerate() {
        let e = edge(u, v);
        let bad = PercolationError::InvalidStep { index, edge: e };
        if u == v || u >= g.n() || v >= g.n() || g.has_edge(u, v) {
            return Err(bad);
        }
        g.insert_edge(u, v);
        let emb = matcher.find(&g, e).ok_or(bad)?;
        steps.push(Step { edge: e, witness: emb.map });
    }
    run_passes(&matcher, &mut g, |e, emb| steps.push(Step { edge: e, witness: emb.map }));
    Ok(PercolationTrace { host: host.clone(), pattern: pattern.clone(), steps })
}

/// Final graph of the closure, without recording witnesses.
pub fn closure_graph(matcher: &Matcher, host: &Graph) -> Graph {
    let mut g = host.clone();
    run_passes(matcher, &mut g, |_, _| {});
    g
}

pub fn is_weakly_saturated(host: &Graph, pattern: &Graph) -> bool {
    closure_graph(&Matcher::new(pattern), host).is_complete()
}

pub fn is_weakly_saturated_with(matcher: &Matcher, host: &Graph) -> bool {
    closure_graph(matcher, host).is_complete()
}
