//! Exact weak saturation numbers for small hosts.
//!
//! Hosts are generated level by level (by edge count) up to isomorphism and
//! each level is tested with the percolation closure. The first level holding
//! a weakly saturated graph gives the answer, and all lower levels are
//! exhausted, so the value is certified.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::canon::{canonical_form, canonical_labeling, CanonicalForm, MAX_CANON_N};
use crate::graph::{Graph, Matcher};
use crate::percolation::is_weakly_saturated_with;

pub const DEFAULT_WSAT_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WsatError {
    #[error("host size {0} exceeds the canonical-form limit")]
    TooLarge(usize),
    #[error("budget exhausted after {explored} graphs; wsat lies in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize, explored: u64 },
}

#[derive(Clone, Debug)]
pub struct WsatResult {
    pub n: usize,
    pub value: usize,
    /// The canonically first minimum host.
    pub witness: Graph,
    /// Degree-based lower bound the search started from.
    pub start: usize,
    /// Graphs generated across all levels.
    pub explored: u64,
}

/// Isomorphism classes of graphs on `n` vertices with `m + 1` edges, from those with `m`.
fn next_level(level: &[Graph]) -> Vec<Graph> {
    let found: Vec<(CanonicalForm, Graph)> = level
        .par_iter()
        .flat_map_iter(|g| {
            g.non_edges().into_iter().map(move |(u, v)| {
                let h = g.with_edge(u, v);
                let perm = canonical_labeling(&h).expect("size checked");
                let c = h.relabel(&perm);
                (canonical_form(&c).expect("size checked"), c)
            })
        })
        .collect();
    let dedup: BTreeMap<CanonicalForm, Graph> = found.into_iter().collect();
    dedup.into_values().collect()
}

/// A vertex of degree below `δ − 1` can never gain an edge, so unless it is
/// already universal the host cannot percolate.
fn degree_feasible(g: &Graph, delta: usize) -> bool {
    (0..g.n()).all(|v| g.degree(v) + 1 >= delta || g.degree(v) + 1 == g.n())
}

fn lower_bound(n: usize, delta: usize) -> usize {
    if n >= delta && delta >= 1 {
        (n * (delta - 1)).div_ceil(2)
    } else {
        0
    }
}

struct Levels {
    n: usize,
    current: Vec<Graph>,
    m: usize,
    explored: u64,
}

impl Levels {
    fn new(n: usize) -> Self {
        Levels { n, current: vec![Graph::empty(n)], m: 0, explored: 1 }
    }

    fn advance(&mut self) {
        self.current = next_level(&self.current);
        self.m += 1;
        self.explored += self.current.len() as u64;
    }

    fn max_edges(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }
}

fn saturated_at_level(matcher: &Matcher, level: &[Graph], delta: usize) -> Vec<bool> {
    level
        .par_iter()
        .map(|g| degree_feasible(g, delta) && is_weakly_saturated_with(matcher, g))
        .collect()
}

/// `wsat(n, f)` with a certified minimum host.
pub fn wsat_exact(n: usize, f: &Graph, budget: u64) -> Result<WsatResult, WsatError> {
    let (value, hosts, start, explored) = search(n, f, budget, false)?;
    Ok(WsatResult { n, value, witness: hosts.into_iter().next().expect("one host"), start, explored })
}

/// Every minimum weakly saturated host on `n` vertices, up to isomorphism, in
/// canonical order.
pub fn minimum_hosts(n: usize, f: &Graph, budget: u64) -> Result<Vec<Graph>, WsatError> {
    Ok(search(n, f, budget, true)?.1)
}

fn search(n: usize, f: &Graph, budget: u64, all: bool) -> Result<(usize, Vec<Graph>, usize, u64), WsatError> {
    if n > MAX_CANON_N {
        return Err(WsatError::TooLarge(n));
    }
    let delta = f.min_degree();
    let start = lower_bound(n, delta);
    let matcher = Matcher::new(f);
    let mut levels = Levels::new(n);
    loop {
        if levels.m >= start {
            let ok = saturated_at_level(&matcher, &levels.current, delta);
            let hosts: Vec<Graph> = levels
                .current
                .iter()
                .zip(&ok)
                .filter(|(_, &b)| b)
                .map(|(g, _)| g.clone())
                .take(if all { usize::MAX } else { 1 })
                .collect();
            if !hosts.is_empty() {
                return Ok((levels.m, hosts, start, levels.explored));
            }
        }
        if levels.m == levels.max_edges() {
            unreachable!("the complete graph is weakly saturated");
        }
        if levels.explored > budget {
            return Err(WsatError::BudgetExhausted {
                lower: (levels.m + 1).max(start),
                upper: levels.max_edges(),
                explored: levels.explored,
            });
        }
        levels.advance();
    }
}

/// Lovász: `wsat(n, K_s) = (s − 2)n − C(s − 1, 2)` for `n ≥ s ≥ 2`.
pub fn wsat_clique_formula(n: usize, s: usize) -> usize {
    (s - 2) * n - (s - 1) * (s - 2) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_sizes_match_known_counts() {
        // Graphs on 5 vertices by edge count: 1 1 2 4 6 6 6 4 2 1 1
        let mut l = Levels::new(5);
        let mut sizes = vec![l.current.len()];
        for _ in 0..10 {
            l.advance();
            sizes.push(l.current.len());
        }
        assert_eq!(sizes, vec![1, 1, 2, 4, 6, 6, 6, 4, 2, 1, 1]);
    }

    #[test]
    fn small_cliques() {
        assert_eq!(wsat_exact(5, &Graph::complete(3), DEFAULT_WSAT_BUDGET).unwrap().value, 4);
        assert_eq!(wsat_exact(5, &Graph::complete(4), DEFAULT_WSAT_BUDGET).unwrap().value, 7);
        for n in 2..6 {
            assert_eq!(wsat_exact(n, &Graph::complete(2), DEFAULT_WSAT_BUDGET).unwrap().value, 0);
        }
    }

    #[test]
    fn pattern_larger_than_host() {
        // No copies fit, so only the complete graph is saturated.
        assert_eq!(wsat_exact(3, &Graph::complete(4), DEFAULT_WSAT_BUDGET).unwrap().value, 3);
    }

    #[test]
    fn budget_is_reported() {
        let e = wsat_exact(6, &Graph::complete(4), 5).unwrap_err();
        // The degree bound 6 holds even before level 6 is reached.
        assert!(matches!(e, WsatError::BudgetExhausted { lower: 6, upper: 15, .. }));
    }

    #[test]
    fn triangle_hosts_are_trees() {
        // Minimum weakly K_3-saturated graphs are exactly the spanning trees.
        let hosts = minimum_hosts(6, &Graph::complete(3), DEFAULT_WSAT_BUDGET).unwrap();
        assert_eq!(hosts.len(), 6);
        assert!(hosts.iter().all(|g| g.edge_count() == 5 && g.components().len() == 1));
    }
}
