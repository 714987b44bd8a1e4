use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::flow::FlowNetwork;
use crate::graph::Graph;
use crate::rational::{ratio, Rational};

pub const DEFAULT_BRUTE_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("{n} vertices exceed the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaMethod {
    Brute,
    RatioSolver,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaResult {
    pub value: Rational,
    /// Sorted, nonempty.
    pub witness: Vec<usize>,
    pub method: GammaMethod,
    /// Subsets visited (brute) or cuts solved (ratio solver).
    pub nodes_explored: u64,
}

/// Number of edges with at least one end in `s`.
pub fn m_f(g: &Graph, s: &[usize]) -> usize {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    g.edges_touching(&s)
}

/// `(m_F(S) - 1) / |S|`.
pub fn gamma_of_set(g: &Graph, s: &[usize]) -> Rational {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    ratio(g.edges_touching(&s) as i64 - 1, s.len() as i64)
}

/// Candidate `(numerator, size, mask)` for the value `numerator / size`.
type Cand = (i64, i64, u32);

fn better(a: Cand, b: Cand) -> bool {
    let (lhs, rhs) = (a.0 * b.1, b.0 * a.1);
    if lhs != rhs {
        return lhs < rhs;
    }
    if a.1 != b.1 {
        return a.1 < b.1;
    }
    // Lexicographic on sorted vertex lists: the set holding the smallest
    // element of the symmetric difference comes first.
    let diff = a.2 ^ b.2;
    diff != 0 && a.2 & (diff & diff.wrapping_neg()) != 0
}

struct Brute<'a> {
    adj: &'a [u32],
    deg: &'a [i64],
    n: usize,
    best: Option<Cand>,
    upper: (i64, i64),
    nodes: u64,
}

impl Brute<'_> {
    fn dfs(&mut self, mask: u32, size: i64, m: i64, next: usize) {
        self.nodes += 1;
        let cand = (m - 1, size, mask);
        if self.best.is_none_or(|b| better(cand, b)) {
            self.best = Some(cand);
        }
        let rest = (self.n - next) as i64;
        if rest == 0 {
            return;
        }
        // Lower bound on any strict superset built from later vertices.
        let (bn, bd) = if m >= 1 { (m - 1, size + rest) } else { (-1, size) };
        let (un, ud) = self.best.map_or(self.upper, |b| (b.0, b.1));
        if bn * ud > un * bd {
            return;
        }
        for j in next..self.n {
            let inside = (self.adj[j] & mask).count_ones() as i64;
            self.dfs(mask | 1 << j, size + 1, m + self.deg[j] - inside, j + 1);
        }
    }
}

fn mask_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Exact minimum of `γ(S)` over all nonempty `S` by branch and bound. Ties go
/// to the smaller set, then the lexicographically smaller one.
pub fn gamma_min_brute(g: &Graph) -> Result<GammaResult, GammaError> {
    gamma_min_brute_capped(g, DEFAULT_BRUTE_CAP)
}

pub fn gamma_min_brute_capped(g: &Graph, cap: usize) -> Result<GammaResult, GammaError> {
    let n = g.n();
    if n == 0 {
        return Err(GammaError::EmptyGraph);
    }
    if n > cap.min(31) {
        return Err(GammaError::CapExceeded { n, cap });
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0, |a, w| a | 1 << w)).collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let upper = (g.edge_count() as i64 - 1, n as i64);
    let results: Vec<(Option<Cand>, u64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = Brute { adj: &adj, deg: &deg, n, best: None, upper, nodes: 0 };
            b.dfs(1 << i, 1, deg[i], i + 1);
            (b.best, b.nodes)
        })
        .collect();
    let nodes = results.iter().map(|r| r.1).sum();
    let best = results
        .into_iter()
        .filter_map(|r| r.0)
        .reduce(|a, b| if better(b, a) { b } else { a })
        .expect("at least one subset");
    Ok(GammaResult {
        value: ratio(best.0, best.1),
        witness: mask_to_vec(best.2),
        method: GammaMethod::Brute,
        nodes_explored: nodes,
    })
}

/// Minimizes `q·m(S) − p·|S|` over `S` (possibly empty), optionally forcing
/// `forced ∈ S`. Returns the largest minimizer.
fn min_cut_subproblem(g: &Graph, edges: &[(usize, usize)], p: i64, q: i64, forced: Option<usize>) -> Vec<usize> {
    let n = g.n();
    let m = edges.len();
    let (s, t) = (0, 1);
    let inf = q * m as i64 + p * n as i64 + 1;
    let mut net = FlowNetwork::new(2 + m + n);
    for (i, &(u, v)) in edges.iter().enumerate() {
        net.add_arc(s, 2 + i, q);
        net.add_arc(2 + i, 2 + m + u, inf);
        net.add_arc(2 + i, 2 + m + v, inf);
    }
    for v in 0..n {
        let c = if forced == Some(v) { inf } else { p };
        net.add_arc(2 + m + v, t, c);
    }
    net.max_flow(s, t);
    // Kept edges and vertices sit on the source side; S is the complement.
    let side = net.source_side(s);
    (0..n).filter(|&v| !side[2 + m + v]).collect()
}

/// Exact minimum of `γ(S)` by Dinkelbach iteration with min-cut subproblems.
pub fn gamma_min_ratio(g: &Graph) -> Result<GammaResult, GammaError> {
    let n = g.n();
    if n == 0 {
        return Err(GammaError::EmptyGraph);
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Ok(GammaResult {
            value: ratio(-1, 1),
            witness: vec![v],
            method: GammaMethod::RatioSolver,
            nodes_explored: 0,
        });
    }
    let edges = g.edges();
    let mut witness: Vec<usize> = (0..n).collect();
    let mut num = edges.len() as i64 - 1;
    let mut den = n as i64;
    let mut cuts = 0u64;
    loop {
        let gcd = num.gcd(&den);
        let (p, q) = (num / gcd, den / gcd);
        // f(S) = q·(m(S) − 1) − p·|S|; improve while some nonempty S has f < 0.
        let f = |s: &[usize]| q * (g.edges_touching(s) as i64 - 1) - p * s.len() as i64;
        let mut cand = min_cut_subproblem(g, &edges, p, q, None);
        cuts += 1;
        if cand.is_empty() {
            // Only S = ∅ is optimal: force each vertex in turn.
            let mut best: Option<(i64, Vec<usize>)> = None;
            for v in 0..n {
                let s = min_cut_subproblem(g, &edges, p, q, Some(v));
                cuts += 1;
                let val = f(&s);
                if best.as_ref().is_none_or(|(b, _)| val < *b) {
                    best = Some((val, s));
                }
            }
            cand = best.expect("n > 0").1;
        }
        if f(&cand) >= 0 {
            break;
        }
        num = g.edges_touching(&cand) as i64 - 1;
        den = cand.len() as i64;
        witness = cand;
    }
    Ok(GammaResult {
        value: ratio(num, den),
        witness,
        method: GammaMethod::RatioSolver,
        nodes_explored: cuts,
    })
}
