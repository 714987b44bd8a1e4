//! Graph families with prescribed γ: subdivided Cayley graphs attached to a
//! clique, the expander-plus-clique family, sparse regular circulants, and a
//! two-component pattern whose saturation limit is not a γ value.

use std::collections::BTreeMap;
use std::ops::Range;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::expander::{i_alpha_exact, sample_regular_where, ExpanderError, DEFAULT_RESAMPLE_CAP};
use crate::extremal::LinearFamily;
use crate::graph::{circulant, disjoint_union, subdivide, Edge, Graph, GraphError};
use crate::rational::{format_rational, int, ratio, round_half_up, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("ratio {ratio} is outside the regime for delta = {delta}")]
    RatioOutOfRange { delta: usize, ratio: String },
    #[error("no valid k found in [{from}, {to}]")]
    NoValidK { from: usize, to: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("infeasible (delta, k) = ({delta}, {k}): {reason}")]
    Infeasible { delta: usize, k: usize, reason: &'static str },
    #[error("the clique has {size} vertices but {needed} attachment targets are needed")]
    CliqueExhausted { size: usize, needed: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Expander(#[from] ExpanderError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub delta: usize,
    pub ratio: Rational,
    pub k: usize,
    pub p: usize,
    pub t: usize,
    pub clique_size: usize,
}

/// A pattern graph together with the vertex set meant to attain γ.
#[derive(Clone, Debug)]
pub struct Construction {
    pub family: &'static str,
    pub graph: Graph,
    pub params: Option<ConstructionParams>,
    /// Sorted.
    pub witness: Vec<usize>,
    pub predicted_gamma: Rational,
    /// Subdivision vertices (empty for unsubdivided families).
    pub internal_vertices: Vec<usize>,
    pub clique: Range<usize>,
}

fn small(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Smallest `p >= 1` with `lo(p) <= a/b < lo(p + 1)`, where `lo` increases to `limit`.
fn find_p(x: &Rational, lo: impl Fn(i64) -> Rational, limit: &Rational) -> Option<usize> {
    if *x < lo(1) || x >= limit {
        return None;
    }
    (1..).find(|&p| *x < lo(p + 1)).map(|p| p as usize)
}

pub const DEFAULT_K_MIN_DELTA3: usize = 8;
pub const DEFAULT_K_MIN_DELTA4: usize = 9;
const K_SEARCH_SPAN: usize = 100_000;

/// Parameters for the subdivided constructions (`δ ∈ {3, 4}`). `k` is the
/// smallest admissible value `>= k_min`; `|K|` defaults to `3|V(G′)| + δ + 2`.
pub fn solve_params(delta: usize, x: &Rational, k_min: usize) -> Result<ConstructionParams, ConstructionError> {
    let out = || ConstructionError::RatioOutOfRange { delta, ratio: format_rational(x) };
    let (a, b) = small(x).ok_or_else(out)?;
    let (p, modulus, k_floor) = match delta {
        3 => (find_p(x, |p| ratio(6 * p - 3, 3 * p - 1), &int(2)).ok_or_else(out)?, 4 * b - 2 * a, 4),
        4 => (find_p(x, |p| ratio(6 * p - 4, 2 * p - 1), &int(3)).ok_or_else(out)?, 3 * b - a, 5),
        _ => return Err(out()),
    };
    let pi = p as i64;
    let m = modulus as usize;
    let from = k_min.max(k_floor);
    for k in from..from + K_SEARCH_SPAN {
        let ki = k as i64;
        let (num, max_t, ok_k) = match delta {
            3 => (ki * ((3 * pi - 1) * a - (6 * pi - 3) * b) + 2 * b, 3 * ki / 2, k % 2 == 0 && (k + 2) % m == 0),
            _ => (ki * ((2 * pi - 1) * a - (6 * pi - 4) * b) + b, 2 * ki, k % 2 == 1 && (k + 1) % m == 0),
        };
        if !ok_k || num % modulus != 0 {
            continue;
        }
        let t = num / modulus;
        if (0..=max_t).contains(&t) {
            let t = t as usize;
            let gv = gadget_vertices(delta, k, p, t);
            return Ok(ConstructionParams {
                delta,
                ratio: x.clone(),
                k,
                p,
                t,
                clique_size: 3 * gv + delta + 2,
            });
        }
    }
    Err(ConstructionError::NoValidK { from, to: from + K_SEARCH_SPAN })
}

/// `|V(G′)|`: `k(3p/2 − 1/2) + t` for δ = 3, `k(2p − 1) + t` for δ = 4.
pub fn gadget_vertices(delta: usize, k: usize, p: usize, t: usize) -> usize {
    match delta {
        3 => k * (3 * p - 1) / 2 + t,
        _ => k * (2 * p - 1) + t,
    }
}

/// `m_F(G′)`: `k(3p − 3/2) + 2t` for δ = 3, `k(6p − 4) + 3t` for δ = 4.
pub fn gadget_edges(delta: usize, k: usize, p: usize, t: usize) -> usize {
    match delta {
        3 => k * (6 * p - 3) / 2 + 2 * t,
        _ => k * (6 * p - 4) + 3 * t,
    }
}

/// `(m_F(G′) − 1) / |V(G′)|`.
pub fn predicted_gamma(delta: usize, k: usize, p: usize, t: usize) -> Rational {
    ratio(gadget_edges(delta, k, p, t) as i64 - 1, gadget_vertices(delta, k, p, t) as i64)
}

/// Indices `round(i·total/count)` for `i < count`, rounding half up; an index
/// already taken moves to the next free one (cyclically).
pub fn spread(total: usize, count: usize) -> Vec<usize> {
    let mut taken = vec![false; total];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let r = round_half_up(&ratio((i * total) as i64, count as i64));
        let mut j = r.to_usize().expect("small index") % total;
        while taken[j] {
            j = (j + 1) % total;
        }
        taken[j] = true;
        out.push(j);
    }
    out
}

fn check_params(p: &ConstructionParams) -> Result<(), ConstructionError> {
    let bad = |s: &str| Err(ConstructionError::InvalidParams(s.to_string()));
    let (a, b) = match small(&p.ratio) {
        Some(x) => x,
        None => return bad("ratio too large"),
    };
    if p.p == 0 {
        return bad("p must be positive");
    }
    let pi = p.p as i64;
    let k = p.k as i64;
    let (lo, hi, modulus, num, max_t) = match p.delta {
        3 => {
            if p.k % 2 == 1 || p.k < 4 {
                return bad("k must be even and at least 4");
            }
            (
                ratio(6 * pi - 3, 3 * pi - 1),
                ratio(6 * pi + 3, 3 * pi + 2),
                4 * b - 2 * a,
                k * ((3 * pi - 1) * a - (6 * pi - 3) * b) + 2 * b,
                3 * p.k / 2,
            )
        }
        4 => {
            if p.k % 2 == 0 || p.k < 5 {
                return bad("k must be odd and at least 5");
            }
            (
                ratio(6 * pi - 4, 2 * pi - 1),
                ratio(6 * pi + 2, 2 * pi + 1),
                3 * b - a,
                k * ((2 * pi - 1) * a - (6 * pi - 4) * b) + b,
                2 * p.k,
            )
        }
        _ => return bad("delta must be 3 or 4"),
    };
    if p.ratio < lo || p.ratio >= hi {
        return bad("ratio does not match p");
    }
    if modulus <= 0 || num.mod_floor(&modulus) != 0 || num / modulus != p.t as i64 {
        return bad("t does not match the closed form");
    }
    if p.t > max_t {
        return bad("t out of range");
    }
    if p.clique_size < p.delta + 1 {
        return bad("clique too small");
    }
    Ok(())
}

/// Attaches `per_vertex` pendant edges from each internal vertex to fresh
/// clique vertices, lowest labels first.
fn attach(
    gadget: &Graph,
    internal: &[usize],
    clique_size: usize,
    per_vertex: usize,
) -> Result<(Graph, Range<usize>), ConstructionError> {
    let needed = internal.len() * per_vertex;
    if needed > clique_size {
        return Err(ConstructionError::CliqueExhausted { size: clique_size, needed });
    }
    let base = gadget.n();
    let g = disjoint_union(&[gadget.clone(), Graph::complete(clique_size)]);
    let mut next = base;
    let mut pendants = Vec::with_capacity(needed);
    for &v in internal {
        for _ in 0..per_vertex {
            pendants.push((v, next));
            next += 1;
        }
    }
    Ok((g.with_edges(pendants), base..base + clique_size))
}

fn schedule_for(g: &Graph, longer: &[Edge], p: usize) -> BTreeMap<Edge, usize> {
    let mut s: BTreeMap<Edge, usize> = g.edges().into_iter().map(|e| (e, p)).collect();
    for e in longer {
        *s.get_mut(e).expect("edge of g") = p + 1;
    }
    s
}

fn build_subdivided(params: &ConstructionParams) -> Result<Construction, ConstructionError> {
    check_params(params)?;
    let (k, p, t, delta) = (params.k, params.p, params.t, params.delta);
    let norm = |u: usize, v: usize| crate::graph::edge(u % k, v % k);
    // First class is subdivided before the second; labels follow the smaller
    // endpoint along the cycle.
    let (base, first, second): (Graph, Vec<Edge>, Vec<Edge>) = match delta {
        3 => (
            circulant(k, &[1, k / 2])?,
            (0..k / 2).map(|i| norm(i, i + k / 2)).collect(),
            (0..k).map(|i| norm(i, i + 1)).collect(),
        ),
        _ => (
            circulant(k, &[1, 2])?,
            (0..k).map(|i| norm(i, i + 1)).collect(),
            (0..k).map(|i| norm(i, i + 2)).collect(),
        ),
    };
    let longer: Vec<Edge> = if t <= first.len() {
        spread(first.len(), t).into_iter().map(|i| first[i]).collect()
    } else {
        first.iter().copied().chain(spread(second.len(), t - first.len()).into_iter().map(|i| second[i])).collect()
    };
    let (gadget, groups) = subdivide(&base, &schedule_for(&base, &longer, p))?;
    let internal: Vec<usize> = groups.iter().flat_map(|g| g.internal.iter().copied()).collect();
    let per_vertex = if delta == 3 { 1 } else { 2 };
    let (graph, clique) = attach(&gadget, &internal, params.clique_size, per_vertex)?;
    let mut internal = internal;
    internal.sort_unstable();
    Ok(Construction {
        family: if delta == 3 { "delta3" } else { "delta4" },
        graph,
        params: Some(params.clone()),
        witness: (0..gadget.n()).collect(),
        predicted_gamma: predicted_gamma(delta, k, p, t),
        internal_vertices: internal,
        clique,
    })
}

/// Subdivided Möbius ladder with one pendant per subdivision vertex.
pub fn build_delta3(params: &ConstructionParams) -> Result<Construction, ConstructionError> {
    if params.delta != 3 {
        return Err(ConstructionError::InvalidParams("delta must be 3".into()));
    }
    build_subdivided(params)
}

/// Subdivided squared cycle with two pendants per subdivision vertex.
pub fn build_delta4(params: &ConstructionParams) -> Result<Construction, ConstructionError> {
    if params.delta != 4 {
        return Err(ConstructionError::InvalidParams("delta must be 4".into()));
    }
    build_subdivided(params)
}

/// `δ`-regular circulant on `k` vertices containing the Hamilton cycle `0..k`.
pub fn sparse_family(delta: usize, k: usize) -> Result<Construction, ConstructionError> {
    if delta < 2 {
        return Err(ConstructionError::Infeasible { delta, k, reason: "delta must be at least 2" });
    }
    if k < delta + 1 {
        return Err(ConstructionError::Infeasible { delta, k, reason: "k must exceed delta" });
    }
    if delta % 2 == 1 && k % 2 == 1 {
        return Err(ConstructionError::Infeasible { delta, k, reason: "odd degree needs even order" });
    }
    let mut gens: Vec<usize> = (1..=delta / 2).collect();
    if delta % 2 == 1 {
        gens.push(k / 2);
    }
    let graph = circulant(k, &gens)?;
    Ok(Construction {
        family: "sparse",
        witness: (0..k).collect(),
        predicted_gamma: ratio(delta as i64, 2) - ratio(1, k as i64),
        graph,
        params: None,
        internal_vertices: vec![],
        clique: k..k,
    })
}

/// Options for the expander-plus-clique family.
#[derive(Clone, Debug)]
pub struct HighDeltaOptions {
    pub seed: u64,
    pub expander_check: bool,
    /// Defaults to `3k + δ + 2`.
    pub clique_size: Option<usize>,
    pub max_attempts: usize,
}

impl Default for HighDeltaOptions {
    fn default() -> Self {
        HighDeltaOptions { seed: 0, expander_check: true, clique_size: None, max_attempts: DEFAULT_RESAMPLE_CAP }
    }
}

/// `t = k(a/b − δ/2) + 1`.
pub fn high_delta_t(delta: usize, x: &Rational, k: usize) -> Rational {
    int(k as i64) * (x - ratio(delta as i64, 2)) + int(1)
}

/// Random `δ`-regular `G` on `k` vertices plus a clique, with pendant edges
/// from `G`'s first `t` vertices to distinct clique vertices.
pub fn build_high_delta(
    delta: usize,
    x: &Rational,
    k: usize,
    opts: &HighDeltaOptions,
) -> Result<Construction, ConstructionError> {
    let bad = |s: &str| ConstructionError::InvalidParams(s.to_string());
    if delta < 6 {
        return Err(bad("delta must be at least 6"));
    }
    let half = ratio(delta as i64, 2);
    if *x < half || *x > &half + ratio(1, 2) {
        return Err(ConstructionError::RatioOutOfRange { delta, ratio: format_rational(x) });
    }
    let b = x.denom().to_usize().ok_or_else(|| bad("ratio too large"))?;
    if k % 2 == 1 || k % b != 0 || k <= delta {
        return Err(bad("k must be an even multiple of b and exceed delta"));
    }
    let t = high_delta_t(delta, x, k);
    if !t.is_integer() || t <= Rational::zero() || t > ratio(k as i64, 2) + int(1) {
        return Err(bad("t must be an integer in (0, k/2 + 1]"));
    }
    let t = t.to_integer().to_usize().expect("small");
    let alphas = [ratio(1, 10), ratio(1, 2), ratio(t as i64, k as i64)];
    let (g, _) = sample_regular_where(delta, k, opts.seed, opts.max_attempts, |g| {
        !opts.expander_check
            || alphas.iter().all(|a| {
                let target = ratio(201, 100) * (int(1) - a);
                match i_alpha_exact(g, a) {
                    Ok(r) => r.value > target,
                    // No admissible set: the condition is vacuous.
                    Err(ExpanderError::NoAdmissibleSet) => true,
                    Err(_) => false,
                }
            })
    })?;
    let clique_size = opts.clique_size.unwrap_or(3 * k + delta + 2);
    let internal: Vec<usize> = (0..t).collect();
    let (graph, clique) = attach(&g, &internal, clique_size, 1)?;
    Ok(Construction {
        family: "high-delta",
        graph,
        params: Some(ConstructionParams { delta, ratio: x.clone(), k, p: 0, t, clique_size }),
        witness: (0..k).collect(),
        predicted_gamma: ratio((delta * k / 2 + t - 1) as i64, k as i64),
        internal_vertices: vec![],
        clique,
    })
}

/// The 7-vertex circulant `C_7^2` plus the chord `{0, 3}`: 15 edges.
pub fn counterexample_core() -> Graph {
    circulant(7, &[1, 2]).expect("valid").with_edge(0, 3)
}

/// `H ⊔ K_small ⊔ K_big` with pendant edges from the first two small-clique
/// vertices to the first two (distinct) big-clique vertices.
///
/// Labels: `H` is `0..7`, `K_small` follows, then `K_big`.
pub fn counterexample_15_7(clique_small: usize, clique_big: usize) -> Result<Construction, ConstructionError> {
    if clique_small < 2 || clique_big < clique_small {
        return Err(ConstructionError::InvalidParams("need 2 <= clique_small <= clique_big".into()));
    }
    let h = counterexample_core();
    let s0 = 7;
    let b0 = 7 + clique_small;
    let graph = disjoint_union(&[h, Graph::complete(clique_small), Graph::complete(clique_big)])
        .with_edges([(s0, b0), (s0 + 1, b0 + 1)]);
    Ok(Construction {
        family: "counterexample",
        graph,
        params: None,
        witness: (0..7).collect(),
        predicted_gamma: int(2),
        internal_vertices: vec![],
        clique: b0..b0 + clique_big,
    })
}

/// Host `G_i`: `K_{small+big}` plus `i` copies of `C_7^2`, copy `j` joined to
/// the clique by the edge from its vertex 0 to clique vertex `j mod (small+big)`.
pub fn counterexample_host(i: usize, clique_small: usize, clique_big: usize) -> Graph {
    let n0 = clique_small + clique_big;
    let c = circulant(7, &[1, 2]).expect("valid");
    let mut parts = vec![Graph::complete(n0)];
    parts.extend(std::iter::repeat_n(c, i));
    let g = disjoint_union(&parts);
    g.with_edges((0..i).map(|j| (j % n0, n0 + 7 * j)))
}

/// Closed-form counts of the host family.
pub fn counterexample_family(clique_small: usize, clique_big: usize) -> LinearFamily {
    let n0 = clique_small + clique_big;
    LinearFamily { base_vertices: n0, base_edges: n0 * (n0 - 1) / 2, step_vertices: 7, step_edges: 15 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{gamma_min_brute, gamma_of_set};

    #[test]
    fn spread_examples() {
        assert_eq!(spread(4, 2), vec![0, 2]);
        assert_eq!(spread(4, 0), Vec::<usize>::new());
        assert_eq!(spread(5, 5), vec![0, 1, 2, 3, 4]);
        // round(i·8/3) = 0, 3 (2.67), 5 (5.33)
        assert_eq!(spread(8, 3), vec![0, 3, 5]);
    }

    #[test]
    fn solve_params_examples() {
        let p = solve_params(3, &ratio(3, 2), 8).unwrap();
        assert_eq!((p.k, p.p, p.t), (8, 1, 2));
        let p = solve_params(3, &ratio(7, 4), 8).unwrap();
        assert_eq!((p.p, p.t), (1, p.k + 4));
        let p = solve_params(4, &int(2), 9).unwrap();
        assert_eq!((p.k, p.p, p.t), (9, 1, 1));
        let p = solve_params(3, &ratio(8, 5), 8).unwrap();
        assert_eq!((p.k, p.t), (10, 5));
        assert!(solve_params(3, &int(2), 8).is_err());
        assert!(solve_params(4, &ratio(3, 2), 9).is_err());
        // p = 2 regime: [9/5, 15/8)
        let p = solve_params(3, &ratio(11, 6), 8).unwrap();
        assert_eq!(p.p, 2);
    }

    #[test]
    fn gadget_counts_match_formulas() {
        for (delta, x) in [(3, ratio(3, 2)), (3, ratio(8, 5)), (3, ratio(7, 4)), (4, int(2)), (4, ratio(7, 3)), (4, ratio(5, 2))] {
            let params = solve_params(delta, &x, 8).unwrap();
            let c = build_subdivided(&params).unwrap();
            assert_eq!(c.witness.len(), gadget_vertices(delta, params.k, params.p, params.t));
            assert_eq!(crate::extremal::m_f(&c.graph, &c.witness), gadget_edges(delta, params.k, params.p, params.t));
            assert_eq!(gamma_of_set(&c.graph, &c.witness), x);
            assert_eq!(c.predicted_gamma, x);
            assert_eq!(c.graph.min_degree(), delta);
        }
    }

    #[test]
    fn smallest_delta3_gadget() {
        let p = solve_params(3, &ratio(3, 2), 8).unwrap();
        let c = build_delta3(&p).unwrap();
        assert_eq!(c.witness.len(), 10);
        assert_eq!(c.internal_vertices, vec![8, 9]);
    }

    #[test]
    fn sparse_examples() {
        let c = sparse_family(3, 8).unwrap();
        assert_eq!(gamma_min_brute(&c.graph).unwrap().value, ratio(11, 8));
        let c = sparse_family(2, 5).unwrap();
        assert_eq!(c.graph, Graph::cycle(5));
        assert_eq!(gamma_min_brute(&c.graph).unwrap().value, ratio(4, 5));
        assert!(matches!(sparse_family(3, 7), Err(ConstructionError::Infeasible { .. })));
    }

    #[test]
    fn counterexample_shape() {
        let c = counterexample_15_7(7, 100).unwrap();
        assert_eq!(c.graph.n(), 114);
        assert_eq!(c.graph.edge_count(), 15 + 21 + 4950 + 2);
        assert_eq!(crate::extremal::m_f(&c.graph, &c.witness), 15);
        assert_eq!(c.graph.min_degree(), 4);
        let fam = counterexample_family(7, 100);
        for i in 0..4 {
            let g = counterexample_host(i, 7, 100);
            assert_eq!((g.n(), g.edge_count()), fam.at(i));
        }
        assert_eq!(fam.limit_density(), ratio(15, 7));
    }

    #[test]
    fn high_delta_t_values() {
        assert_eq!(high_delta_t(6, &int(3), 20), int(1));
        assert_eq!(high_delta_t(6, &ratio(7, 2), 20), int(11));
        let c = build_high_delta(6, &ratio(13, 4), 16, &HighDeltaOptions { expander_check: false, ..Default::default() })
            .unwrap();
        assert_eq!(c.params.as_ref().unwrap().t, 5);
        assert_eq!(gamma_of_set(&c.graph, &c.witness), ratio(13, 4));
        assert_eq!(c.graph.min_degree(), 6);
    }
}
