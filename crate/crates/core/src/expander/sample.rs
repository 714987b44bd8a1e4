//! Configuration-model sampling and exact isoperimetric numbers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ExpanderError;
use crate::graph::Graph;
use crate::rational::{ratio, Rational};

pub const DEFAULT_IALPHA_CAP: usize = 26;
pub const DEFAULT_RESAMPLE_CAP: usize = 10_000;
const SIMPLE_REDRAW_FACTOR: usize = 10_000;

/// A perfect matching on `r·n` half-edges; half-edge `h` belongs to vertex `h / r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub r: usize,
    pub n: usize,
    pub pairing: Vec<(usize, usize)>,
    /// The projected graph, when it has no loops or multiple edges.
    pub graph: Option<Graph>,
}

impl Configuration {
    fn from_rng<R: Rng>(r: usize, n: usize, rng: &mut R) -> Self {
        let mut half: Vec<usize> = (0..r * n).collect();
        half.shuffle(rng);
        let pairing: Vec<(usize, usize)> = half.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        let mut g = Graph::empty(n);
        let mut simple = true;
        for &(a, b) in &pairing {
            let (u, v) = (a / r, b / r);
            if u == v || g.has_edge(u, v) {
                simple = false;
                break;
            }
            g.insert_edge(u, v);
        }
        Configuration { r, n, pairing, graph: simple.then_some(g) }
    }
}

/// One uniform configuration from a seeded ChaCha8 stream.
pub fn sample_configuration(r: usize, n: usize, seed: u64) -> Result<Configuration, ExpanderError> {
    if r * n % 2 == 1 {
        return Err(ExpanderError::OddDegreeSum(r * n));
    }
    Ok(Configuration::from_rng(r, n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Resamples from one seeded stream until `accept` holds for a simple projection.
///
/// `max_attempts` bounds the simple graphs offered to `accept`; non-simple
/// pairings are redrawn and only count against a much larger internal cap.
/// Returns the graph and the number of simple graphs drawn.
pub fn sample_regular_where(
    r: usize,
    n: usize,
    seed: u64,
    max_attempts: usize,
    mut accept: impl FnMut(&Graph) -> bool,
) -> Result<(Graph, usize), ExpanderError> {
    if r * n % 2 == 1 {
        return Err(ExpanderError::OddDegreeSum(r * n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairings = 0usize;
    let pairing_cap = max_attempts.saturating_mul(SIMPLE_REDRAW_FACTOR);
    for attempt in 1..=max_attempts {
        let g = loop {
            if pairings >= pairing_cap {
                return Err(ExpanderError::SamplingExhausted(max_attempts));
            }
            pairings += 1;
            if let Some(g) = Configuration::from_rng(r, n, &mut rng).graph {
                break g;
            }
        };
        if accept(&g) {
            return Ok((g, attempt));
        }
    }
    Err(ExpanderError::SamplingExhausted(max_attempts))
}

/// Uniform simple `r`-regular graph on `n` vertices.
pub fn sample_regular(r: usize, n: usize, seed: u64) -> Result<Graph, ExpanderError> {
    sample_regular_where(r, n, seed, DEFAULT_RESAMPLE_CAP, |_| true).map(|(g, _)| g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IAlpha {
    pub value: Rational,
    /// Sorted.
    pub witness: Vec<usize>,
}

/// `(boundary, size, mask)`, compared by ratio, then size, then lexicographic set.
type Cand = (i64, i64, u32);

fn better(a: Cand, b: Cand) -> bool {
    let (l, r) = (a.0 * b.1, b.0 * a.1);
    if l != r {
        return l < r;
    }
    if a.1 != b.1 {
        return a.1 < b.1;
    }
    let diff = a.2 ^ b.2;
    diff != 0 && a.2 & (diff & diff.wrapping_neg()) != 0
}

struct Enum<'a> {
    adj: &'a [u32],
    deg: &'a [i64],
    n: usize,
    limit: i64,
    best: Option<Cand>,
}

impl Enum<'_> {
    fn dfs(&mut self, mask: u32, size: i64, x: i64, next: usize) {
        let cand = (x, size, mask);
        if self.best.is_none_or(|b| better(cand, b)) {
            self.best = Some(cand);
        }
        if size == self.limit {
            return;
        }
        for j in next..self.n {
            let inside = (self.adj[j] & mask).count_ones() as i64;
            self.dfs(mask | 1 << j, size + 1, x + self.deg[j] - 2 * inside, j + 1);
        }
    }
}

/// Exact `min x(S)/|S|` over nonempty `S` with `|S| <= α·n`, where `x(S)` counts
/// edges leaving `S`.
pub fn i_alpha_exact(g: &Graph, alpha: &Rational) -> Result<IAlpha, ExpanderError> {
    i_alpha_capped(g, alpha, DEFAULT_IALPHA_CAP)
}

pub fn i_alpha_capped(g: &Graph, alpha: &Rational, cap: usize) -> Result<IAlpha, ExpanderError> {
    let n = g.n();
    if n > cap.min(31) {
        return Err(ExpanderError::CapExceeded { n, cap });
    }
    let limit = (alpha * Rational::from_integer(n.into())).floor().to_integer();
    let limit: i64 = i64::try_from(limit.min(n.into())).unwrap_or(0);
    if limit < 1 {
        return Err(ExpanderError::NoAdmissibleSet);
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0, |a, w| a | 1 << w)).collect();
    let deg: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut e = Enum { adj: &adj, deg: &deg, n, limit, best: None };
            e.dfs(1 << i, 1, deg[i], i + 1);
            e.best.expect("singleton visited")
        })
        .reduce_with(|a, b| if better(b, a) { b } else { a })
        .expect("n >= 1");
    Ok(IAlpha {
        value: ratio(best.0, best.1),
        witness: (0..n).filter(|&i| best.2 >> i & 1 == 1).collect(),
    })
}
