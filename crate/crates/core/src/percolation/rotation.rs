use crate::graph::{Edge, Graph};
use crate::rational::Rational;

use super::{ActivationPartition, PercolationError};

pub const DEFAULT_MATCHING_BUDGET: u128 = 1_000_000;

/// One owned edge per part, indexed like the partition's parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AMatching {
    pub edges: Vec<Edge>,
}

/// Number of A-matchings, saturating at `u128::MAX`.
pub fn a_matching_count(ap: &ActivationPartition) -> u128 {
    ap.parts.iter().fold(1u128, |acc, p| acc.saturating_mul(p.owned.len() as u128))
}

/// All A-matchings in lexicographic order of owned-edge indices, the last part
/// varying fastest.
pub fn enumerate_a_matchings(
    ap: &ActivationPartition,
) -> Result<impl Iterator<Item = AMatching> + '_, PercolationError> {
    if let Some(i) = ap.parts.iter().position(|p| p.owned.is_empty()) {
        return Err(PercolationError::NoOwnedEdges(i));
    }
    let mut idx = vec![0usize; ap.parts.len()];
    let mut done = false;
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let m = AMatching {
            edges: ap.parts.iter().zip(&idx).map(|(p, &i)| p.owned[i]).collect(),
        };
        done = true;
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < ap.parts[k].owned.len() {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        Some(m)
    }))
}

fn check_matching(ap: &ActivationPartition, m: &AMatching) -> Result<(), PercolationError> {
    if m.edges.len() != ap.parts.len() {
        return Err(PercolationError::InvalidMatching(format!(
            "{} edges for {} parts",
            m.edges.len(),
            ap.parts.len()
        )));
    }
    for (i, (p, e)) in ap.parts.iter().zip(&m.edges).enumerate() {
        if p.owned.binary_search(e).is_err() {
            return Err(PercolationError::InvalidMatching(format!("part {i} does not own {e:?}")));
        }
    }
    Ok(())
}

/// The augmented host with the matching's edges removed.
pub fn rotate(ap: &ActivationPartition, m: &AMatching) -> Result<Graph, PercolationError> {
    check_matching(ap, m)?;
    let mut g = ap.augmented();
    for &(u, v) in &m.edges {
        g.delete_edge(u, v);
    }
    Ok(g)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Groups of part indices that stay connected after removing any A-matching
/// from the contracted augmented host. Brute force over all matchings.
pub fn rotation_components(
    ap: &ActivationPartition,
    budget: u128,
) -> Result<Vec<Vec<usize>>, PercolationError> {
    let count = a_matching_count(ap);
    if count > budget {
        return Err(PercolationError::BudgetExceeded { count, budget });
    }
    let k = ap.parts.len();
    let part_of = ap.part_of();
    let hat_edges = ap.augmented().edges();
    let mut label = vec![0usize; k];
    for m in enumerate_a_matchings(ap)? {
        let mut removed = m.edges.clone();
        removed.sort_unstable();
        let mut dsu = Dsu((0..k).collect());
        for e in &hat_edges {
            if removed.binary_search(e).is_err() {
                dsu.union(part_of[e.0], part_of[e.1]);
            }
        }
        // Refine: parts stay together only if they share both labels.
        let mut keys: Vec<(usize, usize)> = (0..k).map(|i| (label[i], dsu.find(i))).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, key) in keys.iter_mut().enumerate() {
            label[i] = sorted.binary_search(key).expect("key present");
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut first_of: std::collections::HashMap<usize, usize> = Default::default();
    for (i, &l) in label.iter().enumerate() {
        let g = *first_of.entry(l).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    Ok(groups)
}

/// `owned / size` exactly.
pub fn part_density(size: usize, owned: usize) -> Result<Rational, PercolationError> {
    if size == 0 {
        return Err(PercolationError::EmptyPart);
    }
    Ok(crate::rational::ratio(owned as i64, size as i64))
}
