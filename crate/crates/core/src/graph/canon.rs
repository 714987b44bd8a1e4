//! Canonical labeling for small graphs (at most 16 vertices).
//!
//! Vertices are first split by color refinement, then every labeling that
//! respects the refined cells is searched with prefix pruning. Exponential in
//! the worst case, which is fine at the sizes used for deduplication.

use super::Graph;

pub const MAX_CANON_N: usize = 16;

/// Isomorphism-invariant key: vertex count plus the maximal adjacency code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u128,
}

/// Bit position of pair `(i, j)`, `i < j`, in column-major upper-triangle order.
#[inline]
fn bit_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// Ordered cells from color refinement. The order depends only on the
/// isomorphism class.
pub fn refined_cells(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut color: Vec<usize> = g.degrees();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
        }
        let before = color.iter().collect::<std::collections::BTreeSet<_>>().len();
        let after = if n == 0 { 0 } else { c + 1 };
        color = next;
        if after == before {
            break;
        }
    }
    let classes = color.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells
}

struct Search<'a> {
    g: &'a Graph,
    slots: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    cells: Vec<Vec<usize>>,
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    /// Code bits contributed by column `j` given the vertices at positions `0..=j`.
    fn column(&self, j: usize) -> u128 {
        let vj = self.placed[j];
        let mut c = 0u128;
        for i in 0..j {
            if self.g.has_edge(self.placed[i], vj) {
                c |= 1 << bit_index(i, j);
            }
        }
        c
    }

    fn run(&mut self, pos: usize, code: u128) {
        let n = self.g.n();
        if pos > 1 {
            // Bits up to column pos-1 are final; compare against the best prefix.
            if let Some((best, _)) = &self.best {
                let width = bit_index(0, pos);
                let mask = if width >= 128 { u128::MAX } else { (1u128 << width) - 1 };
                let (a, b) = (rev_prefix(code & mask, width), rev_prefix(best & mask, width));
                if a < b {
                    return;
                }
            }
        }
        if pos == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => rev_prefix(code, bit_index(0, n)) > rev_prefix(*b, bit_index(0, n)),
            };
            if better {
                self.best = Some((code, self.placed.clone()));
            }
            return;
        }
        let cell = self.slots[pos];
        for idx in 0..self.cells[cell].len() {
            let v = self.cells[cell][idx];
            if self.used[v] {
                continue;
            }
            self.used[v] = true;
            self.placed.push(v);
            let c = code | self.column(pos);
            self.run(pos + 1, c);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}

/// Reverses the low `width` bits so that earlier columns are more significant.
fn rev_prefix(x: u128, width: usize) -> u128 {
    if width == 0 {
        return 0;
    }
    x.reverse_bits() >> (128 - width)
}

/// Canonical relabeling: `perm[v]` is the new label of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n > MAX_CANON_N {
        return None;
    }
    let cells = refined_cells(g);
    let slots = cells
        .iter()
        .enumerate()
        .flat_map(|(i, c)| std::iter::repeat(i).take(c.len()))
        .collect();
    let mut s = Search { g, slots, placed: Vec::new(), used: vec![false; n], cells, best: None };
    s.run(0, 0);
    let order = s.best.map_or_else(Vec::new, |(_, p)| p);
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Some(perm)
}

/// Canonical form, or `None` above [`MAX_CANON_N`] vertices.
pub fn canonical_form(g: &Graph) -> Option<CanonicalForm> {
    let perm = canonical_labeling(g)?;
    let h = g.relabel(&perm);
    let mut code = 0u128;
    for (u, v) in h.edges() {
        code |= 1 << bit_index(u, v);
    }
    Some(CanonicalForm { n: g.n(), code })
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Option<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Some(false);
    }
    Some(canonical_form(a)? == canonical_form(b)?)
}
