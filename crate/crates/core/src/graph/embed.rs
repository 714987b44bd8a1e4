//! Subgraph embeddings whose image must contain a given host edge.
//!
//! The search seeds the forced host edge as the image of one pattern edge per
//! twin orbit, then extends vertex by vertex. Twins (vertices with equal open or
//! closed neighborhoods) are interchangeable, so a class of twins is filled last
//! with increasing images, guarded by a Hall-type capacity check over all
//! pending classes. This keeps patterns containing large cliques cheap.

use std::collections::HashMap;

use super::{edge, Bitset, Edge, Graph};

const NONE: usize = usize::MAX;

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Host vertices in the image, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    /// Host edges that are images of pattern edges, sorted.
    pub fn image_edges(&self, pattern: &Graph) -> Vec<Edge> {
        let mut es: Vec<Edge> = pattern
            .edges()
            .into_iter()
            .map(|(a, b)| edge(self.map[a], self.map[b]))
            .collect();
        es.sort_unstable();
        es
    }

    /// Checks injectivity and that every pattern edge lands on a host edge.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&x| x >= host.n()) {
            return false;
        }
        let mut seen = Bitset::new(host.n());
        for &x in &self.map {
            if seen.contains(x) {
                return false;
            }
            seen.insert(x);
        }
        pattern.edges().into_iter().all(|(a, b)| host.has_edge(self.map[a], self.map[b]))
    }

    /// Whether some pattern edge maps onto `e`.
    pub fn covers(&self, pattern: &Graph, e: Edge) -> bool {
        pattern
            .edges()
            .into_iter()
            .any(|(a, b)| edge(self.map[a], self.map[b]) == edge(e.0, e.1))
    }
}

#[derive(Clone, Debug)]
struct TwinClass {
    members: Vec<usize>,
}

/// Pattern preprocessed for repeated forced-edge queries.
#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Graph,
    nbrs: Vec<Vec<usize>>,
    deg: Vec<usize>,
    classes: Vec<TwinClass>,
    seeds: Vec<(usize, usize)>,
    degree_levels: Vec<usize>,
    by_degree: Vec<usize>,
}

impl Matcher {
    pub fn new(pattern: &Graph) -> Self {
        let n = pattern.n();
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| pattern.neighbors(v).collect()).collect();
        let deg: Vec<usize> = nbrs.iter().map(Vec::len).collect();

        // True twins first; a vertex cannot also have a false twin then.
        let mut class_of = vec![NONE; n];
        let mut classes: Vec<TwinClass> = Vec::new();
        for closed in [true, false] {
            let mut groups: HashMap<Bitset, Vec<usize>> = HashMap::new();
            for v in (0..n).filter(|&v| class_of[v] == NONE) {
                let mut key = pattern.neighbor_set(v).clone();
                if closed {
                    key.insert(v);
                }
                groups.entry(key).or_default().push(v);
            }
            let mut groups: Vec<Vec<usize>> = groups.into_values().filter(|g| g.len() > 1).collect();
            groups.sort();
            for members in groups {
                for &v in &members {
                    class_of[v] = classes.len();
                }
                classes.push(TwinClass { members });
            }
        }
        for v in 0..n {
            if class_of[v] == NONE {
                class_of[v] = classes.len();
                classes.push(TwinClass { members: vec![v] });
            }
        }

        // One seed per orbit of pattern edges under twin swaps.
        let rep = |v: usize| classes[class_of[v]].members[0];
        let mut seeds = Vec::new();
        for (a, b) in pattern.edges() {
            let (ca, cb) = (class_of[a], class_of[b]);
            if ca == cb {
                let m = &classes[ca].members;
                seeds.push((m[0], m[1]));
            } else {
                seeds.push((rep(a), rep(b)));
                seeds.push((rep(b), rep(a)));
            }
        }
        let mut seen = std::collections::HashSet::new();
        seeds.retain(|s| seen.insert(*s));

        let mut degree_levels = deg.clone();
        degree_levels.sort_unstable();
        degree_levels.dedup();

        let mut by_degree: Vec<usize> = (0..n).collect();
        by_degree.sort_by_key(|&v| std::cmp::Reverse(deg[v]));

        Matcher { pattern: pattern.clone(), nbrs, deg, classes, seeds, degree_levels, by_degree }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// First embedding (in seed order, then search order) whose image contains
    /// the host edge `forced`. `None` if `forced` is not a host edge.
    pub fn find(&self, host: &Graph, forced: Edge) -> Option<Embedding> {
        let (x, y) = forced;
        if !host.has_edge(x, y) || self.pattern.n() > host.n() {
            return None;
        }
        let mut at_least: HashMap<usize, Bitset> = HashMap::new();
        for &d in &self.degree_levels {
            let mut s = Bitset::new(host.n());
            for v in (0..host.n()).filter(|&v| host.degree(v) >= d) {
                s.insert(v);
            }
            at_least.insert(d, s);
        }
        let twin_id = host_twins(host);
        let mut host_by_degree: Vec<usize> = (0..host.n()).collect();
        host_by_degree.sort_by_key(|&v| std::cmp::Reverse(host.degree(v)));
        for &(a, b) in &self.seeds {
            let ok = |p: usize, h: usize| host.degree(h) >= self.deg[p];
            if !ok(a, x) || !ok(b, y) {
                continue;
            }
            let mut st = State::new(self, host, &at_least, &host_by_degree, &twin_id, a, b, x, y);
            if st.search() {
                return Some(Embedding { map: st.map });
            }
        }
        None
    }
}

/// Convenience wrapper building a [`Matcher`] for one query.
pub fn find_new_copy(pattern: &Graph, host: &Graph, forced: Edge) -> Option<Embedding> {
    Matcher::new(pattern).find(host, forced)
}

/// Host twin class of each vertex. Swapping two unused twins fixes any partial
/// map, so only the first of them needs trying.
fn host_twins(host: &Graph) -> Vec<usize> {
    let n = host.n();
    let mut id = vec![NONE; n];
    let mut next = 0;
    for closed in [true, false] {
        let mut groups: HashMap<Bitset, Vec<usize>> = HashMap::new();
        for v in (0..n).filter(|&v| id[v] == NONE) {
            let mut key = host.neighbor_set(v).clone();
            if closed {
                key.insert(v);
            }
            groups.entry(key).or_default().push(v);
        }
        for g in groups.into_values().filter(|g| g.len() > 1 || !closed) {
            for v in g {
                id[v] = next;
            }
            next += 1;
        }
    }
    id
}

struct Deferred {
    rep: usize,
    pending: Vec<usize>,
    last: Option<usize>,
}

struct State<'a> {
    m: &'a Matcher,
    host: &'a Graph,
    at_least: &'a HashMap<usize, Bitset>,
    host_by_degree: &'a [usize],
    twin_id: &'a [usize],
    map: Vec<usize>,
    used: Bitset,
    unmapped: usize,
    free: Vec<usize>,
    deferred: Vec<Deferred>,
}

impl<'a> State<'a> {
    fn new(
        m: &'a Matcher,
        host: &'a Graph,
        at_least: &'a HashMap<usize, Bitset>,
        host_by_degree: &'a [usize],
        twin_id: &'a [usize],
        a: usize,
        b: usize,
        x: usize,
        y: usize,
    ) -> Self {
        let n = m.pattern.n();
        let mut st = State {
            m,
            host,
            at_least,
            host_by_degree,
            twin_id,
            map: vec![NONE; n],
            used: Bitset::new(host.n()),
            unmapped: n,
            free: Vec::new(),
            deferred: Vec::new(),
        };
        st.assign(a, x);
        st.assign(b, y);
        for class in &m.classes {
            let pending: Vec<usize> =
                class.members.iter().copied().filter(|&v| v != a && v != b).collect();
            match pending.len() {
                0 => {}
                1 => st.free.push(pending[0]),
                _ => st.deferred.push(Deferred { rep: pending[0], pending, last: None }),
            }
        }
        st
    }

    fn assign(&mut self, p: usize, h: usize) {
        self.map[p] = h;
        self.used.insert(h);
        self.unmapped -= 1;
    }

    fn unassign(&mut self, p: usize) {
        self.used.remove(self.map[p]);
        self.map[p] = NONE;
        self.unmapped += 1;
    }

    /// Candidate images for `p`, plus how many of its neighbors are mapped.
    fn domain(&self, p: usize) -> (Bitset, usize) {
        let mut d = self.at_least[&self.m.deg[p]].clone();
        let mut mapped = 0;
        for &q in &self.m.nbrs[p] {
            if self.map[q] != NONE {
                d.intersect_with(self.host.neighbor_set(self.map[q]));
                mapped += 1;
            }
        }
        d.difference_with(&self.used);
        (d, mapped)
    }

    fn class_domain(&self, c: &Deferred) -> Bitset {
        let mut d = self.domain(c.rep).0;
        if let Some(l) = c.last {
            d.retain_after(l);
        }
        d
    }

    /// Unmapped pattern degrees must be dominated, in sorted order, by the
    /// degrees of unused host vertices.
    fn degrees_ok(&self) -> bool {
        let mut hosts = self.host_by_degree.iter().filter(|&&h| !self.used.contains(h));
        for &p in self.m.by_degree.iter().filter(|&&p| self.map[p] == NONE) {
            match hosts.next() {
                Some(&h) if self.host.degree(h) >= self.m.deg[p] => {}
                _ => return false,
            }
        }
        true
    }

    /// Hall's condition for assigning pending twins to distinct host vertices.
    fn capacity_ok(&self) -> bool {
        let active: Vec<(Bitset, usize)> = self
            .deferred
            .iter()
            .filter(|c| !c.pending.is_empty())
            .map(|c| (self.class_domain(c), c.pending.len()))
            .collect();
        if active.iter().any(|(d, need)| d.len() < *need) {
            return false;
        }
        let k = active.len();
        if k < 2 {
            return true;
        }
        let subsets: Box<dyn Iterator<Item = u32>> = if k <= 10 {
            Box::new(1..1u32 << k)
        } else {
            Box::new(std::iter::once((1u32 << 10) - 1))
        };
        for mask in subsets {
            if mask.count_ones() < 2 {
                continue;
            }
            let mut union = Bitset::new(self.host.n());
            let mut need = 0;
            for (i, (d, c)) in active.iter().enumerate().take(10) {
                if mask >> i & 1 == 1 {
                    union.union_with(d);
                    need += c;
                }
            }
            if k > 10 {
                for (d, c) in &active[10..] {
                    union.union_with(d);
                    need += c;
                }
            }
            if union.len() < need {
                return false;
            }
        }
        true
    }

    fn search(&mut self) -> bool {
        if self.unmapped == 0 {
            return true;
        }
        if self.host.n() - self.used.len() < self.unmapped || !self.degrees_ok() || !self.capacity_ok() {
            return false;
        }

        // Singleton vertices: most constrained frontier vertex first.
        let mut best: Option<(usize, Bitset, usize)> = None;
        for (i, &p) in self.free.iter().enumerate() {
            if self.map[p] != NONE {
                continue;
            }
            let (d, mapped) = self.domain(p);
            if mapped == 0 {
                continue;
            }
            if d.is_empty() {
                return false;
            }
            let better = match &best {
                None => true,
                Some((j, bd, bm)) => {
                    let q = self.free[*j];
                    (d.len(), std::cmp::Reverse(mapped), std::cmp::Reverse(self.m.deg[p]), p)
                        < (bd.len(), std::cmp::Reverse(*bm), std::cmp::Reverse(self.m.deg[q]), q)
                }
            };
            if better {
                best = Some((i, d, mapped));
            }
        }
        if best.is_none() {
            // Start a new component at its highest-degree vertex.
            let start = self
                .free
                .iter()
                .enumerate()
                .filter(|(_, &p)| self.map[p] == NONE)
                .max_by_key(|(_, &p)| (self.m.deg[p], std::cmp::Reverse(p)));
            if let Some((i, &p)) = start {
                best = Some((i, self.domain(p).0, 0));
            }
        }
        if let Some((i, d, _)) = best {
            let p = self.free[i];
            let mut tried = Vec::new();
            for h in d.iter() {
                if tried.contains(&self.twin_id[h]) {
                    continue;
                }
                tried.push(self.twin_id[h]);
                self.assign(p, h);
                if self.search() {
                    return true;
                }
                self.unassign(p);
            }
            return false;
        }

        // Twin classes: tightest class first, images increasing within a class.
        let (ci, dom) = self
            .deferred
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.pending.is_empty())
            .map(|(i, c)| (i, self.class_domain(c)))
            .min_by_key(|(i, d)| (d.len() - self.deferred[*i].pending.len(), *i))
            .expect("unmapped vertices remain");
        let p = self.deferred[ci].pending[0];
        let prev_last = self.deferred[ci].last;
        let mut tried = Vec::new();
        for h in dom.iter() {
            if tried.contains(&self.twin_id[h]) {
                continue;
            }
            tried.push(self.twin_id[h]);
            self.assign(p, h);
            let c = &mut self.deferred[ci];
            c.pending.remove(0);
            c.last = Some(h);
            if !c.pending.is_empty() {
                c.rep = c.pending[0];
            }
            if self.search() {
                return true;
            }
            let c = &mut self.deferred[ci];
            c.pending.insert(0, p);
            c.rep = p;
            c.last = prev_last;
            self.unassign(p);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, disjoint_union};

    fn check(pattern: &Graph, host: &Graph, forced: Edge) -> Option<Embedding> {
        let e = find_new_copy(pattern, host, forced);
        if let Some(emb) = &e {
            assert!(emb.is_valid(pattern, host));
            assert!(emb.covers(pattern, forced));
        }
        e
    }

    #[test]
    fn triangle_through_star_center() {
        let host = Graph::star(3).with_edge(1, 2);
        assert!(check(&Graph::complete(3), &host, (1, 2)).is_some());
    }

    #[test]
    fn no_triangle_in_path() {
        assert!(check(&Graph::complete(3), &Graph::path(4), (1, 2)).is_none());
    }

    #[test]
    fn non_edge_is_rejected() {
        assert!(find_new_copy(&Graph::complete(2), &Graph::path(3), (0, 2)).is_none());
    }

    #[test]
    fn complete_into_itself() {
        for n in 2..=8 {
            let k = Graph::complete(n);
            for e in k.edges() {
                assert!(check(&k, &k, e).is_some(), "K_{n} {e:?}");
            }
        }
    }

    #[test]
    fn two_components_need_disjoint_images() {
        let pattern = disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        let host = Graph::complete(5);
        assert!(check(&pattern, &host, (0, 1)).is_none());
        let host = Graph::complete(6);
        assert!(check(&pattern, &host, (0, 1)).is_some());
        let host = disjoint_union(&[Graph::complete(3), Graph::path(3)]);
        assert!(check(&pattern, &host, (0, 1)).is_none());
    }

    #[test]
    fn forced_edge_must_be_used() {
        // K_4 plus a pendant edge: a triangle exists but not through the pendant.
        let host = Graph::complete(4).with_vertices(1).with_edge(3, 4);
        assert!(check(&Graph::complete(3), &host, (3, 4)).is_none());
        assert!(check(&Graph::path(3), &host, (3, 4)).is_some());
    }

    #[test]
    fn clique_with_pendants() {
        // K_7 with two pendant edges into a K_12, inside a K_19 host
        let k7 = Graph::complete(7);
        let k12 = Graph::complete(12);
        let pattern = disjoint_union(&[k7, k12]).with_edges([(0, 7), (1, 8)]);
        let host = Graph::complete(19);
        assert!(check(&pattern, &host, (0, 18)).is_some());
        // Two pendants into the same vertex cannot be matched.
        let host = disjoint_union(&[Graph::complete(7), Graph::complete(12)]).with_edges([(0, 7), (1, 7)]);
        assert!(check(&pattern, &host, (0, 7)).is_none());
    }

    #[test]
    fn circulant_in_complete_host() {
        let h = circulant(7, &[1, 2]).unwrap().with_edge(0, 3);
        let host = Graph::complete(9);
        assert!(check(&h, &host, (2, 8)).is_some());
        assert!(check(&h, &circulant(7, &[1, 2]).unwrap(), (0, 1)).is_none());
    }
}
