use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;
use wsatlab::constructions::spread;
use wsatlab::expander::i_alpha_exact;
use wsatlab::extremal::{gamma_min_brute, gamma_min_ratio, m_f};
use wsatlab::graph::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use wsatlab::graph::{circulant, find_new_copy, subdivide, Graph};
use wsatlab::percolation::{
    activation_partition, closure, enumerate_a_matchings, is_weakly_saturated, rotate,
};
use wsatlab::rational::{format_rational, parse_rational, ratio};
use wsatlab::Rational;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Random labeled tree from a Prüfer sequence.
fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |code| {
            let mut degree = vec![1; n];
            for &c in &code {
                degree[c] += 1;
            }
            let mut edges = Vec::new();
            for &c in &code {
                let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, c));
                degree[leaf] -= 1;
                degree[c] -= 1;
            }
            let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Exhaustive search for an embedding using `forced`.
fn brute_embeds(pattern: &Graph, host: &Graph, forced: (usize, usize)) -> bool {
    fn go(p: &Graph, h: &Graph, map: &mut Vec<usize>, forced: (usize, usize)) -> bool {
        let i = map.len();
        if i == p.n() {
            let uses = p.edges().iter().any(|&(a, b)| {
                let (x, y) = (map[a].min(map[b]), map[a].max(map[b]));
                (x, y) == forced
            });
            return uses;
        }
        for v in 0..h.n() {
            if map.contains(&v) {
                continue;
            }
            if (0..i).all(|j| !p.has_edge(i, j) || h.has_edge(v, map[j])) {
                map.push(v);
                if go(p, h, map, forced) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    p_fits(pattern, host) && go(pattern, host, &mut Vec::new(), forced)
}

fn p_fits(p: &Graph, h: &Graph) -> bool {
    p.n() <= h.n()
}

fn patterns() -> Vec<Graph> {
    vec![Graph::complete(3), Graph::path(3), Graph::cycle(4), Graph::star(3), Graph::complete(4).without_edge(0, 1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_agrees_with_exhaustive_search(p in graph(2, 4), h in graph(2, 6), pick in any::<prop::sample::Index>()) {
        let edges = h.edges();
        prop_assume!(!edges.is_empty() && p.edge_count() > 0);
        let forced = edges[pick.index(edges.len())];
        let found = find_new_copy(&p, &h, forced);
        if let Some(e) = &found {
            prop_assert!(e.is_valid(&p, &h));
            prop_assert!(e.covers(&p, forced));
        }
        prop_assert_eq!(found.is_some(), brute_embeds(&p, &h, forced));
    }

    #[test]
    fn subdivide_then_contract(g in graph(1, 10), lens in proptest::collection::vec(1usize..4, 45)) {
        let schedule: BTreeMap<_, _> = g.edges().into_iter().zip(lens).collect();
        let (s, groups) = subdivide(&g, &schedule).unwrap();
        let n = g.n();
        let extra: usize = schedule.values().map(|l| l - 1).sum();
        prop_assert_eq!(s.n(), n + extra);
        prop_assert_eq!(groups.iter().map(|x| x.internal.len()).sum::<usize>(), extra);
        for v in n..s.n() {
            prop_assert_eq!(s.degree(v), 2);
        }
        // Walk every path of internal vertices back to an original vertex.
        let mut contracted = Vec::new();
        for u in 0..n {
            for first in s.neighbors(u) {
                let (mut prev, mut cur) = (u, first);
                while cur >= n {
                    let next = s.neighbors(cur).find(|&w| w != prev).unwrap();
                    prev = cur;
                    cur = next;
                }
                if u < cur {
                    contracted.push((u, cur));
                }
            }
        }
        prop_assert_eq!(Graph::from_edges(n, contracted).unwrap(), g);
    }

    #[test]
    fn circulants_are_regular(k in 3usize..30, gens in proptest::collection::vec(1usize..30, 1..4)) {
        let gens: Vec<usize> = gens.into_iter().map(|g| g % k).filter(|&g| g != 0).collect();
        prop_assume!(!gens.is_empty());
        let c = circulant(k, &gens).unwrap();
        let mut steps: Vec<usize> = gens.iter().flat_map(|&g| [g, k - g]).collect();
        steps.sort_unstable();
        steps.dedup();
        prop_assert!(c.degrees().iter().all(|&d| d == steps.len()));
    }

    #[test]
    fn brute_and_ratio_agree_with_certificate(g in graph(1, 10)) {
        let b = gamma_min_brute(&g).unwrap();
        let r = gamma_min_ratio(&g).unwrap();
        prop_assert_eq!(&b.value, &r.value);
        // min over nonempty S of m(S) - 1 - γ|S| is exactly zero
        let n = g.n();
        let mut best: Option<Rational> = None;
        for mask in 1u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let v = Rational::from_integer((m_f(&g, &s) as i64 - 1).into())
                - &b.value * Rational::from_integer((s.len() as i64).into());
            best = Some(best.map_or(v.clone(), |x: Rational| x.min(v)));
        }
        prop_assert!(best.unwrap().is_zero());
    }

    #[test]
    fn i_alpha_matches_boundary_count(g in graph(2, 10), num in 1i64..=4) {
        let alpha = ratio(num, 4);
        let n = g.n();
        let limit = n as i64 * num / 4;
        prop_assume!(limit >= 1);
        let got = i_alpha_exact(&g, &alpha).unwrap();
        let mut best: Option<Rational> = None;
        for mask in 1u32..1 << n {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if s.len() as i64 > limit {
                continue;
            }
            let inside = g.edges().iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
            let leaving = g.edges().iter().filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count();
            let deg_sum: usize = s.iter().map(|&v| g.degree(v)).sum();
            prop_assert_eq!(leaving, deg_sum - 2 * inside);
            let x = ratio(leaving as i64, s.len() as i64);
            best = Some(best.map_or(x.clone(), |b: Rational| b.min(x)));
        }
        prop_assert_eq!(got.value, best.unwrap());
        let w = &got.witness;
        prop_assert!(!w.is_empty() && w.len() as i64 <= limit);
    }

    #[test]
    fn weak_saturation_is_monotone(g in graph(3, 6), which in 0usize..5, pick in any::<prop::sample::Index>()) {
        let f = &patterns()[which];
        let non = g.non_edges();
        prop_assume!(!non.is_empty() && is_weakly_saturated(&g, f));
        let (u, v) = non[pick.index(non.len())];
        prop_assert!(is_weakly_saturated(&g.with_edge(u, v), f));
    }

    #[test]
    fn traces_replay(g in graph(2, 7), which in 0usize..5) {
        let t = closure(&g, &patterns()[which]);
        prop_assert!(t.validate().is_ok());
    }

    #[test]
    fn ownership_is_sound(g in graph(3, 7), which in 0usize..5) {
        let f = &patterns()[which];
        let t = closure(&g, f);
        prop_assume!(t.reaches_complete());
        if let Ok(ap) = activation_partition(&t) {
            let mut seen = vec![false; g.n()];
            for p in &ap.parts {
                prop_assert!(!p.vertices.is_empty());
                for &v in &p.vertices {
                    prop_assert!(!seen[v]);
                    seen[v] = true;
                }
                for &(u, v) in &p.owned {
                    prop_assert!(p.vertices.contains(&u) || p.vertices.contains(&v));
                }
            }
            prop_assert!(seen.iter().all(|&x| x));
            let mut all: Vec<_> = ap.parts.iter().flat_map(|p| p.owned.iter().copied()).collect();
            let owned = all.len();
            all.extend(ap.free_edges.iter().copied());
            all.sort_unstable();
            all.dedup();
            prop_assert_eq!(all.len(), owned + ap.free_edges.len());
            prop_assert_eq!(all, ap.augmented().edges());
        }
    }

    #[test]
    fn tree_rotations_stay_saturated(t in tree(8)) {
        // Spanning trees are minimum weakly triangle-saturated hosts.
        let f = Graph::complete(3);
        let ap = activation_partition(&closure(&t, &f)).unwrap();
        for m in enumerate_a_matchings(&ap).unwrap().take(200) {
            let r = rotate(&ap, &m).unwrap();
            prop_assert_eq!(r.edge_count(), t.edge_count());
            prop_assert!(is_weakly_saturated(&r, &f));
        }
    }

    #[test]
    fn spread_windows_are_balanced(total in 1usize..40, frac in 0.0f64..=1.0) {
        let count = ((total as f64) * frac).round() as usize;
        let idx = spread(total, count);
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), count);
        for start in 0..total {
            for s in 1..=total {
                let inside = sorted.iter().filter(|&&i| (i + total - start) % total < s).count();
                prop_assert!(inside >= s * count / total);
            }
        }
    }

    #[test]
    fn graph6_and_edge_list_round_trip(g in graph(0, 12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn rationals_round_trip(a in -1000i64..1000, b in 1i64..1000) {
        let x = ratio(a, b);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x.clone());
        prop_assert!((x.clone() * ratio(b, 1)).is_integer());
        prop_assert!(ratio(b, b).is_one());
    }
}
