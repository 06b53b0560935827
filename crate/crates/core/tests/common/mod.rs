//! Random graph generators and brute-force references shared by the
//! integration suites.

#![allow(dead_code)]

use btfree::{BipartiteGraph, Graph, GraphBuilder};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// Random bipartite graph with `X = 0..a`, `Y = a..a+b`.
pub fn bipartite_gnp<R: Rng>(rng: &mut R, a: usize, b: usize, p: f64) -> BipartiteGraph {
    let mut g = GraphBuilder::new(a + b);
    for x in 0..a {
        for y in a..a + b {
            if rng.gen_bool(p) {
                g.add_edge(x, y).unwrap();
            }
        }
    }
    BipartiteGraph::with_prefix(g.build(), a).unwrap()
}

/// Random `B_t`-free graph: shuffle all pairs and keep each edge that keeps
/// the graph free, stopping after `target` edges.
pub fn random_bt_free<R: Rng>(rng: &mut R, n: usize, t: usize, target: usize) -> Graph {
    let mut pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::empty(n);
    for (u, v) in pairs {
        if g.edge_count() >= target {
            break;
        }
        if btfree::solver::incremental_free_check(&g, (u, v), t).unwrap() {
            g = g.with_edge(u, v).unwrap();
        }
    }
    g
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Uniform random recursive tree on `k` vertices.
pub fn random_tree<R: Rng>(rng: &mut R, k: usize) -> btfree::embed::TreeSpec {
    let parent: Vec<usize> = (0..k).map(|i| if i == 0 { 0 } else { rng.gen_range(0..i) }).collect();
    btfree::embed::TreeSpec::new(parent).unwrap()
}

/// All graphs on `n` labelled vertices, by edge mask; returns the largest
/// edge count among those accepted by `keep`.
pub fn brute_max_edges(n: usize, keep: impl Fn(&Graph) -> bool, allowed: impl Fn(usize, usize) -> bool) -> usize {
    let pairs: Vec<(usize, usize)> = (1..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(u, v)| allowed(u, v))
        .collect();
    let mut best = 0;
    for mask in 0u64..(1u64 << pairs.len()) {
        let m = mask.count_ones() as usize;
        if m <= best {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if keep(&Graph::from_edges(n, &edges).unwrap()) {
            best = m;
        }
    }
    best
}

/// C4 count from 4-vertex subsets.
pub fn brute_c4(g: &Graph) -> u64 {
    let n = g.n();
    let e = |a, b| g.has_edge(a, b);
    let mut c = 0;
    for a in 0..n {
        for b in a + 1..n {
            for x in b + 1..n {
                for d in x + 1..n {
                    // the three ways to close four vertices into a cycle
                    c += (e(a, b) && e(b, x) && e(x, d) && e(d, a)) as u64;
                    c += (e(a, b) && e(b, d) && e(d, x) && e(x, a)) as u64;
                    c += (e(a, x) && e(x, b) && e(b, d) && e(d, a)) as u64;
                }
            }
        }
    }
    c
}
