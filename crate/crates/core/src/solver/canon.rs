//! Canonical labelling by colour refinement plus backtracking.
//!
//! Vertices are coloured by iterated degree refinement; the canonical
//! labelling is the colour-respecting permutation whose adjacency code is
//! largest, the code listing the upper triangle column by column
//! (`a01, a02, a12, a03, ...`). Columns are fixed one slot at a time, so
//! prefixes compare incrementally and losing branches are cut at once.

use std::cmp::Ordering;

use crate::graph::Graph;
use crate::graph6::encode_graph6_string;

/// Stable colour classes, ranked so the ranking is isomorphism invariant.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = rank(&g.degrees());
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[usize]| c.iter().copied().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&color) {
            return next;
        }
        color = next;
    }
}

/// Dense rank of each item among the distinct values.
fn rank<T: Ord + Clone>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|x| sorted.binary_search(x).expect("present"))
        .collect()
}

/// `twin[v]`: least vertex `u` with `N(u) \ {v} = N(v) \ {u}`. Swapping twins
/// is an automorphism, so only one of them needs trying at any slot.
fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut twin: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            if twin[u] != u {
                continue;
            }
            let same = g.row(u).iter().zip(g.row(v)).enumerate().all(|(i, (&a, &b))| {
                let mut a = a;
                let mut b = b;
                if v / 64 == i {
                    a &= !(1 << (v % 64));
                }
                if u / 64 == i {
                    b &= !(1 << (u % 64));
                }
                a == b
            });
            if same {
                twin[v] = u;
                break;
            }
        }
    }
    twin
}

struct Search<'a> {
    g: &'a Graph,
    color: Vec<usize>,
    slot_color: Vec<usize>,
    twin: Vec<usize>,
    sigma: Vec<usize>,
    placed: Vec<bool>,
    /// Current code, one column per slot.
    cur: Vec<Vec<bool>>,
    best: Option<(Vec<Vec<bool>>, Vec<usize>)>,
}

impl Search<'_> {
    fn column(&self, k: usize, v: usize) -> Vec<bool> {
        (0..k).map(|l| self.g.has_edge(self.sigma[l], v)).collect()
    }

    fn go(&mut self, k: usize, mut ord: Ordering) {
        let n = self.g.n();
        if k == n {
            if ord == Ordering::Greater || self.best.is_none() {
                self.best = Some((self.cur.clone(), self.sigma.clone()));
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..n {
            if self.placed[v] || self.color[v] != self.slot_color[k] || tried.contains(&self.twin[v]) {
                continue;
            }
            tried.push(self.twin[v]);
            let col = self.column(k, v);
            let next = match (&self.best, ord) {
                (Some((best, _)), Ordering::Equal) => match col.cmp(&best[k]) {
                    Ordering::Less => continue,
                    o => o,
                },
                _ => Ordering::Greater,
            };
            self.sigma[k] = v;
            self.placed[v] = true;
            self.cur[k] = col;
            self.go(k + 1, next);
            self.placed[v] = false;
            // after a new leader is installed, later siblings compare to it
            ord = if ord == Ordering::Greater && self.best.is_some() {
                Ordering::Equal
            } else {
                ord
            };
        }
    }
}

/// The canonical relabelling `old -> new`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let color = refine(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (color[v], v));
    let slot_color: Vec<usize> = order.iter().map(|&v| color[v]).collect();
    let mut s = Search {
        g,
        twin: twin_classes(g),
        color,
        slot_color,
        sigma: vec![0; n],
        placed: vec![false; n],
        cur: vec![Vec::new(); n],
        best: None,
    };
    s.go(0, Ordering::Greater);
    let sigma = s.best.map(|b| b.1).unwrap_or_default();
    let mut perm = vec![0; n];
    for (slot, &v) in sigma.iter().enumerate() {
        perm[v] = slot;
    }
    perm
}

/// graph6 of the canonically relabelled graph: equal exactly for isomorphic
/// inputs.
pub fn canonical_form(g: &Graph) -> String {
    encode_graph6_string(&g.relabel(&canonical_labeling(g)))
}
