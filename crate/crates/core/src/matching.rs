//! Capped maximum matching in general graphs.
//!
//! Greedy maximal matching first, then Edmonds augmenting paths with blossom
//! contraction until the cap is reached or no augmenting path exists.

use crate::graph::Graph;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Default::default(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// A matching of size `min(nu(h), cap)` as sorted `(a, b)` pairs, `a < b`.
pub fn capped_matching_adj(adj: &[Vec<usize>], cap: usize) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut bl = Blossom::new(adj);
    let mut size = 0;
    for v in 0..n {
        if size >= cap {
            break;
        }
        if bl.mate[v] != NONE {
            continue;
        }
        if let Some(&w) = adj[v].iter().find(|&&w| bl.mate[w] == NONE) {
            bl.mate[v] = w;
            bl.mate[w] = v;
            size += 1;
        }
    }
    for root in 0..n {
        if size >= cap {
            break;
        }
        if bl.mate[root] == NONE {
            if let Some(end) = bl.find_path(root) {
                bl.augment(end);
                size += 1;
            }
        }
    }
    let mut out: Vec<(usize, usize)> = (0..n)
        .filter(|&v| bl.mate[v] != NONE && v < bl.mate[v])
        .map(|v| (v, bl.mate[v]))
        .collect();
    out.sort_unstable();
    out
}

fn adjacency_lists(h: &Graph) -> Vec<Vec<usize>> {
    (0..h.n()).map(|v| h.neighbors(v).collect()).collect()
}

/// `min(nu(h), cap)` where `nu` is the maximum matching size.
pub fn max_matching_size(h: &Graph, cap: usize) -> usize {
    capped_matching_adj(&adjacency_lists(h), cap).len()
}

/// A maximum matching truncated to `cap` edges.
pub fn max_matching(h: &Graph, cap: usize) -> Vec<(usize, usize)> {
    capped_matching_adj(&adjacency_lists(h), cap)
}
