//! Dense bitset graphs.
//!
//! Every row of the adjacency matrix is a run of `u64` words, so codegrees
//! reduce to word-wise AND plus popcount.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A subset of `0..n` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in it {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        VertexSet { n, words }
    }

    /// Size of the universe `0..n`.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.words)
    }

    pub fn intersect_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// Iterator over the set bits of a word slice, ascending.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[inline]
pub(crate) fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            for u in 0..v {
                b.add_edge_unchecked(u, v);
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            b.add_edge_unchecked(i, (i + 1) % n);
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 1..n {
            b.add_edge_unchecked(i - 1, i);
        }
        b.build()
    }

    /// `K_{a,b}` with the `a`-side on `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = GraphBuilder::new(a + b);
        for x in 0..a {
            for y in a..a + b {
                g.add_edge_unchecked(x, y);
            }
        }
        g.build()
    }

    /// `B_t`: shared edge `0-1`, legs `(2+2i, 3+2i)` with `0 ~ 2+2i` and `1 ~ 3+2i`.
    pub fn book(t: usize) -> Self {
        let mut b = GraphBuilder::new(2 * t + 2);
        b.add_edge_unchecked(0, 1);
        for i in 0..t {
            let (x, y) = (2 + 2 * i, 3 + 2 * i);
            b.add_edge_unchecked(0, x);
            b.add_edge_unchecked(x, y);
            b.add_edge_unchecked(y, 1);
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn sum_degree_squares(&self) -> u64 {
        (0..self.n).map(|v| (self.degree(v) as u64).pow(2)).sum()
    }

    /// Common neighbours of `u` and `v`.
    #[inline]
    pub fn pair_codegree(&self, u: usize, v: usize) -> usize {
        popcount_and(self.row(u), self.row(v))
    }

    /// Edges as `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// `|N(S)|`, the number of vertices adjacent to every member of `s`.
    pub fn codegree(&self, s: &VertexSet) -> Result<usize> {
        let mut it = s.iter();
        let first = it.next().ok_or(Error::EmptySet)?;
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut acc = self.row(first).to_vec();
        for v in it {
            for (a, b) in acc.iter_mut().zip(self.row(v)) {
                *a &= b;
            }
        }
        Ok(acc.iter().map(|w| w.count_ones() as usize).sum())
    }

    /// Common neighbourhood of `s` as a set.
    pub fn common_neighbors(&self, s: &[usize]) -> VertexSet {
        let mut acc = VertexSet::full(self.n);
        for &v in s {
            acc.intersect_with(self.row(v));
        }
        acc
    }

    /// A set is good when its codegree is at least its size plus one.
    pub fn is_good(&self, s: &VertexSet) -> Result<bool> {
        Ok(self.codegree(s)? > s.len())
    }

    /// Number of 4-cycles, via `sum over pairs of binom(codegree, 2)`, halved
    /// since every 4-cycle has two diagonals.
    pub fn count_c4(&self) -> u64 {
        let mut twice = 0u64;
        for v in 1..self.n {
            for u in 0..v {
                let c = self.pair_codegree(u, v) as u64;
                twice += c * c.saturating_sub(1) / 2;
            }
        }
        twice / 2
    }

    /// Number of 4-cycles through the edge `uv` (or through the pair when not
    /// adjacent, counting paths `u-x-y-v` closed by `uv`).
    pub fn c4_through_edge(&self, u: usize, v: usize) -> usize {
        let mut count = 0;
        for x in self.neighbors(u) {
            if x == v {
                continue;
            }
            count += self
                .neighbors(x)
                .filter(|&y| y != u && y != x && self.has_edge(y, v))
                .count();
        }
        count
    }

    /// Edges of the subgraph induced by `s`.
    pub fn induced_edge_count(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| popcount_and(self.row(v), s.words())).sum::<usize>() / 2
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        b.build()
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.add_edge_unchecked(perm[u], perm[v]);
        }
        b.build()
    }

    /// Disjoint union with `k` extra isolated vertices appended.
    pub fn pad(&self, extra: usize) -> Graph {
        let mut b = GraphBuilder::new(self.n + extra);
        for (u, v) in self.edges() {
            b.add_edge_unchecked(u, v);
        }
        b.build()
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut b = GraphBuilder::from_graph(self);
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder::from_graph(self)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// A proper 2-colouring if one exists; colour 0 for the lowest vertex of
    /// every component.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        stack.push(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Repeatedly delete the lowest-index vertex of degree `< c * sqrt(j)`,
    /// where `j` is the current vertex count. Surviving vertices keep their
    /// relative order in the returned graph.
    pub fn peel_min_degree(&self, c: f64) -> Graph {
        self.peel_min_degree_trace(c).0
    }

    /// As [`Graph::peel_min_degree`], also returning the deleted vertices in
    /// deletion order and the surviving original labels.
    pub fn peel_min_degree_trace(&self, c: f64) -> (Graph, Vec<usize>, Vec<usize>) {
        let mut alive = VertexSet::full(self.n);
        let mut deg = self.degrees();
        let mut removed = Vec::new();
        let mut j = self.n;
        loop {
            let threshold = c * (j as f64).sqrt();
            let victim = alive.iter().find(|&v| (deg[v] as f64) < threshold);
            let Some(v) = victim else { break };
            alive.remove(v);
            for w in self.neighbors(v) {
                if alive.contains(w) {
                    deg[w] -= 1;
                }
            }
            removed.push(v);
            j -= 1;
        }
        let survivors: Vec<usize> = alive.iter().collect();
        (self.induced_subgraph(&survivors), removed, survivors)
    }
}

/// Mutable adjacency used while assembling a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        GraphBuilder {
            n,
            stride,
            adj: vec![0; n * stride],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder {
            n: g.n,
            stride: g.stride,
            adj: g.adj.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.stride + v / 64] |= 1 << (v % 64);
        self.adj[v * self.stride + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.stride + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.stride + u / 64] &= !(1 << (u % 64));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn build(self) -> Graph {
        let edge_count = self.adj.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2;
        Graph {
            n: self.n,
            stride: self.stride,
            adj: self.adj,
            edge_count,
        }
    }
}

/// Which side of a bipartition a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

/// A graph with a certified bipartition `(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    part_x: VertexSet,
    part_y: VertexSet,
}

impl BipartiteGraph {
    pub fn new(graph: Graph, part_x: VertexSet) -> Result<Self> {
        let n = graph.n();
        if part_x.universe() != n {
            return Err(Error::Bipartition("part size does not match graph".into()));
        }
        let mut part_y = VertexSet::full(n);
        for v in part_x.iter() {
            part_y.remove(v);
        }
        for (u, v) in graph.edges() {
            if part_x.contains(u) == part_x.contains(v) {
                return Err(Error::Bipartition(format!("edge ({u}, {v}) inside one part")));
            }
        }
        Ok(BipartiteGraph {
            graph,
            part_x,
            part_y,
        })
    }

    /// Bipartition with `X = 0..x_len`.
    pub fn with_prefix(graph: Graph, x_len: usize) -> Result<Self> {
        if x_len > graph.n() {
            return Err(Error::Bipartition(format!(
                "|X| = {x_len} exceeds n = {}",
                graph.n()
            )));
        }
        let part_x = VertexSet::from_iter(graph.n(), 0..x_len)?;
        Self::new(graph, part_x)
    }

    /// `K_{a,b}` with `X = 0..a`.
    pub fn complete(a: usize, b: usize) -> Self {
        Self::with_prefix(Graph::complete_bipartite(a, b), a).expect("complete bipartite")
    }

    /// Bipartition from a 2-colouring, colour 0 to `X`.
    pub fn from_coloring(graph: Graph) -> Result<Self> {
        let color = graph
            .two_coloring()
            .ok_or_else(|| Error::Bipartition("graph is not bipartite".into()))?;
        let part_x = VertexSet::from_iter(graph.n(), (0..graph.n()).filter(|&v| color[v] == 0))?;
        Self::new(graph, part_x)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn part_x(&self) -> &VertexSet {
        &self.part_x
    }

    pub fn part_y(&self) -> &VertexSet {
        &self.part_y
    }

    pub fn part(&self, side: Side) -> &VertexSet {
        match side {
            Side::X => &self.part_x,
            Side::Y => &self.part_y,
        }
    }

    pub fn side_of(&self, v: usize) -> Side {
        if self.part_x.contains(v) {
            Side::X
        } else {
            Side::Y
        }
    }

    /// Same graph with the roles of `X` and `Y` exchanged.
    pub fn swapped(&self) -> Self {
        BipartiteGraph {
            graph: self.graph.clone(),
            part_x: self.part_y.clone(),
            part_y: self.part_x.clone(),
        }
    }

    /// Whether `X` occupies exactly the indices `0..|X|`.
    pub fn is_prefix_layout(&self) -> bool {
        let k = self.part_x.len();
        (0..k).all(|v| self.part_x.contains(v))
    }

    /// Relabel so that `X` comes first, preserving relative order within
    /// each part. Returns the graph and the permutation `old -> new`.
    pub fn to_prefix_layout(&self) -> (BipartiteGraph, Vec<usize>) {
        let n = self.graph.n();
        let mut perm = vec![0; n];
        for (next, v) in self.part_x.iter().chain(self.part_y.iter()).enumerate() {
            perm[v] = next;
        }
        let g = self.graph.relabel(&perm);
        let bg = BipartiteGraph::with_prefix(g, self.part_x.len()).expect("relabelled bipartition");
        (bg, perm)
    }

    /// Edges oriented as `(x, y)` with `x` in `X`, sorted.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .graph
            .edges()
            .map(|(u, v)| if self.part_x.contains(u) { (u, v) } else { (v, u) })
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn codegree_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(k23.codegree(&set(5, &[0, 1])).unwrap(), 3);
        let c6 = Graph::cycle(6);
        assert_eq!(c6.codegree(&set(6, &[0, 2])).unwrap(), 1);
        assert_eq!(c6.codegree(&set(6, &[3])).unwrap(), 2);
        assert!(matches!(c6.codegree(&VertexSet::empty(6)), Err(Error::EmptySet)));
    }

    #[test]
    fn good_sets() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert!(k23.is_good(&set(5, &[0, 1])).unwrap());
        assert!(!k23.is_good(&set(5, &[2, 3])).unwrap());
        let star = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(star.is_good(&set(3, &[0])).unwrap());
    }

    #[test]
    fn c4_counts() {
        assert_eq!(Graph::cycle(4).count_c4(), 1);
        assert_eq!(Graph::complete_bipartite(3, 3).count_c4(), 9);
        assert_eq!(Graph::complete(4).count_c4(), 3);
        assert_eq!(Graph::cycle(5).count_c4(), 0);
    }

    #[test]
    fn peel_examples() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.peel_min_degree(1.0), k5);

        // leaves fall while the centre keeps degree >= sqrt(j); at j = 2 the
        // centre is the lowest qualifying vertex, then the last leaf goes
        let star = Graph::complete_bipartite(1, 9);
        let (rest, removed, _) = star.peel_min_degree_trace(1.0);
        assert_eq!(rest.n(), 0);
        assert_eq!(removed, vec![1, 2, 3, 4, 5, 6, 7, 8, 0, 9]);
    }

    #[test]
    fn peel_ties_survive() {
        // C4 with c = 1: degree 2 vs 1*sqrt(4) = 2, strict inequality keeps all
        let c4 = Graph::cycle(4);
        assert_eq!(c4.peel_min_degree(1.0).n(), 4);
        assert_eq!(c4.peel_min_degree(1.01).n(), 0);
    }

    #[test]
    fn girth_and_coloring() {
        assert_eq!(Graph::cycle(6).girth(), Some(6));
        assert_eq!(Graph::complete(4).girth(), Some(3));
        assert_eq!(Graph::path(5).girth(), None);
        assert!(Graph::cycle(5).two_coloring().is_none());
        let bg = BipartiteGraph::from_coloring(Graph::cycle(6)).unwrap();
        assert_eq!(bg.part_x().len(), 3);
    }

    #[test]
    fn bipartition_rejects_inner_edges() {
        let g = Graph::complete(3);
        assert!(BipartiteGraph::with_prefix(g, 1).is_err());
    }

    #[test]
    fn induced_edges() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.induced_edge_count(&set(4, &[0, 1, 2])), 3);
    }
}
