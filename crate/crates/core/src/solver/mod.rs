//! Exact `ex(n, B_t)` and `ex_bip(n, B_t)` for small `n`.
//!
//! The default search is orderly generation: graphs are grown one edge at a
//! time, only at positions after the last edge, and a child is kept only if
//! it is the maximum-code member of its isomorphism class. Each class is
//! visited once. A subtree is cut when its edges plus the number of
//! individually addable later positions falls strictly below the incumbent,
//! so every optimal class is still reached and the reported witness (least
//! canonical form among them) does not depend on scheduling.
//!
//! With symmetry handling off the search is a plain labelled
//! include/exclude recursion, kept as an independent cross-check.

mod canon;
mod small;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use canon::{canonical_form, canonical_labeling};

use crate::detect::aux_matching_size;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::Graph;
use crate::graph6::encode_graph6_string;
use small::{Adj, Layout, MAX_N};

/// Default vertex caps; larger `n` needs [`SearchConfig::unsafe_budget`].
pub const CAP_C4: usize = 10;
pub const CAP_GENERAL: usize = 9;
pub const CAP_BIPARTITE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub node_budget: u64,
    /// Worker threads; 0 uses the global pool.
    pub thread_count: usize,
    pub symmetry: Symmetry,
    /// Lift the default vertex caps (still at most 16).
    pub unsafe_budget: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 200_000_000,
            thread_count: 0,
            symmetry: Symmetry::On,
            unsafe_budget: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Bipartite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TuranResult {
    pub n: usize,
    pub t: usize,
    pub mode: Mode,
    pub value: usize,
    /// graph6 of an extremal graph; in bipartite mode `X` is `0..|X|`.
    pub extremal_witness: String,
    /// `(|X|, |Y|)` of the witness in bipartite mode.
    pub parts: Option<(usize, usize)>,
    /// Canonical form of the witness.
    pub witness_canonical: String,
    pub nodes_explored: u64,
    pub wall_time_secs: f64,
    pub symmetry: Symmetry,
}

impl TuranResult {
    pub fn witness_graph(&self) -> Graph {
        crate::graph6::decode_graph6(self.extremal_witness.as_bytes()).expect("own encoding")
    }
}

/// Whether `g + uv` is still `B_t`-free, given that `g` is. Only edges with
/// an endpoint in `N[u] | N[v]` (after insertion) can carry a new copy.
pub fn incremental_free_check(g: &Graph, new_edge: (usize, usize), t: usize) -> Result<bool> {
    let (u, v) = new_edge;
    let h = g.with_edge(u, v)?;
    let mut ball = h.neighbor_set(u);
    ball.union_with(h.row(v));
    ball.insert(u);
    ball.insert(v);
    let free = h
        .edges()
        .filter(|&(a, b)| ball.contains(a) || ball.contains(b))
        .all(|(a, b)| aux_matching_size(&h, a, b, t) < t);
    Ok(free)
}

struct Shared {
    incumbent: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
}

impl Shared {
    fn new(budget: u64) -> Self {
        Shared {
            incumbent: AtomicUsize::new(0),
            nodes: AtomicU64::new(0),
            budget,
            aborted: AtomicBool::new(false),
        }
    }

    /// Count a node; false once the budget is spent.
    fn tick(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Best graph seen by one worker: most edges, then least canonical form.
#[derive(Clone, Debug)]
struct Best {
    edges: usize,
    key: String,
    graph: Graph,
}

fn offer(best: &mut Option<Best>, layout: &Layout, adj: &Adj, edges: usize, shared: &Shared) {
    shared.incumbent.fetch_max(edges, Ordering::Relaxed);
    if best.as_ref().is_some_and(|b| b.edges > edges) {
        return;
    }
    let graph = layout.to_graph(adj);
    let key = canonical_form(&graph);
    let better = match best {
        None => true,
        Some(b) => edges > b.edges || key < b.key,
    };
    if better {
        *best = Some(Best { edges, key, graph });
    }
}

fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if (b.edges, std::cmp::Reverse(&b.key)) > (a.edges, std::cmp::Reverse(&a.key)) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// A node of the orderly search: graph, edge count, addable later positions.
#[derive(Clone)]
struct Node {
    adj: Adj,
    edges: usize,
    cands: Vec<usize>,
}

struct Orderly<'a> {
    layout: &'a Layout,
    t: usize,
    shared: &'a Shared,
}

impl Orderly<'_> {
    fn root(&self) -> Node {
        let adj = [0u16; MAX_N];
        Node {
            adj,
            edges: 0,
            cands: (0..self.layout.positions.len()).collect(),
        }
    }

    /// Canonical children, each with its own addable list.
    fn children(&self, node: &Node) -> Vec<Node> {
        let mut out = Vec::new();
        let n = self.layout.n;
        let mut adj = node.adj;
        for (i, &q) in node.cands.iter().enumerate() {
            let remaining = node.cands.len() - i - 1;
            if node.edges + 1 + remaining < self.shared.incumbent.load(Ordering::Relaxed) {
                break;
            }
            let (l, k) = self.layout.positions[q];
            small::add(&mut adj, l as usize, k as usize);
            if self.layout.is_canonical(&adj) {
                let cands: Vec<usize> = node.cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&r| {
                        let (a, b) = self.layout.positions[r];
                        small::stays_free(&mut adj, n, a as usize, b as usize, self.t)
                    })
                    .collect();
                out.push(Node {
                    adj,
                    edges: node.edges + 1,
                    cands,
                });
            }
            small::remove(&mut adj, l as usize, k as usize);
        }
        out
    }

    fn visit(&self, node: &Node, best: &mut Option<Best>) -> bool {
        if !self.shared.tick() {
            return false;
        }
        offer(best, self.layout, &node.adj, node.edges, self.shared);
        if node.edges + node.cands.len() < self.shared.incumbent.load(Ordering::Relaxed) {
            return true;
        }
        for child in self.children(node) {
            if !self.visit(&child, best) {
                return false;
            }
        }
        true
    }

    /// Expand breadth-first until enough subtrees exist, then search them
    /// in parallel.
    fn run(&self, threads: usize) -> std::result::Result<Option<Best>, ()> {
        let mut best = None;
        let mut frontier = vec![self.root()];
        let want = 64;
        for _ in 0..8 {
            if frontier.len() >= want || frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for node in &frontier {
                if !self.shared.tick() {
                    return Err(());
                }
                offer(&mut best, self.layout, &node.adj, node.edges, self.shared);
                next.extend(self.children(node));
            }
            frontier = next;
        }
        let results = exec::with_threads(threads, || {
            exec::map_collect(Exec::default(), &frontier, |node| {
                let mut local = None;
                let ok = self.visit(node, &mut local);
                (ok, local)
            })
        });
        for (ok, local) in results {
            if !ok {
                return Err(());
            }
            best = merge(best, local);
        }
        Ok(best)
    }
}

/// Labelled include/exclude search over every position.
struct Labelled<'a> {
    layout: &'a Layout,
    t: usize,
    shared: &'a Shared,
}

impl Labelled<'_> {
    fn go(&self, adj: &mut Adj, edges: usize, pos: usize, best: &mut Option<Best>) -> bool {
        if !self.shared.tick() {
            return false;
        }
        let n = self.layout.n;
        let positions = &self.layout.positions;
        let incumbent = self.shared.incumbent.load(Ordering::Relaxed);
        let addable = positions[pos..]
            .iter()
            .filter(|&&(a, b)| small::stays_free(adj, n, a as usize, b as usize, self.t))
            .count();
        if best.is_some() && edges + addable <= incumbent {
            return true;
        }
        if addable == 0 {
            offer(best, self.layout, adj, edges, self.shared);
            return true;
        }
        let Some(q) = (pos..positions.len()).find(|&q| {
            let (a, b) = positions[q];
            small::stays_free(adj, n, a as usize, b as usize, self.t)
        }) else {
            return true;
        };
        let (a, b) = positions[q];
        small::add(adj, a as usize, b as usize);
        let ok = self.go(adj, edges + 1, q + 1, best);
        small::remove(adj, a as usize, b as usize);
        ok && self.go(adj, edges, q + 1, best)
    }
}

fn check_caps(n: usize, t: usize, mode: Mode, cfg: &SearchConfig) -> Result<()> {
    if t == 0 {
        return Err(Error::Unsupported("t must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::Unsupported(format!("n = {n} exceeds the solver limit of {MAX_N}")));
    }
    let cap = match (mode, t) {
        (Mode::Bipartite, _) => CAP_BIPARTITE,
        (Mode::General, 1) => CAP_C4,
        (Mode::General, _) => CAP_GENERAL,
    };
    if n > cap && !cfg.unsafe_budget {
        return Err(Error::Unsupported(format!(
            "n = {n} exceeds the default cap {cap}; enable the unsafe budget to proceed"
        )));
    }
    Ok(())
}

fn search(layout: &Layout, t: usize, cfg: &SearchConfig, shared: &Shared) -> std::result::Result<Option<Best>, ()> {
    match cfg.symmetry {
        Symmetry::On => Orderly { layout, t, shared }.run(cfg.thread_count),
        Symmetry::Off => {
            let mut best = None;
            let mut adj = [0u16; MAX_N];
            let ok = Labelled { layout, t, shared }.go(&mut adj, 0, 0, &mut best);
            if ok {
                Ok(best)
            } else {
                Err(())
            }
        }
    }
}

fn finish(
    n: usize,
    t: usize,
    mode: Mode,
    cfg: &SearchConfig,
    best: Option<(Best, Option<(usize, usize)>)>,
    shared: &Shared,
    start: Instant,
) -> TuranResult {
    let (best, parts) = best.unwrap_or_else(|| {
        let g = Graph::empty(n);
        let parts = (mode == Mode::Bipartite).then_some((n / 2, n - n / 2));
        (
            Best {
                edges: 0,
                key: canonical_form(&g),
                graph: g,
            },
            parts,
        )
    });
    TuranResult {
        n,
        t,
        mode,
        value: best.edges,
        extremal_witness: encode_graph6_string(&best.graph),
        parts,
        witness_canonical: best.key,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        wall_time_secs: start.elapsed().as_secs_f64(),
        symmetry: cfg.symmetry,
    }
}

fn exhausted(cfg: &SearchConfig, shared: &Shared) -> Error {
    Error::BudgetExhausted {
        budget: cfg.node_budget,
        lower_bound: shared.incumbent.load(Ordering::Relaxed),
        nodes_explored: shared.nodes.load(Ordering::Relaxed).min(cfg.node_budget),
    }
}

/// `ex(n, B_t)` with an extremal witness.
pub fn exact_turan(n: usize, t: usize, cfg: &SearchConfig) -> Result<TuranResult> {
    check_caps(n, t, Mode::General, cfg)?;
    let start = Instant::now();
    let shared = Shared::new(cfg.node_budget);
    let layout = Layout::general(n);
    let best = search(&layout, t, cfg, &shared).map_err(|_| exhausted(cfg, &shared))?;
    Ok(finish(n, t, Mode::General, cfg, best.map(|b| (b, None)), &shared, start))
}

/// `ex_bip(n, B_t)`: the best over all splits `|X| + |Y| = n`, `|X| <= |Y|`.
pub fn exact_turan_bipartite(n: usize, t: usize, cfg: &SearchConfig) -> Result<TuranResult> {
    check_caps(n, t, Mode::Bipartite, cfg)?;
    let start = Instant::now();
    let shared = Shared::new(cfg.node_budget);
    let mut overall: Option<(Best, Option<(usize, usize)>)> = None;
    for x_len in 1..=n / 2 {
        let layout = Layout::bipartite(x_len, n - x_len);
        let best = search(&layout, t, cfg, &shared).map_err(|_| exhausted(cfg, &shared))?;
        if let Some(b) = best {
            let parts = Some((x_len, n - x_len));
            overall = match overall {
                None => Some((b, parts)),
                Some((a, pa)) => {
                    if (b.edges, std::cmp::Reverse(&b.key)) > (a.edges, std::cmp::Reverse(&a.key)) {
                        Some((b, parts))
                    } else {
                        Some((a, pa))
                    }
                }
            };
        }
    }
    Ok(finish(n, t, Mode::Bipartite, cfg, overall, &shared, start))
}
