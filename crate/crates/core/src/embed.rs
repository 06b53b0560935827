//! Greedy embedding of `K_2 x T` (and of the wider family built by repeated
//! rung operations) into bipartite hosts with high local codegree, plus the
//! Type-1/Type-2 deletion process whose triple ledger certifies the edge
//! bound when no embedding exists.
//!
//! Throughout, the host condition for a parameter `t` is: every edge `xy`
//! (`x` in `X`, `y` in `Y`) has at least `t` neighbours `z` of `y` with
//! `d({x, z}) >= t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{popcount_and, BipartiteGraph, BitIter, Graph, GraphBuilder};

/// Whether `z = x` may count towards the host condition at edge `xy`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZPolicy {
    /// `z = x` counts (its "codegree" with itself is `d(x)`).
    #[default]
    Permissive,
    /// Only `z != x` counts.
    Strict,
}

/// A tree on vertices `0..vertex_count` given by parents with
/// `parent[i] < i`; `parent[0]` is ignored (stored as 0). Each vertex after
/// the first meets exactly one earlier vertex, which is the ordering the
/// greedy embedding consumes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSpec {
    parent: Vec<usize>,
}

impl TreeSpec {
    pub fn new(parent: Vec<usize>) -> Result<Self> {
        if parent.is_empty() {
            return Err(Error::MalformedSpec("tree needs at least one vertex".into()));
        }
        if parent[0] != 0 {
            return Err(Error::MalformedSpec("parent[0] must be 0".into()));
        }
        for (i, &p) in parent.iter().enumerate().skip(1) {
            if p >= i {
                return Err(Error::MalformedSpec(format!("parent[{i}] = {p} is not an earlier vertex")));
            }
        }
        Ok(TreeSpec { parent })
    }

    pub fn path(t: usize) -> Result<Self> {
        Self::new((0..t).map(|i| i.saturating_sub(1)).collect())
    }

    /// Star with `leaves` leaves (`leaves + 1` vertices), centre 0.
    pub fn star(leaves: usize) -> Self {
        TreeSpec {
            parent: vec![0; leaves + 1],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self) -> &[usize] {
        &self.parent
    }

    /// Tree edges `(parent[i], i)` for `i >= 1`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..self.parent.len()).map(|i| (self.parent[i], i)).collect()
    }
}

impl std::str::FromStr for TreeSpec {
    type Err = Error;

    /// Comma-separated parent array, e.g. `0,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let parent = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedSpec(format!("bad parent entry `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent)
    }
}

/// One rung operation on edge `a b` of the pattern built so far: add `c` in
/// `A` and `d` in `B` with edges `bc`, `cd`, `ad`, then `r` further `B`
/// vertices `f` with edges `af`, `fc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FOp {
    pub a: usize,
    pub b: usize,
    #[serde(default)]
    pub r: usize,
}

/// A pattern grown from a single edge `a_0 b_0` by rung operations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSpec {
    pub ops: Vec<FOp>,
}

/// A replayed [`FSpec`]: part sizes and edges as `(a index, b index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FShape {
    pub a_count: usize,
    pub b_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl FSpec {
    /// The operations producing `K_2 x T`: vertex `i` of the tree is the rung
    /// `(a_i, b_i)`, and each child hangs off its parent's rung with `r = 0`.
    pub fn from_tree(tree: &TreeSpec) -> Self {
        FSpec {
            ops: tree.edges().into_iter().map(|(p, _)| FOp { a: p, b: p, r: 0 }).collect(),
        }
    }

    /// `K_{2,t}` for `t >= 2`: one operation with `r = t - 2`.
    pub fn k2t(t: usize) -> Result<Self> {
        if t < 2 {
            return Err(Error::MalformedSpec("K_{2,t} needs t >= 2".into()));
        }
        Ok(FSpec {
            ops: vec![FOp { a: 0, b: 0, r: t - 2 }],
        })
    }

    pub fn replay(&self) -> Result<FShape> {
        let mut a_count = 1;
        let mut b_count = 1;
        let mut edges = vec![(0, 0)];
        for (i, op) in self.ops.iter().enumerate() {
            if !edges.contains(&(op.a, op.b)) {
                return Err(Error::MalformedSpec(format!(
                    "operation {i} targets ({}, {}), which is not an edge yet",
                    op.a, op.b
                )));
            }
            let c = a_count;
            let d = b_count;
            a_count += 1;
            b_count += 1 + op.r;
            edges.extend([(c, op.b), (c, d), (op.a, d)]);
            for f in d + 1..d + 1 + op.r {
                edges.extend([(op.a, f), (c, f)]);
            }
        }
        edges.sort_unstable();
        Ok(FShape {
            a_count,
            b_count,
            edges,
        })
    }

    /// Final `|B|`, the host parameter the pattern needs.
    pub fn t(&self) -> Result<usize> {
        Ok(self.replay()?.b_count)
    }
}

/// The pattern graph with `A = 0..|A|` first, then `B`.
pub fn build_f(spec: &FSpec) -> Result<BipartiteGraph> {
    let shape = spec.replay()?;
    let mut b = GraphBuilder::new(shape.a_count + shape.b_count);
    for &(a, bb) in &shape.edges {
        b.add_edge_unchecked(a, shape.a_count + bb);
    }
    BipartiteGraph::with_prefix(b.build(), shape.a_count)
}

/// `K_2 x T` as a bipartite graph.
pub fn k2_tree_pattern(tree: &TreeSpec) -> BipartiteGraph {
    build_f(&FSpec::from_tree(tree)).expect("tree operations are well formed")
}

/// Images of the pattern's `A` vertices in `X` and `B` vertices in `Y`;
/// `pattern` lists the pattern edges as `(a index, b index)`. For `K_2 x T`
/// index `i` on both sides is tree vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingMap {
    pub x_image: Vec<usize>,
    pub y_image: Vec<usize>,
    pub pattern: Vec<(usize, usize)>,
}

impl EmbeddingMap {
    /// Host edges the embedding claims, in pattern order.
    pub fn required_edges(&self) -> Vec<(usize, usize)> {
        self.pattern
            .iter()
            .map(|&(a, b)| (self.x_image[a], self.y_image[b]))
            .collect()
    }

    /// Check injectivity and every required edge against the host.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let mut all: Vec<usize> = self.x_image.iter().chain(&self.y_image).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err("images are not distinct".into());
        }
        if let Some(&v) = all.iter().find(|&&v| v >= g.n()) {
            return Err(format!("vertex {v} outside host"));
        }
        for (x, y) in self.required_edges() {
            if !g.has_edge(x, y) {
                return Err(format!("edge ({x}, {y}) missing"));
            }
        }
        Ok(())
    }
}

/// Mutable bitset adjacency for the deletion process.
struct Work {
    rows: Vec<Vec<u64>>,
}

impl Work {
    fn new(g: &Graph) -> Self {
        Work {
            rows: (0..g.n()).map(|v| g.row(v).to_vec()).collect(),
        }
    }

    fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(&self.rows[v])
    }

    fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    fn codegree(&self, a: usize, b: usize) -> usize {
        popcount_and(&self.rows[a], &self.rows[b])
    }

    fn remove(&mut self, a: usize, b: usize) {
        self.rows[a][b / 64] &= !(1 << (b % 64));
        self.rows[b][a / 64] &= !(1 << (a % 64));
    }

    /// Neighbours `z` of `y` with `d({x, z}) >= t`.
    fn qualifying(&self, x: usize, y: usize, t: usize, policy: ZPolicy) -> usize {
        self.neighbors(y)
            .filter(|&z| !(policy == ZPolicy::Strict && z == x))
            .filter(|&z| self.codegree(x, z) >= t)
            .count()
    }
}

/// Outcome of the host condition check, with the lowest failing edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

pub fn check_embed_condition(g: &BipartiteGraph, t: usize) -> ConditionCheck {
    check_embed_condition_with(g, t, ZPolicy::default())
}

pub fn check_embed_condition_with(g: &BipartiteGraph, t: usize, policy: ZPolicy) -> ConditionCheck {
    let work = Work::new(g.graph());
    let witness = g
        .oriented_edges()
        .into_iter()
        .find(|&(x, y)| work.qualifying(x, y, t, policy) < t);
    ConditionCheck {
        holds: witness.is_none(),
        witness,
    }
}

fn require_condition(g: &BipartiteGraph, t: usize, policy: ZPolicy) -> Result<()> {
    match check_embed_condition_with(g, t, policy).witness {
        Some((x, y)) => Err(Error::EmbedCondition { x, y }),
        None if g.graph().edge_count() == 0 => Err(Error::EmptyHost),
        None => Ok(()),
    }
}

/// Replay `spec` greedily: the first rung goes on the lowest edge, each
/// operation takes the lowest unused qualifying `z` and the lowest unused
/// common neighbours of `x_a` and `z`.
fn greedy_embed(g: &BipartiteGraph, spec: &FSpec, t: usize) -> Result<EmbeddingMap> {
    let shape = spec.replay()?;
    let host = g.graph();
    let (x0, y0) = *g.oriented_edges().first().ok_or(Error::EmptyHost)?;
    let mut used = vec![false; host.n()];
    used[x0] = true;
    used[y0] = true;
    let mut x_image = vec![x0];
    let mut y_image = vec![y0];
    for op in &spec.ops {
        let xa = x_image[op.a];
        let yb = y_image[op.b];
        let z = host
            .neighbors(yb)
            .find(|&z| !used[z] && host.pair_codegree(xa, z) >= t)
            .ok_or(Error::EmbedCondition { x: xa, y: yb })?;
        let fresh: Vec<usize> = host
            .common_neighbors(&[xa, z])
            .iter()
            .filter(|&y| !used[y])
            .take(1 + op.r)
            .collect();
        if fresh.len() < 1 + op.r {
            return Err(Error::EmbedCondition { x: xa, y: yb });
        }
        used[z] = true;
        x_image.push(z);
        for y in fresh {
            used[y] = true;
            y_image.push(y);
        }
    }
    let map = EmbeddingMap {
        x_image,
        y_image,
        pattern: shape.edges,
    };
    debug_assert!(map.validate(host).is_ok());
    Ok(map)
}

/// Embed `K_2 x T`; the host must satisfy the condition for `t = |T|`.
pub fn embed_k2_tree(g: &BipartiteGraph, tree: &TreeSpec) -> Result<EmbeddingMap> {
    embed_k2_tree_with(g, tree, ZPolicy::default())
}

pub fn embed_k2_tree_with(g: &BipartiteGraph, tree: &TreeSpec, policy: ZPolicy) -> Result<EmbeddingMap> {
    let t = tree.vertex_count();
    require_condition(g, t, policy)?;
    greedy_embed(g, &FSpec::from_tree(tree), t)
}

/// Embed the pattern of `spec`; the host must satisfy the condition for
/// `t = |B|`.
pub fn embed_general(g: &BipartiteGraph, spec: &FSpec) -> Result<EmbeddingMap> {
    embed_general_with(g, spec, ZPolicy::default())
}

pub fn embed_general_with(g: &BipartiteGraph, spec: &FSpec, policy: ZPolicy) -> Result<EmbeddingMap> {
    let t = spec.t()?;
    require_condition(g, t, policy)?;
    greedy_embed(g, spec, t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum DeletionStep {
    /// `y` deleted with degree at most `t - 1`.
    Type1 { y: usize },
    /// Edge `xy` deleted; `triples` are the `(x, z, y)` with `z` in
    /// `N(y) \ {x}` and `d({x, z}) <= t - 1` just before the deletion.
    Type2 {
        x: usize,
        y: usize,
        triples: Vec<(usize, usize, usize)>,
    },
}

/// Ordered deletions plus the ledger and both sides of its bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionTrace {
    pub t: usize,
    pub steps: Vec<DeletionStep>,
    pub ledger_size: u64,
    /// `(t - 1) binom(|X|, 2)`.
    pub ledger_upper: u64,
    /// `sum_y binom(a_y, 2)` with `a_y = max(d_G(y) - t + 1, 0)`.
    pub ledger_lower_initial: u64,
    /// `sum_y [binom(a_y, 2) - binom(a'_y, 2)]` where `a'_y` uses the
    /// residual degree; equals the initial form when the residual is empty.
    pub ledger_lower: u64,
    pub residual_edges: usize,
}

impl DeletionTrace {
    /// Both ledger inequalities, with the lower bound adjusted for any
    /// surviving edges.
    pub fn ledger_holds(&self) -> bool {
        self.ledger_lower <= self.ledger_size && self.ledger_size <= self.ledger_upper
    }
}

fn binom2(d: usize) -> u64 {
    (d as u64) * (d as u64).saturating_sub(1) / 2
}

/// Run Type-1 deletions (lowest `y` of degree `<= t - 1`) and, when none is
/// available, Type-2 deletions (lowest edge `xy` whose `y` has at most `t - 1`
/// qualifying neighbours) until neither applies. The residual keeps every
/// vertex; deleted `Y` vertices are isolated.
pub fn deletion_process(g: &BipartiteGraph, t: usize) -> (BipartiteGraph, DeletionTrace) {
    deletion_process_with(g, t, ZPolicy::default())
}

pub fn deletion_process_with(g: &BipartiteGraph, t: usize, policy: ZPolicy) -> (BipartiteGraph, DeletionTrace) {
    let host = g.graph();
    let xs: Vec<usize> = g.part_x().iter().collect();
    let ys: Vec<usize> = g.part_y().iter().collect();
    let mut work = Work::new(host);
    let mut alive = vec![true; host.n()];
    let mut steps = Vec::new();
    let mut ledger = 0u64;
    loop {
        if let Some(&y) = ys.iter().find(|&&y| alive[y] && work.degree(y) < t) {
            let nbrs: Vec<usize> = work.neighbors(y).collect();
            for x in nbrs {
                work.remove(x, y);
            }
            alive[y] = false;
            steps.push(DeletionStep::Type1 { y });
            continue;
        }
        let hit = xs.iter().find_map(|&x| {
            work.neighbors(x)
                .find(|&y| work.qualifying(x, y, t, policy) < t)
                .map(|y| (x, y))
        });
        let Some((x, y)) = hit else { break };
        let triples: Vec<(usize, usize, usize)> = work
            .neighbors(y)
            .filter(|&z| z != x && work.codegree(x, z) < t)
            .map(|z| (x, z, y))
            .collect();
        ledger += triples.len() as u64;
        work.remove(x, y);
        steps.push(DeletionStep::Type2 { x, y, triples });
    }

    let mut b = GraphBuilder::new(host.n());
    for &x in &xs {
        for y in work.neighbors(x) {
            b.add_edge_unchecked(x, y);
        }
    }
    let residual_graph = b.build();
    let a = |d: usize| d.saturating_sub(t.saturating_sub(1));
    let lower_initial: u64 = ys.iter().map(|&y| binom2(a(host.degree(y)))).sum();
    let lower: u64 = ys
        .iter()
        .map(|&y| binom2(a(host.degree(y))) - binom2(a(residual_graph.degree(y))))
        .sum();
    let trace = DeletionTrace {
        t,
        steps,
        ledger_size: ledger,
        ledger_upper: (t as u64).saturating_sub(1) * binom2(xs.len()),
        ledger_lower_initial: lower_initial,
        ledger_lower: lower,
        residual_edges: residual_graph.edge_count(),
    };
    let residual = BipartiteGraph::new(residual_graph, g.part_x().clone()).expect("subgraph keeps bipartition");
    (residual, trace)
}

/// Which side plays the role of `Y` in the host condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `Y` is the graph's second part.
    Standard,
    /// The parts are exchanged.
    Swapped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedTrace {
    pub orientation: Orientation,
    pub trace: DeletionTrace,
}

/// Either a copy of `K_2 x T` or, for both orientations, a deletion trace
/// ending in an empty residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Certification {
    Embedded {
        orientation: Orientation,
        map: EmbeddingMap,
    },
    Free {
        traces: Vec<OrientedTrace>,
    },
}

pub fn certify(g: &BipartiteGraph, tree: &TreeSpec) -> Certification {
    certify_with(g, tree, ZPolicy::default())
}

pub fn certify_with(g: &BipartiteGraph, tree: &TreeSpec, policy: ZPolicy) -> Certification {
    let t = tree.vertex_count();
    let mut traces = Vec::with_capacity(2);
    for orientation in [Orientation::Standard, Orientation::Swapped] {
        let host = match orientation {
            Orientation::Standard => g.clone(),
            Orientation::Swapped => g.swapped(),
        };
        let (residual, trace) = deletion_process_with(&host, t, policy);
        if residual.graph().edge_count() > 0 {
            let map = greedy_embed(&residual, &FSpec::from_tree(tree), t)
                .expect("residual satisfies the embedding condition");
            return Certification::Embedded { orientation, map };
        }
        traces.push(OrientedTrace { orientation, trace });
    }
    Certification::Free { traces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bipartite_blow_up, pg_incidence};
    use crate::detect::contains_bt;

    fn valid(g: &BipartiteGraph, map: &EmbeddingMap) {
        map.validate(g.graph()).unwrap();
        for &x in &map.x_image {
            assert!(g.part_x().contains(x));
        }
        for &y in &map.y_image {
            assert!(g.part_y().contains(y));
        }
    }

    #[test]
    fn tree_parsing() {
        let t: TreeSpec = "0,0,1".parse().unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2)]);
        assert!("0,2".parse::<TreeSpec>().is_err());
        assert!("1".parse::<TreeSpec>().is_err());
        assert!("".parse::<TreeSpec>().is_err());
        assert_eq!(TreeSpec::star(3).vertex_count(), 4);
    }

    #[test]
    fn condition_examples() {
        assert!(check_embed_condition(&BipartiteGraph::complete(4, 4), 3).holds);
        let c6 = BipartiteGraph::from_coloring(Graph::cycle(6)).unwrap();
        let r = check_embed_condition(&c6, 2);
        assert!(!r.holds);
        assert!(r.witness.is_some());
        let empty = BipartiteGraph::with_prefix(Graph::empty(4), 2).unwrap();
        assert!(check_embed_condition(&empty, 5).holds);
    }

    #[test]
    fn z_policy_matters_on_single_edge() {
        let k11 = BipartiteGraph::complete(1, 1);
        assert!(check_embed_condition_with(&k11, 1, ZPolicy::Permissive).holds);
        assert!(!check_embed_condition_with(&k11, 1, ZPolicy::Strict).holds);
        let k22 = BipartiteGraph::complete(2, 2);
        assert!(check_embed_condition_with(&k22, 2, ZPolicy::Permissive).holds);
        assert!(!check_embed_condition_with(&k22, 2, ZPolicy::Strict).holds);
        let k33 = BipartiteGraph::complete(3, 3);
        assert!(check_embed_condition_with(&k33, 2, ZPolicy::Strict).holds);
    }

    #[test]
    fn embed_examples() {
        let k44 = BipartiteGraph::complete(4, 4);
        let m = embed_k2_tree(&k44, &TreeSpec::path(3).unwrap()).unwrap();
        assert_eq!(m.required_edges().len(), 7);
        valid(&k44, &m);

        let k33 = BipartiteGraph::complete(3, 3);
        let m = embed_k2_tree(&k33, &TreeSpec::path(2).unwrap()).unwrap();
        assert_eq!(m.required_edges().len(), 4);
        valid(&k33, &m);

        for t in 2..=5 {
            let host = BipartiteGraph::complete(t + 1, t + 1);
            let star = TreeSpec::star(t - 1);
            for policy in [ZPolicy::Permissive, ZPolicy::Strict] {
                let m = embed_k2_tree_with(&host, &star, policy).unwrap();
                valid(&host, &m);
                let used: Vec<usize> = m.x_image.iter().chain(&m.y_image).copied().collect();
                let sub = host.graph().induced_subgraph(&used);
                assert!(contains_bt(&sub, t - 1).is_some());
            }
        }

        let h = pg_incidence(3).unwrap();
        assert!(matches!(
            embed_k2_tree(&h, &TreeSpec::path(2).unwrap()),
            Err(Error::EmbedCondition { .. })
        ));
    }

    #[test]
    fn f_family_shapes() {
        let c4 = build_f(&FSpec { ops: vec![FOp { a: 0, b: 0, r: 0 }] }).unwrap();
        assert_eq!(c4.graph().edge_count(), 4);
        assert_eq!(c4.graph().count_c4(), 1);

        let t = 4;
        let k2t = build_f(&FSpec::k2t(t).unwrap()).unwrap();
        assert_eq!(k2t.part_x().len(), 2);
        assert_eq!(k2t.part_y().len(), t);
        assert_eq!(k2t.graph().edge_count(), 2 * t);

        let tree = TreeSpec::path(4).unwrap();
        let ladder = k2_tree_pattern(&tree);
        assert_eq!(ladder.graph().edge_count(), 3 * 4 - 2);
        assert_eq!(ladder.graph().count_c4(), 3);

        let bad = FSpec {
            ops: vec![FOp { a: 0, b: 1, r: 0 }],
        };
        assert!(matches!(build_f(&bad), Err(Error::MalformedSpec(_))));
        let bad = FSpec {
            ops: vec![FOp { a: 0, b: 0, r: 0 }, FOp { a: 1, b: 0, r: 0 }],
        };
        assert!(build_f(&bad).is_ok());
        let bad = FSpec {
            ops: vec![FOp { a: 0, b: 0, r: 0 }, FOp { a: 1, b: 3, r: 0 }],
        };
        assert!(build_f(&bad).is_err());
    }

    #[test]
    fn general_embedding() {
        let k44 = BipartiteGraph::complete(4, 4);
        let spec = FSpec {
            ops: vec![FOp { a: 0, b: 0, r: 0 }],
        };
        valid(&k44, &embed_general(&k44, &spec).unwrap());

        let t = 3;
        let host = BipartiteGraph::complete(t + 2, t + 2);
        let m = embed_general(&host, &FSpec::k2t(t).unwrap()).unwrap();
        valid(&host, &m);
        assert_eq!(m.x_image.len(), 2);
        assert_eq!(m.y_image.len(), t);

        let h = pg_incidence(3).unwrap();
        assert!(embed_general(&h, &spec).is_err());
    }

    #[test]
    fn deletion_examples() {
        let h = pg_incidence(2).unwrap();
        let (res, trace) = deletion_process(&h, 2);
        assert_eq!(res.graph().edge_count(), 0);
        assert_eq!(trace.ledger_upper, 21);
        assert_eq!(trace.ledger_lower_initial, 7);
        assert!(trace.ledger_holds());

        let k44 = BipartiteGraph::complete(4, 4);
        let (res, trace) = deletion_process(&k44, 3);
        assert_eq!(res, k44);
        assert!(trace.steps.is_empty());
        assert_eq!(trace.ledger_size, 0);
        // nothing was deleted, so the adjusted lower bound is 0
        assert_eq!(trace.ledger_lower, 0);
        assert_eq!(trace.ledger_lower_initial, 4);
        assert!(trace.ledger_holds());

        let empty = BipartiteGraph::with_prefix(Graph::empty(5), 2).unwrap();
        let (res, trace) = deletion_process(&empty, 2);
        assert_eq!(res.graph().edge_count(), 0);
        assert_eq!(trace.steps.len(), 3);
        assert_eq!(trace.ledger_size, 0);
    }

    #[test]
    fn triples_have_low_codegree() {
        let g = bipartite_blow_up(&pg_incidence(2).unwrap(), 1, 2).unwrap();
        let (_, trace) = deletion_process(&g, 3);
        assert!(trace.ledger_holds());
        let mut seen = std::collections::HashSet::new();
        for step in &trace.steps {
            if let DeletionStep::Type2 { triples, .. } = step {
                for &tr in triples {
                    assert!(seen.insert(tr));
                }
            }
        }
    }

    #[test]
    fn certify_examples() {
        let g = bipartite_blow_up(&pg_incidence(2).unwrap(), 1, 2).unwrap();
        match certify(&g, &TreeSpec::star(2)) {
            Certification::Free { traces } => {
                assert_eq!(traces.len(), 2);
                assert!(traces.iter().all(|o| o.trace.residual_edges == 0));
            }
            other => panic!("expected a trace, got {other:?}"),
        }

        let k44 = BipartiteGraph::complete(4, 4);
        match certify(&k44, &TreeSpec::path(3).unwrap()) {
            Certification::Embedded { map, .. } => map.validate(k44.graph()).unwrap(),
            other => panic!("expected an embedding, got {other:?}"),
        }

        let c4 = BipartiteGraph::complete(2, 2);
        assert!(matches!(
            certify(&c4, &TreeSpec::path(2).unwrap()),
            Certification::Embedded { .. }
        ));
    }
}
