//! `B_t` detection.
//!
//! `G` contains `B_t` with shared edge `uv` exactly when the auxiliary graph
//! `G_uv` (edges of `G` running between `N(u) \ {v}` and `N(v) \ {u}`) has
//! `t` independent edges: each matching edge `xy` closes the 4-cycle
//! `u x y v`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::matching::capped_matching_adj;

/// A witnessed copy of `B_t`: the shared edge `(u, v)` and legs `(x_i, y_i)`
/// with `u ~ x_i ~ y_i ~ v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BtCertificate {
    pub shared_edge: (usize, usize),
    pub legs: Vec<(usize, usize)>,
}

impl BtCertificate {
    pub fn t(&self) -> usize {
        self.legs.len()
    }

    /// Check every required edge and distinctness against `g`.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let (u, v) = self.shared_edge;
        if !g.has_edge(u, v) {
            return Err(format!("shared edge ({u}, {v}) missing"));
        }
        let mut seen = vec![u, v];
        for &(x, y) in &self.legs {
            for (a, b) in [(u, x), (x, y), (y, v)] {
                if !g.has_edge(a, b) {
                    return Err(format!("edge ({a}, {b}) missing"));
                }
            }
            seen.push(x);
            seen.push(y);
        }
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err("certificate vertices are not distinct".into());
        }
        Ok(())
    }
}

/// `G_uv` together with the original label of each of its vertices.
#[derive(Clone, Debug)]
pub struct AuxGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

/// Local adjacency of `G_uv`: sorted labels and adjacency lists.
fn aux_lists(g: &Graph, u: usize, v: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut side_u = g.neighbor_set(u);
    side_u.remove(v);
    let mut side_v = g.neighbor_set(v);
    side_v.remove(u);
    let mut all = side_u.clone();
    all.union_with(side_v.words());
    let labels: Vec<usize> = all.iter().collect();
    let k = labels.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        let a = labels[i];
        for j in i + 1..k {
            let b = labels[j];
            let crosses = (side_u.contains(a) && side_v.contains(b))
                || (side_v.contains(a) && side_u.contains(b));
            if crosses && g.has_edge(a, b) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    (labels, adj)
}

pub fn aux_graph(g: &Graph, u: usize, v: usize) -> Result<AuxGraph> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAdjacent { u, v });
    }
    let (labels, adj) = aux_lists(g, u, v);
    let mut b = GraphBuilder::new(labels.len());
    for (i, nb) in adj.iter().enumerate() {
        for &j in nb {
            if i < j {
                b.add_edge_unchecked(i, j);
            }
        }
    }
    Ok(AuxGraph {
        graph: b.build(),
        labels,
    })
}

/// `min(nu(G_uv), cap)` without materialising a [`Graph`].
pub fn aux_matching_size(g: &Graph, u: usize, v: usize, cap: usize) -> usize {
    capped_matching_adj(&aux_lists(g, u, v).1, cap).len()
}

/// Lexicographically least `t`-matching of `G_uv`, turned into oriented legs.
fn extract_legs(g: &Graph, u: usize, v: usize, t: usize) -> Option<Vec<(usize, usize)>> {
    let (labels, adj) = aux_lists(g, u, v);
    let k = labels.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, nb) in adj.iter().enumerate() {
        for &j in nb {
            if i < j {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    let residual_nu = |blocked: &[bool], cap: usize| -> usize {
        let sub: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                if blocked[i] {
                    Vec::new()
                } else {
                    adj[i].iter().copied().filter(|&j| !blocked[j]).collect()
                }
            })
            .collect();
        capped_matching_adj(&sub, cap).len()
    };
    let mut blocked = vec![false; k];
    let mut chosen = Vec::with_capacity(t);
    for &(i, j) in &edges {
        if chosen.len() == t {
            break;
        }
        if blocked[i] || blocked[j] {
            continue;
        }
        blocked[i] = true;
        blocked[j] = true;
        let need = t - chosen.len() - 1;
        if residual_nu(&blocked, need) >= need {
            chosen.push((labels[i], labels[j]));
        } else {
            blocked[i] = false;
            blocked[j] = false;
        }
    }
    if chosen.len() < t {
        return None;
    }
    Some(
        chosen
            .into_iter()
            .map(|(a, b)| {
                if g.has_edge(u, a) && g.has_edge(b, v) {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect(),
    )
}

/// The certificate through edge `uv`, if `G_uv` has `t` independent edges.
pub fn certificate_at(g: &Graph, u: usize, v: usize, t: usize) -> Option<BtCertificate> {
    if !g.has_edge(u, v) || aux_matching_size(g, u, v, t) < t {
        return None;
    }
    let legs = extract_legs(g, u, v, t)?;
    Some(BtCertificate {
        shared_edge: (u.min(v), u.max(v)),
        legs,
    })
}

/// A copy of `B_t` through the lexicographically least qualifying edge.
pub fn contains_bt(g: &Graph, t: usize) -> Option<BtCertificate> {
    contains_bt_with(g, t, Exec::default())
}

pub fn contains_bt_with(g: &Graph, t: usize, exec: Exec) -> Option<BtCertificate> {
    let edges = g.edge_list();
    // t legs need t distinct neighbours besides the shared edge on each end
    let hit = exec::find_map_first(exec, &edges, |&(u, v)| {
        (g.degree(u) > t && g.degree(v) > t && aux_matching_size(g, u, v, t) >= t).then_some((u, v))
    })?;
    certificate_at(g, hit.0, hit.1, t)
}

pub fn is_bt_free(g: &Graph, t: usize) -> bool {
    contains_bt(g, t).is_none()
}

/// Independent backtracking search over shared edges and disjoint legs.
pub fn contains_bt_oracle(g: &Graph, t: usize) -> bool {
    if g.n() > 14 {
        log::warn!("contains_bt_oracle on {} vertices may be slow", g.n());
    }
    fn legs(g: &Graph, u: usize, v: usize, t: usize, used: &mut Vec<bool>, min_x: usize) -> bool {
        if t == 0 {
            return true;
        }
        for x in min_x..g.n() {
            if used[x] || !g.has_edge(u, x) {
                continue;
            }
            used[x] = true;
            for y in 0..g.n() {
                if used[y] || !g.has_edge(x, y) || !g.has_edge(y, v) {
                    continue;
                }
                used[y] = true;
                if legs(g, u, v, t - 1, used, x + 1) {
                    return true;
                }
                used[y] = false;
            }
            used[x] = false;
        }
        false
    }
    let mut used = vec![false; g.n()];
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                continue;
            }
            used[u] = true;
            used[v] = true;
            if legs(g, u, v, t, &mut used, 0) {
                return true;
            }
            used[u] = false;
            used[v] = false;
        }
    }
    false
}

/// Whether `G[N(v)]` has a centre `u` with `t` vertex-disjoint legs
/// `u - w_i - w_i'`. Equivalently some `u` in `N(v)` sees a `t`-matching in
/// `G[N(v)] - u` whose every edge touches `N(u)`.
pub fn contains_spider(g: &Graph, v: usize, t: usize) -> bool {
    spider_center(g, v, t).is_some()
}

pub fn spider_center(g: &Graph, v: usize, t: usize) -> Option<usize> {
    let nv: Vec<usize> = g.neighbors(v).collect();
    let nv_set = g.neighbor_set(v);
    for &u in &nv {
        let inner = g.neighbor_set(u);
        if popcount_in(&inner, &nv_set) < t {
            continue;
        }
        let rest: Vec<usize> = nv.iter().copied().filter(|&w| w != u).collect();
        let mut adj = vec![Vec::new(); rest.len()];
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let (a, b) = (rest[i], rest[j]);
                if g.has_edge(a, b) && (inner.contains(a) || inner.contains(b)) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        if capped_matching_adj(&adj, t).len() >= t {
            return Some(u);
        }
    }
    None
}

fn popcount_in(a: &VertexSet, b: &VertexSet) -> usize {
    crate::graph::popcount_and(a.words(), b.words())
}
