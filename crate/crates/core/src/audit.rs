//! Good sets, 4-cycle counts through good sets, and exact checks of the
//! counting inequalities satisfied by `B_t`-free graphs.
//!
//! All arithmetic is in integers. Where an inequality carries a factor 1/2
//! both sides are doubled; the report id says so.

use serde::{Deserialize, Serialize};

use crate::detect::{contains_bt, contains_spider};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{BipartiteGraph, Graph, Side, VertexSet};

/// Audit runs refuse larger `t` unless explicitly overridden; enumeration
/// cost grows like `sum_w binom(d(w), t)`.
pub const DEFAULT_MAX_T: usize = 5;

/// A `t`-set with at least `t + 1` common neighbours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GoodSet {
    pub members: Vec<usize>,
    pub codegree: usize,
}

impl GoodSet {
    pub fn to_vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.members.iter().copied()).expect("members in range")
    }
}

/// One checked inequality; `holds` is exactly `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub inequality_id: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<Vec<usize>>,
}

impl AuditReport {
    fn new(id: impl Into<String>, lhs: i64, rhs: i64, witnesses: Vec<Vec<usize>>) -> Self {
        AuditReport {
            inequality_id: id.into(),
            lhs,
            rhs,
            holds: lhs >= rhs,
            witnesses,
        }
    }
}

/// Visit every good `t`-set `S` whose least common neighbour is `w`. Every
/// good set lies inside `N(w)` for each `w` in `N(S)`; requiring `w` to be the
/// least one visits it exactly once overall.
fn visit_good_sets_at<F: FnMut(&[usize], usize)>(g: &Graph, t: usize, w: usize, f: &mut F) {
    let nbrs: Vec<usize> = g.neighbors(w).collect();
    if nbrs.len() < t {
        return;
    }
    let mut stack = Vec::with_capacity(t);

    #[allow(clippy::too_many_arguments)]
    fn go<F: FnMut(&[usize], usize)>(
        g: &Graph,
        t: usize,
        w: usize,
        nbrs: &[usize],
        start: usize,
        stack: &mut Vec<usize>,
        common: &[u64],
        f: &mut F,
    ) {
        if stack.len() == t {
            let d: usize = common.iter().map(|x| x.count_ones() as usize).sum();
            if d > t && lowest_bit(common) == Some(w) {
                f(stack, d);
            }
            return;
        }
        let remaining = t - stack.len();
        for i in start..nbrs.len() {
            if nbrs.len() - i < remaining {
                break;
            }
            let x = nbrs[i];
            let next: Vec<u64> = common.iter().zip(g.row(x)).map(|(a, b)| a & b).collect();
            let d: usize = next.iter().map(|x| x.count_ones() as usize).sum();
            if d <= t {
                continue;
            }
            stack.push(x);
            go(g, t, w, nbrs, i + 1, stack, &next, f);
            stack.pop();
        }
    }

    if t == 0 {
        return;
    }
    // every member shrinks the running common neighbourhood, which always
    // keeps w since S lies in N(w)
    let full: Vec<u64> = {
        let mut v = vec![!0u64; g.stride()];
        let extra = g.stride() * 64 - g.n();
        if extra > 0 {
            let last = v.len() - 1;
            v[last] = !0u64 >> extra;
        }
        v
    };
    go(g, t, w, &nbrs, 0, &mut stack, &full, f);
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

/// All good `t`-sets, each once, sorted by members.
pub fn enumerate_good_sets(g: &Graph, t: usize) -> Vec<GoodSet> {
    enumerate_good_sets_with(g, t, Exec::default())
}

pub fn enumerate_good_sets_with(g: &Graph, t: usize, exec: Exec) -> Vec<GoodSet> {
    let per_vertex = exec::map_range(exec, 0..g.n(), |w| {
        let mut out = Vec::new();
        visit_good_sets_at(g, t, w, &mut |s, d| {
            out.push(GoodSet {
                members: s.to_vec(),
                codegree: d,
            })
        });
        out
    });
    let mut all: Vec<GoodSet> = per_vertex.into_iter().flatten().collect();
    all.sort_unstable();
    all
}

/// `sum over good t-sets S of d(S) (d(S) - 1)`.
pub fn good_set_sum(g: &Graph, t: usize) -> u64 {
    good_set_sum_with(g, t, Exec::default())
}

pub fn good_set_sum_with(g: &Graph, t: usize, exec: Exec) -> u64 {
    exec::sum_range(exec, 0..g.n(), |w| {
        let mut acc = 0u64;
        visit_good_sets_at(g, t, w, &mut |_, d| acc += (d * (d - 1)) as u64);
        acc
    })
}

/// Symmetric pair matrix: pairs contained in some good `t`-set.
struct PairMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl PairMatrix {
    fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }
}

fn extendable_pairs(g: &Graph, t: usize, exec: Exec) -> PairMatrix {
    let n = g.n();
    let mut bits = vec![false; n * n];
    if t >= 2 {
        for s in enumerate_good_sets_with(g, t, exec) {
            for (i, &a) in s.members.iter().enumerate() {
                for &b in &s.members[i + 1..] {
                    bits[a * n + b] = true;
                    bits[b * n + a] = true;
                }
            }
        }
    }
    PairMatrix { n, bits }
}

fn binom2(d: usize) -> u64 {
    (d as u64) * (d as u64).saturating_sub(1) / 2
}

/// Number of 4-cycles having an opposite pair inside some good `t`-set.
pub fn n_c4_good(g: &Graph, t: usize) -> u64 {
    n_c4_good_with(g, t, Exec::default())
}

pub fn n_c4_good_with(g: &Graph, t: usize, exec: Exec) -> u64 {
    let ext = extendable_pairs(g, t, exec);
    let n = g.n();
    let mut single = 0u64;
    let mut both_twice = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            if !ext.contains(a, b) {
                continue;
            }
            let common: Vec<usize> = g.common_neighbors(&[a, b]).iter().collect();
            single += binom2(common.len());
            for (i, &c) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if ext.contains(c, d) {
                        both_twice += 1;
                    }
                }
            }
        }
    }
    single - both_twice / 2
}

/// Number of 4-cycles `C` with `C` restricted to `side` inside a good `t`-set.
pub fn n_c4_good_bip(g: &BipartiteGraph, t: usize, side: Side) -> u64 {
    let ext = extendable_pairs(g.graph(), t, Exec::default());
    let part: Vec<usize> = g.part(side).iter().collect();
    let mut total = 0u64;
    for (i, &a) in part.iter().enumerate() {
        for &b in &part[i + 1..] {
            if ext.contains(a, b) {
                total += binom2(g.graph().pair_codegree(a, b));
            }
        }
    }
    total
}

fn require_free(g: &Graph, t: usize) -> Result<()> {
    match contains_bt(g, t) {
        Some(certificate) => Err(Error::Precondition { t, certificate }),
        None => Ok(()),
    }
}

/// `sum_{good S, |S|=t} d(S)(d(S)-1) >= sum_u d(u)^2 - 2(4t-1) e - (t-1) n^2`.
pub fn check_lemma21(g: &Graph, t: usize) -> Result<AuditReport> {
    require_free(g, t)?;
    let lhs = good_set_sum(g, t) as i64;
    let n = g.n() as i64;
    let t_ = t as i64;
    let rhs = g.sum_degree_squares() as i64 - 2 * (4 * t_ - 1) * g.edge_count() as i64 - (t_ - 1) * n * n;
    Ok(AuditReport::new("lemma21", lhs, rhs, Vec::new()))
}

/// For each side `i` (other side `j`):
/// `2 N_i(C4) >= binom(t,2) (sum_{u in V_i} d(u)^2 - (2t-1) e - (t-1) n_j^2)`.
pub fn check_lemma22(g: &BipartiteGraph, t: usize) -> Result<Vec<AuditReport>> {
    require_free(g.graph(), t)?;
    let t_ = t as i64;
    let e = g.graph().edge_count() as i64;
    let pairs = t_ * (t_ - 1) / 2;
    let mut out = Vec::with_capacity(2);
    for (side, other, name) in [(Side::X, Side::Y, "lemma22_side1_doubled"), (Side::Y, Side::X, "lemma22_side2_doubled")] {
        let sq: i64 = g
            .part(side)
            .iter()
            .map(|u| (g.graph().degree(u) as i64).pow(2))
            .sum();
        let nj = g.part(other).len() as i64;
        let lhs = 2 * n_c4_good_bip(g, t, side) as i64;
        let rhs = pairs * (sq - (2 * t_ - 1) * e - (t_ - 1) * nj * nj);
        out.push(AuditReport::new(name, lhs, rhs, Vec::new()));
    }
    Ok(out)
}

/// Per edge: `#C4 through uv <= (t-1)(d(u)+d(v))`, reported as the minimum
/// slack over all edges against 0, with violating edges as witnesses. Also
/// the aggregate `4 #C4 <= (t-1) sum_u d(u)^2`.
pub fn check_per_edge_c4_bound(g: &Graph, t: usize) -> Result<Vec<AuditReport>> {
    check_per_edge_c4_bound_with(g, t, Exec::default())
}

pub fn check_per_edge_c4_bound_with(g: &Graph, t: usize, exec: Exec) -> Result<Vec<AuditReport>> {
    require_free(g, t)?;
    let edges = g.edge_list();
    let slacks = exec::map_collect(exec, &edges, |&(u, v)| {
        let bound = (t as i64 - 1) * (g.degree(u) + g.degree(v)) as i64;
        bound - g.c4_through_edge(u, v) as i64
    });
    let min_slack = slacks.iter().copied().min().unwrap_or(0);
    let witnesses: Vec<Vec<usize>> = edges
        .iter()
        .zip(&slacks)
        .filter(|(_, &s)| s < 0)
        .map(|(&(u, v), _)| vec![u, v])
        .collect();
    let per_edge = AuditReport::new("per_edge_c4_slack", min_slack, 0, witnesses);
    let lhs = (t as i64 - 1) * g.sum_degree_squares() as i64;
    let rhs = 4 * g.count_c4() as i64;
    let aggregate = AuditReport::new("c4_aggregate", lhs, rhs, Vec::new());
    Ok(vec![per_edge, aggregate])
}

/// For every `v`: `G[N(v)]` has no spider with `t` legs of length two, and
/// `2 e(G[N(v)]) <= (2t-1) d(v)`. Reported as the minimum of
/// `(2t-1) d(v) - 2 e(G[N(v)])` against 0; witnesses are failing vertices.
pub fn check_spider_claim(g: &Graph, t: usize) -> Result<AuditReport> {
    check_spider_claim_with(g, t, Exec::default())
}

pub fn check_spider_claim_with(g: &Graph, t: usize, exec: Exec) -> Result<AuditReport> {
    require_free(g, t)?;
    let rows = exec::map_range(exec, 0..g.n(), |v| {
        let nv = g.neighbor_set(v);
        let inner = g.induced_edge_count(&nv) as i64;
        let slack = (2 * t as i64 - 1) * g.degree(v) as i64 - 2 * inner;
        (slack, contains_spider(g, v, t))
    });
    let min_slack = rows.iter().map(|r| r.0).min().unwrap_or(0);
    let witnesses: Vec<Vec<usize>> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.0 < 0 || r.1)
        .map(|(v, _)| vec![v])
        .collect();
    // a spider counts as a violation even when the edge bound has slack
    let lhs = if witnesses.is_empty() { min_slack } else { min_slack.min(-1) };
    Ok(AuditReport::new("spider_claim", lhs, 0, witnesses))
}

/// Selectable checks for batch audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Lemma21,
    Lemma22,
    PerEdge,
    Spider,
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lemma21" => Ok(Check::Lemma21),
            "lemma22" => Ok(Check::Lemma22),
            "peredge" => Ok(Check::PerEdge),
            "spider" => Ok(Check::Spider),
            other => Err(Error::Unsupported(format!("unknown check `{other}`"))),
        }
    }
}

/// Run `checks` on one graph. `lemma22` needs a bipartition: the supplied one,
/// else a 2-colouring; non-bipartite graphs skip it.
pub fn run_checks(g: &Graph, bip: Option<&BipartiteGraph>, t: usize, checks: &[Check]) -> Result<Vec<AuditReport>> {
    let mut out = Vec::new();
    for check in checks {
        match check {
            Check::Lemma21 => out.push(check_lemma21(g, t)?),
            Check::Lemma22 => {
                let owned;
                let b = match bip {
                    Some(b) => Some(b),
                    None => {
                        owned = BipartiteGraph::from_coloring(g.clone()).ok();
                        owned.as_ref()
                    }
                };
                if let Some(b) = b {
                    out.extend(check_lemma22(b, t)?);
                }
            }
            Check::PerEdge => out.extend(check_per_edge_c4_bound(g, t)?),
            Check::Spider => out.push(check_spider_claim(g, t)?),
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::constructions::{blow_up, er_polarity, pg_incidence};

    /// Good t-sets by scanning every t-subset of the vertex set.
    pub(crate) fn brute_good_sets(g: &Graph, t: usize) -> Vec<GoodSet> {
        fn go(g: &Graph, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<GoodSet>) {
            if cur.len() == t {
                let d = g.common_neighbors(cur).len();
                if d > t {
                    out.push(GoodSet {
                        members: cur.clone(),
                        codegree: d,
                    });
                }
                return;
            }
            for v in start..g.n() {
                cur.push(v);
                go(g, t, v + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(g, t, 0, &mut Vec::new(), &mut out);
        out
    }

    /// 4-cycles as (a, c, b, d) with diagonals {a,b}, {c,d}, each once.
    pub(crate) fn brute_c4s(g: &Graph) -> Vec<[usize; 4]> {
        let n = g.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in a + 1..n {
                    for d in c + 1..n {
                        if [b, c, d].contains(&a) || b == c || b == d {
                            continue;
                        }
                        // a is the minimum vertex; cycle a-c-b-d-a
                        if b < a {
                            continue;
                        }
                        if g.has_edge(a, c) && g.has_edge(c, b) && g.has_edge(b, d) && g.has_edge(d, a) {
                            out.push([a, c, b, d]);
                        }
                    }
                }
            }
        }
        out
    }

    pub(crate) fn brute_n_c4_good(g: &Graph, t: usize) -> u64 {
        let good = brute_good_sets(g, t);
        let in_good = |x: usize, y: usize| good.iter().any(|s| s.members.contains(&x) && s.members.contains(&y));
        brute_c4s(g)
            .into_iter()
            .filter(|c| in_good(c[0], c[2]) || in_good(c[1], c[3]))
            .count() as u64
    }

    #[test]
    fn brute_c4_matches_codegree_formula() {
        for g in [Graph::complete(5), Graph::complete_bipartite(3, 3), Graph::cycle(4), Graph::book(3)] {
            assert_eq!(brute_c4s(&g).len() as u64, g.count_c4());
        }
    }

    #[test]
    fn good_set_examples() {
        let k33 = Graph::complete_bipartite(3, 3);
        let good = enumerate_good_sets(&k33, 2);
        assert_eq!(good.len(), 6);
        assert!(good.iter().all(|s| s.codegree == 3));
        assert_eq!(good, brute_good_sets(&k33, 2));
        assert_eq!(good_set_sum(&k33, 2), 36);

        let heawood = pg_incidence(2).unwrap();
        assert!(enumerate_good_sets(heawood.graph(), 2).is_empty());
        assert_eq!(good_set_sum(heawood.graph(), 2), 0);

        assert!(enumerate_good_sets(&Graph::empty(6), 2).is_empty());
        assert!(enumerate_good_sets(&Graph::empty(6), 1).is_empty());
    }

    #[test]
    fn singleton_good_sets() {
        // t = 1: good singletons are vertices of degree >= 2
        let g = er_polarity(3).unwrap();
        let expect: u64 = g
            .degrees()
            .iter()
            .filter(|&&d| d >= 2)
            .map(|&d| (d * (d - 1)) as u64)
            .sum();
        assert_eq!(good_set_sum(&g, 1), expect);
    }

    #[test]
    fn n_c4_examples() {
        let k33 = Graph::complete_bipartite(3, 3);
        assert_eq!(n_c4_good(&k33, 2), 9);
        assert_eq!(n_c4_good(pg_incidence(2).unwrap().graph(), 2), 0);
        // a 1-set never contains an opposite pair
        assert_eq!(n_c4_good(&Graph::cycle(4), 1), 0);
        assert_eq!(brute_n_c4_good(&Graph::cycle(4), 1), 0);

        let k33b = BipartiteGraph::complete(3, 3);
        assert_eq!(n_c4_good_bip(&k33b, 2, Side::X), 9);
        let k23 = BipartiteGraph::complete(2, 3);
        assert_eq!(n_c4_good_bip(&k23, 2, Side::X), 3);
        assert_eq!(n_c4_good_bip(&k23, 2, Side::Y), 0);
        let h = pg_incidence(2).unwrap();
        assert_eq!(n_c4_good_bip(&h, 2, Side::X), 0);
        assert_eq!(n_c4_good_bip(&h, 2, Side::Y), 0);
    }

    #[test]
    fn lemma21_examples() {
        let r = check_lemma21(&Graph::empty(5), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs, -25);
        let h = pg_incidence(2).unwrap();
        let r = check_lemma21(h.graph(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (0, 126 - 294 - 196));
        assert!(r.holds);
        assert!(matches!(check_lemma21(&Graph::complete_bipartite(3, 3), 2), Err(Error::Precondition { .. })));
    }

    #[test]
    fn lemma22_examples() {
        let h = pg_incidence(2).unwrap();
        let r = check_lemma22(&h, 2).unwrap();
        assert_eq!((r[1].lhs, r[1].rhs), (0, 63 - 63 - 49));
        assert!(r.iter().all(|x| x.holds));
        let k2 = BipartiteGraph::complete(1, 1);
        assert!(check_lemma22(&k2, 2).unwrap().iter().all(|x| x.holds));
    }

    #[test]
    fn per_edge_examples() {
        let g = er_polarity(3).unwrap();
        let r = check_per_edge_c4_bound(&g, 2).unwrap();
        assert!(r.iter().all(|x| x.holds));
        let g = blow_up(&er_polarity(2).unwrap(), 2).unwrap();
        let r = check_per_edge_c4_bound(&g, 3).unwrap();
        assert!(r.iter().all(|x| x.holds), "{r:?}");
    }

    #[test]
    fn spider_examples() {
        let g = blow_up(&er_polarity(3).unwrap(), 2).unwrap();
        assert!(check_spider_claim(&g, 3).unwrap().holds);
        let h = pg_incidence(3).unwrap();
        let r = check_spider_claim(h.graph(), 1).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn checks_parse() {
        let c: Vec<Check> = "lemma21,lemma22,peredge,spider"
            .split(',')
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(c.len(), 4);
        assert!("bogus".parse::<Check>().is_err());
    }
}
