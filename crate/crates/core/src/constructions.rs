//! Lower-bound constructions: projective-plane graphs over prime fields,
//! blow-ups, the randomized even-`t` construction and bipartite variants.
//!
//! Vertex numbering is fixed so that results are reproducible:
//! * projective points are normalised triples (first nonzero coordinate 1)
//!   in lexicographic order;
//! * in a blow-up, base vertex `i` owns the contiguous block of its copies,
//!   blocks laid out in base order;
//! * padding vertices are appended at the end.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, GraphBuilder};

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "q = {q} is not prime (only prime fields are supported)"
        )))
    }
}

/// Points of `PG(2, q)` as normalised triples, lexicographically sorted.
pub fn projective_points(q: u64) -> Result<Vec<[u64; 3]>> {
    require_prime(q)?;
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    pts.push([0, 0, 1]);
    for c in 0..q {
        pts.push([0, 1, c]);
    }
    for b in 0..q {
        for c in 0..q {
            pts.push([1, b, c]);
        }
    }
    Ok(pts)
}

fn dot(a: &[u64; 3], b: &[u64; 3], q: u64) -> u64 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q
}

/// Erdős–Rényi polarity graph: points of `PG(2, q)`, `u ~ v` iff `u . v = 0`,
/// loops at absolute points dropped.
pub fn er_polarity(q: u64) -> Result<Graph> {
    let pts = projective_points(q)?;
    let mut b = GraphBuilder::new(pts.len());
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if dot(&pts[i], &pts[j], q) == 0 {
                b.add_edge_unchecked(i, j);
            }
        }
    }
    Ok(b.build())
}

/// Point-line incidence graph of `PG(2, q)`; points on `0..N`, lines (named
/// by their normal vectors, same order) on `N..2N`.
pub fn pg_incidence(q: u64) -> Result<BipartiteGraph> {
    let pts = projective_points(q)?;
    let m = pts.len();
    let mut b = GraphBuilder::new(2 * m);
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if dot(p, l, q) == 0 {
                b.add_edge_unchecked(i, m + j);
            }
        }
    }
    BipartiteGraph::with_prefix(b.build(), m)
}

/// Blow-up with per-vertex block sizes.
#[derive(Clone, Debug)]
pub struct BlowUpSpec {
    pub base: Graph,
    pub block_sizes: Vec<usize>,
}

impl BlowUpSpec {
    pub fn new(base: Graph, block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.len() != base.n() {
            return Err(Error::Unsupported(format!(
                "{} block sizes for {} base vertices",
                block_sizes.len(),
                base.n()
            )));
        }
        if block_sizes.contains(&0) {
            return Err(Error::Unsupported("block sizes must be at least 1".into()));
        }
        Ok(BlowUpSpec { base, block_sizes })
    }

    pub fn uniform(base: Graph, s: usize) -> Result<Self> {
        let n = base.n();
        Self::new(base, vec![s; n])
    }

    /// First vertex of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.block_sizes.len() + 1);
        let mut acc = 0;
        for &s in &self.block_sizes {
            off.push(acc);
            acc += s;
        }
        off.push(acc);
        off
    }

    pub fn build(&self) -> Graph {
        let off = self.offsets();
        let mut b = GraphBuilder::new(off[self.base.n()]);
        for (x, y) in self.base.edges() {
            for i in off[x]..off[x + 1] {
                for j in off[y]..off[y + 1] {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        b.build()
    }
}

/// `G(s)`: vertex `i` becomes the independent block `[i*s, (i+1)*s)`.
pub fn blow_up(base: &Graph, s: usize) -> Result<Graph> {
    if s == 0 {
        return Err(Error::Unsupported("blow-up factor must be at least 1".into()));
    }
    Ok(BlowUpSpec::uniform(base.clone(), s)?.build())
}

/// Largest prime `q >= 2` with `factor * (q^2 + q + 1) <= n`.
pub fn largest_fitting_prime(factor: usize, n: usize) -> Option<u64> {
    let fits = |q: u64| factor as u64 * (q * q + q + 1) <= n as u64;
    if !fits(2) {
        return None;
    }
    let mut q = 2;
    while fits(q + 1) {
        q += 1;
    }
    (2..=q).rev().find(|&p| is_prime(p))
}

/// `s = floor((t+1)/2)` copies of every vertex of the polarity graph for the
/// largest fitting prime, padded with isolated vertices to exactly `n`.
pub fn construct_bt_free(t: usize, n: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::Unsupported("t must be at least 1".into()));
    }
    let s = t.div_ceil(2);
    let q = largest_fitting_prime(s, n).ok_or_else(|| {
        Error::Unsupported(format!("n = {n} cannot hold {s} copies of the q = 2 polarity graph"))
    })?;
    let g = blow_up(&er_polarity(q)?, s)?;
    Ok(g.pad(n - g.n()))
}

/// `f(p) = (s^2 + s(2p - p^2)) / (2 (s + p)^{3/2})`.
pub fn even_profile(p: f64, s: f64) -> f64 {
    (s * s + s * (2.0 * p - p * p)) / (2.0 * (s + p).powf(1.5))
}

/// The maximiser of [`even_profile`] on `[0, 1]`.
pub fn optimal_p(s: usize) -> f64 {
    crate::bounds::optimal_p(s as f64)
}

/// Parameters of the randomized `B_{2s}`-free construction.
#[derive(Clone, Debug)]
pub struct RandomEvenSpec {
    pub s: usize,
    pub base: Graph,
    pub p: f64,
    pub seed: u64,
}

impl RandomEvenSpec {
    pub fn new(s: usize, base: Graph, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Unsupported(format!("p = {p} outside [0, 1]")));
        }
        if s == 0 {
            return Err(Error::Unsupported("s must be at least 1".into()));
        }
        if base.count_c4() != 0 {
            return Err(Error::Unsupported("base graph contains a 4-cycle".into()));
        }
        Ok(RandomEvenSpec { s, base, p, seed })
    }
}

/// Output of the randomized construction, with the chosen set `A`.
#[derive(Clone, Debug)]
pub struct RandomEvenGraph {
    pub graph: Graph,
    /// Sorted base vertices that received `s + 1` copies.
    pub enlarged: Vec<usize>,
    /// Base edges with at least one endpoint in `A`.
    pub edges_meeting: usize,
}

/// Base vertices in `A` get `s + 1` copies, the rest `s`. A base edge becomes
/// `K_{s,s}`, `K_{s,s+1}`, or `K_{s+1,s+1}` minus the matching of equal copy
/// indices, according to how many endpoints lie in `A`.
pub fn construct_bt_free_random_even(spec: &RandomEvenSpec) -> RandomEvenGraph {
    let m = spec.base.n();
    let k = ((spec.p * m as f64).floor() as usize).min(m);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut enlarged = index::sample(&mut rng, m, k).into_vec();
    enlarged.sort_unstable();
    let mut in_a = vec![false; m];
    for &x in &enlarged {
        in_a[x] = true;
    }
    let sizes: Vec<usize> = (0..m).map(|x| spec.s + in_a[x] as usize).collect();
    let blow = BlowUpSpec::new(spec.base.clone(), sizes).expect("sizes are positive");
    let off = blow.offsets();
    let mut b = GraphBuilder::new(off[m]);
    let mut edges_meeting = 0;
    for (x, y) in spec.base.edges() {
        let both = in_a[x] && in_a[y];
        if in_a[x] || in_a[y] {
            edges_meeting += 1;
        }
        for i in 0..blow.block_sizes[x] {
            for j in 0..blow.block_sizes[y] {
                if both && i == j {
                    continue;
                }
                b.add_edge_unchecked(off[x] + i, off[y] + j);
            }
        }
    }
    RandomEvenGraph {
        graph: b.build(),
        enlarged,
        edges_meeting,
    }
}

/// `(a, b)`-blow-up: `X`-vertices become blocks of `a`, `Y`-vertices blocks of
/// `b`. The result keeps `X` first when the base does.
pub fn bipartite_blow_up(base: &BipartiteGraph, a: usize, b: usize) -> Result<BipartiteGraph> {
    if a == 0 || b == 0 {
        return Err(Error::Unsupported("blow-up factors must be at least 1".into()));
    }
    let (base, _) = base.to_prefix_layout();
    let sizes: Vec<usize> = (0..base.graph().n())
        .map(|v| if base.part_x().contains(v) { a } else { b })
        .collect();
    let g = BlowUpSpec::new(base.graph().clone(), sizes)?.build();
    BipartiteGraph::with_prefix(g, a * base.part_x().len())
}

/// `(a, b)`-blow-up of the largest fitting incidence graph with
/// `a = floor((t+1)/2)`, `b = ceil((t+1)/2)`, padded into `Y` up to `n`.
pub fn construct_bipartite_bt_free(t: usize, n: usize) -> Result<BipartiteGraph> {
    if t == 0 {
        return Err(Error::Unsupported("t must be at least 1".into()));
    }
    let a = t.div_ceil(2);
    let b = (t + 2) / 2;
    let q = largest_fitting_prime(a + b, n).ok_or_else(|| {
        Error::Unsupported(format!("n = {n} cannot hold the ({a}, {b})-blow-up of the q = 2 incidence graph"))
    })?;
    let g = bipartite_blow_up(&pg_incidence(q)?, a, b)?;
    let x = g.part_x().len();
    let padded = g.graph().pad(n - g.graph().n());
    BipartiteGraph::with_prefix(padded, x)
}

/// Which generator produced a graph, for metadata records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Er,
    Incidence,
    BlowUp,
    BtFree,
    BipartiteBtFree,
    RandomEven,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::is_bt_free;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&q| is_prime(q)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(matches!(er_polarity(4), Err(Error::Unsupported(_))));
        assert!(matches!(pg_incidence(1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn point_order() {
        let pts = projective_points(2).unwrap();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], [0, 0, 1]);
        assert_eq!(pts[1], [0, 1, 0]);
        assert_eq!(pts[6], [1, 1, 1]);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn polarity_counts() {
        for (q, v, e) in [(2u64, 7, 9), (3, 13, 24), (5, 31, 90)] {
            let g = er_polarity(q).unwrap();
            assert_eq!((g.n(), g.edge_count()), (v, e));
            for a in 0..g.n() {
                for b in a + 1..g.n() {
                    assert!(g.pair_codegree(a, b) <= 1);
                }
            }
        }
        let g5 = er_polarity(5).unwrap();
        assert_eq!(g5.max_degree(), 6);
        // q + 1 absolute points have degree q
        assert_eq!(g5.degrees().iter().filter(|&&d| d == 5).count(), 6);
    }

    #[test]
    fn incidence_counts() {
        let h = pg_incidence(2).unwrap();
        assert_eq!((h.graph().n(), h.graph().edge_count()), (14, 21));
        assert!(h.graph().degrees().iter().all(|&d| d == 3));
        assert_eq!(h.graph().girth(), Some(6));
        let h3 = pg_incidence(3).unwrap();
        assert_eq!((h3.graph().n(), h3.graph().edge_count()), (26, 52));
        assert!(h3.graph().degrees().iter().all(|&d| d == 4));
        assert_eq!(h3.graph().count_c4(), 0);
    }

    #[test]
    fn blow_up_examples() {
        let p3 = Graph::path(3);
        let g = blow_up(&p3, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 8));
        assert_eq!(blow_up(&Graph::complete(2), 3).unwrap(), Graph::complete_bipartite(3, 3));
        let g = blow_up(&er_polarity(2).unwrap(), 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (14, 36));
        assert!(is_bt_free(&g, 3));
        assert!(blow_up(&p3, 0).is_err());
    }

    #[test]
    fn bt_free_examples() {
        let g = construct_bt_free(3, 62).unwrap();
        assert_eq!((g.n(), g.edge_count()), (62, 360));
        assert!(is_bt_free(&g, 3));
        let g = construct_bt_free(1, 7).unwrap();
        assert_eq!(g, er_polarity(2).unwrap());
        let g = construct_bt_free(2, 31).unwrap();
        assert_eq!(g.edge_count(), 90);
        assert!(is_bt_free(&g, 2));
        assert!(construct_bt_free(3, 13).is_err());
    }

    #[test]
    fn optimal_p_values() {
        assert!((optimal_p(1) - (10f64.sqrt() - 3.0)).abs() < 1e-12);
        assert!((optimal_p(2) - (3.0 * 3f64.sqrt() - 5.0)).abs() < 1e-12);
        assert!((optimal_p(1_000_000) - 0.25).abs() < 1e-4);
    }

    #[test]
    fn random_even_p_zero_is_base() {
        let base = er_polarity(2).unwrap();
        let spec = RandomEvenSpec::new(1, base.clone(), 0.0, 9).unwrap();
        let out = construct_bt_free_random_even(&spec);
        assert_eq!(out.graph, base);
        assert!(is_bt_free(&out.graph, 2));
    }

    #[test]
    fn random_even_rejects() {
        let base = er_polarity(2).unwrap();
        assert!(RandomEvenSpec::new(1, base, 1.5, 0).is_err());
        assert!(RandomEvenSpec::new(1, Graph::cycle(4), 0.1, 0).is_err());
    }

    #[test]
    fn bipartite_examples() {
        let k2 = BipartiteGraph::complete(1, 1);
        assert_eq!(bipartite_blow_up(&k2, 2, 3).unwrap(), BipartiteGraph::complete(2, 3));
        let heawood = pg_incidence(2).unwrap();
        assert_eq!(bipartite_blow_up(&heawood, 1, 1).unwrap(), heawood);
        let g = bipartite_blow_up(&heawood, 1, 2).unwrap();
        assert_eq!((g.graph().n(), g.graph().edge_count()), (21, 42));
        assert!(is_bt_free(g.graph(), 2));

        assert_eq!(construct_bipartite_bt_free(1, 14).unwrap(), heawood);
        let g = construct_bipartite_bt_free(2, 21).unwrap();
        assert_eq!(g.graph().edge_count(), 42);
        // 3 * 13 = 39 <= 42, so q = 3 is the largest fitting prime here
        let g = construct_bipartite_bt_free(2, 42).unwrap();
        assert_eq!((g.graph().n(), g.graph().edge_count()), (42, 104));
        assert!(is_bt_free(g.graph(), 2));
        let g = construct_bipartite_bt_free(3, 28).unwrap();
        assert_eq!(g.graph().edge_count(), 84);
        assert!(is_bt_free(g.graph(), 3));
    }
}
