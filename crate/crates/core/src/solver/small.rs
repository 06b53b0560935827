//! Bitmask kernels for graphs on at most 16 vertices, indexed by search slot.

use crate::graph::{Graph, GraphBuilder};

pub(crate) const MAX_N: usize = 16;

pub(crate) type Adj = [u16; MAX_N];

/// Slot structure of a search: which slots may exchange vertices (same
/// class), which slot pairs are edge positions, and the order of positions.
///
/// Position `(l, k)` with `l < k` belongs to column `k`; columns come in slot
/// order and positions within a column by `l`. Whatever the order, the
/// maximum-code member of an isomorphism class loses its last edge to a
/// maximum-code parent, which is what orderly generation needs.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub n: usize,
    pub class: Vec<u8>,
    pub positions: Vec<(u8, u8)>,
    /// Earlier slots paired with slot `k`, ascending.
    pub earlier: Vec<Vec<u8>>,
    /// Output vertex label of each slot.
    pub label: Vec<usize>,
}

impl Layout {
    pub fn general(n: usize) -> Self {
        Self::build(n, vec![0; n], (0..n).collect(), false)
    }

    /// `X` and `Y` slots interleaved (`x0 y0 x1 y1 ...`), leftovers last; in
    /// the output `X` takes labels `0..x_len`.
    pub fn bipartite(x_len: usize, y_len: usize) -> Self {
        let n = x_len + y_len;
        let mut class = Vec::with_capacity(n);
        let mut label = Vec::with_capacity(n);
        let (mut xi, mut yi) = (0, 0);
        while xi < x_len || yi < y_len {
            if xi < x_len {
                class.push(0);
                label.push(xi);
                xi += 1;
            }
            if yi < y_len {
                class.push(1);
                label.push(x_len + yi);
                yi += 1;
            }
        }
        Self::build(n, class, label, true)
    }

    fn build(n: usize, class: Vec<u8>, label: Vec<usize>, bip: bool) -> Self {
        assert!(n <= MAX_N);
        let mut positions = Vec::new();
        let mut earlier = vec![Vec::new(); n];
        for k in 0..n {
            for l in 0..k {
                if !bip || class[l] != class[k] {
                    positions.push((l as u8, k as u8));
                    earlier[k].push(l as u8);
                }
            }
        }
        Layout {
            n,
            class,
            positions,
            earlier,
            label,
        }
    }

    /// Maximum code over class-preserving permutations, checked by
    /// backtracking that stops at the first permutation beating `adj`.
    pub fn is_canonical(&self, adj: &Adj) -> bool {
        let twin = self.twins(adj);
        let mut sigma = [0u8; MAX_N];
        !self.beats(adj, &twin, 0, &mut sigma, 0)
    }

    fn twins(&self, adj: &Adj) -> [u8; MAX_N] {
        let mut twin = [0u8; MAX_N];
        for v in 0..self.n {
            twin[v] = v as u8;
            for u in 0..v {
                if twin[u] as usize == u
                    && self.class[u] == self.class[v]
                    && adj[u] & !(1 << v) == adj[v] & !(1 << u)
                {
                    twin[v] = u as u8;
                    break;
                }
            }
        }
        twin
    }

    /// Whether some completion of `sigma[..k]` yields a larger code.
    fn beats(&self, adj: &Adj, twin: &[u8; MAX_N], k: usize, sigma: &mut [u8; MAX_N], placed: u16) -> bool {
        if k == self.n {
            return false;
        }
        let mut tried: u16 = 0;
        for v in 0..self.n {
            if placed >> v & 1 == 1 || self.class[v] != self.class[k] || tried >> twin[v] & 1 == 1 {
                continue;
            }
            tried |= 1 << twin[v];
            let mut ord = std::cmp::Ordering::Equal;
            for &l in &self.earlier[k] {
                let mine = adj[sigma[l as usize] as usize] >> v & 1;
                let orig = adj[l as usize] >> k & 1;
                if mine != orig {
                    ord = mine.cmp(&orig);
                    break;
                }
            }
            match ord {
                std::cmp::Ordering::Greater => return true,
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => {
                    sigma[k] = v as u8;
                    if self.beats(adj, twin, k + 1, sigma, placed | 1 << v) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// The slot graph with output labels.
    pub fn to_graph(&self, adj: &Adj) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for k in 0..self.n {
            for l in 0..k {
                if adj[k] >> l & 1 == 1 {
                    b.add_edge_unchecked(self.label[l], self.label[k]);
                }
            }
        }
        b.build()
    }
}

pub(crate) fn add(adj: &mut Adj, u: usize, v: usize) {
    adj[u] |= 1 << v;
    adj[v] |= 1 << u;
}

pub(crate) fn remove(adj: &mut Adj, u: usize, v: usize) {
    adj[u] &= !(1 << v);
    adj[v] &= !(1 << u);
}

/// `t` disjoint legs `x - y` with `x` in `a`, `y` in `b`, legs ordered by `x`.
fn legs(adj: &Adj, a: u16, b: u16, avail: u16, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    let mut xs = a & avail;
    while xs != 0 {
        if (xs.count_ones() as usize) < t {
            return false;
        }
        let x = xs.trailing_zeros() as usize;
        xs &= xs - 1;
        let mut ys = adj[x] & b & avail & !(1 << x);
        while ys != 0 {
            let y = ys.trailing_zeros() as usize;
            ys &= ys - 1;
            let rest = avail & !(1 << x) & !(1 << y);
            // later legs start above x
            let higher = a & !((2u16 << x).wrapping_sub(1));
            if legs(adj, higher, b, rest, t - 1) {
                return true;
            }
        }
    }
    false
}

/// Whether `B_t` sits on the edge `uv`.
pub(crate) fn bt_at(adj: &Adj, u: usize, v: usize, t: usize) -> bool {
    let a = adj[u] & !(1 << v);
    let b = adj[v] & !(1 << u);
    if (a.count_ones() as usize) < t || (b.count_ones() as usize) < t {
        return false;
    }
    legs(adj, a, b, !(1 << u | 1 << v), t)
}

#[cfg(test)]
pub(crate) fn contains_bt(adj: &Adj, n: usize, t: usize) -> bool {
    (0..n).any(|u| {
        let mut vs = adj[u] & !((2u16 << u).wrapping_sub(1));
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            if bt_at(adj, u, v, t) {
                return true;
            }
        }
        false
    })
}

/// Whether `adj + uv` stays `B_t`-free, given `adj` is. Any new copy uses
/// `uv`, so its shared edge has an endpoint in `N[u] | N[v]`.
pub(crate) fn stays_free(adj: &mut Adj, n: usize, u: usize, v: usize, t: usize) -> bool {
    add(adj, u, v);
    let ball = adj[u] | adj[v] | 1 << u | 1 << v;
    let mut ok = true;
    'outer: for a in 0..n {
        let mut bs = adj[a] & !((2u16 << a).wrapping_sub(1));
        let a_in = ball >> a & 1 == 1;
        if !a_in {
            bs &= ball;
        }
        while bs != 0 {
            let b = bs.trailing_zeros() as usize;
            bs &= bs - 1;
            if bt_at(adj, a, b, t) {
                ok = false;
                break 'outer;
            }
        }
    }
    remove(adj, u, v);
    ok
}
