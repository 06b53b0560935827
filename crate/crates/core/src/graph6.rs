//! graph6 / sparse6 codecs and the bipartite sidecar format.
//!
//! A bipartite graph is written as a header line `bip <|X|> <|Y|>` followed
//! by the graph6 line of a labelling with `X` on `0..|X|`.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph, GraphBuilder};

const BIAS: u8 = 63;
const GRAPH6_HEADER: &[u8] = b">>graph6<<";
const SPARSE6_HEADER: &[u8] = b">>sparse6<<";

fn parse_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        msg: msg.into(),
    }
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Returns `(n, bytes consumed)`.
fn decode_size(bytes: &[u8], base: usize) -> Result<(usize, usize)> {
    let sextet = |i: usize| -> Result<usize> {
        match bytes.get(i) {
            Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok((b - BIAS) as usize),
            Some(_) => Err(parse_err(base + i, "byte outside printable graph6 range")),
            None => Err(parse_err(base + i, "truncated size header")),
        }
    };
    match bytes.first() {
        None => Err(parse_err(base, "empty input")),
        Some(&126) if bytes.get(1) == Some(&126) => {
            let mut n = 0usize;
            for i in 2..8 {
                n = (n << 6) | sextet(i)?;
            }
            Ok((n, 8))
        }
        Some(&126) => {
            let mut n = 0usize;
            for i in 1..4 {
                n = (n << 6) | sextet(i)?;
            }
            Ok((n, 4))
        }
        Some(_) => Ok((sextet(0)?, 1)),
    }
}

fn push_bits(out: &mut Vec<u8>, bits: &[bool]) {
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - i);
            }
        }
        out.push(v + BIAS);
    }
}

fn trim_line(bytes: &[u8]) -> &[u8] {
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    &bytes[..end]
}

/// Standard graph6 encoding (no header, no newline).
pub fn encode_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_size(n, &mut out);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    push_bits(&mut out, &bits);
    out
}

pub fn encode_graph6_string(g: &Graph) -> String {
    String::from_utf8(encode_graph6(g)).expect("graph6 is ASCII")
}

pub fn decode_graph6(input: &[u8]) -> Result<Graph> {
    let mut bytes = trim_line(input);
    let mut base = 0;
    if bytes.starts_with(GRAPH6_HEADER) {
        bytes = &bytes[GRAPH6_HEADER.len()..];
        base = GRAPH6_HEADER.len();
    }
    let (n, used) = decode_size(bytes, base)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[used..];
    let expect = nbits.div_ceil(6);
    if body.len() != expect {
        let at = base + used + body.len().min(expect);
        return Err(parse_err(
            at,
            format!("expected {expect} data bytes for n = {n}, found {}", body.len()),
        ));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(BIAS..=BIAS + 63).contains(&byte) {
                return Err(parse_err(base + used + k / 6, "byte outside printable graph6 range"));
            }
            if (byte - BIAS) >> (5 - k % 6) & 1 == 1 {
                b.add_edge_unchecked(i, j);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let last = body[body.len() - 1];
        if !(BIAS..=BIAS + 63).contains(&last) {
            return Err(parse_err(base + used + body.len() - 1, "byte outside printable graph6 range"));
        }
        let pad = 6 - nbits % 6;
        if (last - BIAS) & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + used + body.len() - 1, "nonzero trailing padding bits"));
        }
    }
    Ok(b.build())
}

fn bits_for(n: usize) -> usize {
    let mut k = 0;
    let mut m = n.saturating_sub(1);
    while m > 0 {
        k += 1;
        m >>= 1;
    }
    k
}

/// Standard sparse6 encoding, including the leading `:`.
pub fn encode_sparse6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let k = bits_for(n);
    let mut out = vec![b':'];
    encode_size(n, &mut out);

    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_unstable_by_key(|&(u, w)| (w, u));

    let mut bits: Vec<bool> = Vec::new();
    let push = |bits: &mut Vec<bool>, b: bool, x: usize| {
        bits.push(b);
        for i in (0..k).rev() {
            bits.push(x >> i & 1 == 1);
        }
    };
    let mut v = 0usize;
    for &(u, w) in &edges {
        if w == v {
            push(&mut bits, false, u);
        } else if w == v + 1 {
            push(&mut bits, true, u);
            v = w;
        } else {
            push(&mut bits, true, w);
            push(&mut bits, false, u);
            v = w;
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n == 1 << k && pad > k && v + 2 == n {
        // a run of 1s would otherwise decode as a spurious (n-1, n-1) entry
        bits.push(false);
        bits.extend(std::iter::repeat_n(true, pad - 1));
    } else {
        bits.extend(std::iter::repeat_n(true, pad));
    }
    push_bits(&mut out, &bits);
    out
}

pub fn decode_sparse6(input: &[u8]) -> Result<Graph> {
    let mut bytes = trim_line(input);
    let mut base = 0;
    if bytes.starts_with(SPARSE6_HEADER) {
        bytes = &bytes[SPARSE6_HEADER.len()..];
        base = SPARSE6_HEADER.len();
    }
    if bytes.first() != Some(&b':') {
        return Err(parse_err(base, "sparse6 must start with ':'"));
    }
    let (n, used) = decode_size(&bytes[1..], base + 1)?;
    let body_off = base + 1 + used;
    let body = &bytes[1 + used..];
    let mut bits = Vec::with_capacity(body.len() * 6);
    for (i, &byte) in body.iter().enumerate() {
        if !(BIAS..=BIAS + 63).contains(&byte) {
            return Err(parse_err(body_off + i, "byte outside printable range"));
        }
        for s in (0..6).rev() {
            bits.push((byte - BIAS) >> s & 1 == 1);
        }
    }
    let k = bits_for(n);
    let mut b = GraphBuilder::new(n);
    let mut v = 0usize;
    let mut pos = 0;
    while pos + 1 + k <= bits.len() {
        let bit = bits[pos];
        let mut x = 0usize;
        for i in 0..k {
            x = (x << 1) | bits[pos + 1 + i] as usize;
        }
        let at = body_off + pos / 6;
        pos += 1 + k;
        if bit {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x == v {
            return Err(parse_err(at, format!("self-loop at vertex {x}")));
        } else {
            b.add_edge_unchecked(x, v);
        }
    }
    Ok(b.build())
}

/// Decode a single line in either format.
pub fn decode_any(line: &[u8]) -> Result<Graph> {
    let l = trim_line(line);
    if l.starts_with(b":") || l.starts_with(SPARSE6_HEADER) {
        decode_sparse6(l)
    } else {
        decode_graph6(l)
    }
}

/// Sidecar text: header line plus graph6 line, both newline-terminated.
pub fn encode_bipartite(g: &BipartiteGraph) -> String {
    let (g, _) = g.to_prefix_layout();
    format!(
        "bip {} {}\n{}\n",
        g.part_x().len(),
        g.part_y().len(),
        encode_graph6_string(g.graph())
    )
}

fn parse_bip_header(line: &str, offset: usize) -> Result<(usize, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("bip") {
        return Err(parse_err(offset, "expected `bip <|X|> <|Y|>`"));
    }
    let mut num = || -> Result<usize> {
        parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(offset, "bad part size in bip header"))
    };
    let x = num()?;
    let y = num()?;
    Ok((x, y))
}

/// A graph read from a stream, with or without a bipartite header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl Record {
    pub fn graph(&self) -> &Graph {
        match self {
            Record::General(g) => g,
            Record::Bipartite(b) => b.graph(),
        }
    }

    /// The bipartite view: the recorded parts when present, otherwise a
    /// 2-colouring.
    pub fn to_bipartite(&self) -> Result<BipartiteGraph> {
        match self {
            Record::General(g) => BipartiteGraph::from_coloring(g.clone()),
            Record::Bipartite(b) => Ok(b.clone()),
        }
    }
}

/// Parse a stream with one graph per line (graph6 or sparse6), where a
/// `bip` header line applies to the next graph. Blank lines are skipped.
/// Offsets in errors are relative to the whole input.
pub fn parse_stream(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut pending: Option<(usize, usize, usize)> = None;
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let here = offset;
        offset += raw.len();
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with("bip") {
            let (x, y) = parse_bip_header(line, here)?;
            pending = Some((x, y, here));
            continue;
        }
        let g = decode_any(line.as_bytes()).map_err(|e| match e {
            Error::Parse { offset, msg } => Error::Parse {
                offset: here + offset,
                msg,
            },
            other => other,
        })?;
        match pending.take() {
            Some((x, y, at)) => {
                if x + y != g.n() {
                    return Err(parse_err(at, format!("bip header {x}+{y} != n = {}", g.n())));
                }
                out.push(Record::Bipartite(BipartiteGraph::with_prefix(g, x)?));
            }
            None => out.push(Record::General(g)),
        }
    }
    if let Some((_, _, at)) = pending {
        return Err(parse_err(at, "bip header without a graph"));
    }
    Ok(out)
}
