//! Simple undirected graphs with bit-parallel adjacency rows.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::rational::Q;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Anything that can answer adjacency queries over vertices `0..order()`.
///
/// Implemented by [`Graph`] and by implicit random graphs that are too large
/// to materialise.
pub trait Adjacency: Sync {
    fn order(&self) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;

    /// Number of `y` in `ys` (with `y != x`) adjacent to `x`.
    fn count_adjacent(&self, x: usize, ys: &[usize]) -> usize {
        ys.iter()
            .filter(|&&y| y != x && self.adjacent(x, y))
            .count()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({}; {:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![VertexSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Adds `{u,v}`; a no-op when already present. Panics on loops.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loop");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].remove(v);
        self.rows[v].remove(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edges inside `set`.
    pub fn edges_within(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| self.rows[v].intersection_len(set))
            .sum::<usize>()
            / 2
    }

    /// Induced subgraph on `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union with `k` extra isolated vertices.
    pub fn with_isolated(&self, k: usize) -> Graph {
        let mut g = Graph::empty(self.n + k);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("graph {} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing `graph` header"))?;
        let h = fields(header, "graph", 2, ln)?;
        let (n, m) = (h[0], h[1]);
        let mut g = Graph::empty(n);
        let mut count = 0;
        for (ln, line) in lines {
            let f = fields(line, "e", 2, ln)?;
            let (u, v) = (f[0], f[1]);
            if u >= n || v >= n {
                return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
            }
            if u == v {
                return Err(Error::parse(ln, "self-loop"));
            }
            if g.has_edge(u, v) {
                return Err(Error::parse(ln, format!("duplicate edge {u} {v}")));
            }
            g.add_edge(u, v);
            count += 1;
        }
        if count != m {
            return Err(Error::parse(
                0,
                format!("header declares {m} edges, found {count}"),
            ));
        }
        Ok(g)
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.n
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Graph::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Splits `tag a b ...` into exactly `k` unsigned integers.
pub(crate) fn fields(line: &str, tag: &str, k: usize, ln: usize) -> Result<Vec<usize>> {
    let mut it = line.split_whitespace();
    if it.next() != Some(tag) {
        return Err(Error::parse(ln, format!("expected `{tag}` line")));
    }
    let vals = it
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::parse(ln, e.to_string()))?;
    if vals.len() != k {
        return Err(Error::parse(
            ln,
            format!("expected {k} integers after `{tag}`"),
        ));
    }
    Ok(vals)
}

/// Pair statistics `P(X,Y)` and `e(X,Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    /// Unordered pairs `{x,y}`, `x ∈ X`, `y ∈ Y`, `x ≠ y`, each counted once.
    pub pairs: u64,
    /// How many of those pairs are edges.
    pub edges: u64,
}

impl PairStats {
    pub fn ratio(&self) -> Result<Q> {
        if self.pairs == 0 {
            return Err(Error::UndefinedRatio);
        }
        Ok(Q::new(self.edges as u128, self.pairs as u128))
    }
}

/// Computes `P(X,Y)` and `e(X,Y)`. Overlapping and equal sets are allowed;
/// when `X = Y` the ratio is the edge density of `X`.
pub fn pair_stats<A: Adjacency + ?Sized>(g: &A, xs: &[usize], ys: &[usize]) -> Result<PairStats> {
    let n = g.order();
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    if let Some(&v) = xs.last().into_iter().chain(ys.last()).find(|&&v| v >= n) {
        return Err(Error::InvalidInput(format!("vertex {v} out of range")));
    }
    let common = sorted_intersection(&xs, &ys);
    let i = common.len() as u64;
    // Ordered pairs minus diagonal, then fold the pairs counted from both sides.
    let pairs = xs.len() as u64 * ys.len() as u64 - i - i * i.saturating_sub(1) / 2;
    let ordered: u64 = xs.iter().map(|&x| g.count_adjacent(x, &ys) as u64).sum();
    let mut inner = 0u64;
    for (a, &u) in common.iter().enumerate() {
        for &v in &common[a + 1..] {
            if g.adjacent(u, v) {
                inner += 1;
            }
        }
    }
    let stats = PairStats {
        pairs,
        edges: ordered - inner,
    };
    if stats.pairs == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(stats)
}

pub(crate) fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn text_round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert!(Graph::parse("graph 3 1\ne 0 3\n").is_err());
        assert!(Graph::parse("graph 3 2\ne 0 1\ne 1 0\n").is_err());
        assert!(Graph::parse("graph 3 1\ne 1 1\n").is_err());
        assert!(Graph::parse("graph 3 2\ne 0 1\n").is_err());
        assert!(Graph::parse("e 0 1\n").is_err());
    }

    #[test]
    fn pair_stats_examples() {
        let k3 = Graph::complete(3);
        let s = pair_stats(&k3, &[0, 1], &[1, 2]).unwrap();
        assert_eq!((s.pairs, s.edges), (3, 3));
        assert_eq!(s.ratio().unwrap(), q(1, 1));

        let e = Graph::empty(6);
        let s = pair_stats(&e, &[0, 1], &[2, 3, 4]).unwrap();
        assert_eq!(s.edges, 0);
        assert_eq!(s.ratio().unwrap(), q(0, 1));

        let k4 = Graph::complete(4);
        let s = pair_stats(&k4, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!((s.pairs, s.edges), (3, 3));
    }

    #[test]
    fn pair_stats_undefined_ratio() {
        let g = Graph::complete(3);
        assert!(matches!(
            pair_stats(&g, &[1], &[1]),
            Err(Error::UndefinedRatio)
        ));
    }

    #[test]
    fn pair_stats_equal_sets_give_binomial() {
        let g = Graph::cycle(9);
        for k in 2..9 {
            let xs: Vec<usize> = (0..k).collect();
            let s = pair_stats(&g, &xs, &xs).unwrap();
            assert_eq!(s.pairs as usize, k * (k - 1) / 2);
        }
    }
}
