//! 3-uniform hypergraphs: triangle systems, linearity, tight-tree orders.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{content_lines, fields, Graph};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

/// A vertex triple, always stored sorted ascending.
pub type Triple = [usize; 3];

pub fn triple(a: usize, b: usize, c: usize) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    n: usize,
    edges: Vec<Triple>,
}

impl TripleSystem {
    pub fn empty(n: usize) -> Self {
        TripleSystem { n, edges: vec![] }
    }

    /// Validates distinctness, range and duplicate-freeness.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let mut out: Vec<Triple> = Vec::new();
        for e in edges {
            let t = triple(e[0], e[1], e[2]);
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidInput(format!("degenerate triple {e:?}")));
            }
            if t[2] >= n {
                return Err(Error::InvalidInput(format!(
                    "triple {e:?} out of range 0..{n}"
                )));
            }
            out.push(t);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate triple {:?}", w[0])));
        }
        Ok(TripleSystem { n, edges: out })
    }

    /// Sorted, already-deduplicated edges; internal fast path.
    pub(crate) fn from_sorted(n: usize, edges: Vec<Triple>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        TripleSystem { n, edges }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    pub fn index_of(&self, t: &Triple) -> Option<usize> {
        self.edges.binary_search(t).ok()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.index_of(t).is_some()
    }

    /// Vertices covered by at least one edge.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(self.n, self.edges.iter().flatten().copied())
    }

    /// Number of edges containing the pair `{x,y}`.
    pub fn codegree(&self, x: usize, y: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.contains(&x) && e.contains(&y))
            .count()
    }

    /// Two edges sharing two vertices, if any.
    pub fn linearity_violation(&self) -> Option<(Triple, Triple)> {
        let mut seen: HashMap<(usize, usize), Triple> = HashMap::new();
        for e in &self.edges {
            for (a, b) in pairs_of(e) {
                if let Some(prev) = seen.insert((a, b), *e) {
                    return Some((prev, *e));
                }
            }
        }
        None
    }

    /// True iff every two distinct edges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        self.linearity_violation().is_none()
    }

    /// An ordering certifying that this system is a tight tree, if one exists.
    pub fn tight_tree_order(&self) -> Option<TightTreeOrder> {
        tight_tree_order(self)
    }

    /// The shadow graph: every pair covered by an edge becomes a graph edge.
    pub fn shadow(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for e in &self.edges {
            for (a, b) in pairs_of(e) {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tsys {} {}\n", self.n, self.edges.len());
        for [a, b, c] in &self.edges {
            let _ = writeln!(s, "t {a} {b} {c}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<TripleSystem> {
        let mut lines = content_lines(text);
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing `tsys` header"))?;
        let h = fields(header, "tsys", 2, ln)?;
        let (n, t) = (h[0], h[1]);
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let f = fields(line, "t", 3, ln)?;
            if f.iter().any(|&v| v >= n) {
                return Err(Error::parse(ln, format!("vertex out of range 0..{n}")));
            }
            let e = triple(f[0], f[1], f[2]);
            if e[0] == e[1] || e[1] == e[2] {
                return Err(Error::parse(ln, "repeated vertex in triple"));
            }
            if !seen.insert(e) {
                return Err(Error::parse(ln, format!("duplicate triple {e:?}")));
            }
            edges.push(e);
        }
        if edges.len() != t {
            return Err(Error::parse(
                0,
                format!("header declares {t} triples, found {}", edges.len()),
            ));
        }
        edges.sort_unstable();
        Ok(TripleSystem { n, edges })
    }
}

impl Serialize for TripleSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for TripleSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TripleSystem::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn pairs_of(e: &Triple) -> [(usize, usize); 3] {
    [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])]
}

/// `K₃(G)`: all vertex triples spanning a triangle of `g`.
pub fn triangles(g: &Graph) -> TripleSystem {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in g.neighbors(u).iter().filter(|&v| v > u) {
            let common = g.neighbors(u).intersection(g.neighbors(v));
            for w in common.iter().filter(|&w| w > v) {
                out.push([u, v, w]);
            }
        }
    }
    TripleSystem::from_sorted(n, out)
}

/// An edge order `e₁,…,e_t` in which every later edge adds exactly one new
/// vertex (its apex) and its other two vertices lie in an earlier edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightTreeOrder {
    pub edges: Vec<Triple>,
    /// `apexes[0]` is `None`; `apexes[i]` is the new vertex of `edges[i]`.
    pub apexes: Vec<Option<usize>>,
    /// Index of an earlier edge containing `edges[i] ∖ {apex}`.
    pub parents: Vec<Option<usize>>,
}

impl TightTreeOrder {
    /// The non-apex pair of edge `i` (for `i ≥ 1`).
    pub fn base_pair(&self, i: usize) -> Option<(usize, usize)> {
        let apex = self.apexes[i]?;
        let e = self.edges[i];
        let rest: Vec<usize> = e.iter().copied().filter(|&v| v != apex).collect();
        Some((rest[0], rest[1]))
    }

    /// Checks the defining conditions against `system`.
    pub fn is_valid_for(&self, system: &TripleSystem) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        if sorted != system.edges() || self.edges.len() != self.apexes.len() {
            return false;
        }
        let mut covered = HashSet::new();
        for (i, e) in self.edges.iter().enumerate() {
            if i == 0 {
                if self.apexes[0].is_some() {
                    return false;
                }
            } else {
                let Some(v) = self.apexes[i] else {
                    return false;
                };
                if !e.contains(&v) || covered.contains(&v) {
                    return false;
                }
                let (x, y) = self.base_pair(i).unwrap();
                let ok = self.edges[..i]
                    .iter()
                    .any(|f| f.contains(&x) && f.contains(&y));
                if !ok || e.iter().filter(|w| !covered.contains(*w)).count() != 1 {
                    return false;
                }
            }
            covered.extend(e.iter().copied());
        }
        true
    }
}

fn tight_tree_order(sys: &TripleSystem) -> Option<TightTreeOrder> {
    let t = sys.len();
    if t == 0 || sys.vertex_set().len() != t + 2 {
        return None;
    }
    let edges = sys.edges();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        for p in pairs_of(e) {
            by_pair.entry(p).or_default().push(i);
        }
    }
    let mut search = TreeSearch {
        edges,
        by_pair: &by_pair,
        placed: VertexSet::new(t),
        covered: VertexSet::new(sys.order()),
        order: Vec::with_capacity(t),
        failed: HashSet::new(),
    };
    for root in 0..t {
        search.place(root, None, None);
        if search.extend() {
            return Some(search.finish());
        }
        search.unplace(root);
    }
    None
}

struct TreeSearch<'a> {
    edges: &'a [Triple],
    by_pair: &'a HashMap<(usize, usize), Vec<usize>>,
    placed: VertexSet,
    covered: VertexSet,
    order: Vec<(usize, Option<usize>, Option<usize>)>,
    failed: HashSet<VertexSet>,
}

impl TreeSearch<'_> {
    fn place(&mut self, i: usize, apex: Option<usize>, parent: Option<usize>) {
        self.placed.insert(i);
        for &v in &self.edges[i] {
            self.covered.insert(v);
        }
        self.order.push((i, apex, parent));
    }

    fn unplace(&mut self, i: usize) {
        let (_, apex, _) = self.order.pop().unwrap();
        self.placed.remove(i);
        match apex {
            Some(v) => self.covered.remove(v),
            None => {
                for &v in &self.edges[i] {
                    self.covered.remove(v);
                }
            }
        }
    }

    fn extend(&mut self) -> bool {
        if self.order.len() == self.edges.len() {
            return true;
        }
        if self.failed.contains(&self.placed) {
            return false;
        }
        let mut moves = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if self.placed.contains(i) {
                continue;
            }
            let fresh: Vec<usize> = e
                .iter()
                .copied()
                .filter(|&v| !self.covered.contains(v))
                .collect();
            match fresh.len() {
                // Fully covered but unplaced: it can never be added.
                0 => {
                    self.failed.insert(self.placed.clone());
                    return false;
                }
                1 => {
                    let rest: Vec<usize> = e.iter().copied().filter(|&v| v != fresh[0]).collect();
                    let parent = self.by_pair[&(rest[0], rest[1])]
                        .iter()
                        .copied()
                        .find(|&j| self.placed.contains(j));
                    if let Some(p) = parent {
                        moves.push((i, fresh[0], p));
                    }
                }
                _ => {}
            }
        }
        for (i, apex, parent) in moves {
            self.place(i, Some(apex), Some(parent));
            if self.extend() {
                return true;
            }
            self.unplace(i);
        }
        self.failed.insert(self.placed.clone());
        false
    }

    fn finish(self) -> TightTreeOrder {
        let pos: HashMap<usize, usize> = self
            .order
            .iter()
            .enumerate()
            .map(|(k, &(i, _, _))| (i, k))
            .collect();
        TightTreeOrder {
            edges: self.order.iter().map(|&(i, _, _)| self.edges[i]).collect(),
            apexes: self.order.iter().map(|&(_, a, _)| a).collect(),
            parents: self
                .order
                .iter()
                .map(|&(_, _, p)| p.map(|p| pos[&p]))
                .collect(),
        }
    }
}
