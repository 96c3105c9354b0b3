//! Induced subgraph isomorphism by vertex-ordered backtracking.

use crate::bitset::VertexSet;
use crate::graph::Graph;

const UNSET: usize = usize::MAX;

/// Backtracking search for induced copies of `pattern` in `host`.
///
/// Pattern vertices are placed in a fixed order that keeps each new vertex
/// as connected as possible to the placed ones, so candidate sets shrink
/// quickly.
pub struct InducedSearch<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<usize>,
}

impl<'a> InducedSearch<'a> {
    pub fn new(pattern: &'a Graph, host: &'a Graph) -> Self {
        let n = pattern.order();
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                    (links, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
        }
        InducedSearch {
            pattern,
            host,
            order,
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Runs the search. `prune(map, v)` is called after pattern vertex `v` is
    /// placed and may reject the partial map; `visit(map)` is called on each
    /// complete copy and returns `true` to stop. Unplaced entries of `map`
    /// hold `usize::MAX`. Returns whether the search was stopped.
    pub fn run(
        &self,
        mut prune: impl FnMut(&[usize], usize) -> bool,
        mut visit: impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if self.pattern.order() > self.host.order() {
            return false;
        }
        let mut map = vec![UNSET; self.pattern.order()];
        let mut used = VertexSet::new(self.host.order());
        self.step(0, &mut map, &mut used, &mut prune, &mut visit)
    }

    fn candidates(&self, v: usize, map: &[usize], used: &VertexSet) -> VertexSet {
        let mut c = VertexSet::full(self.host.order());
        for &u in &self.order {
            let img = map[u];
            if img == UNSET {
                continue;
            }
            if self.pattern.has_edge(u, v) {
                c.intersect_with(self.host.neighbors(img));
            } else {
                c.difference_with(self.host.neighbors(img));
            }
        }
        c.difference_with(used);
        c
    }

    fn step(
        &self,
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut VertexSet,
        prune: &mut impl FnMut(&[usize], usize) -> bool,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(map);
        }
        let v = self.order[depth];
        let need = self.pattern.degree(v);
        for w in self.candidates(v, map, used).iter() {
            if self.host.degree(w) < need {
                continue;
            }
            map[v] = w;
            if prune(map, v) {
                used.insert(w);
                let stop = self.step(depth + 1, map, used, prune, visit);
                used.remove(w);
                if stop {
                    map[v] = UNSET;
                    return true;
                }
            }
        }
        map[v] = UNSET;
        false
    }
}

/// The first induced copy in search order.
pub fn find_induced_copy(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let mut found = None;
    InducedSearch::new(pattern, host).run(
        |_, _| true,
        |m| {
            found = Some(m.to_vec());
            true
        },
    );
    found
}

/// All induced copies (as injective maps), in search order.
pub fn induced_copies(pattern: &Graph, host: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    InducedSearch::new(pattern, host).run(
        |_, _| true,
        |m| {
            out.push(m.to_vec());
            false
        },
    );
    out
}

/// Checks that `map` is injective and preserves adjacency and non-adjacency.
pub fn is_induced_copy(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    let n = pattern.order();
    if map.len() != n || map.iter().any(|&v| v >= host.order()) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if map[i] == map[j] || pattern.has_edge(i, j) != host.has_edge(map[i], map[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_in_cycle() {
        let copies = induced_copies(&Graph::path(3), &Graph::cycle(5));
        // Each of the 5 induced P₃'s, in both directions.
        assert_eq!(copies.len(), 10);
        assert!(copies
            .iter()
            .all(|m| is_induced_copy(&Graph::path(3), &Graph::cycle(5), m)));
    }

    #[test]
    fn no_induced_path_in_complete_graph() {
        assert!(find_induced_copy(&Graph::path(3), &Graph::complete(6)).is_none());
        assert_eq!(
            induced_copies(&Graph::complete(3), &Graph::complete(4)).len(),
            24
        );
    }

    #[test]
    fn empty_pattern_has_one_copy() {
        assert_eq!(
            induced_copies(&Graph::empty(0), &Graph::complete(3)),
            vec![Vec::<usize>::new()]
        );
    }
}
