//! Stepping-up extraction of a clique whose triangle colors depend only on
//! the first pair, and the monochromatic-triangle `K_n` finder built on it.

use crate::bitset::VertexSet;
use crate::coloring::{Color, TriangleColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::schedule::default_prefix_length;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub color: Color,
}

/// Prefix `x₀,…,x_{r−1}`, candidate set `S_r`, and the colors fixed by each
/// prefix pair (0-based positions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepState {
    pub prefix: Vec<usize>,
    pub candidates: Vec<usize>,
    pub color_table: Vec<TableEntry>,
}

/// One selection round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub chosen: usize,
    pub candidates_before: usize,
    /// `|S_r ∩ N(x_{r+1})|`.
    pub neighbors_in_candidates: usize,
    pub candidates_after: usize,
    /// Colors `χ(x_i, x_{r+1}, ·)` shared by the surviving candidates.
    pub class: Vec<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum SelectOutcome {
    Success {
        state: StepState,
        trace: Vec<StepRecord>,
    },
    /// `S_step` was empty with only `step` prefix vertices chosen.
    Failure {
        step: usize,
        state: StepState,
        trace: Vec<StepRecord>,
    },
}

fn lookup(chi: &TriangleColoring, a: usize, b: usize, c: usize) -> Result<Color> {
    chi.color_of_vertices(a, b, c).ok_or_else(|| {
        Error::InvalidInput(format!(
            "coloring has no entry for triangle {{{a},{b},{c}}}"
        ))
    })
}

/// Runs the selection for `ell` rounds. The vertex of largest degree into
/// the candidate set is chosen (smallest id on ties), then the candidates
/// are split by their color vector against the prefix and the largest class
/// is kept (ties: lexicographically smallest vector, red < blue).
pub fn er_select(h: &Graph, chi: &TriangleColoring, ell: usize) -> Result<SelectOutcome> {
    if chi.domain().order() != h.order() {
        return Err(Error::InvalidInput(
            "coloring and host have different vertex counts".into(),
        ));
    }
    let n = h.order();
    let mut prefix: Vec<usize> = Vec::with_capacity(ell);
    let mut cand = VertexSet::full(n);
    let mut table: Vec<TableEntry> = Vec::new();
    let mut trace = Vec::new();
    for r in 0..ell {
        if cand.is_empty() {
            let state = StepState {
                prefix,
                candidates: vec![],
                color_table: table,
            };
            return Ok(SelectOutcome::Failure {
                step: r,
                state,
                trace,
            });
        }
        let x = cand
            .iter()
            .map(|v| (h.neighbors(v).intersection_len(&cand), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, v)| v)
            .expect("nonempty");
        let before = cand.len();
        let reach = cand.intersection(h.neighbors(x));
        let mut classes: std::collections::BTreeMap<Vec<Color>, Vec<usize>> = Default::default();
        for v in reach.iter() {
            let key = prefix
                .iter()
                .map(|&p| lookup(chi, p, x, v))
                .collect::<Result<Vec<_>>>()?;
            classes.entry(key).or_default().push(v);
        }
        // BTreeMap iterates keys in increasing order, so the first maximum
        // is the lexicographically smallest vector.
        let best = classes.iter().fold(
            None::<(&Vec<Color>, &Vec<usize>)>,
            |acc, (k, vs)| match acc {
                Some((_, b)) if b.len() >= vs.len() => acc,
                _ => Some((k, vs)),
            },
        );
        let (class, members) = match best {
            Some((k, vs)) => (k.clone(), vs.clone()),
            None => (vec![], vec![]),
        };
        let after = members.len();
        if (after as u128) << r.min(127) < reach.len() as u128 {
            return Err(Error::Internal(format!(
                "step {r}: kept {after} of {} candidates",
                reach.len()
            )));
        }
        if !members.is_empty() {
            for (i, &c) in class.iter().enumerate() {
                table.push(TableEntry { i, j: r, color: c });
            }
        }
        trace.push(StepRecord {
            chosen: x,
            candidates_before: before,
            neighbors_in_candidates: reach.len(),
            candidates_after: after,
            class,
        });
        prefix.push(x);
        cand = VertexSet::from_iter(n, members);
    }
    let state = StepState {
        prefix,
        candidates: cand.to_vec(),
        color_table: table,
    };
    verify_step_state(h, chi, &state)?;
    Ok(SelectOutcome::Success { state, trace })
}

/// Rescans the state: the prefix is a clique, candidates are adjacent to the
/// whole prefix, and every table entry `(i, j)` matches `χ(x_i, x_j, v)` for
/// every later prefix vertex and every candidate `v`.
pub fn verify_step_state(h: &Graph, chi: &TriangleColoring, st: &StepState) -> Result<()> {
    let p = &st.prefix;
    for (a, &u) in p.iter().enumerate() {
        for &w in &p[a + 1..] {
            if !h.has_edge(u, w) {
                return Err(Error::Internal(format!("prefix pair {u},{w} not adjacent")));
            }
        }
        for &v in &st.candidates {
            if !h.has_edge(u, v) {
                return Err(Error::Internal(format!(
                    "candidate {v} not adjacent to {u}"
                )));
            }
        }
    }
    for e in &st.color_table {
        if e.i >= e.j || e.j >= p.len() {
            return Err(Error::Internal(format!(
                "bad table index ({}, {})",
                e.i, e.j
            )));
        }
        let later = p[e.j + 1..].iter().chain(&st.candidates);
        for &v in later {
            if lookup(chi, p[e.i], p[e.j], v)? != e.color {
                return Err(Error::Internal(format!(
                    "table entry ({}, {}) disagrees at vertex {v}",
                    e.i, e.j
                )));
            }
        }
    }
    Ok(())
}

/// A 2-coloring of the pairs of `K_q`: pairs in `red` are red, all others
/// blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColoring {
    pub red: Graph,
}

impl PairColoring {
    pub fn order(&self) -> usize {
        self.red.order()
    }

    pub fn color(&self, u: usize, v: usize) -> Color {
        if self.red.has_edge(u, v) {
            Color::Red
        } else {
            Color::Blue
        }
    }

    fn class_graph(&self, c: Color) -> Graph {
        match c {
            Color::Red => self.red.clone(),
            Color::Blue => {
                let q = self.order();
                let mut g = Graph::empty(q);
                for u in 0..q {
                    for v in u + 1..q {
                        if !self.red.has_edge(u, v) {
                            g.add_edge(u, v);
                        }
                    }
                }
                g
            }
        }
    }
}

/// Lexicographically first clique of size `k` in `g`.
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, cur: &mut Vec<usize>, cand: VertexSet) -> bool {
        if cur.len() == k {
            return true;
        }
        if cur.len() + cand.len() < k {
            return false;
        }
        for v in cand.iter() {
            let mut next = cand.intersection(g.neighbors(v));
            // Only later vertices, so each clique is built in increasing order.
            for u in cand.iter().take_while(|&u| u <= v) {
                next.remove(u);
            }
            cur.push(v);
            if go(g, k, cur, next) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(k);
    go(g, k, &mut cur, VertexSet::full(g.order())).then_some(cur)
}

/// A monochromatic `K_n` in a pair coloring, red searched first.
pub fn base_graph_ramsey(coloring: &PairColoring, n: usize) -> Option<(Vec<usize>, Color)> {
    Color::BOTH
        .into_iter()
        .find_map(|c| find_clique(&coloring.class_graph(c), n).map(|k| (k, c)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoCliqueWitness {
    pub vertices: Vec<usize>,
    pub color: Color,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum CliqueOutcome {
    Found(MonoCliqueWitness),
    SelectFailed {
        step: usize,
        prefix: Vec<usize>,
    },
    /// The stepping-up clique had no monochromatic `K_{n−1}` under the
    /// look-ahead pair coloring.
    BaseRamseyMiss {
        prefix: Vec<usize>,
    },
}

/// Independent check: the vertices form a clique in `h` and every triangle
/// among them has color `c` under `chi`.
pub fn verify_mono_clique(h: &Graph, chi: &TriangleColoring, vertices: &[usize], c: Color) -> bool {
    let k = vertices.len();
    for a in 0..k {
        for b in a + 1..k {
            if vertices[a] == vertices[b] || !h.has_edge(vertices[a], vertices[b]) {
                return false;
            }
            for z in b + 1..k {
                if chi.color_of_vertices(vertices[a], vertices[b], vertices[z]) != Some(c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Finds `n` vertices spanning a clique of `h` all of whose triangles share
/// one color. `ell` defaults to `R(n−1)+1` for known `R`, else `4ⁿ − 1`,
/// capped at the host order.
pub fn mono_triangle_clique(
    h: &Graph,
    chi: &TriangleColoring,
    n: usize,
    ell: Option<usize>,
) -> Result<CliqueOutcome> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "clique order must be ≥ 2, got {n}"
        )));
    }
    let ell = match ell {
        Some(l) => l,
        None => default_prefix_length(n)
            .unwrap_or(usize::MAX)
            .min(h.order()),
    };
    if ell < n {
        return Err(Error::InvalidInput(format!(
            "prefix length {ell} is shorter than the clique order {n}"
        )));
    }
    let (state, _) = match er_select(h, chi, ell)? {
        SelectOutcome::Success { state, trace } => (state, trace),
        SelectOutcome::Failure { step, state, .. } => {
            return Ok(CliqueOutcome::SelectFailed {
                step,
                prefix: state.prefix,
            })
        }
    };
    let x = &state.prefix;
    let mut red = Graph::empty(ell - 1);
    for i in 0..ell - 1 {
        for j in i + 1..ell - 1 {
            if lookup(chi, x[i], x[j], x[j + 1])? == Color::Red {
                red.add_edge(i, j);
            }
        }
    }
    let Some((positions, color)) = base_graph_ramsey(&PairColoring { red }, n - 1) else {
        return Ok(CliqueOutcome::BaseRamseyMiss { prefix: x.clone() });
    };
    let mut vertices: Vec<usize> = positions.iter().map(|&p| x[p]).collect();
    vertices.push(x[ell - 1]);
    if !verify_mono_clique(h, chi, &vertices, color) {
        return Err(Error::Internal(format!(
            "extracted clique {vertices:?} is not monochromatic"
        )));
    }
    vertices.sort_unstable();
    Ok(CliqueOutcome::Found(MonoCliqueWitness {
        vertices,
        color,
        verified: true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::triangles;

    fn constant(h: &Graph, c: Color) -> TriangleColoring {
        TriangleColoring::constant(triangles(h), c)
    }

    #[test]
    fn k8_constant_red_prefix() {
        let h = Graph::complete(8);
        let SelectOutcome::Success { state, .. } =
            er_select(&h, &constant(&h, Color::Red), 3).unwrap()
        else {
            panic!("expected success")
        };
        assert_eq!(state.prefix, vec![0, 1, 2]);
        assert!(state.color_table.iter().all(|e| e.color == Color::Red));
        assert_eq!(state.color_table.len(), 3);
    }

    #[test]
    fn isolated_vertex_fails_at_step_one() {
        let h = Graph::empty(1);
        let out = er_select(&h, &constant(&h, Color::Red), 3).unwrap();
        assert!(matches!(out, SelectOutcome::Failure { step: 1, .. }));
    }

    #[test]
    fn parity_coloring_state_rescans() {
        let h = Graph::complete(16);
        let chi = TriangleColoring::from_fn(triangles(&h), |t| {
            if (t[0] + t[1] + t[2]) % 2 == 0 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        let SelectOutcome::Success { state, trace } = er_select(&h, &chi, 4).unwrap() else {
            panic!("expected success")
        };
        assert_eq!(state.prefix.len(), 4);
        verify_step_state(&h, &chi, &state).unwrap();
        for (r, s) in trace.iter().enumerate() {
            assert!(s.candidates_after << r >= s.neighbors_in_candidates);
        }
    }

    #[test]
    fn k6_pair_colorings_always_have_mono_triangle() {
        let pairs: Vec<(usize, usize)> = Graph::complete(6).edges();
        for mask in 0u32..1 << 15 {
            let mut red = Graph::empty(6);
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    red.add_edge(u, v);
                }
            }
            assert!(
                base_graph_ramsey(&PairColoring { red }, 3).is_some(),
                "mask {mask}"
            );
        }
    }

    #[test]
    fn pentagon_coloring_has_no_mono_triangle() {
        let red = Graph::cycle(5);
        assert!(base_graph_ramsey(&PairColoring { red }, 3).is_none());
        let all = PairColoring {
            red: Graph::complete(5),
        };
        let (k, c) = base_graph_ramsey(&all, 3).unwrap();
        assert_eq!((k, c), (vec![0, 1, 2], Color::Red));
    }

    #[test]
    fn k8_constant_blue_clique() {
        let h = Graph::complete(8);
        let out = mono_triangle_clique(&h, &constant(&h, Color::Blue), 3, Some(3)).unwrap();
        let CliqueOutcome::Found(w) = out else {
            panic!()
        };
        assert_eq!(w.color, Color::Blue);
        assert_eq!(w.vertices.len(), 3);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":[0,1,2],"color":"blue","verified":true}"#
        );
    }

    #[test]
    fn triangle_free_host_fails_in_selection() {
        let h = Graph::cycle(6);
        let out = mono_triangle_clique(&h, &constant(&h, Color::Red), 3, Some(3)).unwrap();
        assert!(matches!(out, CliqueOutcome::SelectFailed { step: 2, .. }));
    }

    #[test]
    fn constant_coloring_succeeds_at_default_length() {
        for n in 2..=4 {
            let ell = default_prefix_length(n).unwrap();
            let h = Graph::complete(ell);
            let out = mono_triangle_clique(&h, &constant(&h, Color::Red), n, None).unwrap();
            assert!(matches!(out, CliqueOutcome::Found(_)), "n = {n}");
        }
    }
}
