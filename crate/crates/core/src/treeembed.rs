//! Embedding graphs whose triangles form a tight tree: prune the host to a
//! subgraph where every edge lies in many majority-color triangles, then
//! place the tree one apex at a time away from the joint neighbourhood of
//! everything already placed.

use crate::bitset::VertexSet;
use crate::coloring::{Color, TriangleColoring};
use crate::embed::EmbeddingWitness;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::is_induced_copy;
use crate::randmod::{gen_gnp, neighborhoods};
use crate::rational::{fmt_q, serde_q, to_f64, Q};
use crate::rng::stream;
use crate::triples::{pairs_of, triangles, triple, Triple, TripleSystem};
use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Average over the edges of `G` of the number of triples of `S`
/// containing the edge.
pub fn avg_triangle_degree(g: &Graph, s: &TripleSystem) -> Result<Q> {
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::UndefinedRatio);
    }
    let total: usize = s
        .edges()
        .iter()
        .map(|t| {
            pairs_of(t)
                .iter()
                .filter(|&&(a, b)| g.has_edge(a, b))
                .count()
        })
        .sum();
    Ok(Q::new(total as u128, e as u128))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedHost {
    pub graph: Graph,
    /// Red triangles all of whose edges survive.
    pub red: TripleSystem,
    #[serde(with = "serde_q")]
    pub threshold: Q,
    /// Deleted edges in deletion order.
    pub trace: Vec<(usize, usize)>,
}

impl PrunedHost {
    /// Whether every surviving edge lies in at least `threshold` red
    /// triangles.
    pub fn codegree_bound_holds(&self) -> bool {
        let mut codeg: HashMap<(usize, usize), u128> = HashMap::new();
        for t in self.red.edges() {
            for p in pairs_of(t) {
                *codeg.entry(p).or_default() += 1;
            }
        }
        self.graph
            .edges()
            .iter()
            .all(|e| Q::from_integer(codeg.get(e).copied().unwrap_or(0)) >= self.threshold)
    }
}

/// Deletes edges whose red codegree is below `threshold` (smallest edge
/// first) until none remain.
pub fn prune_min_codegree(g: &Graph, red: &TripleSystem, threshold: &Q) -> Result<PrunedHost> {
    let k3 = triangles(g);
    if let Some(t) = red.edges().iter().find(|t| !k3.contains(t)) {
        return Err(Error::InvalidInput(format!(
            "{t:?} is not a triangle of the host"
        )));
    }
    let edges = g.edges();
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut through = vec![Vec::new(); edges.len()];
    let mut codeg = vec![0u128; edges.len()];
    for (ti, t) in red.edges().iter().enumerate() {
        for p in pairs_of(t) {
            through[index[&p]].push(ti);
            codeg[index[&p]] += 1;
        }
    }
    let below = |c: u128| c * threshold.denom() < *threshold.numer();
    let mut alive_triangle = vec![true; red.len()];
    let mut alive_edge = vec![true; edges.len()];
    let mut red_count = red.len() as u128;
    let mut bad: BTreeSet<usize> = (0..edges.len()).filter(|&i| below(codeg[i])).collect();
    let mut trace = Vec::new();
    while let Some(i) = bad.pop_first() {
        let before = red_count;
        let removed = codeg[i];
        alive_edge[i] = false;
        for &ti in &through[i] {
            if !alive_triangle[ti] {
                continue;
            }
            alive_triangle[ti] = false;
            red_count -= 1;
            for p in pairs_of(&red.edges()[ti]) {
                let j = index[&p];
                if j != i {
                    codeg[j] -= 1;
                    if alive_edge[j] && below(codeg[j]) {
                        bad.insert(j);
                    }
                }
            }
        }
        if red_count != before - removed {
            return Err(Error::Internal(format!(
                "deleting {:?} removed {} red triangles, expected {removed}",
                edges[i],
                before - red_count
            )));
        }
        trace.push(edges[i]);
    }
    let mut graph = Graph::empty(g.order());
    for (i, &(u, v)) in edges.iter().enumerate() {
        if alive_edge[i] {
            graph.add_edge(u, v);
        }
    }
    let surviving = red
        .edges()
        .iter()
        .zip(&alive_triangle)
        .filter(|(_, &a)| a)
        .map(|(t, _)| *t)
        .collect();
    Ok(PrunedHost {
        graph,
        red: TripleSystem::from_sorted(g.order(), surviving),
        threshold: *threshold,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum TreeEmbedOutcome {
    Found {
        witness: EmbeddingWitness,
    },
    Failed {
        /// Index in the tree order of the edge whose apex could not be placed
        /// (0 when the host has no red triangle at all).
        step: usize,
        partial: Vec<Option<usize>>,
    },
}

/// Checks the pattern preconditions and returns its tight-tree order.
fn tree_order(f: &Graph) -> Result<crate::triples::TightTreeOrder> {
    let k3 = triangles(f);
    if k3.is_empty() {
        return Err(Error::Precondition("pattern has no triangles".into()));
    }
    let order = k3.tight_tree_order().ok_or_else(|| {
        Error::Precondition("triangles of the pattern do not form a tight tree".into())
    })?;
    if k3.vertex_set().len() != f.order() || k3.shadow().edges() != f.edges() {
        return Err(Error::Precondition(
            "pattern must be exactly the shadow of its triangle tree".into(),
        ));
    }
    Ok(order)
}

/// Places the tree greedily: the first edge onto the smallest red triangle,
/// then each apex onto the smallest vertex closing a red triangle with the
/// image of its base pair, unused, and non-adjacent (in `base`) to every
/// other placed vertex.
pub fn embed_tight_tree(f: &Graph, base: &Graph, host: &PrunedHost) -> Result<TreeEmbedOutcome> {
    let order = tree_order(f)?;
    let n = f.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let Some(seed) = host.red.edges().first() else {
        return Ok(TreeEmbedOutcome::Failed {
            step: 0,
            partial: map,
        });
    };
    for (v, img) in order.edges[0].iter().zip(seed) {
        map[*v] = Some(*img);
    }
    let mut used = VertexSet::from_iter(base.order(), seed.iter().copied());
    for i in 1..order.edges.len() {
        let (x, y) = order.base_pair(i).expect("later edges have a base pair");
        let apex = order.apexes[i].expect("later edges have an apex");
        let (px, py) = (map[x].unwrap(), map[y].unwrap());
        let others: Vec<usize> = (0..n)
            .filter(|&v| v != x && v != y)
            .filter_map(|v| map[v])
            .collect();
        let (_, joint) = neighborhoods(base, &others);
        let mut cand = host
            .graph
            .neighbors(px)
            .intersection(host.graph.neighbors(py));
        cand.difference_with(&joint);
        cand.difference_with(&used);
        let Some(z) = cand.iter().find(|&z| host.red.contains(&triple(px, py, z))) else {
            return Ok(TreeEmbedOutcome::Failed {
                step: i,
                partial: map,
            });
        };
        map[apex] = Some(z);
        used.insert(z);
    }
    let witness = EmbeddingWitness {
        map: map
            .into_iter()
            .map(|v| v.expect("tree covers the pattern"))
            .collect(),
    };
    if !verify_tree_witness(f, base, &host.red, &witness) {
        return Err(Error::Internal(format!(
            "tree embedding {:?} fails verification",
            witness.map
        )));
    }
    Ok(TreeEmbedOutcome::Found { witness })
}

/// Independent check: the image is induced in `base` and every triangle of
/// `F` lands in `red`.
pub fn verify_tree_witness(
    f: &Graph,
    base: &Graph,
    red: &TripleSystem,
    w: &EmbeddingWitness,
) -> bool {
    is_induced_copy(f, base, &w.map)
        && triangles(f)
            .edges()
            .iter()
            .all(|t| red.contains(&triple(w.map[t[0]], w.map[t[1]], w.map[t[2]])))
}

/// The square of the path on `n` vertices; its triangles `{i,i+1,i+2}`
/// form a tight path. For `n = 4` this is `K₄ − e`.
pub fn tight_path_graph(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in [i + 1, i + 2] {
            if j < n {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColoringSource {
    /// Each triangle red with probability `red`.
    Random { red: f64 },
    /// A fixed coloring of `K₃(G)`; only meaningful for a fixed host.
    Given {
        #[serde(skip)]
        coloring: Option<TriangleColoring>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub n: usize,
    /// Host order; defaults to `n⁴`.
    pub order: Option<usize>,
    /// Edge probability; defaults to `1/(200n)`.
    pub p: Option<f64>,
    pub seed: u64,
    pub coloring: ColoringSource,
    /// Number of sampled `(S, {x,y})` pairs for the overlap hypothesis.
    pub hypothesis_samples: usize,
}

impl PipelineConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        PipelineConfig {
            n,
            order: None,
            p: None,
            seed,
            coloring: ColoringSource::Random { red: 0.5 },
            hypothesis_samples: 1000,
        }
    }

    pub fn order(&self) -> usize {
        self.order.unwrap_or(self.n.pow(4))
    }

    pub fn p(&self) -> f64 {
        self.p.unwrap_or(1.0 / (200.0 * self.n as f64))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NominalScale {
    pub order: usize,
    pub p: f64,
    /// `p²N`, the expected common neighbourhood of a pair.
    pub expected_codegree: f64,
    /// `p²N < 1`: the host is almost surely triangle-poor at this `n`.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapSample {
    pub samples: usize,
    /// Samples with `|N({x,y}) ∩ Γ(S)| > 0.01·d̄`.
    pub violations: usize,
    pub max_overlap: usize,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreePipelineReport {
    pub n: usize,
    pub order: usize,
    pub p: f64,
    pub seed: u64,
    pub nominal_scale: NominalScale,
    pub edges: usize,
    pub triangles: usize,
    pub majority: Color,
    pub majority_count: usize,
    /// `d̄ = 3|K₃(G)|/e(G)`; absent when `G` is edgeless.
    pub avg_triangle_degree: Option<String>,
    pub threshold: Option<String>,
    pub hypothesis: Option<OverlapSample>,
    pub pruned_edges: usize,
    pub surviving_red: usize,
    /// No triangles: nothing to embed.
    pub degenerate: bool,
    pub outcome: Option<TreeEmbedOutcome>,
}

fn sample_overlap(g: &Graph, n: usize, d: &Q, samples: usize, seed: u64) -> OverlapSample {
    let edges = g.edges();
    let order = g.order();
    let bound = to_f64(d) / 100.0;
    let results: Vec<usize> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream(seed, (1 << 62) | s as u64);
            let (x, y) = edges[rng.gen_range(0..edges.len())];
            let size = rng.gen_range(1..=n.min(order - 2));
            let set: Vec<usize> = index::sample(&mut rng, order - 2, size)
                .iter()
                .map(|i| {
                    // Skip over x and y.
                    let mut v = i;
                    for &w in &[x.min(y), x.max(y)] {
                        if v >= w {
                            v += 1;
                        }
                    }
                    v
                })
                .collect();
            let (_, joint) = neighborhoods(g, &set);
            let common = g.neighbors(x).intersection(g.neighbors(y));
            common.intersection_len(&joint)
        })
        .collect();
    let over = |o: usize| Q::from_integer(100 * o as u128) > *d;
    OverlapSample {
        samples,
        violations: results.iter().filter(|&&o| over(o)).count(),
        max_overlap: results.iter().copied().max().unwrap_or(0),
        bound,
    }
}

/// Random host `G(N,p)`, coloring, majority class, pruning at `d̄/6`, and
/// the greedy tree embedding of the tight path on `n` vertices.
pub fn tree_pipeline(cfg: &PipelineConfig) -> Result<TreePipelineReport> {
    let n = cfg.n;
    if n < 3 {
        return Err(Error::InvalidInput(
            "tree patterns need at least 3 vertices".into(),
        ));
    }
    let order = cfg.order();
    let p = cfg.p();
    let nominal_order = n.pow(4);
    let nominal_p = 1.0 / (200.0 * n as f64);
    let expected = nominal_p * nominal_p * nominal_order as f64;
    let nominal_scale = NominalScale {
        order: nominal_order,
        p: nominal_p,
        expected_codegree: expected,
        degenerate: expected < 1.0,
    };
    let g = gen_gnp(order, p, cfg.seed)?;
    let k3 = triangles(&g);
    let chi = match &cfg.coloring {
        ColoringSource::Random { red } => {
            let mut rng = stream(cfg.seed, 1);
            TriangleColoring::from_fn(k3.clone(), |_| {
                if rng.gen_bool(*red) {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
        }
        ColoringSource::Given { coloring } => {
            let c = coloring
                .clone()
                .ok_or_else(|| Error::InvalidInput("no coloring supplied".into()))?;
            if c.domain() != &k3 {
                return Err(Error::InvalidInput(
                    "coloring does not match the host triangles".into(),
                ));
            }
            c
        }
    };
    let majority = if chi.count(Color::Red) >= chi.count(Color::Blue) {
        Color::Red
    } else {
        Color::Blue
    };
    let mut report = TreePipelineReport {
        n,
        order,
        p,
        seed: cfg.seed,
        nominal_scale,
        edges: g.edge_count(),
        triangles: k3.len(),
        majority,
        majority_count: chi.count(majority),
        avg_triangle_degree: None,
        threshold: None,
        hypothesis: None,
        pruned_edges: 0,
        surviving_red: 0,
        degenerate: k3.is_empty(),
        outcome: None,
    };
    if k3.is_empty() {
        if g.edge_count() > 0 {
            report.avg_triangle_degree = Some("0".into());
        }
        return Ok(report);
    }
    let d = avg_triangle_degree(&g, &k3)?;
    let threshold = d / Q::from_integer(6);
    report.avg_triangle_degree = Some(fmt_q(&d));
    report.threshold = Some(fmt_q(&threshold));
    if order > 2 && cfg.hypothesis_samples > 0 {
        report.hypothesis = Some(sample_overlap(&g, n, &d, cfg.hypothesis_samples, cfg.seed));
    }
    let host = prune_min_codegree(&g, &chi.class(majority), &threshold)?;
    report.pruned_edges = host.trace.len();
    report.surviving_red = host.red.len();
    report.outcome = Some(embed_tight_tree(&tight_path_graph(n), &g, &host)?);
    Ok(report)
}

/// Triple of the witness images for each triangle of `F`.
pub fn image_triangles(f: &Graph, w: &EmbeddingWitness) -> Vec<Triple> {
    triangles(f)
        .edges()
        .iter()
        .map(|t| triple(w.map[t[0]], w.map[t[1]], w.map[t[2]]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn average_degree_of_k4() {
        let k4 = Graph::complete(4);
        assert_eq!(
            avg_triangle_degree(&k4, &triangles(&k4)).unwrap(),
            Q::from_integer(2)
        );
        let c5 = Graph::cycle(5);
        assert_eq!(
            avg_triangle_degree(&c5, &triangles(&c5)).unwrap(),
            Q::from_integer(0)
        );
        assert!(avg_triangle_degree(&Graph::empty(3), &TripleSystem::empty(3)).is_err());
    }

    #[test]
    fn pruning_examples() {
        let k5 = Graph::complete(5);
        let all = triangles(&k5);
        let kept = prune_min_codegree(&k5, &all, &Q::from_integer(3)).unwrap();
        assert_eq!(kept.graph, k5);
        assert!(kept.trace.is_empty());
        let gone = prune_min_codegree(&k5, &TripleSystem::empty(5), &Q::new(1, 2)).unwrap();
        assert_eq!(gone.graph.edge_count(), 0);
        assert_eq!(gone.trace.len(), 10);
    }

    #[test]
    fn complete_host_blocks_k4_minus_e() {
        let k5 = Graph::complete(5);
        let host = prune_min_codegree(&k5, &triangles(&k5), &Q::from_integer(1)).unwrap();
        let out = embed_tight_tree(&tight_path_graph(4), &k5, &host).unwrap();
        assert_eq!(
            out,
            TreeEmbedOutcome::Failed {
                step: 1,
                partial: vec![Some(0), Some(1), Some(2), None]
            }
        );
    }

    #[test]
    fn triangle_pattern_takes_first_red_triangle() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let red = TripleSystem::new(5, [[2, 3, 4]]).unwrap();
        let host = prune_min_codegree(&g, &red, &Q::from_integer(1)).unwrap();
        let out = embed_tight_tree(&Graph::complete(3), &g, &host).unwrap();
        assert_eq!(
            out,
            TreeEmbedOutcome::Found {
                witness: EmbeddingWitness { map: vec![2, 3, 4] }
            }
        );
    }

    #[test]
    fn non_shadow_patterns_are_refused() {
        let mut f = tight_path_graph(4);
        f.add_edge(0, 3);
        let k4 = Graph::complete(4);
        let host = prune_min_codegree(&k4, &triangles(&k4), &Q::from_integer(0)).unwrap();
        assert!(matches!(
            embed_tight_tree(&f, &k4, &host),
            Err(Error::Precondition(_))
        ));
    }
}
