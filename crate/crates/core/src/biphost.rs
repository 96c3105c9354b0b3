//! Hosts for graphs in `B_n` (a triangle-free part `A` plus an independent
//! part `B`) and extraction of a one-color induced copy from any triangle
//! coloring of such a host.

use crate::coloring::Color;
use crate::embed::EmbeddingWitness;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::{induced_copies, InducedSearch};
use crate::rng::stream;
use crate::triples::{triangles, triple, Triple};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// `V(F) = A ∪ B` with `F[A]` triangle-free and `B` independent;
/// `neighborhoods[i] = N(b_i) ∩ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnDecomposition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub neighborhoods: Vec<Vec<usize>>,
}

impl BnDecomposition {
    /// Validates `(A, B)` against `f`. Distinct neighbourhoods are not
    /// required here.
    pub fn new(f: &Graph, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let mut a = a;
        let mut b = b;
        a.sort_unstable();
        b.sort_unstable();
        let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
        all.sort_unstable();
        if all != (0..f.order()).collect::<Vec<_>>() {
            return Err(Error::InvalidInput(
                "A and B must partition the vertex set".into(),
            ));
        }
        for (i, &u) in b.iter().enumerate() {
            if let Some(&v) = b[i + 1..].iter().find(|&&v| f.has_edge(u, v)) {
                return Err(Error::InvalidInput(format!(
                    "B contains the edge {{{u},{v}}}"
                )));
            }
        }
        if let Some(t) = triangles(&f.induced(&a)).edges().first() {
            return Err(Error::InvalidInput(format!(
                "F[A] contains the triangle {{{},{},{}}}",
                a[t[0]], a[t[1]], a[t[2]]
            )));
        }
        let neighborhoods = b
            .iter()
            .map(|&v| a.iter().copied().filter(|&u| f.has_edge(u, v)).collect())
            .collect();
        Ok(BnDecomposition {
            a,
            b,
            neighborhoods,
        })
    }

    pub fn has_distinct_neighborhoods(&self) -> bool {
        let set: BTreeSet<&Vec<usize>> = self.neighborhoods.iter().collect();
        set.len() == self.neighborhoods.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BnResult {
    /// The decomposed graph; a supergraph of the input when `enlarged`.
    pub graph: Graph,
    pub decomposition: BnDecomposition,
    pub enlarged: bool,
    /// Private vertices added to `A`, each adjacent to one `b_i` only.
    pub added: Vec<usize>,
}

/// Makes the neighbourhoods distinct by giving every `b_i` whose `A_i`
/// repeats an earlier one a new private neighbour in `A`.
pub fn enlarge(f: &Graph, d: &BnDecomposition) -> Result<BnResult> {
    let mut seen = BTreeSet::new();
    let mut extra = Vec::new();
    for (i, nb) in d.neighborhoods.iter().enumerate() {
        if !seen.insert(nb.clone()) {
            extra.push(d.b[i]);
        }
    }
    let mut g = f.with_isolated(extra.len());
    let added: Vec<usize> = (f.order()..f.order() + extra.len()).collect();
    for (&b, &v) in extra.iter().zip(&added) {
        g.add_edge(b, v);
    }
    let a = d.a.iter().chain(&added).copied().collect();
    let decomposition = BnDecomposition::new(&g, a, d.b.clone())?;
    Ok(BnResult {
        graph: g,
        decomposition,
        enlarged: !extra.is_empty(),
        added,
    })
}

pub const DEFAULT_DECOMPOSE_BUDGET: usize = 20;

/// Exhaustive search for a `B_n` split, preferring the largest `B` and then
/// the lexicographically smallest one. Duplicate neighbourhoods are then
/// removed with [`enlarge`].
pub fn decompose_bn(f: &Graph, budget: usize) -> Result<Option<BnResult>> {
    let n = f.order();
    if n > budget || n > 31 {
        return Err(Error::budget(
            "vertices for bipartition search",
            n as u128,
            budget as u128,
        ));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| f.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect();
    let triangle_free = |set: u32| {
        (0..n).all(|u| {
            set >> u & 1 == 0
                || (u + 1..n).all(|v| (adj[u] & set) >> v & 1 == 0 || adj[u] & adj[v] & set == 0)
        })
    };
    let full = (1u32 << n) - 1;
    let best = (0..=full)
        .into_par_iter()
        .filter(|&b| (0..n).all(|v| b >> v & 1 == 0 || adj[v] & b == 0))
        .filter(|&b| triangle_free(full & !b))
        .map(|b| (std::cmp::Reverse(b.count_ones()), b.reverse_bits()))
        .min();
    let Some((_, rev)) = best else {
        return Ok(None);
    };
    let b = rev.reverse_bits();
    let bs: Vec<usize> = (0..n).filter(|&v| b >> v & 1 == 1).collect();
    let as_: Vec<usize> = (0..n).filter(|&v| b >> v & 1 == 0).collect();
    let d = BnDecomposition::new(f, as_, bs)?;
    enlarge(f, &d).map(Some)
}

/// Edge colorings of `host`, first edge red, each containing an induced
/// copy of `target` whose edges share one color.
pub fn edge_arrow(host: &Graph, target: &Graph, budget: u32) -> Result<Option<u64>> {
    let edges = host.edges();
    if edges.len() > budget as usize || edges.len() > 63 {
        return Err(Error::budget(
            "host edges for coloring enumeration",
            edges.len() as u128,
            budget as u128,
        ));
    }
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut masks: Vec<u64> = induced_copies(target, host)
        .iter()
        .map(|m| {
            target.edges().iter().fold(0u64, |acc, &(u, v)| {
                let (x, y) = (m[u].min(m[v]), m[u].max(m[v]));
                acc | 1 << index[&(x, y)]
            })
        })
        .collect();
    masks.sort_unstable();
    masks.dedup();
    if masks.is_empty() {
        return Ok(None);
    }
    let total = 1u64 << edges.len().saturating_sub(1);
    let to_mask = |i: u64| if edges.is_empty() { 0 } else { i << 1 | 1 };
    let bad = (0..total).into_par_iter().find_first(|&i| {
        !masks
            .iter()
            .any(|&m| to_mask(i) & m == 0 || to_mask(i) & m == m)
    });
    Ok(match bad {
        Some(_) => None,
        None => Some(total),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyHost {
    pub host: Graph,
    pub colorings_checked: u64,
    pub candidates_tried: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostSearchConfig {
    pub max_order: usize,
    pub max_edges: u32,
    pub random_per_order: usize,
    pub seed: u64,
}

impl Default for HostSearchConfig {
    fn default() -> Self {
        HostSearchConfig {
            max_order: 8,
            max_edges: 22,
            random_per_order: 20,
            seed: 0,
        }
    }
}

fn structured_candidates(order: usize) -> Vec<Graph> {
    let mut out = vec![Graph::complete(order), Graph::path(order)];
    if order >= 3 {
        out.push(Graph::cycle(order));
    }
    for a in 1..=order / 2 {
        let b = order - a;
        let mut g = Graph::empty(order);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        out.push(g);
    }
    out
}

/// Certified `H` with `H →_ind target` for 2-edge-colorings: the target
/// itself, then complete, path, cycle and complete bipartite graphs, then
/// random graphs, in increasing order.
pub fn find_induced_ramsey_host(
    target: &Graph,
    cfg: &HostSearchConfig,
) -> Result<Option<RamseyHost>> {
    let mut tried = 0;
    let consider = |h: Graph, tried: &mut usize| -> Result<Option<RamseyHost>> {
        if h.edge_count() > cfg.max_edges as usize {
            return Ok(None);
        }
        *tried += 1;
        Ok(
            edge_arrow(&h, target, cfg.max_edges)?.map(|checked| RamseyHost {
                host: h,
                colorings_checked: checked,
                candidates_tried: *tried,
            }),
        )
    };
    if let Some(found) = consider(target.clone(), &mut tried)? {
        return Ok(Some(found));
    }
    for order in target.order().max(1)..=cfg.max_order {
        for h in structured_candidates(order) {
            if let Some(found) = consider(h, &mut tried)? {
                return Ok(Some(found));
            }
        }
        for i in 0..cfg.random_per_order {
            let seed = crate::rng::mix64(cfg.seed ^ ((order as u64) << 32 | i as u64));
            let h = crate::randmod::gen_gnp(order, 0.5, seed)?;
            if let Some(found) = consider(h, &mut tried)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// Blocks `V_1,…,V_m` of size `N` blown up along `H`, plus one apex vertex
/// per transversal tuple `(x_1,…,x_m) ∈ [N]^m` joined to exactly its
/// coordinates. Apex vertices are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostGraph {
    base: Graph,
    block_size: usize,
    tuple_count: usize,
}

impl HostGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.base.order()
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// `N^m`.
    pub fn tuple_count(&self) -> usize {
        self.tuple_count
    }

    pub fn vertex_count(&self) -> usize {
        self.m() * self.block_size + self.tuple_count
    }

    /// `|E₁| = e(H)·N²`.
    pub fn e1_count(&self) -> u128 {
        self.base.edge_count() as u128 * (self.block_size as u128).pow(2)
    }

    /// `|E₂| = m·N^m`.
    pub fn e2_count(&self) -> u128 {
        self.m() as u128 * self.tuple_count as u128
    }

    pub fn edge_count(&self) -> u128 {
        self.e1_count() + self.e2_count()
    }

    pub fn block_vertex(&self, i: usize, x: usize) -> usize {
        i * self.block_size + x
    }

    /// `(i, x)` for block vertices.
    pub fn block_of(&self, v: usize) -> Option<(usize, usize)> {
        (v < self.m() * self.block_size).then(|| (v / self.block_size, v % self.block_size))
    }

    /// Position of a tuple in lexicographic order of `[N]^m`.
    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.block_size + x)
    }

    pub fn tuple_at(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.m()];
        for slot in t.iter_mut().rev() {
            *slot = index % self.block_size;
            index /= self.block_size;
        }
        t
    }

    pub fn apex(&self, tuple: &[usize]) -> usize {
        self.m() * self.block_size + self.tuple_index(tuple)
    }

    pub fn apex_tuple(&self, v: usize) -> Option<Vec<usize>> {
        let first = self.m() * self.block_size;
        (v >= first && v < self.vertex_count()).then(|| self.tuple_at(v - first))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match (self.block_of(u), self.block_of(v)) {
            (Some((i, _)), Some((j, _))) => self.base.has_edge(i, j),
            (Some((i, x)), None) => self.apex_tuple(v).is_some_and(|t| t[i] == x),
            (None, Some((j, y))) => self.apex_tuple(u).is_some_and(|t| t[j] == y),
            (None, None) => false,
        }
    }

    /// The full host as a graph, refused above `budget` vertices.
    pub fn materialize(&self, budget: usize) -> Result<Graph> {
        let n = self.vertex_count();
        if n > budget {
            return Err(Error::budget("host vertices", n as u128, budget as u128));
        }
        let mut g = Graph::empty(n);
        for (i, j) in self.base.edges() {
            for x in 0..self.block_size {
                for y in 0..self.block_size {
                    g.add_edge(self.block_vertex(i, x), self.block_vertex(j, y));
                }
            }
        }
        for idx in 0..self.tuple_count {
            let t = self.tuple_at(idx);
            let u = self.apex(&t);
            for (i, &x) in t.iter().enumerate() {
                g.add_edge(u, self.block_vertex(i, x));
            }
        }
        Ok(g)
    }
}

/// Builds the host over `H` with blocks of size `block_size`.
pub fn construct_host(base: &Graph, block_size: usize) -> Result<HostGraph> {
    if block_size == 0 || base.order() == 0 {
        return Err(Error::InvalidInput("need N ≥ 1 and a nonempty H".into()));
    }
    let too_big = || Error::InvalidInput("host vertex ids overflow".into());
    let tuple_count = block_size
        .checked_pow(base.order() as u32)
        .ok_or_else(too_big)?;
    base.order()
        .checked_mul(block_size)
        .and_then(|b| b.checked_add(tuple_count))
        .ok_or_else(too_big)?;
    Ok(HostGraph {
        base: base.clone(),
        block_size,
        tuple_count,
    })
}

/// `φ_T` on the edges of `H` (in `H.edges()` order): the color of the
/// triangle an edge of `G[T]` forms with the apex of `T`.
pub fn phi_coloring(
    host: &HostGraph,
    chi: &(dyn Fn(&Triple) -> Option<Color> + Sync),
    tuple: &[usize],
) -> Result<Vec<Color>> {
    let u = host.apex(tuple);
    host.base
        .edges()
        .iter()
        .map(|&(i, j)| {
            let t = triple(
                host.block_vertex(i, tuple[i]),
                host.block_vertex(j, tuple[j]),
                u,
            );
            chi(&t).ok_or_else(|| Error::Internal(format!("{t:?} is not a colored triangle")))
        })
        .collect()
}

/// First induced copy of `target` in `h` whose edges all get one color
/// under `colors` (aligned with `h.edges()`), trying red before blue.
pub fn mono_induced_copy(
    h: &Graph,
    target: &Graph,
    colors: &[Color],
) -> Option<(Vec<usize>, Option<Color>)> {
    let index: HashMap<(usize, usize), usize> = h
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let color = |a: usize, b: usize| colors[index[&(a.min(b), a.max(b))]];
    let search = InducedSearch::new(target, h);
    if target.edge_count() == 0 {
        let mut found = None;
        search.run(
            |_, _| true,
            |m| {
                found = Some(m.to_vec());
                true
            },
        );
        return found.map(|m| (m, None));
    }
    for c in Color::BOTH {
        let mut found = None;
        search.run(
            |map, v| {
                target
                    .neighbors(v)
                    .iter()
                    .all(|u| map[u] == usize::MAX || color(map[u], map[v]) == c)
            },
            |m| {
                found = Some(m.to_vec());
                true
            },
        );
        if let Some(m) = found {
            return Some((m, Some(c)));
        }
    }
    None
}

/// `K^{(k)}_{2,…,2}` in a `k`-partite `k`-graph: two coordinates per part
/// such that all `2^k` tuples are edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupWitness {
    /// Block of `H` hosting `a_j`.
    pub indices: Vec<usize>,
    /// `(x_j, y_j)` with `x_j < y_j` in block `indices[j]`.
    pub pairs: Vec<[usize; 2]>,
    pub color: Option<Color>,
}

/// Finds pairs `{x_j, y_j}` per coordinate with every choice present in
/// `edges`, by intersecting the link sets of candidate pairs coordinate by
/// coordinate. Lexicographically first answer.
pub fn find_blowup(
    edges: &[Vec<usize>],
    k: usize,
    budget: u128,
) -> Result<Option<Vec<[usize; 2]>>> {
    if edges.len() as u128 > budget {
        return Err(Error::budget("blow-up edges", edges.len() as u128, budget));
    }
    if let Some(e) = edges.iter().find(|e| e.len() != k) {
        return Err(Error::InvalidInput(format!("{e:?} is not a {k}-tuple")));
    }
    let set: BTreeSet<&[usize]> = edges.iter().map(Vec::as_slice).collect();
    Ok(blowup_rec(&set))
}

fn blowup_rec(edges: &BTreeSet<&[usize]>) -> Option<Vec<[usize; 2]>> {
    let first = edges.iter().next()?;
    if first.is_empty() {
        return Some(Vec::new());
    }
    let mut links: BTreeMap<usize, BTreeSet<&[usize]>> = BTreeMap::new();
    for e in edges {
        links.entry(e[0]).or_default().insert(&e[1..]);
    }
    let keys: Vec<usize> = links.keys().copied().collect();
    for (i, &x) in keys.iter().enumerate() {
        for &y in &keys[i + 1..] {
            let common: BTreeSet<&[usize]> = links[&x].intersection(&links[&y]).copied().collect();
            if let Some(mut rest) = blowup_rec(&common) {
                rest.insert(0, [x, y]);
                return Some(rest);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtractStage {
    /// Some `φ_T` has no induced monochromatic copy of `F[A]` in `H`.
    Ramsey,
    /// No pigeonhole class contains a `K_{2,…,2}`.
    Blowup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub indices: Vec<usize>,
    pub color: Option<Color>,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum ExtractOutcome {
    Success {
        witness: EmbeddingWitness,
        blowup: BlowupWitness,
        /// Apex tuples used for the vertices of `B`, in order.
        apex_tuples: Vec<Vec<usize>>,
    },
    Failure {
        stage: ExtractStage,
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractReport {
    pub tuples_examined: usize,
    pub sampled: bool,
    pub classes: Vec<ClassSummary>,
    pub outcome: ExtractOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractConfig {
    /// Above this many transversal tuples, `samples` random tuples are used.
    pub tuple_budget: usize,
    pub samples: usize,
    pub seed: u64,
    pub blowup_budget: u128,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig {
            tuple_budget: 1 << 20,
            samples: 1 << 16,
            seed: 0,
            blowup_budget: 1 << 24,
        }
    }
}

/// Independent check of a host copy: injective, induced, and all triangles
/// of `F` one color. Returns that color (`None` for triangle-free `F`).
pub fn verify_host_copy(
    host: &HostGraph,
    chi: &(dyn Fn(&Triple) -> Option<Color> + Sync),
    f: &Graph,
    map: &[usize],
) -> Option<Option<Color>> {
    if map.len() != f.order() || map.iter().any(|&v| v >= host.vertex_count()) {
        return None;
    }
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if map[i] == map[j] || f.has_edge(i, j) != host.has_edge(map[i], map[j]) {
                return None;
            }
        }
    }
    let mut color = None;
    for t in triangles(f).edges() {
        let c = chi(&triple(map[t[0]], map[t[1]], map[t[2]]))?;
        if color.is_some_and(|s| s != c) {
            return None;
        }
        color = Some(c);
    }
    Some(color)
}

/// The extraction pipeline: `φ_T` for every transversal tuple (or a sample),
/// an induced monochromatic `F[A]` in each, pigeonhole on the placement and
/// color, a `K_{2,…,2}` inside a class, and apexes for the vertices of `B`.
pub fn extract(
    host: &HostGraph,
    chi: &(dyn Fn(&Triple) -> Option<Color> + Sync),
    f: &Graph,
    decomp: &BnDecomposition,
    cfg: &ExtractConfig,
) -> Result<ExtractReport> {
    let check = BnDecomposition::new(f, decomp.a.clone(), decomp.b.clone())?;
    if !check.has_distinct_neighborhoods() {
        return Err(Error::Precondition(
            "neighbourhoods A_i must be distinct; enlarge F first".into(),
        ));
    }
    let a = &check.a;
    let k = a.len();
    let target = f.induced(a);
    let sampled = host.tuple_count() > cfg.tuple_budget;
    let tuples: Vec<usize> = if sampled {
        let mut rng = stream(cfg.seed, 0);
        let mut t: Vec<usize> = (0..cfg.samples)
            .map(|_| rng.gen_range(0..host.tuple_count()))
            .collect();
        t.sort_unstable();
        t.dedup();
        t
    } else {
        (0..host.tuple_count()).collect()
    };
    let placed: Vec<Option<(Vec<usize>, Option<Color>)>> = tuples
        .par_iter()
        .map(|&idx| {
            let tuple = host.tuple_at(idx);
            let phi = phi_coloring(host, chi, &tuple)?;
            Ok(mono_induced_copy(&host.base, &target, &phi))
        })
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<(Vec<usize>, Option<Color>), Vec<usize>> = BTreeMap::new();
    for (&idx, p) in tuples.iter().zip(&placed) {
        match p {
            Some((map, c)) => classes.entry((map.clone(), *c)).or_default().push(idx),
            None => {
                return Ok(ExtractReport {
                    tuples_examined: tuples.len(),
                    sampled,
                    classes: Vec::new(),
                    outcome: ExtractOutcome::Failure {
                        stage: ExtractStage::Ramsey,
                        detail: format!(
                            "tuple {:?} has no monochromatic induced F[A]",
                            host.tuple_at(idx)
                        ),
                    },
                })
            }
        }
    }
    let mut ordered: Vec<((Vec<usize>, Option<Color>), Vec<usize>)> = classes.into_iter().collect();
    ordered.sort_by(|x, y| y.1.len().cmp(&x.1.len()).then_with(|| x.0.cmp(&y.0)));
    let summaries = ordered
        .iter()
        .map(|((indices, color), members)| ClassSummary {
            indices: indices.clone(),
            color: *color,
            size: members.len(),
        })
        .collect();
    let mut report = ExtractReport {
        tuples_examined: tuples.len(),
        sampled,
        classes: summaries,
        outcome: ExtractOutcome::Failure {
            stage: ExtractStage::Blowup,
            detail: "no class contains a K_{2,...,2}".into(),
        },
    };
    for ((indices, color), members) in &ordered {
        // Restricted tuple -> first full tuple realizing it.
        let mut rep: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for &idx in members {
            let t = host.tuple_at(idx);
            rep.entry(indices.iter().map(|&h| t[h]).collect())
                .or_insert(idx);
        }
        let edges: Vec<Vec<usize>> = rep.keys().cloned().collect();
        let Some(pairs) = find_blowup(&edges, k, cfg.blowup_budget)? else {
            continue;
        };
        let mut map = vec![usize::MAX; f.order()];
        for (j, &av) in a.iter().enumerate() {
            map[av] = host.block_vertex(indices[j], pairs[j][0]);
        }
        let mut apex_tuples = Vec::new();
        for (bi, nb) in check.b.iter().zip(&check.neighborhoods) {
            let x: Vec<usize> = a
                .iter()
                .enumerate()
                .map(|(j, av)| pairs[j][usize::from(!nb.contains(av))])
                .collect();
            let tuple = host.tuple_at(rep[&x]);
            map[*bi] = host.apex(&tuple);
            apex_tuples.push(tuple);
        }
        let ok = verify_host_copy(host, chi, f, &map);
        if ok.is_none() || (ok != Some(None) && ok != Some(*color)) {
            return Err(Error::Internal(format!(
                "extracted copy {map:?} fails verification"
            )));
        }
        report.outcome = ExtractOutcome::Success {
            witness: EmbeddingWitness { map },
            blowup: BlowupWitness {
                indices: indices.clone(),
                pairs,
                color: *color,
            },
            apex_tuples,
        };
        break;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        let k3 = Graph::complete(3);
        let d = BnDecomposition::new(&k3, vec![0, 1], vec![2]).unwrap();
        assert_eq!(d.neighborhoods, vec![vec![0, 1]]);
        assert!(decompose_bn(&Graph::complete(4), 20).unwrap().is_none());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(BnDecomposition::new(&star, vec![0], vec![1, 2, 3]).is_ok());
        let r = decompose_bn(&star, 20).unwrap().unwrap();
        assert_eq!(r.decomposition.b, vec![1, 2, 3]);
        assert!(r.enlarged);
        assert_eq!(r.graph.order(), 6);
        assert!(r.decomposition.has_distinct_neighborhoods());
    }

    #[test]
    fn host_counts_for_k2() {
        let h = construct_host(&Graph::complete(2), 2).unwrap();
        assert_eq!(h.vertex_count(), 8);
        assert_eq!((h.e1_count(), h.e2_count()), (4, 8));
        let g = h.materialize(100).unwrap();
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn blowups() {
        let complete: Vec<Vec<usize>> = (0..3)
            .flat_map(|x| (0..3).map(move |y| vec![x, y]))
            .collect();
        assert_eq!(
            find_blowup(&complete, 2, 100).unwrap(),
            Some(vec![[0, 1], [0, 1]])
        );
        let matching: Vec<Vec<usize>> = (0..3).map(|x| vec![x, x]).collect();
        assert_eq!(find_blowup(&matching, 2, 100).unwrap(), None);
    }

    #[test]
    fn small_ramsey_hosts() {
        let cfg = HostSearchConfig::default();
        let k2 = find_induced_ramsey_host(&Graph::complete(2), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(k2.host, Graph::complete(2));
        let one = find_induced_ramsey_host(&Graph::empty(1), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(one.host.order(), 1);
        let p3 = find_induced_ramsey_host(&Graph::path(3), &cfg)
            .unwrap()
            .unwrap();
        assert!(edge_arrow(&p3.host, &Graph::path(3), 30).unwrap().is_some());
    }

    #[test]
    fn constant_coloring_extracts_triangle() {
        let host = construct_host(&Graph::complete(2), 4).unwrap();
        let chi = |_: &Triple| Some(Color::Blue);
        let k3 = Graph::complete(3);
        let d = BnDecomposition::new(&k3, vec![0, 1], vec![2]).unwrap();
        let rep = extract(&host, &chi, &k3, &d, &ExtractConfig::default()).unwrap();
        let ExtractOutcome::Success { witness, .. } = rep.outcome else {
            panic!("{:?}", rep.outcome)
        };
        assert_eq!(
            verify_host_copy(&host, &chi, &k3, &witness.map),
            Some(Some(Color::Blue))
        );
    }

    #[test]
    fn single_vertex_blocks_fail_at_blowup() {
        let host = construct_host(&Graph::complete(2), 1).unwrap();
        let chi = |_: &Triple| Some(Color::Red);
        let k3 = Graph::complete(3);
        let d = BnDecomposition::new(&k3, vec![0, 1], vec![2]).unwrap();
        let rep = extract(&host, &chi, &k3, &d, &ExtractConfig::default()).unwrap();
        assert!(matches!(
            rep.outcome,
            ExtractOutcome::Failure {
                stage: ExtractStage::Blowup,
                ..
            }
        ));
    }
}
